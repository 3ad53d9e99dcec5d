#pragma once

#include "heunred/core.hpp"
#include "heunred/numerics.hpp"
#include "heunred/forms.hpp"
#include "heunred/identities.hpp"
#include "heunred/reduction.hpp"
#include "heunred/verification.hpp"
#include "heunred/physics.hpp"
#include "heunred/format.hpp"
#include "heunred/json_io.hpp"
#include "heunred/case_studies.hpp"
