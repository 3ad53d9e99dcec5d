// Plain-text rendering of parameter sets and transforms, e.g.
//   H(2, 1; 1, 1, 1, 1; z) = H(0.5, 0.5; 1, 1, 1, 1; z/2)
#pragma once

#include <string>

#include "heunred/identities.hpp"
#include "heunred/reduction.hpp"

namespace heunred {

namespace detail {

inline bool is_compound(const std::string& s) {
  return s.find(" + ") != std::string::npos || s.find(" - ") != std::string::npos;
}

inline std::string linear_term(cplx c) {
  if (c == cplx{1.0}) return "z";
  if (c == cplx{-1.0}) return "-z";
  return format_number(c) + "z";
}

inline std::string signed_tail(cplx c) {
  if (c.imag() == 0.0 && c.real() < 0.0) return " - " + format_number(-c);
  return " + " + format_number(c);
}

/// αz + β with the z term first.
inline std::string affine_z_first(cplx lin, cplx c) {
  if (lin == cplx{0.0}) return format_number(c);
  std::string s = linear_term(lin);
  if (c != cplx{0.0}) s += signed_tail(c);
  return s;
}

/// c0 + c1 z with the constant first.
inline std::string affine_const_first(cplx c0, cplx c1) {
  if (c1 == cplx{0.0}) return format_number(c0);
  if (c0 == cplx{0.0}) return linear_term(c1);
  std::string s = format_number(c0);
  if (c1.imag() == 0.0 && c1.real() < 0.0)
    s += " - " + linear_term(-c1);
  else
    s += " + " + linear_term(c1);
  return s;
}

}  // namespace detail

inline std::string format_mobius(const MobiusMap& m) {
  const std::string num = detail::affine_z_first(m.alpha, m.beta);
  if (m.gamma == cplx{0.0}) {
    if (m.delta == cplx{1.0}) return num;
    const std::string n = detail::is_compound(num) ? "(" + num + ")" : num;
    return n + "/" + format_number(m.delta);
  }
  const std::string den = detail::affine_z_first(m.gamma, m.delta);
  const std::string n = detail::is_compound(num) ? "(" + num + ")" : num;
  return n + "/(" + den + ")";
}

inline std::string format_prefactor(const PowerPrefactor& p) {
  std::string s;
  if (p.scale != cplx{1.0}) s += format_number(p.scale) + " ";
  for (const auto& f : p.factors)
    s += "(" + detail::affine_const_first(f.c0, f.c1) + ")^(" + format_number(f.exponent) + ") ";
  return s;
}

inline std::string format_heun(const HeunParams& p, const std::string& arg) {
  return "H(" + format_number(p.d) + ", " + format_number(p.q) + "; " + format_number(p.a) +
         ", " + format_number(p.b) + ", " + format_number(p.gamma) + ", " +
         format_number(p.delta) + "; " + arg + ")";
}

/// One-line identity statement in the same layout as the symbolic original.
inline std::string format_transform(const HeunParams& source, const TransformResult& t) {
  return format_heun(source, "z") + " = " + format_prefactor(t.prefactor) +
         format_heun(t.params, format_mobius(t.arg_map));
}

inline std::string format_form(const HypergeometricForm& f) {
  std::string arg;
  if (f.arg_map.den.size() == 1 && f.arg_map.den[0] == cplx{1.0}) {
    bool first = true;
    for (std::size_t k = 0; k < f.arg_map.num.size(); ++k) {
      cplx c = f.arg_map.num[k];
      if (c == cplx{0.0}) continue;
      const bool negative = !first && c.imag() == 0.0 && c.real() < 0.0;
      if (negative) c = -c;
      std::string term = k == 0 ? format_number(c)
                                : (c == cplx{1.0} ? "" : format_number(c) + " ") + "z" +
                                      (k > 1 ? "^" + std::to_string(k) : "");
      arg += (first ? "" : negative ? " - " : " + ") + term;
      first = false;
    }
    if (arg.empty()) arg = "0";
  } else {
    arg = "R(z) [degree " + std::to_string(f.arg_map.degree()) + "]";
  }
  return format_prefactor(f.prefactor) + "F(" + format_number(f.a2) + ", " +
         format_number(f.b2) + "; " + format_number(f.c2) + "; " + arg + ")";
}

}  // namespace heunred
