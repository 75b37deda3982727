#pragma once

#include <sstream>
#include <string>

#include "betainv/ring/polynomial.hpp"

namespace betainv {

inline std::string monomial_to_string(const Monomial& m, const std::vector<std::string>& names) {
  std::string out;
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (!m[i]) continue;
    if (!out.empty()) out += '*';
    out += names[i];
    if (m[i] > 1) out += '^' + std::to_string(m[i]);
  }
  return out;
}

/// Text form accepted back by the expression parser, e.g. "x^3*z + y^2*z + z^6".
template <class C>
std::string to_string(const Polynomial<C>& p) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& t : p.terms()) {
    C c = t.c;
    const bool negative = coefficient_is_negative(c);
    if (negative) c = -c;
    if (first) {
      if (negative) out += '-';
    } else {
      out += negative ? " - " : " + ";
    }
    first = false;
    const std::string mono = monomial_to_string(t.m, p.ring()->names());
    if (mono.empty()) {
      out += coefficient_to_string(c);
    } else if (coefficient_is_one(c)) {
      out += mono;
    } else {
      out += coefficient_to_string(c) + '*' + mono;
    }
  }
  return out;
}

}  // namespace betainv
