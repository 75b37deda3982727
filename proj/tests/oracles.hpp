#pragma once

// Independent oracles for the tests. They share only the polynomial
// container with the engine: no standard bases, no decomposition.

#include <gmpxx.h>

#include <map>
#include <optional>
#include <unordered_map>
#include <vector>

#include "betainv/ring/polynomial.hpp"
#include "betainv/sbasis/ideal.hpp"

namespace oracle {

using betainv::Monomial;
using betainv::QIdeal;
using betainv::QPoly;

/// All monomials in n variables of total degree < bound.
inline std::vector<Monomial> monomials_below(std::size_t n, unsigned bound) {
  std::vector<Monomial> out;
  if (bound == 0) return out;
  out.push_back(Monomial{});
  std::size_t start = 0;
  for (unsigned d = 1; d < bound; ++d) {
    const std::size_t end = out.size();
    for (std::size_t k = start; k < end; ++k) {
      const Monomial m = out[k];
      // Extend only by variables >= the last variable used, so each monomial appears once.
      std::size_t last = 0;
      for (std::size_t i = 0; i < n; ++i)
        if (m[i]) last = i;
      for (std::size_t i = last; i < n; ++i) out.push_back(m * Monomial::variable(i));
    }
    start = end;
  }
  return out;
}

using Row = std::vector<std::pair<std::size_t, mpq_class>>;  // sorted by column

inline Row combine(const Row& a, const mpq_class& c, const Row& b) {
  Row r;
  r.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      r.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      r.push_back({b[j].first, -c * b[j].second});
      ++j;
    } else {
      mpq_class v = a[i].second - c * b[j].second;
      if (v != 0) r.push_back({a[i].first, v});
      ++i, ++j;
    }
  }
  return r;
}

/// dim_Q Q[x]/(I + m^bound) by exact Gaussian elimination on the truncated
/// multiples m*g of the generators.
inline std::size_t truncated_colength(const QIdeal& I, unsigned bound) {
  const std::size_t n = I.ring()->size();
  const auto cols = monomials_below(n, bound);
  std::unordered_map<Monomial, std::size_t> index;
  for (std::size_t i = 0; i < cols.size(); ++i) index.emplace(cols[i], i);
  std::map<std::size_t, Row> pivots;
  for (const auto& g : I.generators()) {
    for (const auto& m : cols) {
      Row row;
      for (const auto& t : g.terms()) {
        const Monomial mm = t.m * m;
        if (mm.degree() < bound) row.push_back({index.at(mm), t.c});
      }
      std::sort(row.begin(), row.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
      while (!row.empty()) {
        auto it = pivots.find(row.front().first);
        if (it == pivots.end()) {
          const mpq_class lead = row.front().second;
          for (auto& e : row) e.second /= lead;
          pivots.emplace(row.front().first, std::move(row));
          break;
        }
        row = combine(row, row.front().second, it->second);
      }
    }
  }
  return cols.size() - pivots.size();
}

/// Local colength dim_Q O_0/I. Equal truncated colengths at bounds N, N+1
/// mean m^N lies in I + m^(N+1), hence in I O_0 by Nakayama. The bound is
/// raised until the count has stayed put twice. nullopt if that does not
/// happen up to `max_bound` (not 0-dimensional, or out of range).
inline std::optional<std::size_t> local_colength(const QIdeal& I, unsigned max_bound = 40) {
  if (I.is_zero()) return std::nullopt;
  std::size_t prev = truncated_colength(I, 1);
  unsigned stable = 0;
  for (unsigned b = 2; b <= max_bound + 1; ++b) {
    const std::size_t cur = truncated_colength(I, b);
    stable = cur == prev ? stable + 1 : 0;
    if (stable == 2) return cur;
    prev = cur;
  }
  return std::nullopt;
}

inline QPoly d(const QPoly& p, std::size_t var) {
  std::vector<betainv::Term<mpq_class>> terms;
  for (const auto& t : p.terms()) {
    if (!t.m[var]) continue;
    Monomial m = t.m;
    m.set(var, t.m[var] - 1);
    terms.push_back({m, t.c * t.m[var]});
  }
  return QPoly::from_terms(p.ring(), std::move(terms));
}

/// Milnor number by the colength oracle on the Jacobian ideal.
inline std::optional<std::size_t> milnor(const QPoly& p) {
  QIdeal J(p.ring());
  for (std::size_t i = 0; i < p.ring()->size(); ++i) J.add(d(p, i));
  return local_colength(J);
}

/// Closed formula for β of f = g^p h in the plane, from oracle colengths.
inline std::optional<std::int64_t> plane_curve_beta(const QPoly& g, unsigned p, const QPoly& h) {
  const auto mu_g = milnor(g);
  if (!mu_g) return std::nullopt;
  if (h.constant_term() != 0) return static_cast<std::int64_t>(p * *mu_g);
  const auto gh = local_colength(QIdeal(g.ring(), {g, h}));
  const auto mu_h = milnor(h);
  if (!gh || !mu_h) return std::nullopt;
  return static_cast<std::int64_t>((p + 1) * *gh + p * *mu_g + *mu_h) - 1;
}

}  // namespace oracle
