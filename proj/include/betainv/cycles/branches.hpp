#pragma once

// Number of analytic branches at 0 of a reduced plane curve germ F(u, v).
//
// Tangent directions with multiplicity one carry one smooth branch each.
// A repeated tangent that is rational is moved to v = 0 and the Newton
// polygon below it is read off: when every edge polynomial is squarefree the
// germ is Newton non-degenerate there and each edge of lattice length e
// contributes e branches. Anything else is left uncertified.

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>

#include "betainv/sbasis/factor.hpp"

namespace betainv {

namespace detail {

struct LatticePoint {
  long i, j;  // exponent of u, exponent of v
};

/// Lower-left boundary of the Newton polygon, from the topmost-left vertex
/// down to the lowest one.
inline std::vector<LatticePoint> newton_boundary(const QPoly& F) {
  std::map<long, long> lowest;  // i -> min j
  for (const auto& t : F.terms()) {
    const long i = t.m[0], j = t.m[1];
    auto it = lowest.find(i);
    if (it == lowest.end() || j < it->second) lowest[i] = j;
  }
  std::vector<LatticePoint> pts;
  for (auto [i, j] : lowest) pts.push_back({i, j});
  std::vector<LatticePoint> hull;
  for (const auto& p : pts) {
    while (hull.size() >= 2) {
      const auto& a = hull[hull.size() - 2];
      const auto& b = hull.back();
      const long cross = (b.i - a.i) * (p.j - a.j) - (b.j - a.j) * (p.i - a.i);
      if (cross <= 0) hull.pop_back();
      else break;
    }
    hull.push_back(p);
  }
  // Keep only the descending part.
  std::vector<LatticePoint> out;
  for (const auto& p : hull) {
    if (!out.empty() && p.j >= out.back().j) break;
    out.push_back(p);
  }
  return out;
}

/// Branches contributed by the Newton edges lying at or below height `top`;
/// nullopt if one of those edges is degenerate.
inline std::optional<unsigned> edge_branches(const QPoly& F, long top) {
  const auto boundary = newton_boundary(F);
  unsigned count = 0;
  for (std::size_t k = 0; k + 1 < boundary.size(); ++k) {
    const auto a = boundary[k], b = boundary[k + 1];
    if (a.j > top) continue;
    const long di = b.i - a.i, dj = a.j - b.j;
    const long e = std::gcd(di, dj);
    upoly::QU edge(static_cast<std::size_t>(e) + 1, 0);
    for (const auto& t : F.terms()) {
      const long i = t.m[0], j = t.m[1];
      // on the segment: (i - a.i) * dj == (a.j - j) * di
      if ((i - a.i) * dj != (a.j - j) * di || i < a.i || i > b.i) continue;
      edge[static_cast<std::size_t>((i - a.i) / (di / e))] += t.c;
    }
    upoly::trim(edge);
    if (!upoly::is_squarefree(edge)) return std::nullopt;
    count += static_cast<unsigned>(e);
  }
  return count;
}

}  // namespace detail

/// Branch count of a reduced plane germ in a two-variable ring (u, v) = (0, 1).
inline std::optional<unsigned> count_branches(const QPoly& F) {
  if (F.ring()->size() != 2) throw Error(ErrorKind::precondition, "branch count needs a plane curve");
  const unsigned m = F.order();
  if (m == 0) return 0u;
  if (m == 1) return 1u;
  const QPoly T = homogeneous_part(F, m);
  // Dehomogenise at u = 1: t(s) = T(1, s); a drop in degree means u | T.
  upoly::QU t(m + 1, 0);
  for (const auto& term : T.terms()) t[term.m[1]] += term.c;
  upoly::trim(t);
  const unsigned at_infinity = m - static_cast<unsigned>(upoly::deg(t));

  unsigned branches = 0;
  std::vector<std::pair<upoly::QU, unsigned>> directions;  // tangent factor in s, multiplicity
  for (auto& fac : upoly::factor(t)) directions.push_back({fac.f, fac.multiplicity});
  if (at_infinity) directions.push_back({{}, at_infinity});  // the direction u = 0

  for (const auto& [g, mult] : directions) {
    const unsigned d = g.empty() ? 1 : static_cast<unsigned>(upoly::deg(g));
    if (mult == 1) {
      branches += d;
      continue;
    }
    if (d != 1) return std::nullopt;  // repeated irrational tangent
    // Move the tangent to v' = 0.
    const auto& R = F.ring();
    const QPoly u = QPoly::variable(R, 0), v = QPoly::variable(R, 1);
    QPoly moved;
    if (g.empty()) {
      moved = substitute(F, {v, u});  // tangent u = 0: swap
    } else {
      // tangent s = -g0/g1, i.e. g1*v + g0*u = 0; put v = v' + (-g0/g1) u
      const Rational slope = -g[0] / g[1];
      moved = substitute(F, {u, v + u.scale(slope)});
    }
    auto e = detail::edge_branches(moved, static_cast<long>(mult));
    if (!e) return std::nullopt;
    branches += *e;
  }
  return branches;
}

}  // namespace betainv
