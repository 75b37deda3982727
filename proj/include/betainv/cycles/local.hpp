#pragma once

// Local numbers at the origin: saturation at the maximal ideal, intersection
// numbers, multiplicity, smoothness and transversality.

#include <optional>

#include "betainv/ring/linear.hpp"
#include "betainv/sbasis/operations.hpp"

namespace betainv {

/// (I : m^∞) as seen from the origin. Computed as (I : ℓ^∞) for a seeded
/// generic linear form ℓ: near 0 the only primary components whose radical
/// contains ℓ are the m-primary ones, since a generic hyperplane through 0
/// contains no positive-dimensional component of V(I).
template <class C>
Ideal<C> saturate_at_origin(const Ideal<C>& I, std::uint64_t seed = 0x6d2b79f5u, const BasisOptions& opts = {}) {
  if (I.is_zero()) return I;
  return saturate(I, random_linear_form<C>(seed, I.ring()), opts).ideal;
}

/// vdim of a 0-dimensional local ideal; throws `improper_intersection` otherwise.
template <class C>
std::uint64_t local_length(const Ideal<C>& I, const char* what = "intersection") {
  auto v = vdim_local(I);
  if (!v) throw Error(ErrorKind::improper_intersection, std::string(what) + " is not proper at the origin");
  return *v;
}

/// (V(I) . V(g))_0 for a 1-dimensional ideal without embedded or isolated
/// points at the origin. Such a local quotient is Cohen-Macaulay, so the
/// intersection number is the colength of I + <g>.
template <class C>
std::uint64_t intersect_number(const Ideal<C>& I, const Polynomial<C>& g) {
  return local_length(I + g);
}

struct Confidence {
  std::uint64_t value = 0;
  bool confident = true;
};

/// mult_0 of a reduced curve or surface germ: colength after slicing by
/// dim-many seeded random linear forms. The minimum must be seen twice in a row.
template <class C>
Confidence mult_at_origin(const Ideal<C>& I, std::uint64_t seed = 0x9e3779b9u) {
  const int d = dim_at_origin(I);
  if (d < 1) throw Error(ErrorKind::precondition, "multiplicity needs a positive-dimensional germ");
  SeededStream s(seed);
  std::optional<std::uint64_t> best;
  unsigned streak = 0;
  for (unsigned trial = 0; trial < 10; ++trial) {
    Ideal<C> J = I;
    for (int k = 0; k < d; ++k) J = J + random_linear_form<C>(s.next_seed(), I.ring());
    auto v = vdim_local(J);
    if (!v) continue;  // non-generic slice
    if (!best || *v < *best) {
      best = v;
      streak = 1;
    } else if (*v == *best) {
      if (++streak >= 2) return {*best, true};
    } else {
      streak = 0;
    }
  }
  if (!best) throw Error(ErrorKind::genericity_failed, "no proper slice found for multiplicity");
  return {*best, false};
}

/// Multiplicity-one criterion: a reduced equidimensional germ is smooth at 0
/// iff its multiplicity there is 1.
template <class C>
bool is_smooth_at_origin(const Ideal<C>& I) {
  const int d = dim_at_origin(I);
  if (d < 0) return false;
  if (d == 0) return vdim_local(I) == std::optional<std::uint64_t>(1);
  return mult_at_origin(I).value == 1;
}

/// Linear parts of the order-one elements of a local standard basis: they
/// span the degree-one part of the tangent cone ideal.
template <class C>
Matrix<C> tangent_equations(const Ideal<C>& I) {
  const auto& ring = I.ring();
  Matrix<C> rows;
  const auto sb = std_basis(I, MonomialOrder::local());
  for (const auto& g : sb.basis()) {
    if (g.order() != 1) continue;
    std::vector<C> row(ring->size(), ring->field().zero());
    for (const auto& t : g.terms())
      if (t.m.degree() == 1)
        for (std::size_t j = 0; j < ring->size(); ++j)
          if (t.m[j]) row[j] = t.c;
    rows.push_back(row);
  }
  return rows;
}

/// True iff the tangent space of the smooth germ V(I) meets {a = b = 0}
/// only at the origin.
template <class C>
bool is_transverse_line_section(const Ideal<C>& I, const Polynomial<C>& a, const Polynomial<C>& b) {
  if (!is_smooth_at_origin(I)) throw Error(ErrorKind::precondition, "transversality test needs a smooth germ");
  Matrix<C> rows = tangent_equations(I);
  rows.push_back(linear_coefficients(a));
  rows.push_back(linear_coefficients(b));
  return rank(rows) == I.ring()->size();
}

}  // namespace betainv
