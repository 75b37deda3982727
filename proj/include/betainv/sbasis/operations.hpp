#pragma once

// Ideal algebra on top of standard bases: local vector-space dimension,
// dimension at the origin, membership, elimination, intersection, quotient
// and saturation.

#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "betainv/sbasis/standard_basis.hpp"

namespace betainv {

/// A count that may be infinite (`std::nullopt`).
using MaybeCount = std::optional<std::uint64_t>;

namespace detail {

inline bool in_monomial_ideal(const Monomial& m, const std::vector<Monomial>& gens) {
  for (const auto& g : gens)
    if (g.divides(m)) return true;
  return false;
}

/// Number of monomials in `nvars` variables outside the monomial ideal;
/// nullopt when infinite.
inline MaybeCount count_standard_monomials(const std::vector<Monomial>& gens, std::size_t nvars) {
  if (in_monomial_ideal(Monomial{}, gens)) return 0;
  for (std::size_t v = 0; v < nvars; ++v) {
    bool has_pure_power = false;
    for (const auto& g : gens)
      if (g.degree() == g[v]) has_pure_power = true;
    if (!has_pure_power) return std::nullopt;
  }
  // Standard monomials form an order ideal; enumerate it depth first.
  std::uint64_t count = 0;
  std::function<void(std::size_t, Monomial)> walk = [&](std::size_t v, Monomial m) {
    if (v == nvars) {
      ++count;
      return;
    }
    for (unsigned e = 0;; ++e) {
      m.set(v, e);
      if (in_monomial_ideal(m, gens)) break;
      walk(v + 1, m);
    }
  };
  walk(0, Monomial{});
  return count;
}

/// Krull dimension of k[x]/(monomial ideal); -1 for the unit ideal.
inline int monomial_ideal_dimension(const std::vector<Monomial>& gens, std::size_t nvars) {
  if (in_monomial_ideal(Monomial{}, gens)) return -1;
  int best = 0;
  for (std::uint32_t s = 0; s < (1u << nvars); ++s) {
    const int size = __builtin_popcount(s);
    if (size <= best) continue;
    bool independent = true;
    for (const auto& g : gens) {
      bool inside = true;
      for (std::size_t v = 0; v < nvars; ++v)
        if (g[v] && !(s & (1u << v))) inside = false;
      if (inside) {
        independent = false;
        break;
      }
    }
    if (independent) best = size;
  }
  return best;
}

/// Largest degree of a standard monomial; requires a finite complement.
inline unsigned max_standard_degree(const std::vector<Monomial>& gens, std::size_t nvars) {
  unsigned best = 0;
  std::function<void(std::size_t, Monomial)> walk = [&](std::size_t v, Monomial m) {
    if (v == nvars) {
      best = std::max(best, m.degree());
      return;
    }
    for (unsigned e = 0;; ++e) {
      m.set(v, e);
      if (in_monomial_ideal(m, gens)) break;
      walk(v + 1, m);
    }
  };
  walk(0, Monomial{});
  return best;
}

/// Leading monomials of a local standard basis of I computed modulo m^k for
/// k = 8, 16, ..., up to `max_bound`. Returns the first one whose standard
/// monomials stop below degree k - 1: then m^d lies in I + m^(d+1) for some
/// d < k, so m^d is in I O_0 and the truncation lost nothing.
template <class C>
std::optional<std::vector<Monomial>> truncated_local_leads(const Ideal<C>& I, const BasisOptions& opts,
                                                           unsigned max_bound) {
  const std::size_t n = I.ring()->size();
  for (unsigned k = 8; k <= max_bound; k *= 2) {
    BasisOptions o = opts;
    o.degree_bound = k;
    auto leads = std_basis(I, MonomialOrder::local(), o).leading_monomials();
    std::vector<Monomial> all = leads;
    for (std::size_t v = 0; v < n; ++v) {
      Monomial m;
      m.set(v, k);
      all.push_back(m);  // the computation is modulo m^k
    }
    if (in_monomial_ideal(Monomial{}, all)) return all;
    if (max_standard_degree(all, n) + 2 <= k) return all;
  }
  return std::nullopt;
}

inline unsigned truncation_limit(std::size_t nvars) { return nvars <= 2 ? 64 : nvars <= 4 ? 32 : 16; }

}  // namespace detail

/// Called with every ideal and result of vdim_local when set (testing and
/// auditing). Must be thread-safe.
template <class C>
std::function<void(const Ideal<C>&, const MaybeCount&)>& vdim_observer() {
  static std::function<void(const Ideal<C>&, const MaybeCount&)> observer;
  return observer;
}

namespace detail {

template <class C>
MaybeCount vdim_local_impl(const Ideal<C>& I, const BasisOptions& opts) {
  if (I.is_zero()) return std::nullopt;
  if (auto leads = detail::truncated_local_leads(I, opts, detail::truncation_limit(I.ring()->size())))
    return detail::count_standard_monomials(*leads, I.ring()->size());
  const auto sb = std_basis(I, MonomialOrder::local(), opts);
  return detail::count_standard_monomials(sb.leading_monomials(), I.ring()->size());
}

}  // namespace detail

/// dim_k of the local ring O_0 / I; nullopt when I is not zero-dimensional
/// at the origin.
template <class C>
MaybeCount vdim_local(const Ideal<C>& I, const BasisOptions& opts = {}) {
  const MaybeCount v = detail::vdim_local_impl(I, opts);
  if (const auto& obs = vdim_observer<C>()) obs(I, v);
  return v;
}

/// Global dim_k of k[x] / I.
template <class C>
MaybeCount vdim_global(const Ideal<C>& I, const BasisOptions& opts = {}) {
  if (I.is_zero()) return std::nullopt;
  const auto gb = std_basis(I, MonomialOrder::degrevlex(), opts);
  return detail::count_standard_monomials(gb.leading_monomials(), I.ring()->size());
}

/// Krull dimension of V(I) at the origin; -1 if the origin is not on V(I).
template <class C>
int dim_at_origin(const Ideal<C>& I, const BasisOptions& opts = {}) {
  if (I.is_zero()) return static_cast<int>(I.ring()->size());
  if (auto leads = detail::truncated_local_leads(I, opts, 8))
    return detail::monomial_ideal_dimension(*leads, I.ring()->size());
  const auto sb = std_basis(I, MonomialOrder::local(), opts);
  return detail::monomial_ideal_dimension(sb.leading_monomials(), I.ring()->size());
}

/// Global Krull dimension of V(I).
template <class C>
int dim_global(const Ideal<C>& I, const BasisOptions& opts = {}) {
  if (I.is_zero()) return static_cast<int>(I.ring()->size());
  const auto gb = std_basis(I, MonomialOrder::degrevlex(), opts);
  return detail::monomial_ideal_dimension(gb.leading_monomials(), I.ring()->size());
}

template <class C>
bool membership(const Polynomial<C>& p, const Ideal<C>& I, const MonomialOrder& order,
                const BasisOptions& opts = {}) {
  if (p.is_zero()) return true;
  if (I.is_zero()) return false;
  return std_basis(I, order, opts).contains(p);
}

/// I ⊆ J (globally, or in the local ring when `order` is local).
template <class C>
bool ideal_contains(const Ideal<C>& J, const Ideal<C>& I, const MonomialOrder& order = MonomialOrder::degrevlex(),
                    const BasisOptions& opts = {}) {
  if (I.is_zero()) return true;
  if (J.is_zero()) return false;
  const auto sb = std_basis(J, order, opts);
  for (const auto& g : I.generators())
    if (!sb.contains(g)) return false;
  return true;
}

template <class C>
bool ideal_equal(const Ideal<C>& I, const Ideal<C>& J, const MonomialOrder& order = MonomialOrder::degrevlex(),
                 const BasisOptions& opts = {}) {
  return ideal_contains(I, J, order, opts) && ideal_contains(J, I, order, opts);
}

/// Reduced Gröbner basis presentation (canonical for a given ideal).
template <class C>
Ideal<C> reduced_presentation(const Ideal<C>& I, const BasisOptions& opts = {}) {
  if (I.is_zero()) return I;
  return Ideal<C>(I.ring(), std_basis(I, MonomialOrder::degrevlex(), opts).basis());
}

/// Ring with the same field and extra trailing variables.
template <class C>
RingPtr<C> extend_ring(const RingPtr<C>& ring, const std::vector<std::string>& extra) {
  std::vector<std::string> names = ring->names();
  for (const auto& e : extra) {
    std::string n = e;
    while (ring->index_of(n)) n += "_";
    names.push_back(n);
  }
  return Ring<C>::make(std::move(names), ring->field());
}

/// Generators of I ∩ k[variables not in `mask`], via an elimination order.
/// The result lives in I's ring.
template <class C>
Ideal<C> eliminate(const Ideal<C>& I, std::uint32_t mask, const BasisOptions& opts = {}) {
  if (mask == 0) return I;
  if ((mask & I.ring()->all_mask()) == I.ring()->all_mask()) {
    throw Error(ErrorKind::precondition, "cannot eliminate every variable");
  }
  Ideal<C> out(I.ring());
  if (I.is_zero()) return out;
  const auto gb = std_basis(I, MonomialOrder::elimination(mask), opts);
  for (const auto& g : gb.basis())
    if ((g.support() & mask) == 0) out.add(g);
  return out;
}

template <class C>
Ideal<C> eliminate(const Ideal<C>& I, const std::vector<std::size_t>& vars, const BasisOptions& opts = {}) {
  std::uint32_t mask = 0;
  for (auto v : vars) mask |= 1u << v;
  return eliminate(I, mask, opts);
}

/// I ∩ J via t*I + (1-t)*J and elimination of t.
template <class C>
Ideal<C> intersect(const Ideal<C>& I, const Ideal<C>& J, const BasisOptions& opts = {}) {
  if (I.is_zero() || J.is_zero()) return Ideal<C>(I.ring() ? I.ring() : J.ring());
  const RingPtr<C>& ring = I.ring();
  const RingPtr<C> ext = extend_ring(ring, {"t"});
  const std::size_t t = ring->size();
  const auto T = Polynomial<C>::variable(ext, t);
  const auto one = Polynomial<C>::constant(ext, 1);
  Ideal<C> K(ext);
  for (const auto& g : I.generators()) K.add(T * embed(g, ext));
  for (const auto& g : J.generators()) K.add((one - T) * embed(g, ext));
  Ideal<C> elim = eliminate(K, 1u << t, opts);
  std::vector<std::size_t> back(ext->size());
  for (std::size_t i = 0; i < ring->size(); ++i) back[i] = i;
  back[t] = 0;  // unused: eliminated
  Ideal<C> out(ring);
  for (const auto& g : elim.generators()) out.add(rename_into(g, ring, back));
  return out;
}

/// (I : h) = (I ∩ <h>) / h.
template <class C>
Ideal<C> quotient(const Ideal<C>& I, const Polynomial<C>& h, const BasisOptions& opts = {}) {
  if (h.is_zero()) throw Error(ErrorKind::precondition, "quotient by the zero polynomial");
  if (h.is_unit() || I.is_zero()) return I;
  Ideal<C> inter = intersect(I, Ideal<C>(I.ring(), {h}), opts);
  Ideal<C> out(I.ring());
  for (const auto& g : inter.generators()) out.add(normalize(exact_divide(g, h)));
  return out;
}

/// (I : J) = ∩_j (I : g_j).
template <class C>
Ideal<C> quotient(const Ideal<C>& I, const Ideal<C>& J, const BasisOptions& opts = {}) {
  if (J.is_zero()) throw Error(ErrorKind::precondition, "quotient by the zero ideal");
  std::optional<Ideal<C>> acc;
  for (const auto& g : J.generators()) {
    Ideal<C> q = quotient(I, g, opts);
    acc = acc ? intersect(*acc, q, opts) : q;
  }
  return *acc;
}

template <class C>
struct Saturation {
  Ideal<C> ideal;
  unsigned exponent = 0;
};

/// (I : h^∞) by iterated quotients; stabilisation is detected by ideal
/// equality. `exponent` is the first k with (I : h^k) = (I : h^{k+1}).
template <class C>
Saturation<C> saturate(const Ideal<C>& I, const Polynomial<C>& h, const BasisOptions& opts = {}) {
  if (h.is_zero()) throw Error(ErrorKind::precondition, "saturation by the zero polynomial");
  if (I.is_zero()) return {I, 0};
  if (h.is_unit()) return {reduced_presentation(I, opts), 0};
  Ideal<C> cur = reduced_presentation(I, opts);
  for (unsigned k = 0;; ++k) {
    Ideal<C> next = reduced_presentation(quotient(cur, h, opts), opts);
    if (ideal_contains(cur, next, MonomialOrder::degrevlex(), opts)) return {cur, k};
    cur = std::move(next);
  }
}

/// (I : J^∞) by iterated ideal quotients.
template <class C>
Ideal<C> saturate(const Ideal<C>& I, const Ideal<C>& J, const BasisOptions& opts = {}) {
  if (J.is_zero()) throw Error(ErrorKind::precondition, "saturation by the zero ideal");
  if (I.is_zero()) return I;
  Ideal<C> cur = reduced_presentation(I, opts);
  for (;;) {
    Ideal<C> next = reduced_presentation(quotient(cur, J, opts), opts);
    if (ideal_contains(cur, next, MonomialOrder::degrevlex(), opts)) return cur;
    cur = std::move(next);
  }
}

/// (I : h^∞) through I + <1 - t h> and elimination of t. Independent route
/// used to cross-check the iterated quotient.
template <class C>
Ideal<C> saturate_rabinowitsch(const Ideal<C>& I, const Polynomial<C>& h, const BasisOptions& opts = {}) {
  const RingPtr<C>& ring = I.ring();
  const RingPtr<C> ext = extend_ring(ring, {"t"});
  const std::size_t t = ring->size();
  Ideal<C> K(ext);
  for (const auto& g : I.generators()) K.add(embed(g, ext));
  K.add(Polynomial<C>::constant(ext, 1) - Polynomial<C>::variable(ext, t) * embed(h, ext));
  Ideal<C> elim = eliminate(K, 1u << t, opts);
  std::vector<std::size_t> back(ext->size(), 0);
  for (std::size_t i = 0; i < ring->size(); ++i) back[i] = i;
  Ideal<C> out(ring);
  for (const auto& g : elim.generators()) out.add(rename_into(g, ring, back));
  return out;
}

/// Least common multiple of two polynomials (generator of <a> ∩ <b>).
template <class C>
Polynomial<C> poly_lcm(const Polynomial<C>& a, const Polynomial<C>& b, const BasisOptions& opts = {}) {
  if (a.is_zero() || b.is_zero()) return Polynomial<C>(a.ring());
  if (a.is_unit()) return normalize(b);
  if (b.is_unit()) return normalize(a);
  Ideal<C> I = intersect(Ideal<C>(a.ring(), {a}), Ideal<C>(a.ring(), {b}), opts);
  I = reduced_presentation(I, opts);
  if (I.size() != 1) throw Error(ErrorKind::internal_inconsistency, "intersection of principal ideals not principal");
  return normalize(I.generators().front());
}

/// Greatest common divisor, normalised (primitive / monic).
template <class C>
Polynomial<C> poly_gcd(const Polynomial<C>& a, const Polynomial<C>& b, const BasisOptions& opts = {}) {
  if (a.is_zero()) return normalize(b);
  if (b.is_zero()) return normalize(a);
  if (a.is_unit() || b.is_unit()) return Polynomial<C>::constant(a.ring(), 1);
  if (divides(b, a)) return normalize(b);
  if (divides(a, b)) return normalize(a);
  return normalize(exact_divide(a * b, poly_lcm(a, b, opts)));
}

}  // namespace betainv
