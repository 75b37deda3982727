#pragma once

// Sparse distributed polynomials over an exact coefficient field.
//
// A Polynomial is an immutable-by-convention value: a shared pointer to its
// ring (ordered variable names plus field) and a term vector kept sorted in
// descending degrevlex order with no zero coefficients. Two polynomials over
// the same ring are equal iff their term vectors are equal.

#include <algorithm>
#include <cstddef>
#include <memory>
#include <optional>
#include <type_traits>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "betainv/error.hpp"
#include "betainv/ring/field.hpp"
#include "betainv/ring/monomial.hpp"

namespace betainv {

template <class C>
class Ring {
 public:
  explicit Ring(std::vector<std::string> names, Field<C> field = {})
      : names_(std::move(names)), field_(std::move(field)) {
    if (names_.size() > kMaxVariables) {
      throw Error(ErrorKind::input, "too many variables (max " + std::to_string(kMaxVariables) + ")");
    }
    for (std::size_t i = 0; i < names_.size(); ++i)
      for (std::size_t j = i + 1; j < names_.size(); ++j)
        if (names_[i] == names_[j]) throw Error(ErrorKind::input, "duplicate variable '" + names_[i] + "'");
  }

  static std::shared_ptr<const Ring> make(std::vector<std::string> names, Field<C> field = {}) {
    return std::make_shared<const Ring>(std::move(names), std::move(field));
  }

  std::size_t size() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }
  const std::string& name(std::size_t i) const { return names_.at(i); }
  const Field<C>& field() const { return field_; }

  std::optional<std::size_t> index_of(const std::string& n) const {
    for (std::size_t i = 0; i < names_.size(); ++i)
      if (names_[i] == n) return i;
    return std::nullopt;
  }

  bool same_as(const Ring& o) const { return names_ == o.names_ && field_ == o.field_; }

  /// Bitmask with one bit per variable of this ring.
  std::uint32_t all_mask() const { return (1u << names_.size()) - 1u; }

 private:
  std::vector<std::string> names_;
  Field<C> field_;
};

template <class C>
using RingPtr = std::shared_ptr<const Ring<C>>;

template <class C>
struct Term {
  Monomial m;
  C c;
  friend bool operator==(const Term& a, const Term& b) { return a.m == b.m && a.c == b.c; }
};

template <class C>
class Polynomial {
 public:
  using coefficient_type = C;

  Polynomial() = default;
  explicit Polynomial(RingPtr<C> ring) : ring_(std::move(ring)) {}

  static Polynomial constant(RingPtr<C> ring, const C& c) {
    Polynomial p(std::move(ring));
    if (!Field<C>::is_zero(c)) p.terms_.push_back({Monomial{}, c});
    return p;
  }
  static Polynomial constant(RingPtr<C> ring, long v) {
    const C c = ring->field().from_integer(v);
    return constant(std::move(ring), c);
  }
  static Polynomial variable(RingPtr<C> ring, std::size_t i) {
    if (i >= ring->size()) throw Error(ErrorKind::input, "unknown variable index");
    Polynomial p(ring);
    p.terms_.push_back({Monomial::variable(i), ring->field().one()});
    return p;
  }
  static Polynomial monomial(RingPtr<C> ring, const Monomial& m, const C& c) {
    Polynomial p(std::move(ring));
    if (!Field<C>::is_zero(c)) p.terms_.push_back({m, c});
    return p;
  }
  /// Builds a canonical polynomial from arbitrary (possibly repeated) terms.
  static Polynomial from_terms(RingPtr<C> ring, std::vector<Term<C>> terms) {
    Polynomial p(std::move(ring));
    if constexpr (std::is_same_v<C, Rational>)
      for (auto& t : terms) t.c.canonicalize();
    std::sort(terms.begin(), terms.end(),
              [](const Term<C>& a, const Term<C>& b) { return degrevlex_compare(a.m, b.m) > 0; });
    for (auto& t : terms) {
      if (!p.terms_.empty() && p.terms_.back().m == t.m) {
        p.terms_.back().c += t.c;
        continue;
      }
      if (!p.terms_.empty() && Field<C>::is_zero(p.terms_.back().c)) p.terms_.pop_back();
      p.terms_.push_back(std::move(t));
    }
    if (!p.terms_.empty() && Field<C>::is_zero(p.terms_.back().c)) p.terms_.pop_back();
    return p;
  }
  /// Trusts the caller: terms already sorted descending degrevlex, nonzero, distinct.
  static Polynomial from_sorted_terms(RingPtr<C> ring, std::vector<Term<C>> terms) {
    Polynomial p(std::move(ring));
    p.terms_ = std::move(terms);
    return p;
  }

  const RingPtr<C>& ring() const { return ring_; }
  const std::vector<Term<C>>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].m.is_one()); }
  /// Nonzero constant.
  bool is_unit() const { return terms_.size() == 1 && terms_[0].m.is_one(); }

  unsigned total_degree() const { return terms_.empty() ? 0 : terms_.front().m.degree(); }
  /// Lowest total degree of a term (the order at the origin).
  unsigned order() const {
    unsigned d = ~0u;
    for (const auto& t : terms_) d = std::min(d, t.m.degree());
    return terms_.empty() ? 0 : d;
  }
  unsigned degree_in(std::size_t var) const {
    unsigned d = 0;
    for (const auto& t : terms_) d = std::max(d, t.m[var]);
    return d;
  }
  /// Bitmask of variables that occur.
  std::uint32_t support() const {
    std::uint32_t s = 0;
    for (const auto& t : terms_)
      for (std::size_t i = 0; i < kMaxVariables; ++i)
        if (t.m[i]) s |= 1u << i;
    return s;
  }

  C constant_term() const {
    if (!terms_.empty() && terms_.back().m.is_one()) return terms_.back().c;
    return ring_->field().zero();
  }
  C coefficient(const Monomial& m) const {
    for (const auto& t : terms_)
      if (t.m == m) return t.c;
    return ring_->field().zero();
  }

  /// Leading term under an arbitrary order.
  const Term<C>& leading(const MonomialOrder& order) const {
    if (terms_.empty()) throw Error(ErrorKind::precondition, "leading term of zero polynomial");
    if (order.kind() == MonomialOrder::Kind::degrevlex) return terms_.front();
    std::size_t best = 0;
    for (std::size_t i = 1; i < terms_.size(); ++i)
      if (order.greater(terms_[i].m, terms_[best].m)) best = i;
    return terms_[best];
  }

  Polynomial operator-() const {
    Polynomial r = *this;
    for (auto& t : r.terms_) t.c = -t.c;
    return r;
  }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) { return combine(a, b, false); }
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) { return combine(a, b, true); }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    check_same_ring(a, b);
    if (a.is_zero() || b.is_zero()) return Polynomial(a.ring_);
    if (a.size() == 1) return b.mul_term(a.terms_[0].m, a.terms_[0].c);
    if (b.size() == 1) return a.mul_term(b.terms_[0].m, b.terms_[0].c);
    std::unordered_map<Monomial, C> acc;
    acc.reserve(a.size() * b.size());
    for (const auto& s : a.terms_)
      for (const auto& t : b.terms_) {
        auto [it, inserted] = acc.try_emplace(s.m * t.m, s.c * t.c);
        if (!inserted) it->second += s.c * t.c;
      }
    std::vector<Term<C>> terms;
    terms.reserve(acc.size());
    for (auto& [m, c] : acc)
      if (!Field<C>::is_zero(c)) terms.push_back({m, std::move(c)});
    std::sort(terms.begin(), terms.end(),
              [](const Term<C>& x, const Term<C>& y) { return degrevlex_compare(x.m, y.m) > 0; });
    return from_sorted_terms(a.ring_, std::move(terms));
  }
  friend Polynomial operator*(const C& c, const Polynomial& p) { return p.scale(c); }

  Polynomial& operator+=(const Polynomial& o) { return *this = *this + o; }
  Polynomial& operator-=(const Polynomial& o) { return *this = *this - o; }
  Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

  Polynomial scale(const C& c) const {
    if (Field<C>::is_zero(c)) return Polynomial(ring_);
    Polynomial r = *this;
    for (auto& t : r.terms_) t.c *= c;
    return r;
  }

  Polynomial mul_term(const Monomial& m, const C& c) const {
    if (Field<C>::is_zero(c)) return Polynomial(ring_);
    Polynomial r(ring_);
    r.terms_.reserve(terms_.size());
    // Multiplying by a monomial preserves degrevlex order.
    for (const auto& t : terms_) r.terms_.push_back({t.m * m, t.c * c});
    return r;
  }

  Polynomial pow(unsigned e) const {
    Polynomial acc = constant(ring_, 1);
    Polynomial base = *this;
    while (e) {
      if (e & 1) acc = acc * base;
      e >>= 1;
      if (e) base = base * base;
    }
    return acc;
  }

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.terms_ == b.terms_ && (a.ring_ == b.ring_ || (a.ring_ && b.ring_ && a.ring_->same_as(*b.ring_)));
  }
  friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

  static void check_same_ring(const Polynomial& a, const Polynomial& b) {
    if (a.ring_ == b.ring_) return;
    if (!a.ring_ || !b.ring_ || !a.ring_->same_as(*b.ring_)) {
      throw Error(ErrorKind::frame_mismatch, "operands belong to different rings");
    }
  }

 private:
  static Polynomial combine(const Polynomial& a, const Polynomial& b, bool subtract) {
    check_same_ring(a, b);
    Polynomial r(a.ring_);
    r.terms_.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
      int cmp;
      if (i == a.size()) cmp = -1;
      else if (j == b.size()) cmp = 1;
      else cmp = degrevlex_compare(a.terms_[i].m, b.terms_[j].m);
      if (cmp > 0) {
        r.terms_.push_back(a.terms_[i++]);
      } else if (cmp < 0) {
        r.terms_.push_back(b.terms_[j++]);
        if (subtract) r.terms_.back().c = -r.terms_.back().c;
      } else {
        C c = subtract ? C(a.terms_[i].c - b.terms_[j].c) : C(a.terms_[i].c + b.terms_[j].c);
        if (!Field<C>::is_zero(c)) r.terms_.push_back({a.terms_[i].m, std::move(c)});
        ++i;
        ++j;
      }
    }
    return r;
  }

  RingPtr<C> ring_;
  std::vector<Term<C>> terms_;
};

using QPoly = Polynomial<Rational>;
using QRing = Ring<Rational>;
using QRingPtr = RingPtr<Rational>;

// ---------------------------------------------------------------------------
// Elementary operations

/// Formal partial derivative with respect to variable `var`.
template <class C>
Polynomial<C> partial(const Polynomial<C>& p, std::size_t var) {
  if (!p.ring() || var >= p.ring()->size()) throw Error(ErrorKind::input, "unknown variable");
  std::vector<Term<C>> out;
  for (const auto& t : p.terms()) {
    const unsigned e = t.m[var];
    if (e == 0) continue;
    Monomial m = t.m;
    m.set(var, e - 1);
    out.push_back({m, t.c * p.ring()->field().from_integer(static_cast<long>(e))});
  }
  return Polynomial<C>::from_terms(p.ring(), std::move(out));
}

template <class C>
Polynomial<C> partial(const Polynomial<C>& p, const std::string& var) {
  auto i = p.ring()->index_of(var);
  if (!i) throw Error(ErrorKind::input, "unknown variable '" + var + "'");
  return partial(p, *i);
}

/// Exact division; throws `not_divisible` when q does not divide p.
template <class C>
Polynomial<C> exact_divide(const Polynomial<C>& p, const Polynomial<C>& q) {
  Polynomial<C>::check_same_ring(p, q);
  if (q.is_zero()) throw Error(ErrorKind::division_by_zero, "exact division by zero polynomial");
  const Term<C>& lq = q.terms().front();
  Polynomial<C> rem = p;
  std::vector<Term<C>> quot;
  while (!rem.is_zero()) {
    const Term<C>& lr = rem.terms().front();
    if (!lq.m.divides(lr.m)) throw Error(ErrorKind::not_divisible, "divisor does not divide dividend");
    const Monomial m = lr.m / lq.m;
    const C c = lr.c / lq.c;
    quot.push_back({m, c});
    rem = rem - q.mul_term(m, c);
  }
  return Polynomial<C>::from_sorted_terms(p.ring(), std::move(quot));
}

template <class C>
bool divides(const Polynomial<C>& q, const Polynomial<C>& p) {
  try {
    exact_divide(p, q);
    return true;
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::not_divisible) return false;
    throw;
  }
}

/// Ring homomorphism sending variable i of p's ring to images[i] (all images
/// in a common target ring).
template <class C>
Polynomial<C> substitute(const Polynomial<C>& p, const std::vector<Polynomial<C>>& images) {
  if (images.size() != p.ring()->size()) throw Error(ErrorKind::precondition, "substitution arity");
  if (images.empty()) return p;
  const RingPtr<C>& target = images.front().ring();
  // Power cache per variable.
  std::vector<std::vector<Polynomial<C>>> powers(images.size());
  auto power = [&](std::size_t v, unsigned e) -> const Polynomial<C>& {
    auto& cache = powers[v];
    if (cache.empty()) cache.push_back(Polynomial<C>::constant(target, 1));
    while (cache.size() <= e) cache.push_back(cache.back() * images[v]);
    return cache[e];
  };
  std::vector<Term<C>> acc;
  std::unordered_map<Monomial, C> sum;
  for (const auto& t : p.terms()) {
    Polynomial<C> prod = Polynomial<C>::constant(target, t.c);
    for (std::size_t v = 0; v < images.size(); ++v)
      if (t.m[v]) prod = prod * power(v, t.m[v]);
    for (const auto& s : prod.terms()) {
      auto [it, inserted] = sum.try_emplace(s.m, s.c);
      if (!inserted) it->second += s.c;
    }
  }
  for (auto& [m, c] : sum)
    if (!Field<C>::is_zero(c)) acc.push_back({m, c});
  return Polynomial<C>::from_terms(target, std::move(acc));
}

/// Moves p into another ring with the same field, mapping variable i to
/// variable index_map[i] of the target.
template <class C>
Polynomial<C> rename_into(const Polynomial<C>& p, const RingPtr<C>& target,
                          const std::vector<std::size_t>& index_map) {
  std::vector<Term<C>> out;
  out.reserve(p.size());
  for (const auto& t : p.terms()) {
    Monomial m;
    for (std::size_t v = 0; v < p.ring()->size(); ++v)
      if (t.m[v]) m.set(index_map.at(v), t.m[v]);
    out.push_back({m, t.c});
  }
  return Polynomial<C>::from_terms(target, std::move(out));
}

/// Embeds p into a ring that extends p's ring by extra trailing variables.
template <class C>
Polynomial<C> embed(const Polynomial<C>& p, const RingPtr<C>& target) {
  std::vector<std::size_t> map(p.ring()->size());
  for (std::size_t i = 0; i < map.size(); ++i) map[i] = i;
  return rename_into(p, target, map);
}

/// Value at the origin.
template <class C>
C value_at_origin(const Polynomial<C>& p) {
  return p.constant_term();
}

/// Homogeneous component of total degree d.
template <class C>
Polynomial<C> homogeneous_part(const Polynomial<C>& p, unsigned d) {
  std::vector<Term<C>> out;
  for (const auto& t : p.terms())
    if (t.m.degree() == d) out.push_back(t);
  return Polynomial<C>::from_sorted_terms(p.ring(), std::move(out));
}

/// Lowest-degree homogeneous component (tangent cone form at 0).
template <class C>
Polynomial<C> initial_form(const Polynomial<C>& p) {
  return p.is_zero() ? p : homogeneous_part(p, p.order());
}

/// Reduces a rational polynomial modulo a prime.
inline Polynomial<Fp> reduce_mod(const QPoly& p, const RingPtr<Fp>& target) {
  std::vector<Term<Fp>> out;
  for (const auto& t : p.terms()) {
    Fp c = target->field().from_rational(t.c);
    if (!c.is_zero()) out.push_back({t.m, c});
  }
  return Polynomial<Fp>::from_sorted_terms(target, std::move(out));
}

/// Scales a rational polynomial to a primitive integer polynomial whose
/// leading (degrevlex) coefficient is positive. Zero stays zero.
inline QPoly primitive_part(const QPoly& p) {
  if (p.is_zero()) return p;
  Integer num_gcd = 0, den_lcm = 1;
  for (const auto& t : p.terms()) {
    mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), t.c.get_num_mpz_t());
    mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), t.c.get_den_mpz_t());
  }
  Rational factor(den_lcm, num_gcd);
  factor.canonicalize();
  if (sgn(p.terms().front().c) < 0) factor = -factor;
  if (factor == 1) return p;
  return p.scale(factor);
}

/// Rational content normalisation for generic code: primitive integer for
/// rationals, monic for prime fields.
inline QPoly normalize(const QPoly& p) { return primitive_part(p); }
inline Polynomial<Fp> normalize(const Polynomial<Fp>& p) {
  if (p.is_zero()) return p;
  return p.scale(p.terms().front().c.inverse());
}

}  // namespace betainv
