#pragma once

// Gröbner bases (Buchberger) for global orders and standard bases (Mora's
// tangent cone normal form) for the local order.
//
// Both variants share the pair machinery (sugar selection, Gebauer-Möller
// criteria); they differ only in the normal form used for S-polynomials:
//   global: full division, followed by interreduction to the reduced basis;
//   local:  Mora's écart-driven weak normal form, followed by minimisation.

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "betainv/sbasis/ideal.hpp"

namespace betainv {

/// Process-wide default step budget (number of reduction steps per basis).
inline std::atomic<std::uint64_t>& default_step_budget() {
  static std::atomic<std::uint64_t> budget{20'000'000};
  return budget;
}

struct BasisOptions {
  std::uint64_t step_budget = default_step_budget().load();
  bool use_cache = true;
  /// Local orders only: when nonzero, compute modulo m^degree_bound.
  unsigned degree_bound = 0;
};

template <class C>
class StandardBasis {
 public:
  StandardBasis(RingPtr<C> ring, MonomialOrder order, std::vector<Polynomial<C>> basis, bool reduced)
      : ring_(std::move(ring)), order_(order), basis_(std::move(basis)), reduced_(reduced) {
    for (const auto& g : basis_) leading_.push_back(g.leading(order_).m);
  }

  const RingPtr<C>& ring() const { return ring_; }
  const MonomialOrder& order() const { return order_; }
  const std::vector<Polynomial<C>>& basis() const { return basis_; }
  const std::vector<Monomial>& leading_monomials() const { return leading_; }
  bool reduced() const { return reduced_; }
  bool is_unit() const {
    return std::any_of(leading_.begin(), leading_.end(), [](const Monomial& m) { return m.is_one(); });
  }

  /// Normal form: fully reduced remainder for global orders, Mora's weak
  /// normal form for the local order (zero iff p lies in the localised ideal).
  Polynomial<C> normal_form(const Polynomial<C>& p) const;

  bool contains(const Polynomial<C>& p) const { return normal_form(p).is_zero(); }

 private:
  RingPtr<C> ring_;
  MonomialOrder order_;
  std::vector<Polynomial<C>> basis_;
  std::vector<Monomial> leading_;
  bool reduced_;
};

namespace detail {

template <class C>
using Terms = std::vector<Term<C>>;

template <class C>
Terms<C> sorted_terms(const Polynomial<C>& p, const MonomialOrder& o) {
  Terms<C> t = p.terms();
  if (o.kind() != MonomialOrder::Kind::degrevlex) {
    std::sort(t.begin(), t.end(), [&](const Term<C>& a, const Term<C>& b) { return o.greater(a.m, b.m); });
  }
  return t;
}

/// out := h[from..] - c * m * g, all sequences sorted descending under o.
template <class C>
void sub_multiple(const Terms<C>& h, std::size_t from, const C& c, const Monomial& m, const Terms<C>& g,
                  std::size_t gfrom, const MonomialOrder& o, Terms<C>& out) {
  out.clear();
  out.reserve(h.size() - from + g.size());
  std::size_t i = from, j = gfrom;
  while (i < h.size() || j < g.size()) {
    int cmp;
    Monomial gm;
    if (j < g.size()) gm = g[j].m * m;
    if (i == h.size()) cmp = -1;
    else if (j == g.size()) cmp = 1;
    else cmp = o.compare(h[i].m, gm);
    if (cmp > 0) {
      out.push_back(h[i++]);
    } else if (cmp < 0) {
      out.push_back({gm, -(c * g[j].c)});
      ++j;
    } else {
      C v = h[i].c - c * g[j].c;
      if (!Field<C>::is_zero(v)) out.push_back({gm, std::move(v)});
      ++i;
      ++j;
    }
  }
}

template <class C>
unsigned max_degree(const Terms<C>& t, std::size_t from = 0) {
  unsigned d = 0;
  for (std::size_t i = from; i < t.size(); ++i) d = std::max(d, t[i].m.degree());
  return d;
}

template <class C>
void normalize_terms(Terms<C>& t) {
  if (t.empty()) return;
  if constexpr (Field<C>::is_rational) {
    Integer num_gcd = 0, den_lcm = 1;
    for (const auto& x : t) {
      mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), x.c.get_num_mpz_t());
      mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), x.c.get_den_mpz_t());
    }
    Rational f(den_lcm, num_gcd);
    f.canonicalize();
    if (sgn(t.front().c) < 0) f = -f;
    if (f != 1)
      for (auto& x : t) x.c *= f;
  } else {
    const C inv = t.front().c.inverse();
    for (auto& x : t) x.c *= inv;
  }
}

template <class C>
class Engine {
 public:
  Engine(RingPtr<C> ring, MonomialOrder order, std::uint64_t budget, unsigned degree_bound = 0)
      : ring_(std::move(ring)), o_(order), budget_(budget) {
    if (degree_bound && o_.is_local()) noether_ = degree_bound - 1;
  }

  struct Elem {
    Terms<C> t;
    unsigned sugar = 0;
    bool active = true;
    const Monomial& lm() const { return t.front().m; }
  };
  struct Pair {
    std::size_t i, j;
    Monomial lcm;
    unsigned sugar;
  };

  std::vector<Polynomial<C>> run(const std::vector<Polynomial<C>>& input) {
    std::vector<Terms<C>> gens;
    for (const auto& p : input) {
      if (p.is_zero()) continue;
      gens.push_back(sorted_terms(p, o_));
    }
    // Low-degree generators first keeps early reductions cheap.
    std::stable_sort(gens.begin(), gens.end(), [&](const Terms<C>& a, const Terms<C>& b) {
      return o_.compare(b.front().m, a.front().m) > 0 ? true : false;
    });
    for (auto& g : gens) {
      Terms<C> h = o_.is_local() ? nf_mora(std::move(g)) : reduce_top(std::move(g));
      if (h.empty()) continue;
      normalize_terms(h);
      insert(std::move(h), max_degree(h));
    }
    while (!pairs_.empty()) {
      auto best = std::min_element(pairs_.begin(), pairs_.end(), [&](const Pair& a, const Pair& b) {
        if (a.sugar != b.sugar) return a.sugar < b.sugar;
        return o_.compare(b.lcm, a.lcm) > 0;
      });
      Pair p = *best;
      *best = pairs_.back();
      pairs_.pop_back();
      Terms<C> s = spoly(p);
      if (s.empty()) continue;
      Terms<C> h = o_.is_local() ? nf_mora(std::move(s)) : reduce_top(std::move(s));
      if (h.empty()) continue;
      normalize_terms(h);
      const unsigned sugar = std::max(p.sugar, max_degree(h));
      insert(std::move(h), sugar);
      if (elems_.back().t.front().m.is_one()) break;  // unit ideal
    }
    return finish();
  }

  std::uint64_t steps() const { return steps_; }

  // Mora weak normal form with respect to a fixed list of basis polynomials.
  Terms<C> nf_mora_against(Terms<C> h, const std::vector<Terms<C>>& basis) {
    std::vector<Terms<C>> extra;
    return nf_mora_impl(std::move(h), basis, extra);
  }

  // Full reduction with respect to a fixed list (global orders).
  Terms<C> reduce_full_against(Terms<C> h, const std::vector<Terms<C>>& basis) {
    Terms<C> result, scratch;
    std::size_t k = 0;
    while (k < h.size()) {
      const Term<C>& lt = h[k];
      const Terms<C>* red = nullptr;
      for (const auto& g : basis)
        if (g.front().m.divides(lt.m)) {
          red = &g;
          break;
        }
      if (!red) {
        result.push_back(lt);
        ++k;
        continue;
      }
      tick();
      const C c = lt.c / red->front().c;
      sub_multiple(h, k + 1, c, lt.m / red->front().m, *red, 1, o_, scratch);
      std::swap(h, scratch);
      k = 0;
    }
    return result;
  }

 private:
  void tick() {
    if (++steps_ > budget_) {
      throw Error(ErrorKind::budget_exceeded,
                  "standard basis step budget of " + std::to_string(budget_) + " exhausted");
    }
  }

  Terms<C> spoly(const Pair& p) {
    const Elem& f = elems_[p.i];
    const Elem& g = elems_[p.j];
    Terms<C> a, out;
    // lc(g) * (lcm/lm f) * f - lc(f) * (lcm/lm g) * g, computed as
    // (lcm/lm f) * f - (lc f / lc g) (lcm/lm g) * g.
    const Monomial mf = p.lcm / f.lm();
    a.reserve(f.t.size());
    for (std::size_t k = 1; k < f.t.size(); ++k) a.push_back({f.t[k].m * mf, f.t[k].c});
    const C c = f.t.front().c / g.t.front().c;
    sub_multiple(a, 0, c, p.lcm / g.lm(), g.t, 1, o_, out);
    tick();
    return out;
  }

  const Elem* find_reducer(const Monomial& m) const {
    for (const auto& e : elems_)
      if (e.active && e.lm().divides(m)) return &e;
    return nullptr;
  }

  Terms<C> reduce_top(Terms<C> h) {
    Terms<C> scratch;
    while (!h.empty()) {
      const Elem* r = find_reducer(h.front().m);
      if (!r) break;
      tick();
      const C c = h.front().c / r->t.front().c;
      sub_multiple(h, 1, c, h.front().m / r->lm(), r->t, 1, o_, scratch);
      std::swap(h, scratch);
    }
    return h;
  }

  Terms<C> nf_mora(Terms<C> h) {
    std::vector<Terms<C>> basis;
    basis.reserve(elems_.size());
    for (const auto& e : elems_)
      if (e.active) basis.push_back(e.t);
    std::vector<Terms<C>> extra;
    return nf_mora_impl(std::move(h), basis, extra);
  }

  // Once the leading monomials contain a pure power of every variable, every
  // monomial of degree >= noether_ lies in the leading ideal, so m^noether_ is
  // contained in I O_0 (Nakayama). Terms of higher degree are then dropped,
  // which is what makes Mora reduction finish quickly on 0-dimensional input.
  void truncate(Terms<C>& h) const {
    while (!h.empty() && h.back().m.degree() > noether_) h.pop_back();
  }

  void update_noether() {
    std::vector<unsigned> power(ring_->size(), 0);
    for (const auto& e : elems_) {
      if (!e.active) continue;
      const Monomial& m = e.lm();
      std::size_t var = ring_->size();
      unsigned deg = 0;
      for (std::size_t i = 0; i < ring_->size(); ++i)
        if (m[i]) {
          if (var != ring_->size()) {
            var = ring_->size() + 1;
            break;
          }
          var = i;
          deg = m[i];
        }
      if (var < ring_->size() && (!power[var] || deg < power[var])) power[var] = deg;
    }
    unsigned k = 1;
    for (unsigned a : power) {
      if (!a) return;
      k += a - 1;
    }
    if (k >= noether_) return;
    noether_ = k;
    for (auto& e : elems_) truncate(e.t);
  }

  Terms<C> nf_mora_impl(Terms<C> h, const std::vector<Terms<C>>& basis, std::vector<Terms<C>>& extra) {
    Terms<C> scratch;
    truncate(h);
    while (!h.empty()) {
      const Monomial lm = h.front().m;
      const Terms<C>* best = nullptr;
      unsigned best_ecart = ~0u;
      auto consider = [&](const Terms<C>& g) {
        if (!g.front().m.divides(lm)) return;
        const unsigned e = max_degree(g) - g.front().m.degree();
        if (e < best_ecart) {
          best_ecart = e;
          best = &g;
        }
      };
      for (const auto& g : basis) consider(g);
      for (const auto& g : extra) consider(g);
      if (!best) break;
      const unsigned ecart_h = max_degree(h) - lm.degree();
      Terms<C> g = *best;  // copy: `extra` may reallocate below
      if (best_ecart > ecart_h) extra.push_back(h);
      tick();
      const C c = h.front().c / g.front().c;
      sub_multiple(h, 1, c, lm / g.front().m, g, 1, o_, scratch);
      std::swap(h, scratch);
      truncate(h);
    }
    return h;
  }

  void insert(Terms<C> h, unsigned sugar) {
    const std::size_t hi = elems_.size();
    elems_.push_back({std::move(h), sugar, true});
    const Monomial hm = elems_[hi].lm();

    // Gebauer-Möller update.
    std::vector<Pair> cand;
    for (std::size_t g = 0; g < hi; ++g) {
      if (!elems_[g].active) continue;
      const Monomial l = lcm(hm, elems_[g].lm());
      const unsigned s = std::max(sugar + (l.degree() - hm.degree()),
                                  elems_[g].sugar + (l.degree() - elems_[g].lm().degree()));
      cand.push_back({g, hi, l, s});
    }
    std::vector<Pair> kept;
    for (std::size_t a = 0; a < cand.size(); ++a) {
      const Pair& p = cand[a];
      bool keep = hm.coprime(elems_[p.i].lm());
      if (!keep) {
        keep = true;
        for (std::size_t b = a + 1; b < cand.size() && keep; ++b)
          if (cand[b].lcm.divides(p.lcm)) keep = false;
        for (const auto& q : kept)
          if (keep && q.lcm.divides(p.lcm)) keep = false;
      }
      if (keep) kept.push_back(p);
    }
    std::vector<Pair> next;
    next.reserve(pairs_.size() + kept.size());
    for (const auto& p : pairs_) {
      const bool drop = hm.divides(p.lcm) && lcm(elems_[p.i].lm(), hm) != p.lcm &&
                        lcm(elems_[p.j].lm(), hm) != p.lcm;
      if (!drop) next.push_back(p);
    }
    for (const auto& p : kept)
      if (!hm.coprime(elems_[p.i].lm())) next.push_back(p);
    pairs_ = std::move(next);
    for (std::size_t g = 0; g < hi; ++g)
      if (elems_[g].active && hm.divides(elems_[g].lm())) elems_[g].active = false;
    if (o_.is_local()) update_noether();
  }

  std::vector<Polynomial<C>> finish() {
    // Minimal basis: drop elements whose leading monomial is divisible by another's.
    std::vector<Terms<C>> minimal;
    for (std::size_t a = 0; a < elems_.size(); ++a) {
      if (elems_[a].t.empty()) continue;
      bool redundant = false;
      for (std::size_t b = 0; b < elems_.size() && !redundant; ++b) {
        if (a == b || elems_[b].t.empty()) continue;
        if (elems_[b].lm().divides(elems_[a].lm()) &&
            (elems_[b].lm() != elems_[a].lm() || b < a))
          redundant = true;
      }
      if (!redundant) minimal.push_back(elems_[a].t);
    }
    if (o_.is_global()) {
      // Tail reduction yields the unique reduced basis.
      for (std::size_t a = 0; a < minimal.size(); ++a) {
        std::vector<Terms<C>> others;
        for (std::size_t b = 0; b < minimal.size(); ++b)
          if (b != a) others.push_back(minimal[b]);
        Terms<C> head{minimal[a].front()};
        Terms<C> tail(minimal[a].begin() + 1, minimal[a].end());
        Terms<C> red = reduce_full_against(std::move(tail), others);
        head.insert(head.end(), red.begin(), red.end());
        normalize_terms(head);
        minimal[a] = std::move(head);
      }
    }
    std::sort(minimal.begin(), minimal.end(),
              [&](const Terms<C>& a, const Terms<C>& b) { return o_.compare(a.front().m, b.front().m) < 0; });
    std::vector<Polynomial<C>> out;
    for (auto& t : minimal) out.push_back(Polynomial<C>::from_terms(ring_, std::move(t)));
    return out;
  }

  RingPtr<C> ring_;
  MonomialOrder o_;
  std::uint64_t budget_;
  std::uint64_t steps_ = 0;
  unsigned noether_ = ~0u;
  std::vector<Elem> elems_;
  std::vector<Pair> pairs_;
};

/// Memoisation of standard bases keyed by (ring, order, generators).
/// Shared across threads; reads take a shared lock.
template <class C>
class BasisCache {
 public:
  static BasisCache& instance() {
    static BasisCache cache;
    return cache;
  }
  std::shared_ptr<const StandardBasis<C>> find(const std::string& key) const {
    std::shared_lock lock(mu_);
    auto it = map_.find(key);
    return it == map_.end() ? nullptr : it->second;
  }
  void store(const std::string& key, std::shared_ptr<const StandardBasis<C>> b) {
    std::unique_lock lock(mu_);
    if (map_.size() > kCapacity) map_.clear();
    map_.emplace(key, std::move(b));
  }
  void clear() {
    std::unique_lock lock(mu_);
    map_.clear();
  }

 private:
  static constexpr std::size_t kCapacity = 20000;
  mutable std::shared_mutex mu_;
  std::unordered_map<std::string, std::shared_ptr<const StandardBasis<C>>> map_;
};

/// Local standard basis by Lazard's method: a Groebner basis of the
/// homogenised generators for the order "total degree, then the local order
/// on the original variables", dehomogenised. Much faster than Mora on
/// dense input.
template <class C>
std::vector<Polynomial<C>> lazard_local_basis(const Ideal<C>& I, std::uint64_t budget) {
  const RingPtr<C>& R = I.ring();
  const std::size_t t = R->size();
  std::vector<std::string> names = R->names();
  std::string h = "_h";
  while (R->index_of(h)) h += "_";
  names.push_back(h);
  const auto E = Ring<C>::make(std::move(names), R->field());
  std::vector<Polynomial<C>> hom;
  for (const auto& g : I.generators()) {
    if (g.is_zero()) continue;
    const unsigned D = g.total_degree();
    std::vector<Term<C>> ts;
    for (const auto& term : g.terms()) {
      Monomial m = term.m;
      m.set(t, D - m.degree());
      ts.push_back({m, term.c});
    }
    hom.push_back(Polynomial<C>::from_terms(E, std::move(ts)));
  }
  const MonomialOrder order = MonomialOrder::homogenized(1u << t);
  Engine<C> engine(E, order, budget);
  std::vector<Polynomial<C>> out;
  std::vector<Monomial> leads;
  for (const auto& g : engine.run(hom)) {
    std::vector<Term<C>> ts;
    for (const auto& term : g.terms()) {
      Monomial m = term.m;
      m.set(t, 0);
      ts.push_back({m, term.c});
    }
    out.push_back(Polynomial<C>::from_terms(R, std::move(ts)));
    leads.push_back(out.back().leading(MonomialOrder::local()).m);
  }
  // Keep a minimal subset.
  std::vector<Polynomial<C>> minimal;
  for (std::size_t i = 0; i < out.size(); ++i) {
    bool redundant = false;
    for (std::size_t j = 0; j < out.size() && !redundant; ++j)
      if (j != i && leads[j].divides(leads[i]) && (leads[j] != leads[i] || j < i)) redundant = true;
    if (!redundant) minimal.push_back(std::move(out[i]));
  }
  return minimal;
}

inline std::string order_key(const MonomialOrder& o) {
  return std::to_string(static_cast<int>(o.kind())) + ":" + std::to_string(o.mask());
}

}  // namespace detail

/// Standard basis of I with respect to `order`.
template <class C>
StandardBasis<C> std_basis(const Ideal<C>& I, const MonomialOrder& order, const BasisOptions& opts = {}) {
  if (!I.ring()) throw Error(ErrorKind::precondition, "ideal without ring");
  std::string key;
  if (opts.use_cache) {
    key = detail::order_key(order) + "/" + std::to_string(opts.degree_bound) + "#" + I.key();
    if (auto hit = detail::BasisCache<C>::instance().find(key)) return *hit;
  }
  std::vector<Polynomial<C>> basis;
  if (order.is_local() && !opts.degree_bound && I.ring()->size() < kMaxVariables) {
    basis = detail::lazard_local_basis(I, opts.step_budget);
  } else {
    detail::Engine<C> engine(I.ring(), order, opts.step_budget, opts.degree_bound);
    basis = engine.run(I.generators());
  }
  StandardBasis<C> result(I.ring(), order, std::move(basis), order.is_global());
  if (opts.use_cache) detail::BasisCache<C>::instance().store(key, std::make_shared<const StandardBasis<C>>(result));
  return result;
}

template <class C>
Polynomial<C> StandardBasis<C>::normal_form(const Polynomial<C>& p) const {
  Polynomial<C>::check_same_ring(Polynomial<C>(ring_), p);
  if (p.is_zero()) return p;
  detail::Engine<C> engine(ring_, order_, default_step_budget().load());
  std::vector<detail::Terms<C>> basis;
  for (const auto& g : basis_) basis.push_back(detail::sorted_terms(g, order_));
  detail::Terms<C> h = detail::sorted_terms(p, order_);
  detail::Terms<C> r = order_.is_local() ? engine.nf_mora_against(std::move(h), basis)
                                         : engine.reduce_full_against(std::move(h), basis);
  return Polynomial<C>::from_terms(ring_, std::move(r));
}

}  // namespace betainv
