#pragma once

// Germ context: f together with a linear form z0 that is generic enough,
// i.e. dim_0 Σ(f|V(z0)) = 0, and coordinates in which z0 is variable 0.

#include <optional>
#include <string>
#include <vector>

#include "betainv/ring/format.hpp"
#include "betainv/ring/linear.hpp"
#include "betainv/sbasis/operations.hpp"

namespace betainv {

template <class C>
struct GermContext {
  RingPtr<C> user_ring;          // frame as given
  Polynomial<C> user_f;
  Polynomial<C> z0_form;         // in the user frame

  RingPtr<C> ring;               // normalised frame: variable 0 is z0
  Polynomial<C> f;               // f in the normalised frame
  std::vector<Polynomial<C>> to_user;    // normalised variable i as a polynomial in the user frame
  std::vector<Polynomial<C>> from_user;  // user variable i as a polynomial in the normalised frame
  std::vector<Polynomial<C>> partials;   // df/dw_i in the normalised frame

  std::uint64_t seed = 0;
  unsigned attempts = 0;    // linear forms tried, hint included
  bool hint_used = false;
  std::vector<std::string> notes;

  std::size_t n() const { return ring->size() - 1; }
  Polynomial<C> var(std::size_t i) const { return Polynomial<C>::variable(ring, i); }

  /// <df/dz1, ..., df/dzn>
  Ideal<C> relative_jacobian() const {
    Ideal<C> J(ring);
    for (std::size_t i = 1; i < partials.size(); ++i) J.add(partials[i]);
    return J;
  }
  Ideal<C> jacobian() const { return Ideal<C>(ring, partials); }

  Polynomial<C> in_user(const Polynomial<C>& p) const { return substitute(p, to_user); }
  Ideal<C> in_user(const Ideal<C>& I) const {
    Ideal<C> out(user_ring);
    for (const auto& g : I.generators()) out.add(in_user(g));
    return out;
  }
  Polynomial<C> from_user_frame(const Polynomial<C>& p) const { return substitute(p, from_user); }
};

namespace detail {

/// Coordinates in which `form` (a nonzero linear form) becomes variable 0.
/// The pivot variable is replaced; the others keep their order.
template <class C>
void normalise_frame(GermContext<C>& ctx, const Polynomial<C>& form) {
  const auto& ur = ctx.user_ring;
  const auto coeffs = linear_coefficients(form);
  std::size_t k = coeffs.size();
  for (std::size_t i = 0; i < coeffs.size(); ++i)
    if (!Field<C>::is_zero(coeffs[i])) {
      k = i;
      break;
    }
  if (k == coeffs.size()) throw Error(ErrorKind::input, "z0 must be a nonzero linear form");
  std::size_t nonzero = 0;
  for (const auto& c : coeffs) nonzero += Field<C>::is_zero(c) ? 0 : 1;

  std::vector<std::string> names;
  if (nonzero == 1) {
    names.push_back(ur->name(k));
  } else {
    std::string z = "z0";
    while (ur->index_of(z)) z += "_";
    names.push_back(z);
  }
  std::vector<std::size_t> order;  // user indices of normalised variables 1..n
  for (std::size_t i = 0; i < ur->size(); ++i)
    if (i != k) {
      names.push_back(ur->name(i));
      order.push_back(i);
    }
  ctx.ring = Ring<C>::make(names, ur->field());
  const auto& R = ctx.ring;

  ctx.to_user.assign(R->size(), Polynomial<C>(ur));
  ctx.to_user[0] = form;
  for (std::size_t j = 0; j < order.size(); ++j) ctx.to_user[j + 1] = Polynomial<C>::variable(ur, order[j]);

  ctx.from_user.assign(ur->size(), Polynomial<C>(R));
  // z_k = (w0 - sum_{i != k} c_i z_i) / c_k
  Polynomial<C> zk = Polynomial<C>::variable(R, 0);
  for (std::size_t j = 0; j < order.size(); ++j) {
    ctx.from_user[order[j]] = Polynomial<C>::variable(R, j + 1);
    zk = zk - ctx.from_user[order[j]].scale(coeffs[order[j]]);
  }
  ctx.from_user[k] = zk.scale(ur->field().one() / coeffs[k]);

  ctx.f = substitute(ctx.user_f, ctx.from_user);
  ctx.partials.clear();
  for (std::size_t i = 0; i < R->size(); ++i) ctx.partials.push_back(partial(ctx.f, i));
}

template <class C>
bool z0_is_generic(const GermContext<C>& ctx) {
  Ideal<C> I = ctx.relative_jacobian() + ctx.var(0);
  return dim_at_origin(I) == 0;
}

}  // namespace detail

constexpr unsigned kGenericityAttempts = 24;

/// Builds a context. The hint, when given, is tried first; otherwise (or if
/// it fails the genericity test) seeded random forms are tried in sequence.
template <class C>
GermContext<C> make_context(const Polynomial<C>& f, const std::optional<Polynomial<C>>& z0_hint,
                            std::uint64_t seed) {
  if (f.is_zero()) throw Error(ErrorKind::input, "f is the zero polynomial");
  if (!Field<C>::is_zero(value_at_origin(f))) throw Error(ErrorKind::input, "f does not vanish at the origin");
  const auto& ur = f.ring();
  if (ur->size() < 2) throw Error(ErrorKind::input, "need at least two variables");
  Ideal<C> jac(ur);
  for (std::size_t i = 0; i < ur->size(); ++i) jac.add(partial(f, i));
  const int d = dim_at_origin(jac);
  if (d != 1) {
    throw Error(ErrorKind::not_one_dimensional,
                "critical locus has dimension " + std::to_string(d) + " at the origin (need 1)");
  }

  GermContext<C> ctx;
  ctx.user_ring = ur;
  ctx.user_f = f;
  ctx.seed = seed;

  if (z0_hint) {
    ++ctx.attempts;
    detail::normalise_frame(ctx, *z0_hint);
    if (detail::z0_is_generic(ctx)) {
      ctx.z0_form = *z0_hint;
      ctx.hint_used = true;
      return ctx;
    }
    ctx.notes.push_back("z0 hint " + to_string(*z0_hint) + " rejected: dim_0 Sigma(f|V(z0)) != 0");
  }
  SeededStream stream(seed);
  for (unsigned a = 0; a < kGenericityAttempts; ++a) {
    ++ctx.attempts;
    const auto form = random_linear_form<C>(stream.next_seed(), ur);
    detail::normalise_frame(ctx, form);
    if (detail::z0_is_generic(ctx)) {
      ctx.z0_form = form;
      return ctx;
    }
  }
  throw Error(ErrorKind::genericity_failed,
              "no generic z0 found after " + std::to_string(ctx.attempts) + " attempts");
}

}  // namespace betainv
