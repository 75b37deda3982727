#pragma once

// Relative polar curve, Lê cycle and polar surface of a germ context.

#include <optional>

#include "betainv/cycles/context.hpp"
#include "betainv/cycles/curve.hpp"
#include "betainv/cycles/local.hpp"

namespace betainv {

template <class C>
struct PolarIdeals {
  Ideal<C> jacobian;  // <df/dz1, ..., df/dzn>
  Ideal<C> gamma;     // (J : (df/dz0)^∞), saturated at 0; unit when Γ¹ is zero at 0
  Ideal<C> lambda;    // (J : gamma^∞), saturated at 0
  bool gamma_empty = false;
};

/// Splits V(J) into the part not contained in Σf (Γ¹) and the part contained
/// in it (Λ¹). J : gamma^∞ is taken as J : g^∞ for a seeded generic
/// combination g of gamma's generators: near 0 a component of V(J) lies in
/// V(g) iff it lies in V(gamma).
template <class C>
PolarIdeals<C> polar_ideals(const GermContext<C>& ctx) {
  PolarIdeals<C> out;
  out.jacobian = ctx.relative_jacobian();
  const auto& fz0 = ctx.partials[0];
  if (fz0.is_zero()) {
    // Every component of V(J) lies in V(df/dz0), hence in Σf.
    out.gamma = Ideal<C>::unit(ctx.ring);
  } else {
    out.gamma = saturate_at_origin(saturate(out.jacobian, fz0).ideal, ctx.seed ^ 0x1234567u);
  }
  out.gamma_empty = dim_at_origin(out.gamma) < 0;
  if (out.gamma_empty) {
    out.lambda = saturate_at_origin(out.jacobian, ctx.seed ^ 0x7654321u);
  } else {
    SeededStream s(ctx.seed ^ 0xabcdefu);
    Polynomial<C> g(ctx.ring);
    for (const auto& q : out.gamma.generators()) g = g + q.scale(ctx.ring->field().from_integer(s.nonzero()));
    out.lambda = saturate_at_origin(saturate(out.jacobian, g).ideal, ctx.seed ^ 0x7654321u);
  }
  return out;
}

struct PolarCycles {
  PolarIdeals<Rational> ideals;
  std::optional<CurveCycle> gamma;  // decomposed only on request: it can be costly
  CurveCycle lambda;
};

inline DecomposeOptions polar_decompose_options(const GermContext<Rational>& ctx) {
  DecomposeOptions opt;
  opt.seed = ctx.seed ^ 0x51ed270bu;
  return opt;
}

/// Components of Γ¹ through the origin.
inline CurveCycle polar_curve_cycle(const GermContext<Rational>& ctx, const PolarIdeals<Rational>& P) {
  if (P.gamma_empty) return {};
  return decompose(P.gamma, polar_decompose_options(ctx));
}

inline PolarCycles polar_and_le(const GermContext<Rational>& ctx, bool with_gamma = false) {
  PolarCycles out;
  out.ideals = polar_ideals(ctx);
  if (with_gamma) out.gamma = polar_curve_cycle(ctx, out.ideals);
  out.lambda = decompose(out.ideals.lambda, polar_decompose_options(ctx));
  return out;
}

/// Γ² = V(df/dz2, ..., df/dzn); must be a surface germ at 0.
template <class C>
Ideal<C> polar_surface(const GermContext<C>& ctx) {
  if (ctx.n() < 2) throw Error(ErrorKind::not_a_surface, "the polar surface needs at least three variables");
  Ideal<C> I(ctx.ring);
  for (std::size_t i = 2; i < ctx.partials.size(); ++i) I.add(ctx.partials[i]);
  const int d = I.is_zero() ? static_cast<int>(ctx.ring->size()) : dim_at_origin(I);
  if (d != 2) {
    throw Error(ErrorKind::not_a_surface,
                "V(df/dz2, ..., df/dzn) has dimension " + std::to_string(d) + " at the origin (need 2)");
  }
  return I;
}

}  // namespace betainv
