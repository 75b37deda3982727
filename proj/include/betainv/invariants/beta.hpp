#pragma once

// Lê numbers, the restricted Milnor number and the beta invariant.
//
//   λ⁰ = (Γ¹ . V(df/dz0))_0        λ¹ = (Λ¹ . V(z0))_0
//   μ_0(f|V(z0)) = (Γ¹ . V(z0))_0 + λ¹
//   β = λ⁰ - λ¹ + Σ_C μ°_C
//     = λ⁰ - Σ_C μ°_C [(C . V(z0))_0 - 1]
//     = (Γ¹ . V(f))_0 - μ_0(f|V(z0)) + Σ_C μ°_C

#include <optional>
#include <string>
#include <vector>

#include "betainv/cycles/polar.hpp"
#include "betainv/invariants/verdict.hpp"

namespace betainv {

/// The numbers that need no decomposition; computable over any field.
struct LocalNumbers {
  bool gamma_empty = false;
  std::uint64_t mu_restricted = 0;  // μ_0(f|V(z0))
  std::uint64_t lambda0 = 0;        // (Γ¹ . V(df/dz0))_0
  std::uint64_t gamma_z0 = 0;       // (Γ¹ . V(z0))_0
  std::uint64_t gamma_f = 0;        // (Γ¹ . V(f))_0
  std::uint64_t lambda1_cycle = 0;  // (Λ¹ . V(z0))_0 from the Lê ideal
  std::int64_t lambda1_slice = 0;   // μ_0(f|V(z0)) - (Γ¹ . V(z0))_0

  friend bool operator==(const LocalNumbers&, const LocalNumbers&) = default;
};

template <class C>
std::uint64_t mu_restriction(const GermContext<C>& ctx) {
  return local_length(ctx.relative_jacobian() + ctx.var(0), "Sigma(f|V(z0))");
}

template <class C>
LocalNumbers local_numbers(const GermContext<C>& ctx, const PolarIdeals<C>& P) {
  LocalNumbers n;
  n.gamma_empty = P.gamma_empty;
  n.mu_restricted = mu_restriction(ctx);
  if (!P.gamma_empty) {
    n.lambda0 = intersect_number(P.gamma, ctx.partials[0]);
    n.gamma_z0 = intersect_number(P.gamma, ctx.var(0));
    n.gamma_f = intersect_number(P.gamma, ctx.f);
  }
  n.lambda1_cycle = intersect_number(P.lambda, ctx.var(0));
  n.lambda1_slice = static_cast<std::int64_t>(n.mu_restricted) - static_cast<std::int64_t>(n.gamma_z0);
  return n;
}

/// (λ⁰, λ¹); λ¹ is computed from the Lê ideal and from the slice identity
/// and the two must agree.
template <class C>
std::pair<std::uint64_t, std::uint64_t> le_numbers(const GermContext<C>& ctx) {
  const auto P = polar_ideals(ctx);
  const auto n = local_numbers(ctx, P);
  if (static_cast<std::int64_t>(n.lambda1_cycle) != n.lambda1_slice) {
    throw Error(ErrorKind::inconsistent_lambda1, "lambda1 from the Le cycle is " + std::to_string(n.lambda1_cycle) +
                                                     " but the slice identity gives " +
                                                     std::to_string(n.lambda1_slice));
  }
  return {n.lambda0, n.lambda1_cycle};
}

struct Analysis {
  GermContext<Rational> ctx;
  PolarCycles polar;
  LocalNumbers numbers;

  std::int64_t lambda0 = 0, lambda1 = 0, mu_restricted = 0;
  std::int64_t sum_mu_circ = 0;     // Σ over analytic branches of μ°
  std::int64_t lambda1_from_components = 0;  // Σ μ°_C (C . V(z0))_0
  std::int64_t betti_diff = 0;      // b̃_n - b̃_{n-1} = λ⁰ - λ¹
  std::int64_t beta = 0;
  std::int64_t beta_formula[3] = {0, 0, 0};
  bool certified = true;            // every Lê component certified
  std::vector<std::string> warnings;
};

/// Full computation of the invariants of a germ context. The polar curve is
/// decomposed only when `with_gamma` is set.
inline Analysis analyze(const GermContext<Rational>& ctx, bool with_gamma = false) {
  Analysis a;
  a.ctx = ctx;
  a.polar = polar_and_le(ctx, with_gamma);
  a.numbers = local_numbers(ctx, a.polar.ideals);
  const auto& n = a.numbers;
  if (static_cast<std::int64_t>(n.lambda1_cycle) != n.lambda1_slice) {
    throw Error(ErrorKind::inconsistent_lambda1, "lambda1 from the Le cycle is " + std::to_string(n.lambda1_cycle) +
                                                     " but the slice identity gives " +
                                                     std::to_string(n.lambda1_slice));
  }
  a.lambda0 = static_cast<std::int64_t>(n.lambda0);
  a.lambda1 = static_cast<std::int64_t>(n.lambda1_cycle);
  a.mu_restricted = static_cast<std::int64_t>(n.mu_restricted);
  a.betti_diff = a.lambda0 - a.lambda1;

  std::int64_t correction = 0;  // Σ_C μ°_C [(C . V(z0))_0 - 1]
  for (const auto& c : a.polar.lambda.components) {
    a.sum_mu_circ += static_cast<std::int64_t>(c.multiplicity * c.branches);
    a.lambda1_from_components += static_cast<std::int64_t>(c.multiplicity * c.section);
    correction += static_cast<std::int64_t>(c.multiplicity) *
                  (static_cast<std::int64_t>(c.section) - static_cast<std::int64_t>(c.branches));
    if (!c.certified_prime) {
      a.certified = false;
      a.warnings.push_back(c.warning);
    }
  }
  if (a.polar.gamma)
    for (const auto& c : a.polar.gamma->components)
      if (!c.certified_prime) a.warnings.push_back("polar curve: " + c.warning);
  for (const auto& note : ctx.notes) a.warnings.push_back(note);
  if (a.lambda1_from_components != a.lambda1) {
    throw Error(ErrorKind::nonlocal_contribution,
                "sum of mu° (C.V(z0)) over the Le components is " + std::to_string(a.lambda1_from_components) +
                    ", lambda1 is " + std::to_string(a.lambda1));
  }
  a.beta_formula[0] = a.lambda0 - a.lambda1 + a.sum_mu_circ;
  a.beta_formula[1] = a.lambda0 - correction;
  a.beta_formula[2] = static_cast<std::int64_t>(n.gamma_f) - a.mu_restricted + a.sum_mu_circ;
  if (a.beta_formula[0] != a.beta_formula[1] || a.beta_formula[0] != a.beta_formula[2]) {
    throw Error(ErrorKind::internal_inconsistency,
                "beta formulas disagree: " + std::to_string(a.beta_formula[0]) + ", " +
                    std::to_string(a.beta_formula[1]) + ", " + std::to_string(a.beta_formula[2]));
  }
  a.beta = a.beta_formula[0];
  return a;
}

/// Exact identities that every analysis must satisfy.
inline CheckResult check_identities(const Analysis& a) {
  CheckResult r;
  r.name = "identities";
  const auto& n = a.numbers;
  const bool teissier = n.gamma_f == n.gamma_z0 + n.lambda0;
  const bool slice = static_cast<std::int64_t>(n.mu_restricted) == static_cast<std::int64_t>(n.gamma_z0) + a.lambda1;
  const bool triple = a.beta_formula[0] == a.beta_formula[1] && a.beta_formula[1] == a.beta_formula[2];
  const bool components = a.lambda1_from_components == a.lambda1;
  const bool nonneg = a.beta >= 0;
  r.add("gamma_dot_f", n.gamma_f)
      .add("gamma_dot_z0", n.gamma_z0)
      .add("lambda0", n.lambda0)
      .add("teissier", teissier)
      .add("mu_restricted", n.mu_restricted)
      .add("lambda1", a.lambda1)
      .add("slice_identity", slice)
      .add("beta_formulas_agree", triple)
      .add("lambda1_equals_component_sum", components)
      .add("beta_nonnegative", nonneg);
  if (teissier && slice && triple && components && nonneg) r.set(Verdict::hold, "all identities hold");
  else r.set(Verdict::fail, "identity violated");
  return r;
}

/// Decomposition-free numbers of the same germ and z0 over F_p. Used as a
/// fast pre-pass; the rational computation stays authoritative.
inline LocalNumbers modular_numbers(const GermContext<Rational>& ctx, std::uint64_t prime) {
  const auto R = Ring<Fp>::make(ctx.user_ring->names(), Field<Fp>(prime));
  const auto f = reduce_mod(ctx.user_f, R);
  const auto z0 = reduce_mod(ctx.z0_form, R);
  auto mctx = make_context<Fp>(f, std::optional<Polynomial<Fp>>(z0), ctx.seed);
  if (!mctx.hint_used) {
    throw Error(ErrorKind::genericity_failed, "z0 is not generic modulo " + std::to_string(prime));
  }
  return local_numbers(mctx, polar_ideals(mctx));
}

}  // namespace betainv
