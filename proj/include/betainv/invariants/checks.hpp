#pragma once

// Instance-level checks. Each returns a verdict with the numbers it used;
// nothing here asserts a conjecture.

#include <optional>

#include "betainv/invariants/beta.hpp"

namespace betainv {

namespace detail {

/// Σf has a single irreducible component at 0 and it is smooth.
inline bool sigma_single_smooth(const Analysis& a) {
  const auto& L = a.polar.lambda.components;
  return L.size() == 1 && L[0].branches == 1 && L[0].mult0 == 1;
}

inline bool same_cycle(const CurveCycle& A, const CurveCycle& B) {
  if (A.components.size() != B.components.size()) return false;
  std::vector<bool> used(B.components.size(), false);
  for (const auto& c : A.components) {
    bool hit = false;
    for (std::size_t j = 0; j < B.components.size() && !hit; ++j) {
      if (used[j] || B.components[j].multiplicity != c.multiplicity) continue;
      if (ideal_equal(c.ideal, B.components[j].ideal)) hit = used[j] = true;
    }
    if (!hit) return false;
  }
  return true;
}

}  // namespace detail

/// Non-splitting: Γ¹ = 0 at 0 iff μ_0(f|V(z0)) = Σ μ°_C (C . V(z0))_0, and then
/// Σf is a single smooth component meeting V(z0) transversely.
inline CheckResult check_gll(const Analysis& a) {
  CheckResult r;
  r.name = "gll";
  const bool side1 = a.numbers.gamma_empty;
  const bool side2 = a.mu_restricted == a.lambda1_from_components;
  r.add("gamma_empty", side1)
      .add("mu_restricted", a.mu_restricted)
      .add("sum_mu_circ_times_section", a.lambda1_from_components)
      .add("mu_equals_sum", side2);
  if (side1 != side2) return r.set(Verdict::fail, "the two conditions disagree");
  if (!side1) return r.set(Verdict::hold, "both conditions fail");
  const auto& L = a.polar.lambda.components;
  const bool single = L.size() == 1 && L[0].branches == 1;
  const bool smooth = single && L[0].mult0 == 1;
  const bool transverse = single && L[0].section == 1;
  r.add("single_component", single).add("smooth", smooth).add("transverse", transverse);
  if (!a.certified) return r.set(Verdict::undecided, "Le cycle components not certified");
  if (single && smooth && transverse) return r.set(Verdict::hold, "both conditions hold; single smooth transverse component");
  return r.set(Verdict::fail, "both conditions hold but the critical locus is not a single smooth transverse curve");
}

/// β = 0 must come with Γ¹ = 0 and a single smooth critical component.
inline CheckResult check_beta_conjecture(const Analysis& a) {
  CheckResult r;
  r.name = "beta-conj";
  const bool single_smooth = detail::sigma_single_smooth(a);
  r.add("beta", a.beta)
      .add("lambda0", a.lambda0)
      .add("gamma_empty", a.numbers.gamma_empty)
      .add("sigma_single_smooth", single_smooth);
  if (a.beta > 0) return r.set(Verdict::hold, "beta > 0: no claim triggered");
  if (!a.certified) return r.set(Verdict::undecided, "beta = 0 but the Le cycle is not certified");
  if (a.numbers.gamma_empty && single_smooth) return r.set(Verdict::hold, "beta = 0 and Sigma f is a smooth curve");
  return r.set(Verdict::fail, "COUNTEREXAMPLE CANDIDATE: beta = 0 but Sigma f is not a single smooth curve");
}

namespace detail {

struct SurfaceData {
  QIdeal surface;  // <df/dz2, ..., df/dzn>
  QPoly z0, z1;
};

inline SurfaceData surface_data(const GermContext<Rational>& ctx) {
  if (ctx.n() < 2) throw Error(ErrorKind::not_a_surface, "the polar surface needs at least three variables");
  return {polar_surface(ctx), ctx.var(0), ctx.var(1)};
}

}  // namespace detail

/// (1) dim_0(Γ² ∩ V(f) ∩ V(z0)) = 0 and (3) Γ² properly met by V(z0, z1) are
/// equivalent, and then (Γ².V(f).V(z0))_0 = μ_0(f|V(z0)) + (Γ².V(z0,z1))_0.
inline CheckResult check_prop41(const GermContext<Rational>& ctx) {
  CheckResult r;
  r.name = "prop41";
  detail::SurfaceData S;
  try {
    S = detail::surface_data(ctx);
  } catch (const Error& e) {
    return r.set(Verdict::undecided, e.what());
  }
  const QIdeal with_f = S.surface + ctx.f;
  const bool cond1 = dim_at_origin(with_f + S.z0) == 0;
  const bool cond2 = cond1 && dim_at_origin(with_f) == 1;
  const bool cond3 = dim_at_origin(S.surface + S.z0 + S.z1) == 0;
  r.add("cond1", cond1).add("cond2", cond2).add("cond3", cond3);
  if (cond1 != cond3 || cond1 != cond2) return r.set(Verdict::fail, "conditions are not equivalent");
  if (!cond1) return r.set(Verdict::hold, "all three conditions fail");
  const std::uint64_t lhs = local_length(saturate_at_origin(with_f, ctx.seed ^ 0x4141u) + S.z0, "Gamma2.V(f).V(z0)");
  const std::uint64_t mu = mu_restriction(ctx);
  const std::uint64_t line = local_length(S.surface + S.z0 + S.z1, "Gamma2.V(z0,z1)");
  r.add("gamma2_f_z0", lhs).add("mu_restricted", mu).add("gamma2_z0_z1", line);
  if (lhs == mu + line) return r.set(Verdict::hold, "conditions hold and the equality holds");
  return r.set(Verdict::fail, "conditions hold but the equality fails");
}

/// Candidates for h with Γ¹ = Γ².V(h): the given one, else the factors of
/// df/dz1 through the origin.
inline std::vector<QPoly> thm42_candidates(const GermContext<Rational>& ctx, const std::optional<QPoly>& h) {
  if (h) return {ctx.from_user_frame(*h)};
  std::vector<QPoly> out;
  if (ctx.partials[1].is_zero()) return out;
  for (const auto& [g, m] : factor(ctx.partials[1]).factors)
    if (value_at_origin(g) == 0) out.push_back(g);
  return out;
}

/// Hypotheses: every component C of Γ² ∩ V(f) has (C.V(z0))_0 = mult_0 C, and
/// Γ¹ = Γ².V(h). Conclusion: λ⁰ - λ¹ ≥ (Γ².V(z0,z1))_0 and
/// β ≥ (Γ².V(z0,z1))_0 + Σμ°. `h` is in the user frame.
inline CheckResult check_thm42(const Analysis& a, const std::optional<QPoly>& h = std::nullopt) {
  CheckResult r;
  r.name = "thm42";
  const auto& ctx = a.ctx;
  detail::SurfaceData S;
  try {
    S = detail::surface_data(ctx);
  } catch (const Error& e) {
    return r.set(Verdict::undecided, e.what());
  }
  // Hypothesis 1.
  const QIdeal with_f = S.surface + ctx.f;
  bool hyp1 = dim_at_origin(with_f) == 1 && dim_at_origin(with_f + S.z0) == 0;
  bool hyp1_certified = true;
  if (hyp1) {
    // Section and mult_0 are additive over branches and section >= mult_0 on
    // each branch, so comparing per Q-component is enough.
    DecomposeOptions opt;
    opt.seed = ctx.seed ^ 0x42u;
    const CurveCycle Z = decompose(with_f, opt);
    for (const auto& c : Z.components) {
      if (c.section != c.mult0) hyp1 = false;
      if (!c.mult0_confident) hyp1_certified = false;
    }
    r.add("hyp1_components", static_cast<std::uint64_t>(Z.components.size()));
  }
  r.add("hyp1", hyp1);
  if (!hyp1) return r.set(Verdict::fail, "hypothesis 1 fails");
  if (!hyp1_certified) return r.set(Verdict::undecided, "hypothesis 1 rests on uncertified components");

  // Hypothesis 2.
  if (a.numbers.gamma_empty) {
    r.add("hyp2", false);
    return r.set(Verdict::fail, "hypothesis 2 fails: the polar curve is empty");
  }
  const CurveCycle gamma = a.polar.gamma ? *a.polar.gamma : polar_curve_cycle(ctx, a.polar.ideals);
  std::optional<QPoly> found;
  for (const auto& cand : thm42_candidates(ctx, h)) {
    const QIdeal cut = S.surface + cand;
    if (dim_at_origin(cut) != 1) continue;
    DecomposeOptions opt;
    opt.seed = ctx.seed ^ 0x4242u;
    if (detail::same_cycle(decompose(cut, opt), gamma)) {
      found = cand;
      break;
    }
  }
  r.add("hyp2", found.has_value());
  if (!found) {
    if (h) return r.set(Verdict::fail, "hypothesis 2 fails for the given h");
    return r.set(Verdict::undecided, "no candidate h");
  }
  r.add("h", to_string(ctx.in_user(*found)));

  const std::uint64_t line = local_length(S.surface + S.z0 + S.z1, "Gamma2.V(z0,z1)");
  const bool ineq1 = a.betti_diff >= static_cast<std::int64_t>(line);
  const bool ineq2 = a.beta >= static_cast<std::int64_t>(line) + a.sum_mu_circ;
  r.add("betti_diff", a.betti_diff)
      .add("gamma2_z0_z1", line)
      .add("beta", a.beta)
      .add("sum_mu_circ", a.sum_mu_circ)
      .add("betti_inequality", ineq1)
      .add("beta_inequality", ineq2);
  if (ineq1 && ineq2) return r.set(Verdict::hold, "hypotheses hold and both inequalities hold");
  return r.set(Verdict::fail, "COUNTEREXAMPLE CANDIDATE: hypotheses hold but an inequality fails");
}

/// Hypotheses: Γ² is smooth at 0 and transversely met by V(z0, z1). When they
/// hold the conjecture's conclusion is guaranteed; the beta check is cross-run.
inline CheckResult check_cor46(const Analysis& a) {
  CheckResult r;
  r.name = "cor46";
  const auto& ctx = a.ctx;
  detail::SurfaceData S;
  try {
    S = detail::surface_data(ctx);
  } catch (const Error& e) {
    return r.set(Verdict::undecided, e.what());
  }
  QIdeal reduced = S.surface;
  bool exact = true;
  if (S.surface.generators().size() == 1) {
    reduced = QIdeal(ctx.ring, {squarefree_part(S.surface.generators()[0])});
  } else {
    exact = false;  // multiplicity one below certifies smooth and reduced
  }
  const bool smooth = is_smooth_at_origin(reduced);
  r.add("smooth", smooth);
  if (!smooth) {
    if (!exact) return r.set(Verdict::undecided, "polar surface has multiplicity > 1 and no reduced presentation");
    return r.set(Verdict::fail, "hypotheses fail: the polar surface is singular at 0");
  }
  const bool transverse = is_transverse_line_section(reduced, S.z0, S.z1);
  r.add("transverse", transverse);
  if (!transverse) return r.set(Verdict::fail, "hypotheses fail: V(z0, z1) is not transverse to the polar surface");
  const CheckResult bc = check_beta_conjecture(a);
  r.add("beta_conj", to_string(bc.verdict));
  r.verdict = combine(Verdict::hold, bc.verdict);
  r.reason = r.verdict == Verdict::hold ? "hypotheses hold; beta conjecture conclusion guaranteed"
                                        : "hypotheses hold but the beta check says: " + bc.reason;
  return r;
}

}  // namespace betainv
