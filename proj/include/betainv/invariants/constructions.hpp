#pragma once

// Suspensions, structured plane curves and z0-independence.

#include <set>

#include "betainv/invariants/checks.hpp"

namespace betainv {

/// μ_0 of an isolated singularity (0 for a germ that is smooth at 0).
inline std::uint64_t milnor_number(const QPoly& p) {
  QIdeal J(p.ring());
  for (std::size_t i = 0; i < p.ring()->size(); ++i) J.add(partial(p, i));
  if (J.is_zero()) throw Error(ErrorKind::precondition, "Milnor number of a constant");
  auto v = vdim_local(J);
  if (!v) throw Error(ErrorKind::precondition, to_string(p) + " does not have an isolated critical point at 0");
  return *v;
}

/// g ⊞ h = g(x) + h(y) on the disjoint union of the two frames.
inline QPoly suspend(const QPoly& g, const QPoly& h) {
  const auto& A = g.ring()->names();
  const auto& B = h.ring()->names();
  for (const auto& b : B)
    if (std::find(A.begin(), A.end(), b) != A.end())
      throw Error(ErrorKind::input, "suspension frames collide on variable " + b);
  std::vector<std::string> names = A;
  names.insert(names.end(), B.begin(), B.end());
  const auto R = QRing::make(names);
  std::vector<std::size_t> ga(A.size()), hb(B.size());
  for (std::size_t i = 0; i < A.size(); ++i) ga[i] = i;
  for (std::size_t i = 0; i < B.size(); ++i) hb[i] = A.size() + i;
  return rename_into(g, R, ga) + rename_into(h, R, hb);
}

struct SuspensionResult {
  CheckResult check;
  std::int64_t beta_g = 0, beta_f = 0;
  std::uint64_t mu_h = 0;
};

/// β_{g⊞h} = μ_0(h) β_g, both sides computed from scratch. The z0 hint for g
/// (user frame of g), if given, is reused for g⊞h.
inline SuspensionResult check_prop31(const QPoly& g, const QPoly& h, const std::optional<QPoly>& g_hint,
                                     std::uint64_t seed) {
  SuspensionResult out;
  out.check.name = "prop31";
  if (!Field<Rational>::is_zero(value_at_origin(h))) throw Error(ErrorKind::input, "h must vanish at the origin");
  out.mu_h = milnor_number(h);
  const QPoly f = suspend(g, h);
  std::optional<QPoly> f_hint;
  if (g_hint) {
    std::vector<std::size_t> ga(g.ring()->size());
    for (std::size_t i = 0; i < ga.size(); ++i) ga[i] = i;
    f_hint = rename_into(*g_hint, f.ring(), ga);
  }
  out.beta_g = analyze(make_context(g, g_hint, seed)).beta;
  out.beta_f = analyze(make_context(f, f_hint, seed)).beta;
  out.check.add("f", to_string(f))
      .add("beta_g", out.beta_g)
      .add("mu_h", out.mu_h)
      .add("beta_f", out.beta_f)
      .add("product", static_cast<std::int64_t>(out.mu_h) * out.beta_g);
  if (out.beta_f == static_cast<std::int64_t>(out.mu_h) * out.beta_g) out.check.set(Verdict::hold, "beta_f = mu(h) beta_g");
  else out.check.set(Verdict::fail, "beta_f != mu(h) beta_g");
  return out;
}

/// f = g^p h in two variables, g squarefree through 0, p > 1, g not dividing h.
struct StructuredPlaneCurve {
  QPoly g, h;
  unsigned p = 2;

  QPoly f() const { return g.pow(p) * h; }

  void validate() const {
    if (g.ring()->size() != 2 || h.ring() != g.ring())
      throw Error(ErrorKind::input, "structured plane curve needs g and h in one 2-variable frame");
    if (p < 2) throw Error(ErrorKind::input, "structured plane curve needs p > 1");
    if (g.is_constant() || !Field<Rational>::is_zero(value_at_origin(g)))
      throw Error(ErrorKind::input, "g must be a non-unit vanishing at the origin");
    if (h.is_zero()) throw Error(ErrorKind::input, "h must be nonzero");
    if (squarefree_part(g).total_degree() != g.total_degree()) throw Error(ErrorKind::input, "g must be squarefree");
    if (divides(g, h)) throw Error(ErrorKind::input, "g divides h");
  }
};

struct PlaneCurveResult {
  CheckResult check;
  std::int64_t formula = 0, pipeline = 0;
};

/// Closed formula
///   β = (p+1) V(g,h)_0 + p μ_0(g) + μ_0(h) - 1   if h(0) = 0
///   β = p μ_0(g)                                 if h(0) != 0
/// against the general pipeline on f = g^p h.
inline PlaneCurveResult beta_plane_curve(const StructuredPlaneCurve& s, std::uint64_t seed) {
  s.validate();
  PlaneCurveResult out;
  out.check.name = "plane-curve";
  const std::uint64_t mu_g = milnor_number(s.g);
  out.check.add("p", static_cast<std::uint64_t>(s.p)).add("mu_g", mu_g);
  if (Field<Rational>::is_zero(value_at_origin(s.h))) {
    const std::uint64_t gh = local_length(QIdeal(s.g.ring(), {s.g, s.h}), "V(g,h)");
    const std::uint64_t mu_h = milnor_number(s.h);
    out.check.add("h_vanishes", true).add("gh_intersection", gh).add("mu_h", mu_h);
    out.formula = static_cast<std::int64_t>((s.p + 1) * gh + s.p * mu_g + mu_h) - 1;
  } else {
    out.check.add("h_vanishes", false);
    out.formula = static_cast<std::int64_t>(s.p * mu_g);
  }
  out.pipeline = analyze(make_context(s.f(), std::optional<QPoly>{}, seed)).beta;
  out.check.add("formula", out.formula).add("pipeline", out.pipeline);
  if (out.formula == out.pipeline) out.check.set(Verdict::hold, "closed formula matches the pipeline");
  else out.check.set(Verdict::fail, "formula mismatch");
  return out;
}

/// μ_0(gh) = 2 V(g,h)_0 + μ_0(g) + μ_0(h) - 1 for coprime plane germs with
/// isolated product.
inline CheckResult mu_product_formula(const QPoly& g, const QPoly& h) {
  CheckResult r;
  r.name = "mu-product";
  if (g.ring() != h.ring() || g.ring()->size() != 2) throw Error(ErrorKind::input, "need g and h in one 2-variable frame");
  if (!Field<Rational>::is_zero(value_at_origin(g)) || !Field<Rational>::is_zero(value_at_origin(h)))
    throw Error(ErrorKind::input, "g and h must vanish at the origin");
  const auto gh = vdim_local(QIdeal(g.ring(), {g, h}));
  if (!gh) throw Error(ErrorKind::precondition, "g and h are not coprime at the origin");
  const std::uint64_t mu_g = milnor_number(g), mu_h = milnor_number(h);
  const std::uint64_t mu = milnor_number(g * h);
  const std::int64_t formula = static_cast<std::int64_t>(2 * *gh + mu_g + mu_h) - 1;
  r.add("gh_intersection", *gh).add("mu_g", mu_g).add("mu_h", mu_h).add("formula", formula).add("mu_product", mu);
  if (formula == static_cast<std::int64_t>(mu)) return r.set(Verdict::hold, "formula matches the Milnor number");
  return r.set(Verdict::fail, "formula mismatch");
}

struct IndependenceTrial {
  std::string z0;
  std::int64_t lambda0 = 0, lambda1 = 0, beta = 0;
};

struct IndependenceResult {
  CheckResult check;
  std::vector<IndependenceTrial> trials;
};

/// β under `trials` distinct seeded generic forms. λ⁰ and λ¹ are recorded
/// but not compared.
inline IndependenceResult z0_independence(const QPoly& f, unsigned trials, std::uint64_t seed) {
  if (trials < 3) throw Error(ErrorKind::input, "independence needs at least 3 trials");
  IndependenceResult out;
  out.check.name = "independence";
  std::set<std::string> seen;
  SeededStream s(seed ^ 0x1d1d1d1du);
  unsigned skipped = 0;
  for (unsigned attempt = 0; out.trials.size() < trials && attempt < 4 * trials; ++attempt) {
    GermContext<Rational> ctx;
    try {
      ctx = make_context(f, std::optional<QPoly>{}, s.next_seed());
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::genericity_failed) throw;
      ++skipped;
      continue;
    }
    const std::string key = to_string(ctx.z0_form);
    if (!seen.insert(key).second) continue;
    const Analysis a = analyze(ctx);
    out.trials.push_back({key, a.lambda0, a.lambda1, a.beta});
  }
  out.check.add("trials", static_cast<std::uint64_t>(out.trials.size()))
      .add("skipped", static_cast<std::uint64_t>(skipped));
  if (out.trials.size() < trials) {
    out.check.set(Verdict::undecided, "not enough distinct generic forms");
    return out;
  }
  bool same = true, nonneg = true;
  for (const auto& t : out.trials) {
    same = same && t.beta == out.trials.front().beta;
    nonneg = nonneg && t.beta >= 0;
  }
  out.check.add("beta", out.trials.front().beta).add("beta_constant", same).add("beta_nonnegative", nonneg);
  if (same && nonneg) out.check.set(Verdict::hold, "beta is the same for every form");
  else out.check.set(Verdict::fail, "beta depends on z0");
  return out;
}

}  // namespace betainv
