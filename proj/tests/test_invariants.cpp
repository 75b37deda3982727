#include <gtest/gtest.h>

#include "betainv/cli/parse.hpp"
#include "betainv/invariants/constructions.hpp"
#include "oracles.hpp"

using namespace betainv;

namespace {

const QRingPtr R3 = QRing::make({"x", "y", "z"});
const QRingPtr R2 = QRing::make({"x", "y"});

QPoly P(const std::string& s, const QRingPtr& r = R3) { return parse<Rational>(s, r); }

Analysis analysis_of(const std::string& f, const std::optional<std::string>& z0 = "x", std::uint64_t seed = 1) {
  std::optional<QPoly> hint;
  if (z0) hint = P(*z0);
  return analyze(make_context(P(f), hint, seed));
}

std::optional<std::int64_t> detail_int(const CheckResult& r, const std::string& key) {
  for (const auto& d : r.details)
    if (d.key == key)
      if (auto* v = std::get_if<std::int64_t>(&d.value)) return *v;
  return std::nullopt;
}

}  // namespace

TEST(Numbers, SurfaceGerm) {
  const Analysis a = analysis_of("(x^3 + y^2 + z^5)*z");
  EXPECT_EQ(a.lambda0, 13);
  EXPECT_EQ(a.lambda1, 2);
  EXPECT_EQ(a.sum_mu_circ, 1);
  EXPECT_EQ(a.beta, 12);
  EXPECT_EQ(a.betti_diff, 11);
  // mu of f restricted to x = 0 is the Milnor number of (y^2 + z^5) z in the (y, z)-plane.
  EXPECT_EQ(a.mu_restricted, 7);
  EXPECT_EQ(oracle::milnor(P("(y^2 + z^5)*z", QRing::make({"y", "z"}))), 7u);
  const auto p = le_numbers(a.ctx);
  EXPECT_EQ(p.first, 13u);
  EXPECT_EQ(p.second, 2u);
  EXPECT_EQ(mu_restriction(a.ctx), 7u);
}

TEST(Numbers, BetaFormulasAgree) {
  for (const char* f : {"(x^3 + y^2 + z^5)*z", "(z^2 - x^2 - y^2)*(z - x)", "z^2 + (y^2 - x^3)^2", "y^2 + z^2"}) {
    const Analysis a = analysis_of(f);
    EXPECT_EQ(a.beta_formula[0], a.beta_formula[1]) << f;
    EXPECT_EQ(a.beta_formula[0], a.beta_formula[2]) << f;
    EXPECT_GE(a.beta, 0) << f;
    EXPECT_EQ(check_identities(a).verdict, Verdict::hold) << f;
  }
}

TEST(Numbers, ModularPrepassAgrees) {
  for (const char* f : {"(x^3 + y^2 + z^5)*z", "(z^2 - x^2 - y^2)*(z - x)", "z^2 + (y^2 - x^3)^2"}) {
    const Analysis a = analysis_of(f);
    EXPECT_EQ(modular_numbers(a.ctx, 2147483647ULL), a.numbers) << f;
  }
}

TEST(Gll, SmoothCriticalLocus) {
  const Analysis a = analysis_of("y^2 + z^2");
  EXPECT_TRUE(a.numbers.gamma_empty);
  EXPECT_EQ(a.mu_restricted, 1);
  EXPECT_EQ(a.lambda1, 1);
  EXPECT_EQ(a.beta, 0);
  EXPECT_EQ(check_gll(a).verdict, Verdict::hold);
  EXPECT_EQ(check_beta_conjecture(a).verdict, Verdict::hold);
}

TEST(Gll, NonEmptyPolarCurve) {
  const Analysis a = analysis_of("(x^3 + y^2 + z^5)*z");
  const auto r = check_gll(a);
  // Both sides of the dichotomy are false, so the equivalence holds.
  EXPECT_EQ(r.verdict, Verdict::hold);
  EXPECT_EQ(check_beta_conjecture(a).verdict, Verdict::hold);
}

TEST(PolarSurfaceSection, WorkedExamples) {
  // (Γ².V(f).V(z0))_0 = μ_0(f|V(z0)) + (Γ².V(z0,z1))_0
  struct Case {
    const char* f;
    std::int64_t lhs, mu, line;
  };
  for (const Case& c : {Case{"(x^3 + y^2 + z^5)*z", 12, 7, 5}, Case{"(z^2 - x^2 - y^2)*(z - x)", 6, 4, 2},
                        Case{"z^2 + (y^2 - x^3)^2", 4, 3, 1}}) {
    const auto ctx = make_context(P(c.f), std::optional<QPoly>(P("x")), 1);
    const auto r = check_prop41(ctx);
    EXPECT_EQ(r.verdict, Verdict::hold) << c.f;
    EXPECT_EQ(detail_int(r, "gamma2_f_z0"), c.lhs) << c.f;
    EXPECT_EQ(detail_int(r, "mu_restricted"), c.mu) << c.f;
    EXPECT_EQ(detail_int(r, "gamma2_z0_z1"), c.line) << c.f;
  }
}

TEST(BettiInequality, SurfaceGermWithGivenH) {
  const Analysis a = analysis_of("(x^3 + y^2 + z^5)*z");
  const auto r = check_thm42(a, P("y"));
  EXPECT_EQ(r.verdict, Verdict::hold);
  EXPECT_EQ(detail_int(r, "gamma2_z0_z1"), 5);
  EXPECT_EQ(detail_int(r, "betti_diff"), 11);
  // Candidate search finds a defining h as well.
  EXPECT_EQ(check_thm42(a).verdict, Verdict::hold);
}

TEST(BettiInequality, ConeGermHasNoCandidate) {
  const Analysis a = analysis_of("(z^2 - x^2 - y^2)*(z - x)");
  const auto r = check_thm42(a);
  EXPECT_EQ(r.verdict, Verdict::undecided);
  EXPECT_EQ(r.reason, "no candidate h");
}

TEST(Cor46, Examples) {
  EXPECT_EQ(check_cor46(analysis_of("z^2 + (y^2 - x^3)^2")).verdict, Verdict::hold);
  // Γ² = V(x^3 + y^2 + 6z^5) is singular: hypotheses fail.
  EXPECT_EQ(check_cor46(analysis_of("(x^3 + y^2 + z^5)*z")).verdict, Verdict::fail);
}

TEST(Milnor, Examples) {
  EXPECT_EQ(milnor_number(P("y^2 - x^3", R2)), 2u);
  EXPECT_EQ(milnor_number(P("x^2 + y^2", R2)), 1u);
  EXPECT_EQ(milnor_number(P("x", R2)), 0u);
  EXPECT_EQ(milnor_number(parse("w^3 + v^2", {"w", "v"})), 2u);
  EXPECT_THROW(milnor_number(P("y^2", R2)), Error);
}

TEST(Suspension, FrameAndProduct) {
  const QPoly g = parse("(y^2 - x^3)^2", {"x", "y"});
  const QPoly h = parse("w^3 + v^2", {"w", "v"});
  const QPoly f = suspend(g, h);
  EXPECT_EQ(f.ring()->names(), (std::vector<std::string>{"x", "y", "w", "v"}));
  EXPECT_THROW(suspend(g, parse("x^2", {"x"})), Error);
  const auto r = check_prop31(g, parse("z^2", {"z"}), std::nullopt, 1);
  EXPECT_EQ(r.check.verdict, Verdict::hold);
  EXPECT_EQ(r.beta_g, 4);
  EXPECT_EQ(r.beta_f, 4);
  EXPECT_EQ(r.mu_h, 1u);
  EXPECT_THROW(check_prop31(g, parse("1 + z^2", {"z"}), std::nullopt, 1), Error);
}

TEST(PlaneCurve, ClosedFormulaBranches) {
  struct Case {
    const char* g;
    unsigned p;
    const char* h;
  };
  for (const Case& c : {Case{"y^2 - x^3", 2, "1"}, Case{"y", 2, "x"}, Case{"y^2 - x^3", 2, "y"}, Case{"y", 3, "x"}}) {
    const QPoly g = P(c.g, R2), h = P(c.h, R2);
    const auto r = beta_plane_curve({g, h, c.p}, 1);
    EXPECT_EQ(r.check.verdict, Verdict::hold) << c.g;
    EXPECT_EQ(r.pipeline, oracle::plane_curve_beta(g, c.p, h)) << c.g;
  }
}

TEST(PlaneCurve, Validation) {
  EXPECT_THROW(beta_plane_curve({P("y", R2), P("x", R2), 1}, 1), Error);
  EXPECT_THROW(beta_plane_curve({P("y^2", R2), P("x", R2), 2}, 1), Error);
  EXPECT_THROW(beta_plane_curve({P("y", R2), P("x*y", R2), 2}, 1), Error);
  EXPECT_THROW(beta_plane_curve({P("1 + y", R2), P("x", R2), 2}, 1), Error);
}

TEST(MuProduct, Formula) {
  const auto r = mu_product_formula(P("y^2 - x^3", R2), P("y", R2));
  EXPECT_EQ(r.verdict, Verdict::hold);
  EXPECT_EQ(detail_int(r, "mu_product"), static_cast<std::int64_t>(*oracle::milnor(P("(y^2 - x^3)*y", R2))));
  EXPECT_EQ(mu_product_formula(P("x^2 - y^3", R2), P("x + y^2", R2)).verdict, Verdict::hold);
  EXPECT_THROW(mu_product_formula(P("y", R2), P("y*x", R2)), Error);
}

TEST(Independence, BetaDoesNotDependOnZ0) {
  const auto r = z0_independence(P("z^2 + (y^2 - x^3)^2"), 3, 5);
  EXPECT_EQ(r.check.verdict, Verdict::hold);
  ASSERT_EQ(r.trials.size(), 3u);
  for (const auto& t : r.trials) EXPECT_EQ(t.beta, 4);
  EXPECT_THROW(z0_independence(P("y^2 + z^2"), 2, 1), Error);
}
