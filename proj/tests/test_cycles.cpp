#include <gtest/gtest.h>

#include "betainv/cli/parse.hpp"
#include "betainv/cycles/branches.hpp"
#include "betainv/cycles/polar.hpp"
#include "oracles.hpp"

using namespace betainv;

namespace {

const QRingPtr R3 = QRing::make({"x", "y", "z"});

QPoly P(const std::string& s, const QRingPtr& r = R3) { return parse<Rational>(s, r); }

QIdeal I(std::initializer_list<const char*> gens, const QRingPtr& r = R3) {
  QIdeal out(r);
  for (const char* g : gens) out.add(P(g, r));
  return out;
}

GermContext<Rational> ctx_of(const std::string& f, const std::optional<std::string>& z0, std::uint64_t seed = 1) {
  std::optional<QPoly> hint;
  if (z0) hint = P(*z0);
  return make_context(P(f), hint, seed);
}

// Same variety germ at the origin: equal after saturating away other points.
bool same_germ(const QIdeal& a, const QIdeal& b) { return ideal_equal(saturate_at_origin(a), saturate_at_origin(b)); }

const CycleComponent* find_component(const GermContext<Rational>& ctx, const CurveCycle& Z,
                                     std::initializer_list<const char*> gens) {
  for (const auto& c : Z.components)
    if (same_germ(ctx.in_user(c.ideal), I(gens))) return &c;
  return nullptr;
}

}  // namespace

TEST(Context, HintAccepted) {
  const auto ctx = ctx_of("(x^3 + y^2 + z^5)*z", "x");
  EXPECT_TRUE(ctx.hint_used);
  EXPECT_EQ(ctx.attempts, 1u);
  EXPECT_EQ(ctx.z0_form, P("x"));
  EXPECT_TRUE(ctx_of("y^2 + z^2", "x").hint_used);
}

TEST(Context, NonGenericHintReplacedByRandomForm) {
  const auto ctx = ctx_of("x^2 + y^2", "x");  // the z-axis lies in V(x)
  EXPECT_FALSE(ctx.hint_used);
  EXPECT_GE(ctx.attempts, 2u);
  EXPECT_FALSE(ctx.notes.empty());
  EXPECT_EQ(dim_at_origin(ctx.relative_jacobian() + ctx.var(0)), 0);
}

TEST(Context, Errors) {
  try {
    ctx_of("x^2 + y^2 + z^2", std::nullopt);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::not_one_dimensional);
  }
  try {
    ctx_of("x^2", std::nullopt);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::not_one_dimensional);
  }
  EXPECT_THROW(ctx_of("1 + x*y", std::nullopt), Error);
  EXPECT_THROW(make_context(QPoly(R3), std::optional<QPoly>{}, 1), Error);
}

TEST(Context, DeterministicInTheSeed) {
  const auto a = ctx_of("(z^2 - x^2 - y^2)*(z - x)", std::nullopt, 9);
  const auto b = ctx_of("(z^2 - x^2 - y^2)*(z - x)", std::nullopt, 9);
  EXPECT_EQ(a.z0_form, b.z0_form);
  EXPECT_EQ(a.f, b.f);
}

TEST(PolarSurface, PaperExamples) {
  EXPECT_TRUE(ideal_equal(polar_surface(ctx_of("(x^3 + y^2 + z^5)*z", "x")), I({"x^3 + y^2 + 6*z^5"})));
  EXPECT_TRUE(ideal_equal(polar_surface(ctx_of("z^2 + (y^2 - x^3)^2", "x")), I({"z"})));
  const auto ctx = ctx_of("(z^2 - x^2 - y^2)*(z - x)", "x");
  EXPECT_TRUE(ideal_equal(ctx.in_user(polar_surface(ctx)), I({"2*z*(z - x) + (z^2 - x^2 - y^2)"})));
}

TEST(PolarAndLe, SurfaceGerm) {
  const auto ctx = ctx_of("(x^3 + y^2 + z^5)*z", "x");
  const auto pc = polar_and_le(ctx, true);
  ASSERT_TRUE(pc.gamma.has_value());
  ASSERT_EQ(pc.gamma->components.size(), 1u);
  ASSERT_EQ(pc.lambda.components.size(), 1u);
  const auto* g = find_component(ctx, *pc.gamma, {"y", "x^3 + 6*z^5"});
  ASSERT_NE(g, nullptr);
  EXPECT_EQ(g->multiplicity, 1u);
  EXPECT_EQ(g->mult0, 3u);
  const auto* c = find_component(ctx, pc.lambda, {"z", "x^3 + y^2"});
  ASSERT_NE(c, nullptr);
  EXPECT_EQ(c->multiplicity, 1u);
  EXPECT_EQ(c->section, 2u);
  EXPECT_EQ(c->mult0, 2u);
  EXPECT_EQ(intersect_number(*pc.gamma, ctx.partials[0]), 13u);
  EXPECT_EQ(intersect_number(pc.lambda, ctx.var(0)), 2u);
  // Same numbers from the undecomposed ideals.
  EXPECT_EQ(intersect_number(pc.ideals.gamma, ctx.partials[0]), 13u);
  EXPECT_EQ(intersect_number(pc.ideals.lambda, ctx.var(0)), 2u);
}

TEST(PolarAndLe, ConeGerm) {
  const auto ctx = ctx_of("(z^2 - x^2 - y^2)*(z - x)", "x");
  const auto pc = polar_and_le(ctx, true);
  ASSERT_TRUE(pc.gamma.has_value());
  ASSERT_EQ(pc.gamma->components.size(), 1u);
  EXPECT_NE(find_component(ctx, *pc.gamma, {"y", "3*z + x"}), nullptr);
  ASSERT_EQ(pc.lambda.components.size(), 1u);
  const auto* c = find_component(ctx, pc.lambda, {"y", "z - x"});
  ASSERT_NE(c, nullptr);
  EXPECT_EQ(c->multiplicity, 3u);
}

TEST(PolarAndLe, SmoothCriticalLocus) {
  const auto ctx = ctx_of("y^2 + z^2", "x");
  const auto pc = polar_and_le(ctx, true);
  EXPECT_TRUE(pc.ideals.gamma_empty);
  EXPECT_TRUE(pc.gamma->empty());
  ASSERT_EQ(pc.lambda.components.size(), 1u);
  EXPECT_NE(find_component(ctx, pc.lambda, {"y", "z"}), nullptr);
  EXPECT_EQ(pc.lambda.components[0].multiplicity, 1u);
}

TEST(PolarAndLe, CycleAdditivity) {
  for (const char* f : {"(x^3 + y^2 + z^5)*z", "(z^2 - x^2 - y^2)*(z - x)", "z^2 + (y^2 - x^3)^2", "y^2 + z^2"}) {
    const auto ctx = ctx_of(f, "x");
    const auto P = polar_ideals(ctx);
    const std::uint64_t whole = local_length(ctx.relative_jacobian() + ctx.var(0));
    const std::uint64_t gamma = P.gamma_empty ? 0 : intersect_number(P.gamma, ctx.var(0));
    EXPECT_EQ(whole, gamma + intersect_number(P.lambda, ctx.var(0))) << f;
    // Every Le component lies in V(df/dz0); the polar ideal has none there.
    if (!P.gamma_empty) EXPECT_TRUE(ideal_equal(saturate(P.gamma, ctx.partials[0]).ideal, P.gamma)) << f;
  }
}

TEST(Decompose, MinorIdealOfTheSurfaceGerm) {
  const CurveCycle Z = decompose(I({"2*y*z", "x^3 + y^2 + 6*z^5"}));
  ASSERT_EQ(Z.components.size(), 2u);
  for (const auto& c : Z.components) EXPECT_EQ(c.multiplicity, 1u);
  const auto* a = [&]() -> const CycleComponent* {
    for (const auto& c : Z.components)
      if (same_germ(c.ideal, I({"y", "x^3 + 6*z^5"}))) return &c;
    return nullptr;
  }();
  EXPECT_NE(a, nullptr);
}

TEST(Decompose, MinorIdealOfTheConeGerm) {
  const QPoly f = P("(z^2 - x^2 - y^2)*(z - x)");
  const CurveCycle Z = decompose(QIdeal(R3, {partial(f, 1), partial(f, 2)}));
  ASSERT_EQ(Z.components.size(), 2u);
  std::vector<std::uint64_t> mult;
  for (const auto& c : Z.components) {
    if (same_germ(c.ideal, I({"y", "3*z + x"}))) mult.push_back(c.multiplicity);
    if (same_germ(c.ideal, I({"y", "z - x"}))) mult.push_back(10 * c.multiplicity);
  }
  std::sort(mult.begin(), mult.end());
  EXPECT_EQ(mult, (std::vector<std::uint64_t>{1, 30}));
}

TEST(Decompose, PrimeIdealIsItself) {
  const CurveCycle Z = decompose(I({"y", "x^3 - z^2"}));
  ASSERT_EQ(Z.components.size(), 1u);
  EXPECT_EQ(Z.components[0].multiplicity, 1u);
  EXPECT_TRUE(Z.components[0].certified_prime);
}

TEST(Decompose, DropsComponentsAwayFromTheOrigin) {
  const CurveCycle Z = decompose(I({"y", "z*(z - 1)"}));
  ASSERT_EQ(Z.components.size(), 1u);
  EXPECT_TRUE(same_germ(Z.components[0].ideal, I({"y", "z"})));
}

TEST(Decompose, PlaneCurveSquare) {
  const auto R2 = QRing::make({"x", "y"});
  // Transversal Milnor number of (y^2 - x^3)^2 along its critical curve is p - 1 = 1.
  const auto ctx = make_context(P("(y^2 - x^3)^2", R2), std::optional<QPoly>{}, 1);
  const auto pc = polar_and_le(ctx);
  ASSERT_EQ(pc.lambda.components.size(), 1u);
  EXPECT_EQ(pc.lambda.components[0].multiplicity, 1u);
}

TEST(Intersect, PairIdeal) {
  EXPECT_EQ(local_length(I({"z", "x", "y"})), 1u);
  EXPECT_THROW(local_length(I({"z", "x"})), Error);
  EXPECT_EQ(intersect_number(I({"y", "x^3 + 6*z^5"}), P("3*x^2*z")), 13u);
}

TEST(Multiplicity, AtOrigin) {
  EXPECT_EQ(mult_at_origin(I({"z", "x^3 + y^2"})).value, 2u);
  EXPECT_EQ(mult_at_origin(I({"y", "z"})).value, 1u);
  EXPECT_EQ(mult_at_origin(I({"y", "x^3 + 6*z^5"})).value, 3u);
  // Oracle: slice of x^3 + 6z^5 = 0 by a line z = 2x + ... in the (x, z)-plane.
  EXPECT_EQ(oracle::local_colength(I({"y", "x^3 + 6*z^5", "x - 2*z"})), 3u);
  EXPECT_EQ(mult_at_origin(I({"x^3 + y^2 + 6*z^5"})).value, 2u);
}

TEST(Smoothness, Examples) {
  EXPECT_TRUE(is_smooth_at_origin(I({"z"})));
  EXPECT_FALSE(is_smooth_at_origin(I({"z", "x^3 + y^2"})));
  EXPECT_TRUE(is_smooth_at_origin(I({"y", "z"})));
  EXPECT_FALSE(is_smooth_at_origin(I({"z^2 - x^2 - y^2"})));
}

TEST(Transversality, Examples) {
  EXPECT_TRUE(is_transverse_line_section(I({"z"}), P("x"), P("y")));
  EXPECT_FALSE(is_transverse_line_section(I({"z"}), P("x"), P("z")));
  // {x = y = 0} is the z-axis, which lies in the plane x = y.
  EXPECT_FALSE(is_transverse_line_section(I({"x - y"}), P("x"), P("y")));
  EXPECT_TRUE(is_transverse_line_section(I({"x - y"}), P("x"), P("z")));
}

TEST(Branches, PlaneCurves) {
  const auto R2 = QRing::make({"x", "y"});
  EXPECT_EQ(count_branches(P("y^2 - x^3", R2)), 1u);
  EXPECT_EQ(count_branches(P("y^2 - x^2", R2)), 2u);
  EXPECT_EQ(count_branches(P("y^2 + x^2", R2)), 2u);
  EXPECT_EQ(count_branches(P("y^3 - x^4", R2)), 1u);
  EXPECT_EQ(count_branches(P("y", R2)), 1u);
}
