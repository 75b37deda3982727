#include <gtest/gtest.h>

#include <random>
#include <set>

#include "betainv/cli/parse.hpp"
#include "betainv/ring/format.hpp"
#include "betainv/ring/linear.hpp"
#include "oracles.hpp"

using namespace betainv;

namespace {

const QRingPtr R3 = QRing::make({"x", "y", "z"});

QPoly P(const std::string& s, const QRingPtr& r = R3) { return parse<Rational>(s, r); }

// Term-by-term expansion oracle: multiply every term pair and accumulate in a map.
QPoly naive_product(const QPoly& a, const QPoly& b) {
  std::map<std::vector<unsigned>, Rational> acc;
  const std::size_t n = a.ring()->size();
  for (const auto& s : a.terms())
    for (const auto& t : b.terms()) {
      std::vector<unsigned> e(n);
      for (std::size_t i = 0; i < n; ++i) e[i] = s.m[i] + t.m[i];
      acc[e] += s.c * t.c;
    }
  std::vector<Term<Rational>> terms;
  for (const auto& [e, c] : acc) {
    if (c == 0) continue;
    Monomial m;
    for (std::size_t i = 0; i < n; ++i) m.set(i, e[i]);
    terms.push_back({m, c});
  }
  return QPoly::from_terms(a.ring(), std::move(terms));
}

QPoly random_poly(std::mt19937_64& rng, const QRingPtr& r, unsigned terms = 4, unsigned deg = 3) {
  std::uniform_int_distribution<int> coef(-5, 5), ex(0, static_cast<int>(deg));
  std::vector<Term<Rational>> ts;
  for (unsigned k = 0; k < terms; ++k) {
    Monomial m;
    for (std::size_t i = 0; i < r->size(); ++i) m.set(i, static_cast<unsigned>(ex(rng)));
    ts.push_back({m, Rational(coef(rng), 1 + (k % 3))});
  }
  return QPoly::from_terms(r, std::move(ts));
}

}  // namespace

TEST(Polynomial, ExpandsTheSurfaceGerm) {
  EXPECT_EQ(P("(x^3 + y^2 + z^5)*z"), P("x^3*z + y^2*z + z^6"));
  EXPECT_EQ(to_string(P("(x^3 + y^2 + z^5)*z")), to_string(P("z^6 + x^3*z + y^2*z")));
}

TEST(Polynomial, AdditiveIdentity) {
  const QPoly p = P("x^2 - 3/4*y*z + 1");
  EXPECT_EQ(p + QPoly(R3), p);
}

TEST(Polynomial, SquareMatchesTermOracle) {
  const QPoly g = P("y^2 - x^3");
  EXPECT_EQ(g * g, naive_product(g, g));
  EXPECT_EQ(g * g, P("y^4 - 2*x^3*y^2 + x^6"));
}

TEST(Polynomial, ProductMatchesTermOracleOnRandomPairs) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 50; ++i) {
    const QPoly a = random_poly(rng, R3), b = random_poly(rng, R3);
    EXPECT_EQ(a * b, naive_product(a, b));
  }
}

TEST(Polynomial, RingAxiomsOnRandomTriples) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 40; ++i) {
    const QPoly a = random_poly(rng, R3), b = random_poly(rng, R3), c = random_poly(rng, R3);
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ(a * (b + c), a * b + a * c);
    EXPECT_EQ(a + b, b + a);
    EXPECT_EQ(a - a, QPoly(R3));
  }
}

TEST(Polynomial, ExactDivision) {
  const QPoly g = P("y^2 - x^3"), h = P("x*z + 2");
  EXPECT_EQ(exact_divide(g * h, g), h);
  EXPECT_TRUE(divides(g, g * h));
  EXPECT_FALSE(divides(g, h));
  try {
    exact_divide(h, g);
    FAIL() << "expected not_divisible";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::not_divisible);
  }
}

TEST(Polynomial, FrameMismatchIsRejected) {
  const QPoly a = P("x"), b = parse("x", {"x", "w"});
  try {
    (void)(a + b);
    FAIL() << "expected frame mismatch";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::frame_mismatch);
  }
}

TEST(Partial, SurfaceGermDerivatives) {
  const QPoly f = P("(x^3 + y^2 + z^5)*z");
  EXPECT_EQ(partial(f, "z"), P("x^3 + y^2 + 6*z^5"));
  EXPECT_EQ(partial(f, "y"), P("2*y*z"));
  EXPECT_EQ(partial(f, 0), P("3*x^2*z"));
  EXPECT_TRUE(partial(P("7/3"), "x").is_zero());
  EXPECT_THROW(partial(f, "w"), Error);
}

TEST(Partial, AdditiveAndLeibnizOnRandomPairs) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 40; ++i) {
    const QPoly a = random_poly(rng, R3), b = random_poly(rng, R3);
    for (std::size_t v = 0; v < 3; ++v) {
      EXPECT_EQ(partial(a + b, v), partial(a, v) + partial(b, v));
      EXPECT_EQ(partial(a * b, v), partial(a, v) * b + a * partial(b, v));
      EXPECT_EQ(partial(a, v), oracle::d(a, v));
    }
  }
}

TEST(LinearChange, IdentityAndSwap) {
  const auto R2 = QRing::make({"x", "y"});
  const QPoly g = P("y^2 - x^3", R2);
  EXPECT_EQ(linear_change(g, Matrix<Rational>{{1, 0}, {0, 1}}), g);
  EXPECT_EQ(linear_change(g, Matrix<Rational>{{0, 1}, {1, 0}}), P("x^2 - y^3", R2));
  EXPECT_THROW(linear_change(g, Matrix<Rational>{{1, 1}, {1, 1}}), Error);
}

TEST(LinearChange, RoundTripAndHomomorphism) {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> coef(-4, 4);
  for (int i = 0; i < 20; ++i) {
    Matrix<Rational> M(3, std::vector<Rational>(3));
    do {
      for (auto& row : M)
        for (auto& c : row) c = coef(rng);
    } while (rank(M) < 3);
    const Matrix<Rational> Minv = inverse(M, R3->field());
    const QPoly a = random_poly(rng, R3), b = random_poly(rng, R3);
    // p(Mz) then substituting z -> M^-1 z gives back p.
    EXPECT_EQ(linear_change(linear_change(a, M), Minv), a);
    EXPECT_EQ(linear_change(a * b, M), linear_change(a, M) * linear_change(b, M));
  }
}

TEST(RandomLinearForm, DeterministicAndFull) {
  const QPoly a = random_linear_form<Rational>(42, R3), b = random_linear_form<Rational>(42, R3);
  EXPECT_EQ(a, b);
  EXPECT_EQ(a.size(), 3u);
  EXPECT_EQ(a.total_degree(), 1u);
  std::set<std::string> forms;
  for (std::uint64_t s = 0; s < 1000; ++s) forms.insert(to_string(random_linear_form<Rational>(s, R3)));
  // 14^3 = 2744 coefficient vectors; 1000 uniform draws give about
  // 2744 * (1 - exp(-1000 / 2744)) = 838 distinct ones on average.
  EXPECT_GT(forms.size(), 800u);
}

TEST(Modular, ReductionCommutesWithArithmetic) {
  const auto Rp = Ring<Fp>::make({"x", "y", "z"}, Field<Fp>(1048583));
  std::mt19937_64 rng(13);
  for (int i = 0; i < 30; ++i) {
    const QPoly a = random_poly(rng, R3), b = random_poly(rng, R3);
    EXPECT_EQ(reduce_mod(a * b, Rp), reduce_mod(a, Rp) * reduce_mod(b, Rp));
    EXPECT_EQ(reduce_mod(a + b, Rp), reduce_mod(a, Rp) + reduce_mod(b, Rp));
    EXPECT_EQ(reduce_mod(partial(a, 1), Rp), partial(reduce_mod(a, Rp), 1));
  }
  EXPECT_THROW(Field<Fp>(101), Error);
  EXPECT_THROW(Field<Fp>((1ULL << 21) + 2), Error);
}

TEST(MonomialOrder, LocalRanksOneAboveVariables) {
  const auto local = MonomialOrder::local();
  const Monomial one, x = Monomial::variable(0), x2 = Monomial::variable(0, 2), y = Monomial::variable(1);
  EXPECT_TRUE(local.greater(one, x));
  EXPECT_TRUE(local.greater(y, x2));
  const auto global = MonomialOrder::degrevlex();
  EXPECT_TRUE(global.greater(x, one));
  EXPECT_TRUE(global.greater(x2, y));
}

TEST(Parser, SyntaxErrorColumn) {
  try {
    P("x + ");
    FAIL() << "expected a syntax error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.column(), 5u);
    EXPECT_EQ(e.kind(), ErrorKind::input);
  }
}

TEST(Parser, RejectsImplicitMultiplicationAndUnknownNames) {
  EXPECT_THROW(P("2x"), ParseError);
  EXPECT_THROW(P("x y"), ParseError);
  EXPECT_THROW(P("x + w"), Error);
  EXPECT_THROW(P("(x + y"), ParseError);
}

TEST(Parser, UnaryMinusAndRationals) {
  EXPECT_EQ(P("-x^2 + 3/6*y"), P("1/2*y - x^2"));
  EXPECT_EQ(P("--x"), P("x"));
  EXPECT_EQ(P("-(x - y)^2"), P("-x^2 + 2*x*y - y^2"));
}

TEST(Parser, RoundTripIsCanonical) {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 50; ++i) {
    const QPoly a = random_poly(rng, R3, 6, 4);
    EXPECT_EQ(P(to_string(a)), a);
    EXPECT_EQ(to_string(P(to_string(a))), to_string(a));
  }
}
