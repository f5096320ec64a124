#include <gtest/gtest.h>

#include <complex>
#include <map>
#include <random>
#include <set>

#include "heightlab/errors.hpp"
#include "heightlab/factor.hpp"
#include "heightlab/modular.hpp"
#include "heightlab/parse.hpp"
#include "heightlab/poly.hpp"
#include "heightlab/resultant.hpp"
#include "heightlab/roots.hpp"

using namespace heightlab;

namespace {

UniPoly U(std::initializer_list<long> c) { return UniPoly::from_ints(c); }

UniPoly random_poly(std::mt19937_64& gen, int max_deg, int bound) {
  std::uniform_int_distribution<int> deg(1, max_deg), coef(-bound, bound);
  const int d = deg(gen);
  std::vector<mpq_class> c(d + 1);
  for (auto& v : c) v = coef(gen);
  if (c.back() == 0) c.back() = 1;
  return UniPoly(c);
}

}  // namespace

TEST(Parse, Bivariate) {
  BiPoly P = parse_bi("x^2 - t*x - 1");
  EXPECT_EQ(P.deg_x(), 2);
  EXPECT_EQ(P.deg_t(), 1);
  EXPECT_EQ(P.coeff(1, 1), -1);
}

TEST(Parse, ZeroAndExpansion) {
  EXPECT_TRUE(parse_uni("0").is_zero());
  EXPECT_EQ(parse_uni("(x-1)*(x+1)"), U({-1, 0, 1}));
  EXPECT_EQ(parse_uni("x/2 + 1/2"), UniPoly(std::vector<mpq_class>{mpq_class(1, 2), mpq_class(1, 2)}));
}

TEST(Parse, Errors) {
  try {
    parse_uni("x^2 + * 3");
    FAIL() << "expected SyntaxError";
  } catch (const SyntaxError& e) {
    EXPECT_EQ(e.position(), 6u);
  }
  EXPECT_THROW(parse_uni("x + y"), UnknownVariable);
  EXPECT_ANY_THROW(parse_uni("x / x"));
}

TEST(Parse, ScanVariables) {
  auto v = scan_variables("x0^2 + x2 - u1");
  EXPECT_EQ(v, (std::vector<std::string>{"x0", "x1", "x2", "u0", "u1"}));
}

TEST(Resultant, Examples) {
  EXPECT_EQ(resultant(U({-2, 0, 1}), U({-3, 0, 1})), 1);
  // Res(x - c, g) = g(c)
  const UniPoly g = U({5, -1, 0, 2});
  EXPECT_EQ(resultant(U({-3, 1}), g), g.eval(3));
  // Sylvester sign: det [[-x, x^2 - 1], [1, -1]]
  EXPECT_EQ(resultant_t(parse_bi("x^2 - t*x - 1"), U({-1, 1})), U({1, 1, -1}));
  EXPECT_THROW(resultant(UniPoly(), g), DomainError);
}

TEST(Resultant, Multiplicativity) {
  std::mt19937_64 gen(11);
  for (int k = 0; k < 40; ++k) {
    UniPoly f = random_poly(gen, 4, 10), g = random_poly(gen, 4, 10), h = random_poly(gen, 8, 10);
    EXPECT_EQ(resultant(f * g, h), resultant(f, h) * resultant(g, h));
  }
}

TEST(Resultant, Discriminant) {
  EXPECT_EQ(discriminant(U({-1, -1, 1})), 5);
  EXPECT_EQ(discriminant(U({1, 0, 1})), -4);
  EXPECT_EQ(discriminant(U({1, -2, 1})), 0);
  EXPECT_THROW(discriminant(U({3})), DomainError);
}

TEST(Resultant, PowerPolynomial) {
  // sqrt 2 squared is 2
  EXPECT_EQ(power_polynomial(U({-2, 0, 1}), 2), U({-2, 1}) * U({-2, 1}));
  EXPECT_EQ(power_polynomial(U({-1, -1, 1}), 2), U({1, -3, 1}));
}

TEST(Factor, SquarefreeDecompose) {
  auto parts = squarefree_decompose(U({-1, 1}) * U({-1, 1}) * U({2, 1}));
  ASSERT_EQ(parts.size(), 2u);
  std::map<int, UniPoly> by_mult;
  for (const auto& p : parts) by_mult[p.multiplicity] = p.poly;
  EXPECT_EQ(by_mult[2], U({-1, 1}));
  EXPECT_EQ(by_mult[1], U({2, 1}));
  auto one = squarefree_decompose(U({-1, -1, 1}));
  ASSERT_EQ(one.size(), 1u);
  EXPECT_EQ(one[0].multiplicity, 1);
  EXPECT_TRUE(squarefree_decompose(U({5})).empty());
}

TEST(Factor, Examples) {
  auto f = factor_rationals(U({-1, 0, 0, 0, 1}));
  ASSERT_EQ(f.factors.size(), 3u);
  EXPECT_TRUE(is_irreducible(U({-1, -1, 0, 0, 0, 1})));
  auto g = factor_rationals(U({4, 0, 0, 0, 1}));
  ASSERT_EQ(g.factors.size(), 2u);
  std::set<std::string> got{g.factors[0].poly.to_string(), g.factors[1].poly.to_string()};
  EXPECT_TRUE(got.count(U({2, -2, 1}).to_string()));
  EXPECT_TRUE(got.count(U({2, 2, 1}).to_string()));
}

TEST(Factor, DegreeCap) {
  FactorOptions o;
  o.degree_cap = 3;
  EXPECT_THROW(factor_rationals(U({-1, -1, 0, 0, 0, 1}), o), DegreeCapExceeded);
}

TEST(Factor, ProductAndRefactorProperty) {
  std::mt19937_64 gen(5);
  for (int k = 0; k < 30; ++k) {
    UniPoly f = random_poly(gen, 4, 6) * random_poly(gen, 4, 6);
    if (k % 3 == 0) f = f * random_poly(gen, 2, 3);
    auto fac = factor_rationals(f);
    UniPoly prod = UniPoly::constant(fac.unit);
    for (const auto& fa : fac.factors) {
      prod = prod * pow(fa.poly, fa.multiplicity);
      auto again = factor_rationals(fa.poly);
      ASSERT_EQ(again.factors.size(), 1u);
      EXPECT_EQ(again.factors[0].poly, fa.poly);
      EXPECT_EQ(again.factors[0].multiplicity, 1);
    }
    EXPECT_EQ(prod, f);
  }
}

TEST(Roots, Examples) {
  auto r = complex_roots(U({-1, -1, 1}), 64);
  ASSERT_EQ(r.size(), 2u);
  EXPECT_NEAR(r[0].center.re.to_double(), -0.6180339887, 1e-9);
  EXPECT_NEAR(r[1].center.re.to_double(), 1.6180339887, 1e-9);
  EXPECT_EQ(certified_real_count(r), 2u);

  auto i = complex_roots(U({1, 0, 1}), 64);
  ASSERT_EQ(i.size(), 2u);
  EXPECT_NEAR(std::fabs(i[0].center.im.to_double()), 1.0, 1e-12);
  EXPECT_EQ(certified_real_count(i), 0u);

  auto p = complex_roots(U({-1, -1, 0, 1}), 64);
  ASSERT_EQ(p.size(), 3u);
  EXPECT_EQ(certified_real_count(p), 1u);
  bool found = false;
  for (std::size_t k = 0; k < p.size(); ++k) {
    if (certified_real(p, k)) {
      EXPECT_NEAR(p[k].center.re.to_double(), 1.3247179572, 1e-9);
      found = true;
    }
  }
  EXPECT_TRUE(found);
  EXPECT_THROW(complex_roots(U({1, -2, 1}), 64), DomainError);
}

TEST(Roots, DisjointBallsNearRoots) {
  std::mt19937_64 gen(3);
  for (int k = 0; k < 20; ++k) {
    UniPoly f = random_poly(gen, 9, 20);
    if (f.degree() < 1 || !is_squarefree(f)) continue;
    auto balls = complex_roots(f, 64);
    ASSERT_EQ(static_cast<int>(balls.size()), f.degree());
    const auto& c = f.coeffs();
    for (std::size_t a = 0; a < balls.size(); ++a) {
      for (std::size_t b = a + 1; b < balls.size(); ++b) EXPECT_FALSE(balls[a].overlaps(balls[b]));
      std::complex<double> z(balls[a].center.re.to_double(), balls[a].center.im.to_double());
      std::complex<double> v = 0, dv = 0;
      for (int j = f.degree(); j >= 0; --j) {
        dv = dv * z + v;
        v = v * z + c[j].get_d();
      }
      // one Newton step stays inside a tiny neighbourhood
      EXPECT_LE(std::abs(v / dv), 1e-8 * std::max(1.0, std::abs(z)));
    }
  }
}

TEST(Roots, RadiiShrinkWithPrecision) {
  const UniPoly f = U({-1, -1, 0, 1});
  RootOptions lo, hi;
  lo.precision = 64;
  hi.precision = 256;
  hi.max_radius = 1e-60;
  auto a = complex_roots(f, lo), b = complex_roots(f, hi);
  for (std::size_t k = 0; k < a.size(); ++k) EXPECT_LE(b[k].radius.to_double(), a[k].radius.to_double());
  for (const auto& ball : b) EXPECT_LE(ball.radius.to_double(), 1e-60);
}

TEST(Sturm, RealRootCount) {
  EXPECT_EQ(real_root_count(U({0, -1, 0, 1})), 3);
  EXPECT_EQ(real_root_count(U({1, 0, 1})), 0);
  RealInterval pos;
  pos.lo = mpq_class(0);
  EXPECT_EQ(real_root_count(U({-1, -1, 1}), pos), 1);
}

TEST(Modular, FieldAndFactorization) {
  EXPECT_TRUE(is_prime_u64(2305843009213693951ULL));
  EXPECT_FALSE(is_prime_u64(2305843009213693953ULL));
  PrimeField F(101);
  EXPECT_EQ(F.mul(F.inv(37), 37), 1u);
  // x^4 + 1 splits into linear factors mod 41 (41 = 1 mod 8)
  PrimeField G(41);
  auto fs = G.factor_squarefree(FpPoly{1, 0, 0, 0, 1});
  EXPECT_EQ(fs.size(), 4u);
  EXPECT_EQ(previous_prime(100), 97u);
}
