#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "heightlab/errors.hpp"
#include "heightlab/heights.hpp"
#include "heightlab/parse.hpp"
#include "heightlab/resultant.hpp"

using namespace heightlab;

namespace {

UniPoly U(std::initializer_list<long> c) { return UniPoly::from_ints(c); }

const double kGolden = 0.5 * std::log((1.0 + std::sqrt(5.0)) / 2.0);

}  // namespace

TEST(HeightAlgebraic, Examples) {
  auto golden = algebraic_roots(U({-1, -1, 1}), true);
  ASSERT_EQ(golden.size(), 2u);
  HeightValue h = height_algebraic(golden[1]);
  EXPECT_NEAR(h.value, kGolden, 1e-12);
  EXPECT_LE(h.abs_error, 1e-12);
  EXPECT_EQ(h.method, HeightMethod::ExactRoots);

  EXPECT_NEAR(height_algebraic(AlgebraicNumber::rational(1)).value, 0.0, 1e-15);
  EXPECT_NEAR(height_algebraic(AlgebraicNumber::rational(mpq_class(-3, 4))).value, std::log(4.0), 1e-12);
  auto r2 = algebraic_roots(U({-2, 0, 1}), true);
  EXPECT_NEAR(height_algebraic(r2[0]).value, 0.5 * std::log(2.0), 1e-12);
}

TEST(HeightAlgebraic, AssumedFlagPropagates) {
  auto a = algebraic_roots(U({-1, -1, 1}), false);
  EXPECT_TRUE(height_algebraic(a[0]).assumed_irreducible);
}

TEST(MahlerIntegral, Examples) {
  EXPECT_NEAR(mahler_integral_height(U({-1, -1, 1}), 1e-9).value, kGolden, 1e-9);
  EXPECT_NEAR(mahler_integral_height(U({0, 1}), 1e-9).value, 0.0, 1e-9);
  EXPECT_NEAR(mahler_integral_height(U({-1, 2}), 1e-9).value, std::log(2.0), 1e-9);
  EXPECT_EQ(mahler_integral_height(U({-1, 2})).method, HeightMethod::Quadrature);
  EXPECT_THROW(mahler_integral_height(U({3})), DomainError);
}

TEST(MahlerIntegral, RootsOnTheCircle) {
  // cyclotomic and reciprocal polynomials put roots exactly on the contour
  EXPECT_NEAR(mahler_integral_height(U({1, 1, 1, 1, 1}), 1e-9).value, 0.0, 1e-8);
  EXPECT_NEAR(mahler_integral_height(U({1, 0, 0, 0, 0, 0, 1}), 1e-9).value, 0.0, 1e-8);
  const UniPoly lehmer = U({1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1});
  EXPECT_NEAR(mahler_integral_height(lehmer, 1e-9).value, std::log(1.17628081825991750654) / 10, 1e-9);
}

TEST(MahlerIntegral, AgreesWithRootFormula) {
  std::mt19937_64 gen(21);
  std::uniform_int_distribution<int> deg(1, 9), coef(-12, 12);
  int checked = 0;
  while (checked < 50) {
    std::vector<mpq_class> c(deg(gen) + 1);
    for (auto& v : c) v = coef(gen);
    if (c.back() == 0) continue;
    UniPoly f(c);
    const double from_roots = log_mahler_measure(f.primitive(), 1e-12).value / f.degree();
    HeightValue integral = mahler_integral_height(f, 1e-10);
    EXPECT_NEAR(from_roots, integral.value, 1e-7) << f.to_string();
    ++checked;
  }
}

TEST(HeightPoint, Examples) {
  auto p = ProjectivePoint::from_ints({3, 4, 0});
  EXPECT_NEAR(height_point(p, Norm::Inf).value, std::log(4.0), 1e-15);
  EXPECT_NEAR(height_point(p, Norm::L2).value, std::log(5.0), 1e-15);
  auto e = ProjectivePoint::from_ints({1, 0, 0, 0});
  EXPECT_EQ(height_point(e, Norm::Inf).value, 0.0);
  EXPECT_EQ(height_point(e, Norm::L2).value, 0.0);
  EXPECT_THROW(ProjectivePoint::from_ints({0, 0}), DomainError);
}

TEST(HeightPoint, Normalization) {
  ProjectivePoint p(std::vector<mpq_class>{mpq_class(1, 2), mpq_class(1, 3), 1});
  EXPECT_EQ(p.coords, (std::vector<mpz_class>{3, 2, 6}));
  auto q = ProjectivePoint::from_ints({6, 8, 0});
  EXPECT_EQ(q.coords, (std::vector<mpz_class>{3, 4, 0}));
}

TEST(HeightPoly, Examples) {
  BiPoly P = parse_bi("x^2 - t*x - 1");
  EXPECT_EQ(height_poly(P, Norm::Inf).value, 0.0);
  EXPECT_NEAR(height_poly(P, Norm::L2).value, 0.5 * std::log(3.0), 1e-15);
  EXPECT_EQ(height_poly(U({0, 7}), Norm::Inf).value, 0.0);
  EXPECT_EQ(height_poly(U({0, 7}), Norm::L2).value, 0.0);
  EXPECT_THROW(height_poly(UniPoly(), Norm::Inf), DomainError);
}

TEST(Sandwich, Examples) {
  auto r = sandwich_report(ProjectivePoint::from_ints({3, 4, 0}), 2);
  EXPECT_TRUE(r.holds);
  EXPECT_NEAR(r.upper, std::log(4.0) + 0.5 * std::log(3.0), 1e-15);
  for (int n = 1; n <= 8; ++n) {
    std::vector<mpq_class> ones(n + 1, 1);
    auto e = sandwich_report(ProjectivePoint(ones), n);
    EXPECT_TRUE(e.holds);
    EXPECT_NEAR(e.h_2 - e.h_inf, 0.5 * std::log(n + 1.0), 1e-12);
  }
}

TEST(Sandwich, RandomPoints) {
  std::mt19937_64 gen(9);
  std::uniform_int_distribution<long> c(-1000000000L, 1000000000L);
  for (int n : {1, 2, 3, 4, 7}) {
    for (int k = 0; k < 300; ++k) {
      std::vector<mpq_class> x(n + 1);
      for (auto& v : x) v = c(gen);
      x[0] += 1 - (x[0] != 0 ? 1 : 0);  // never all zero
      ProjectivePoint p(x);
      EXPECT_TRUE(sandwich_check(p, n));
      EXPECT_GE(height_point(p, Norm::Inf).lower(), -1e-15);
    }
  }
}

TEST(Height, PowerRule) {
  // h(alpha^n) = n h(alpha), minimal polynomial of alpha^n by elimination
  for (const UniPoly& m : {U({-1, -1, 1}), U({-1, -1, 0, 1}), U({-3, 1, 0, 1}), U({1, -3, 0, 2})}) {
    const double h1 = log_mahler_measure(m).value / m.degree();
    for (unsigned n = 2; n <= 5; ++n) {
      const UniPoly mn = power_polynomial(m, n);
      EXPECT_NEAR(log_mahler_measure(mn).value / mn.degree(), n * h1, 1e-9) << m.to_string() << " n=" << n;
    }
  }
}

TEST(Height, NonNegativity) {
  std::mt19937_64 gen(4);
  std::uniform_int_distribution<int> deg(1, 8), coef(-20, 20);
  for (int k = 0; k < 60; ++k) {
    std::vector<mpq_class> c(deg(gen) + 1);
    for (auto& v : c) v = coef(gen);
    if (c.back() == 0) c.back() = 1;
    UniPoly f = UniPoly(c).primitive();
    HeightValue h = log_mahler_measure(f);
    EXPECT_GE(h.value, -h.abs_error);
  }
}
