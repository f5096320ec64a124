#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "heightlab/constants.hpp"
#include "heightlab/errors.hpp"

using namespace heightlab;

namespace {

using E = BoundExpr;

mpz_class power(long b, unsigned long e) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), b, e);
  return r;
}

mpz_class factorial(unsigned long n) {
  mpz_class r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

mpq_class random_rational(std::mt19937_64& gen) {
  std::uniform_int_distribution<long> num(0, 100000), den(1, 1000);
  return mpq_class(num(gen), den(gen));
}

// Random expression over non-negative rationals.
E random_expr(std::mt19937_64& gen, int depth) {
  std::uniform_int_distribution<int> pick(0, depth > 0 ? 5 : 0);
  switch (pick(gen)) {
    case 0: {
      mpq_class q = random_rational(gen);
      q.canonicalize();
      return E(q);
    }
    case 1: return random_expr(gen, depth - 1) + random_expr(gen, depth - 1);
    case 2: return random_expr(gen, depth - 1) * random_expr(gen, depth - 1);
    case 3: return random_expr(gen, depth - 1) / (random_expr(gen, depth - 1) + 1);
    case 4: return E::maximum({random_expr(gen, depth - 1), random_expr(gen, depth - 1)});
    default: return E::power(random_expr(gen, depth - 1), E(std::uniform_int_distribution<long>(0, 4)(gen)));
  }
}

double log10_mid(const LogInterval& v) {
  auto b = v.log10_bounds();
  return 0.5 * (b.lo + b.hi);
}

}  // namespace

TEST(LogInterval, ContainsExactOperations) {
  std::mt19937_64 gen(13);
  for (int k = 0; k < 200; ++k) {
    const mpq_class a = random_rational(gen), b = random_rational(gen) + 1;
    const LogInterval A = LogInterval::from_rational(a), B = LogInterval::from_rational(b);
    EXPECT_TRUE(A.contains(a));
    EXPECT_TRUE((A * B).contains(a * b));
    EXPECT_TRUE((A / B).contains(a / b));
    EXPECT_TRUE((A + B).contains(a + b));
    EXPECT_TRUE(max(A, B).contains(a > b ? a : b));
    mpq_class cube = b * b * b;
    EXPECT_TRUE(pow(B, LogInterval::from_integer(3)).contains(cube));
    EXPECT_FALSE((A + B).contains(a + b + mpq_class(1, 1000)));
  }
}

TEST(LogInterval, ExpAndLog) {
  std::mt19937_64 gen(14);
  for (int k = 0; k < 50; ++k) {
    const mpq_class x = random_rational(gen) / 1000;
    const double xd = x.get_d();
    auto e = exp(LogInterval::from_rational(x)).log10_bounds();
    EXPECT_LE(e.lo, xd / std::log(10.0) + 1e-12);
    EXPECT_GE(e.hi, xd / std::log(10.0) - 1e-12);
    auto l = log(LogInterval::from_rational(x + 1));
    ASSERT_TRUE(l.to_double().has_value());
    EXPECT_NEAR(*l.to_double(), std::log1p(xd), 1e-12 * (1 + std::log1p(xd)));
  }
  EXPECT_ANY_THROW(log(LogInterval::from_rational(mpq_class(1, 2))));
  EXPECT_TRUE(LogInterval::zero().is_zero());
  EXPECT_TRUE((LogInterval::zero() * LogInterval::from_integer(5)).is_zero());
}

TEST(LogInterval, TowerValues) {
  // 10^(10^30) still has a plain log; 10^(10^30000) does not
  auto plain = pow(LogInterval::from_integer(10), LogInterval::from_integer(power(10, 30)));
  EXPECT_FALSE(plain.is_tower());
  EXPECT_NEAR(plain.log10_bounds().lo / 1e30, 1.0, 1e-12);
  auto big = pow(LogInterval::from_integer(10), LogInterval::from_integer(power(10, 30000)));
  auto b = big.log10_bounds();
  EXPECT_TRUE(b.tower);
  EXPECT_NEAR(b.lo, 30000.0, 1e-9);
  EXPECT_NEAR(b.hi, 30000.0, 1e-9);
  auto inv = LogInterval::one() / big;
  EXPECT_EQ(inv.log10_bounds().sign, -1);
  EXPECT_THROW(exp(big), ScaleCapExceeded);
}

TEST(LogInterval, PrecisionDoublingShrinks) {
  for (int g : {1, 2}) {
    const E C3 = C3_chain(g).C3;
    const LogInterval lo = C3.evaluate({}, 128), hi = C3.evaluate({}, 256);
    EXPECT_LE(hi.width(), lo.width());
    EXPECT_GE(hi.lo().to_double(), lo.lo().to_double());
    EXPECT_LE(hi.hi().to_double(), lo.hi().to_double());
  }
  const E c31 = derive_c31(3);
  EXPECT_LE(c31.evaluate({}, 512).width(), c31.evaluate({}, 128).width());
}

TEST(BoundExpr, ExactValueLiesInEnclosure) {
  std::mt19937_64 gen(15);
  int checked = 0;
  for (int k = 0; k < 300; ++k) {
    const E e = random_expr(gen, 3);
    auto ex = e.exact();
    if (!ex) continue;
    ++checked;
    EXPECT_TRUE(e.evaluate().contains(*ex)) << e.trace();
  }
  EXPECT_GT(checked, 250);
}

TEST(BoundExpr, FactorialAndVariables) {
  const E f = E::factorial(E(20L));
  EXPECT_EQ(*f.exact(), mpq_class(factorial(20)));
  const E v = E::variable("h") * 3 + 1;
  EXPECT_THROW(v.evaluate(), UnknownVariable);
  EXPECT_EQ(*v.exact({{"h", mpq_class(2)}}), 7);
  EXPECT_TRUE(v.evaluate({{"h", LogInterval::from_integer(2)}}).contains(7));
  EXPECT_FALSE(E::logarithm(E(3L)).exact().has_value());
}

TEST(BoundExpr, TraceAndDefinitions) {
  const E inner = (E(2L) + E(3L)).named("five");
  const E outer = (inner * inner).named("sq");
  EXPECT_NE(outer.trace().find("five"), std::string::npos);
  auto defs = outer.definitions();
  ASSERT_EQ(defs.size(), 2u);
  EXPECT_EQ(defs[0].rfind("five", 0), 0u);
  EXPECT_EQ(defs[1].rfind("sq", 0), 0u);
  EXPECT_EQ(outer.children().size(), 2u);
  EXPECT_EQ(outer.children()[0].id(), outer.children()[1].id());
  EXPECT_NE(outer.to_json().find("\"root\""), std::string::npos);
}

TEST(Constants, GenusCapThetaAmbientC9) {
  EXPECT_EQ(genus_cap(1), 272);
  EXPECT_EQ(genus_cap(2), 262656);
  EXPECT_EQ(genus_cap(3), mpz_class("604004352"));
  for (int g = 1; g <= 6; ++g) {
    const mpz_class a = power(16, g) * factorial(g);
    EXPECT_EQ(genus_cap(g), a * a + a) << g;
    EXPECT_EQ(theta_ambient(g).N, power(16, g) - 1);
    EXPECT_EQ(theta_ambient(g).degA, a);
    EXPECT_EQ(c9(g), power(4, 3 * g + 1) * factorial(g) * (g + 1));
    EXPECT_EQ(*c9_expr(g).exact(), mpq_class(c9(g)));
  }
  EXPECT_EQ(theta_ambient(1).N, 15);
  EXPECT_EQ(theta_ambient(1).degA, 16);
  EXPECT_EQ(theta_ambient(2).N, 255);
  EXPECT_EQ(theta_ambient(2).degA, 512);
  EXPECT_EQ(theta_ambient(4).N, 65535);
  EXPECT_EQ(theta_ambient(4).degA, 1572864);
  EXPECT_EQ(c9(1), 512);
  EXPECT_EQ(c9(2), 98304);
  EXPECT_ANY_THROW(genus_cap(0));
}

TEST(Constants, BostDavid) {
  const double K2 = 7 * 256 * std::log(256.0);
  auto K = bost_david_K(2).evaluate();
  EXPECT_NEAR(*K.to_double(), K2, 1e-9);
  EXPECT_NEAR(*K.to_double(), 9936.96, 0.01);
  // max(1, 0) + 2 = 3
  EXPECT_NEAR(*bost_david_gap(2, 0).evaluate().to_double(), K2 * std::log(3.0), 1e-8);
  EXPECT_NEAR(*bost_david_gap(2, 10).evaluate().to_double(), K2 * std::log(12.0), 1e-8);
  EXPECT_ANY_THROW(bost_david_gap(2, -1));
}

TEST(Constants, C31) {
  const double K = 7 * 256 * std::log(256.0);
  const double closed = 2 * K * std::log(2 * K) - 2 * K + 2;
  auto c = derive_c31(2).evaluate();
  EXPECT_NEAR(*c.to_double(), closed, 1e-9 * closed);
  EXPECT_NEAR(*c.to_double(), 1.768e5, 5e2);
  for (int g = 1; g <= 4; ++g) {
    auto s = c31_sweep(g, 1e10, 500);
    EXPECT_TRUE(s.holds) << g;
    EXPECT_GE(s.worst_margin, -1e-12);
    EXPECT_LE(s.worst_margin, 1e-9);  // the maximizer is on the grid
    EXPECT_EQ(s.points, 501u);
  }
}

TEST(Constants, RemondCoefficient) {
  const double direct = std::log10(25.0) + 4 * std::log10(std::log(5.0)) + 40 * std::log10(2.0);
  auto a = remond_theta_log(0, 2, 4).log10_bounds();
  EXPECT_FALSE(a.tower);
  EXPECT_NEAR(a.lo, direct, 1e-9);
  EXPECT_NEAR(a.hi, 14.27, 0.01);
  auto b = remond_theta_log(1, 2, 4).log10_bounds();
  const double direct_b = std::log10(25.0) + 4 * std::log10(std::log(5.0)) + 960 * std::log10(6.0);
  EXPECT_NEAR(b.lo, direct_b, 1e-9);
  EXPECT_NEAR(b.lo, 750, 10);
  // increasing in each argument
  EXPECT_GT(remond_theta_log(1, 3, 4).log10_bounds().lo, b.hi);
  EXPECT_GT(remond_theta_log(1, 2, 5).log10_bounds().lo, b.hi);
  EXPECT_GT(b.lo, a.hi);
  EXPECT_THROW(remond_theta_log(0, 1, 4), DomainError);
}

TEST(Constants, ChainAudit) {
  const double coef = std::pow(10.0, log10_mid(remond_theta_log(0, 2, 4)));
  const double c31_1 = *derive_c31(1).evaluate().to_double();
  auto c10 = c10_chain(0, 2, 4).evaluate();
  EXPECT_NEAR(*c10.to_double(), 3 * coef + c31_1, 1e-9 * (3 * coef));
  EXPECT_GT(c10_chain(1, 2, 4).evaluate().log10_bounds().lo, c10.log10_bounds().hi);

  for (int g : {1, 2}) {
    auto c7 = c7_chain(g).evaluate().log10_bounds(), c9v = c9_expr(g).evaluate().log10_bounds();
    EXPECT_GE(c7.lo, c9v.hi);
    C3Parts p = C3_chain(g);
    auto C3 = p.C3.evaluate().log10_bounds(), c13 = p.c13.evaluate().log10_bounds();
    EXPECT_EQ(C3.tower, c13.tower);
    EXPECT_GE(C3.hi, c13.lo);
    EXPECT_THROW(p.c14.evaluate(), UnknownVariable);
  }
}

TEST(Constants, JacobianComposition) {
  Theorem14 t = theorem14_compose(1, 1, 0, 1, 0, 2, E(mpq_class(274, 1000)));
  EXPECT_NEAR(*t.c6.evaluate().to_double(), 1.274, 1e-12);
  auto c5 = t.c5.evaluate().log10_bounds(), C3 = C3_chain(2).C3.evaluate().log10_bounds();
  EXPECT_EQ(c5.sign, -1);
  EXPECT_LE(c5.lo, C3.hi);
  EXPECT_GE(c5.hi, C3.lo);
  Theorem14 z = theorem14_compose(1, 1, 0, 1, 0, 1, E(0L));
  EXPECT_NEAR(*z.c6.evaluate().to_double(), 1.0, 1e-15);
  // only the m(S) + 1 term survives at this scale
  Theorem14 s = theorem14_compose(2, 3, 7, 5, 11, 1, E(2L));
  EXPECT_NEAR(*s.c6.evaluate().to_double(), 3.0, 1e-12);
  EXPECT_FALSE(t.c5.evaluate().is_zero());
}

TEST(Constants, ZarhinAndTorsion) {
  auto z = zarhin_factors(2);
  EXPECT_EQ(z.dimension, 16);
  EXPECT_EQ(z.height_factor, 8);
  EXPECT_NEAR(z.field_degree.evaluate().log10_bounds().lo, 1024 * std::log10(48.0), 1e-9);
  EXPECT_NEAR(z.field_degree.evaluate().log10_bounds().lo, 1721.6, 0.05);
  EXPECT_EQ(zarhin_factors(1).dimension, 8);
  auto t = torsion_degree(48, 2).evaluate().log10_bounds();
  EXPECT_NEAR(t.lo, 16 * std::log10(48.0), 1e-9);
  EXPECT_NEAR(t.lo, 26.9, 0.01);
  EXPECT_EQ(*torsion_degree(3, 1).exact(), 81);
}

TEST(Constants, FaltbadAndHonda) {
  auto f1 = faltbad_coefficient(1, 1, E(1L)).evaluate().log10_bounds();
  auto f1000 = faltbad_coefficient(1, 1000, E(1L)).evaluate().log10_bounds();
  EXPECT_NEAR(f1.lo - f1000.lo, 3.0, 1e-9);
  EXPECT_LT(f1000.hi, f1.lo);
  EXPECT_NEAR(f1.lo, -(std::log10(8.0) + 256 * std::log10(48.0)), 1e-9);
  EXPECT_THROW(faltbad_coefficient(1, 0, E(1L)), DomainError);

  const C20Map c20 = [](const E& a, const E& b) { return a * b + 1; };
  const E hF = E(mpq_class(1, 2)), mS = E(mpq_class(1, 4));
  const E composed = honda_compose(1, hF, mS, c20);
  const E expected = c20(E(genus_cap(1)), C3_chain(1).C3 * E::sum({hF, mS, 1}));
  auto a = composed.evaluate().log10_bounds(), b = expected.evaluate().log10_bounds();
  EXPECT_EQ(a.tower, b.tower);
  EXPECT_DOUBLE_EQ(a.lo, b.lo);
  EXPECT_DOUBLE_EQ(a.hi, b.hi);
}

TEST(Constants, ReportPositiveAndOrdered) {
  for (int g : {1, 2}) {
    auto rows = constants_report(g, mpq_class(0));
    auto names = constant_expressions(g, 0);
    ASSERT_EQ(rows.size(), names.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      EXPECT_EQ(rows[i].name, names[i].first);
      EXPECT_FALSE(rows[i].value.empty());
      EXPECT_LE(rows[i].log10_lo, rows[i].log10_hi);
      EXPECT_FALSE(rows[i].trace.empty());
    }
    EXPECT_EQ(rows[0].name, "C2");
    EXPECT_TRUE(rows[0].exact);
    for (const auto& [name, e] : names) {
      EXPECT_FALSE(e.evaluate({{"mS", LogInterval::zero()}}).is_zero()) << name;
    }
  }
  EXPECT_EQ(constants_report(2, 0)[0].value, "262656");
}
