#include <gtest/gtest.h>

#include <random>

#include "heightlab/bertini.hpp"
#include "heightlab/errors.hpp"
#include "heightlab/groebner.hpp"
#include "heightlab/parse.hpp"

using namespace heightlab;

namespace {

const std::vector<std::string> kX3{"x0", "x1", "x2"};
const std::vector<std::string> kX4{"x0", "x1", "x2", "x3"};

Hypersurface surface(const std::string& f) { return Hypersurface::make(parse_poly(f, kX4)); }

bool exact_empty(const std::vector<QiPoly>& system) {
  std::vector<Exponents> lead;
  for (const auto& g : groebner_basis(system)) {
    Exponents best;
    bool first = true;
    for (const auto& [e, c] : g.terms()) {
      if (first || grevlex_greater(e, best)) best = e;
      first = false;
    }
    lead.push_back(best);
  }
  return zero_dimensional_at_origin(lead, system.front().nvars());
}

QiPoly random_quadric(std::mt19937_64& gen) {
  std::uniform_int_distribution<int> c(-5, 5);
  MultiPoly f(kX3);
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = i; j < 3; ++j) {
      f += MultiPoly::variable(kX3, i) * MultiPoly::variable(kX3, j) * mpq_class(c(gen));
    }
  }
  return QiPoly::from_multi(f);
}

}  // namespace

TEST(Gaussian, Arithmetic) {
  const GaussianRational i = GaussianRational::imag_unit();
  EXPECT_EQ(i * i, GaussianRational(-1));
  const GaussianRational z(mpq_class(3), mpq_class(4));
  EXPECT_EQ(z.norm(), 25);
  EXPECT_EQ(z * z.inverse(), GaussianRational(1));
  EXPECT_EQ(z / z, GaussianRational(1));
  EXPECT_EQ(z.conj(), GaussianRational(mpq_class(3), mpq_class(-4)));
  EXPECT_ANY_THROW(GaussianRational().inverse());
}

TEST(Gaussian, Parse) {
  EXPECT_EQ(parse_gaussian("3"), GaussianRational(3));
  EXPECT_EQ(parse_gaussian("-1/2"), GaussianRational(mpq_class(-1, 2)));
  EXPECT_EQ(parse_gaussian("i"), GaussianRational::imag_unit());
  EXPECT_EQ(parse_gaussian("-i"), -GaussianRational::imag_unit());
  EXPECT_EQ(parse_gaussian("2i"), GaussianRational(0, 2));
  EXPECT_EQ(parse_gaussian("1+i"), GaussianRational(1, 1));
  EXPECT_ANY_THROW(parse_gaussian("1+j"));
}

TEST(Groebner, Examples) {
  // x0^2, x1^2, x2^2: only the origin
  std::vector<QiPoly> pure{QiPoly::from_multi(parse_poly("x0^2", kX3)), QiPoly::from_multi(parse_poly("x1^2", kX3)),
                           QiPoly::from_multi(parse_poly("x2^2", kX3))};
  EXPECT_TRUE(projective_zero_set_empty(pure).empty);
  // x0 x1, x1 x2, x0 x2 vanish at every coordinate point
  std::vector<QiPoly> axes{QiPoly::from_multi(parse_poly("x0*x1", kX3)), QiPoly::from_multi(parse_poly("x1*x2", kX3)),
                           QiPoly::from_multi(parse_poly("x0*x2", kX3))};
  auto c = projective_zero_set_empty(axes);
  EXPECT_FALSE(c.empty);
  EXPECT_EQ(c.route, "exact");
  // x0^2 + x1^2 has the zeros (1 : +-i : 0), found only over Q(i)
  std::vector<QiPoly> circ{QiPoly::from_multi(parse_poly("x0^2 + x1^2", kX3)), QiPoly::from_multi(parse_poly("x2", kX3))};
  EXPECT_FALSE(projective_zero_set_empty(circ).empty);
}

TEST(Groebner, ReducedBasisIsMonic) {
  std::vector<QiPoly> sys{QiPoly::from_multi(parse_poly("2*x0^2 - x1*x2", kX3)),
                          QiPoly::from_multi(parse_poly("3*x1^2 + x0*x2", kX3))};
  auto gb = groebner_basis(sys);
  ASSERT_FALSE(gb.empty());
  for (const auto& g : gb) {
    Exponents best;
    GaussianRational lc;
    bool first = true;
    for (const auto& [e, c] : g.terms()) {
      if (first || grevlex_greater(e, best)) {
        best = e;
        lc = c;
      }
      first = false;
    }
    EXPECT_EQ(lc, GaussianRational(1));
  }
}

TEST(Groebner, ModularAgreesWithExact) {
  std::mt19937_64 gen(77);
  int empty_count = 0, nonempty_count = 0;
  for (int k = 0; k < 30; ++k) {
    std::vector<QiPoly> sys{random_quadric(gen), random_quadric(gen), random_quadric(gen)};
    if (k % 3 == 0) {
      // force a common zero at (1 : 1 : 1)
      const QiPoly a = QiPoly::from_multi(parse_poly("x0 - x1", kX3));
      const QiPoly b = QiPoly::from_multi(parse_poly("x1 - x2", kX3));
      std::uniform_int_distribution<int> c(-3, 3);
      for (auto& f : sys) {
        QiPoly l1 = QiPoly::from_multi(parse_poly(std::to_string(c(gen)) + "*x0 + x2", kX3));
        QiPoly l2 = QiPoly::from_multi(parse_poly(std::to_string(c(gen)) + "*x1 - x0", kX3));
        f = a * l1 + b * l2;
      }
    }
    const bool exact = exact_empty(sys);
    const auto cert = projective_zero_set_empty(sys);
    EXPECT_EQ(cert.empty, exact) << "system " << k;
    for (std::uint64_t p : {1000000009ULL, 998244353ULL}) {
      auto mb = groebner_leading_monomials_mod_p(sys, p);
      if (mb.valid && zero_dimensional_at_origin(mb.leading_monomials, 3)) EXPECT_TRUE(exact) << "system " << k;
    }
    (exact ? empty_count : nonempty_count)++;
  }
  EXPECT_GT(empty_count, 0);
  EXPECT_GT(nonempty_count, 0);
}

TEST(Smoothness, Examples) {
  EXPECT_TRUE(smoothness_check(surface("x0^4 + x1^4 + x2^4 + x3^4")).smooth);
  EXPECT_TRUE(smoothness_check(surface("x0^2 + x1^2 + x2^2 + x3^2")).smooth);
  EXPECT_FALSE(smoothness_check(surface("x0^2 + x1^2 - x2^2")).smooth);
  // two planes meet in a singular line
  EXPECT_FALSE(smoothness_check(surface("x0*x1")).smooth);
  EXPECT_TRUE(smoothness_check(QiPoly::from_multi(parse_poly("x0^3 + x1^3 + x2^3", kX3))).smooth);
}

TEST(Sections, Examples) {
  auto fermat = surface("x0^4 + x1^4 + x2^4 + x3^4");
  auto a = section_search(fermat, {0, 1, -1}, 1000);
  EXPECT_TRUE(a.certificate.smooth);
  EXPECT_EQ(a.section_form.total_degree(), 4);
  EXPECT_EQ(a.section_vars.size(), 3u);

  auto quadric = surface("x0^2 + x1^2 + x2^2 + x3^2");
  auto q = section_search(quadric, {0, 1}, 1000);
  EXPECT_EQ(q.hyperplane, (std::vector<GaussianRational>{0, 0, 0, 1}));
  EXPECT_EQ(q.tried, 1u);
  EXPECT_EQ(q.eliminated, 3);

  EXPECT_THROW(section_search(surface("x0^2 + x1^2 - x2^2"), {0, 1}, 1000), NotSmooth);
  EXPECT_THROW(section_search(quadric, {0, 1}, 0), BudgetExceeded);
}

TEST(Sections, Deterministic) {
  auto X = surface("x0^4 + x1^4 + x2^4 + x3^4 + x0*x1*x2*x3");
  auto a = section_search(X, {0, 1, -1, 2}, 2000), b = section_search(X, {0, 1, -1, 2}, 2000);
  EXPECT_EQ(a.hyperplane, b.hyperplane);
  EXPECT_EQ(a.tried, b.tried);
}

TEST(Sections, GaussianSample) {
  auto X = surface("x0^2 + x1^2 + x2^2 + x3^2");
  auto c = section_search(X, {1, GaussianRational::imag_unit()}, 1000);
  EXPECT_TRUE(c.certificate.smooth);
  for (const auto& a : c.hyperplane) EXPECT_FALSE(a.is_zero());
}

TEST(SectionBound, Fermat) {
  auto X = surface("x0^4 + x1^4 + x2^4 + x3^4");
  auto c = section_search(X, {0, 1, -1}, 1000);
  auto r = theorem12_bound_check(X, c, 0.0);
  EXPECT_EQ(r.degree_C, 4);
  EXPECT_TRUE(r.degree_ok);
  EXPECT_EQ(r.genus, 3);
  EXPECT_EQ(r.genus_cap, 20);
  EXPECT_TRUE(r.genus_ok);
  EXPECT_DOUBLE_EQ(r.H, 8.0);
  EXPECT_TRUE(r.hyperplane_ok);
  EXPECT_DOUBLE_EQ(r.height_excess, 64.0);
  EXPECT_FALSE(r.rhs.has_value());
  EXPECT_FALSE(r.lhs_computed);
}

TEST(SectionBound, GenusWithinCap) {
  // a smooth plane section of degree D has genus (D-1)(D-2)/2 <= D^2 + D
  for (int D = 1; D <= 10; ++D) EXPECT_LE((D - 1) * (D - 2) / 2, D * D + D);
  auto X = surface("x0^3 + x1^3 + x2^3 + x3^3");
  auto r = theorem12_bound_check(X, section_search(X, {0, 1, -1}, 1000), 1.5);
  EXPECT_EQ(r.genus, 1);
  EXPECT_DOUBLE_EQ(r.H, 4 * 3.5);
  EXPECT_DOUBLE_EQ(r.height_excess, 2 * 3 * 4 * 3.5);
}
