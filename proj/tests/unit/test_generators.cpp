#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <random>

#include "heightlab/errors.hpp"
#include "heightlab/generators.hpp"

using namespace heightlab;

namespace {

UniPoly U(std::initializer_list<long> c) { return UniPoly::from_ints(c); }

OrderElement E(std::initializer_list<long> c) {
  OrderElement e;
  for (long v : c) e.coords.emplace_back(v);
  return e;
}

std::complex<double> eval(const UniPoly& f, std::complex<double> z) {
  std::complex<double> v = 0;
  const auto& c = f.coeffs();
  for (int j = f.degree(); j >= 0; --j) v = v * z + c[j].get_d();
  return v;
}

}  // namespace

TEST(CharPoly, Examples) {
  auto F = NumberFieldSpec::from_poly(U({-2, 0, 1}));
  EXPECT_EQ(char_poly(E({0, 1}), F), U({-2, 0, 1}));
  EXPECT_EQ(char_poly(E({1, 0}), F), U({1, -2, 1}));
  EXPECT_EQ(char_poly(E({1, 1}), F), U({-1, -2, 1}));

  auto G = NumberFieldSpec::from_poly(U({-1, -1, 0, 1}));
  EXPECT_EQ(char_poly(E({1, 0, 0}), G), U({-1, 3, -3, 1}));
  EXPECT_EQ(char_poly(E({0, 1, 0}), G), U({-1, -1, 0, 1}));
}

TEST(CharPoly, VanishesAtEmbeddings) {
  std::mt19937_64 gen(8);
  std::uniform_int_distribution<long> c(-4, 4);
  for (const UniPoly& g : {U({-1, -1, 0, 1}), U({1, 1, 1, 1, 1}), U({2, 0, 0, 0, 1}), U({-3, 1, 0, 1})}) {
    auto F = NumberFieldSpec::from_poly(g);
    for (int k = 0; k < 20; ++k) {
      OrderElement e;
      for (int j = 0; j < F.degree(); ++j) e.coords.emplace_back(c(gen));
      const UniPoly chi = char_poly(e, F);
      ASSERT_EQ(chi.degree(), F.degree());
      EXPECT_TRUE(chi.is_integral());
      auto emb = embeddings(e, F);
      ASSERT_EQ(static_cast<int>(emb.size()), F.degree());
      for (auto z : emb) EXPECT_LE(std::abs(eval(chi, z)), 1e-7 * std::pow(1 + std::abs(z), F.degree()));
    }
  }
}

TEST(Primitive, Examples) {
  auto F = NumberFieldSpec::from_poly(U({-2, 0, 1}));
  EXPECT_TRUE(is_primitive(E({0, 1}), F));
  EXPECT_TRUE(is_primitive(E({3, -1}), F));
  EXPECT_FALSE(is_primitive(E({5, 0}), F));
  auto Q = NumberFieldSpec::from_poly(U({2, 0, 0, 0, 1}));
  // theta^2 generates only the quadratic subfield Q(sqrt(-2))
  EXPECT_FALSE(is_primitive(E({0, 0, 1, 0}), Q));
  EXPECT_TRUE(is_primitive(E({0, 1, 1, 0}), Q));
}

TEST(NumberField, Signature) {
  auto F = NumberFieldSpec::from_poly(U({-1, -1, 0, 1}));
  EXPECT_EQ(F.r, 1);
  EXPECT_EQ(F.s, 1);
  auto Z5 = NumberFieldSpec::from_poly(U({1, 1, 1, 1, 1}), mpz_class(125));
  EXPECT_EQ(Z5.r, 0);
  EXPECT_EQ(Z5.s, 2);
  EXPECT_ANY_THROW(NumberFieldSpec::from_poly(U({1, 1, 1, 1, 1}), mpz_class(124)));
}

TEST(NumberField, WithBasis) {
  // Z[(1 + sqrt 5) / 2] inside Q(sqrt 5)
  auto F = NumberFieldSpec::with_basis(U({-5, 0, 1}), {{1, 0}, {mpq_class(1, 2), mpq_class(1, 2)}}, mpz_class(5));
  EXPECT_EQ(char_poly(E({0, 1}), F), U({-1, -1, 1}));
  EXPECT_EQ(to_power_basis(E({0, 2}), F), U({1, 1}));
  EXPECT_ANY_THROW(
      NumberFieldSpec::with_basis(U({-5, 0, 1}), {{1, 0}, {mpq_class(1, 2), mpq_class(1, 2)}}, mpz_class(20)));
}

TEST(Minkowski, BoxT) {
  auto Qi = NumberFieldSpec::from_poly(U({1, 0, 1}), mpz_class(4));
  ASSERT_TRUE(minkowski_box_T(Qi).has_value());
  EXPECT_NEAR(*minkowski_box_T(Qi), 1.0, 1e-15);
  auto Z5 = NumberFieldSpec::from_poly(U({1, 1, 1, 1, 1}), mpz_class(125));
  EXPECT_NEAR(*minkowski_box_T(Z5), std::sqrt(125.0) / M_PI, 1e-12);
  EXPECT_NEAR(*minkowski_box_T(Z5), 3.56, 0.005);
  EXPECT_FALSE(minkowski_box_T(NumberFieldSpec::from_poly(U({-2, 0, 1}))).has_value());
}

TEST(Search, Examples) {
  for (const UniPoly& g : {U({1, 0, 1}), U({-2, 0, 1}), U({-1, -1, 0, 1}), U({1, 1, 1, 1, 1}), U({2, 0, 0, 0, 1})}) {
    auto F = NumberFieldSpec::from_poly(g);
    auto r = search_small_generator(F);
    EXPECT_TRUE(is_primitive(r.element, F)) << g.to_string();
    EXPECT_EQ(r.alpha.degree(), F.degree());
    EXPECT_LE(r.height.upper(), r.bound) << g.to_string();
    EXPECT_NEAR(r.bound, std::log(std::fabs(F.abs_disc.get_d())) / F.degree(), 1e-12);
    EXPECT_LE(r.shell, r.radius_cap);
    EXPECT_GE(r.candidates_tried, 1);
  }
}

TEST(Search, KnownWinners) {
  // plastic field: theta itself, h = log(1.3247...) / 3
  auto P = NumberFieldSpec::from_poly(U({-1, -1, 0, 1}));
  auto r = search_small_generator(P);
  EXPECT_EQ(r.element.coords, (std::vector<mpz_class>{0, 1, 0}));
  EXPECT_NEAR(r.height.value, std::log(1.3247179572447460) / 3, 1e-12);
  // Q(i): i has height 0
  auto Qi = NumberFieldSpec::from_poly(U({1, 0, 1}));
  EXPECT_NEAR(search_small_generator(Qi).height.value, 0.0, 1e-12);
}

TEST(Search, Deterministic) {
  auto F = NumberFieldSpec::from_poly(U({-3, 1, 0, 1}));
  auto a = search_small_generator(F), b = search_small_generator(F);
  EXPECT_EQ(a.element.coords, b.element.coords);
  EXPECT_EQ(a.candidates_tried, b.candidates_tried);
}

TEST(Search, DegreeOne) {
  auto F = NumberFieldSpec::from_poly(U({0, 1}), mpz_class(1));
  auto r = search_small_generator(F);
  EXPECT_EQ(r.element.coords, (std::vector<mpz_class>{1}));
  EXPECT_NEAR(r.height.value, 0.0, 1e-15);
}

TEST(Search, GuaranteedRadiusPositive) {
  for (const UniPoly& g : {U({1, 0, 1}), U({-1, -1, 0, 1}), U({1, 1, 1, 1, 1})}) {
    EXPECT_GE(guaranteed_radius(NumberFieldSpec::from_poly(g)), 1.0);
  }
}
