#include <gtest/gtest.h>

#include <cmath>
#include <complex>

#include "heightlab/errors.hpp"
#include "heightlab/northcott.hpp"
#include "heightlab/parse.hpp"

using namespace heightlab;

namespace {

UniPoly U(std::initializer_list<long> c) { return UniPoly::from_ints(c); }

// Heights of x_1..x_8 from a long double oracle that follows every
// conjugate through x^2 - t x - 1 = 0; frozen.
constexpr double kSmyth[] = {0.240605912529802, 0.260998208772539, 0.268304538685659, 0.271179882714841,
                             0.272370229602085, 0.272879199435018, 0.273101797352962, 0.273200794583458};

}  // namespace

TEST(Sequence, SmythFrozenValues) {
  auto prof = iterate_sequence(smyth_spec(6, CertMode::Certified));
  ASSERT_EQ(prof.entries.size(), 6u);
  EXPECT_NEAR(prof.initial_height.value, 0.0, 1e-15);
  for (const auto& e : prof.entries) {
    EXPECT_EQ(e.degree, 1 << e.index);
    EXPECT_NEAR(e.height.value, kSmyth[e.index - 1], 1e-12) << "i=" << e.index;
    EXPECT_LE(e.height.abs_error, 1e-12);
    EXPECT_EQ(e.certification, "certified");
  }
  EXPECT_NEAR(prof.entries[0].height.value, 0.5 * std::log((1 + std::sqrt(5.0)) / 2), 1e-13);
  EXPECT_LE(prof.max_height, 0.274);
}

TEST(Sequence, AssumeIrreducibleMatches) {
  auto a = iterate_sequence(smyth_spec(7, CertMode::AssumeIrreducible));
  ASSERT_EQ(a.entries.size(), 7u);
  for (const auto& e : a.entries) {
    EXPECT_NEAR(e.height.value, kSmyth[e.index - 1], 1e-12);
    EXPECT_TRUE(e.height.assumed_irreducible);
  }
}

TEST(Sequence, IncreasingAndBelowLimit) {
  auto prof = iterate_sequence(smyth_spec(5, CertMode::Certified));
  for (std::size_t i = 1; i < prof.entries.size(); ++i) {
    EXPECT_GT(prof.entries[i].height.value, prof.entries[i - 1].height.value);
  }
}

TEST(Sequence, SelectedRootSatisfiesRecurrence) {
  auto prof = iterate_sequence(smyth_spec(4, CertMode::Certified));
  std::complex<double> prev(1.0, 0.0);
  for (const auto& e : prof.entries) {
    std::complex<double> x(e.x.approx.center.re.to_double(), e.x.approx.center.im.to_double());
    // x^2 - t x - 1 = 0 with t = x_{i-1}
    EXPECT_LE(std::abs(x * x - prev * x - 1.0), 1e-12);
    prev = x;
  }
}

TEST(Sequence, Errors) {
  SequenceSpec s = smyth_spec(3, CertMode::Certified);
  s.P = parse_bi("x - t");
  EXPECT_THROW(iterate_sequence(s), DomainError);
  s = smyth_spec(0, CertMode::Certified);
  EXPECT_THROW(iterate_sequence(s), DomainError);
  s = smyth_spec(6, CertMode::Certified);
  s.degree_cap = 16;
  EXPECT_THROW(iterate_sequence(s), DegreeCapExceeded);
  EXPECT_THROW(parse_cert_mode("sometimes"), DomainError);
}

TEST(Habegger, Gamma) {
  EXPECT_NEAR(habegger_gamma(parse_bi("x^2 - t")), 5 * std::sqrt(std::log(12.0)), 1e-12);
  EXPECT_NEAR(habegger_gamma(parse_bi("x^2 - t")), 7.8818, 1e-4);
  EXPECT_NEAR(habegger_gamma(parse_bi("3*x^2 - t*x - 1")), 5 * std::sqrt(std::log(36.0)), 1e-12);
  EXPECT_THROW(habegger_gamma(parse_bi("x^2 - 2")), DomainError);
}

TEST(Habegger, Bound) {
  auto est = habegger_bound(smyth_spec(1, CertMode::Certified));
  ASSERT_TRUE(est.certified_upper_bound.has_value());
  EXPECT_NEAR(*est.certified_upper_bound, 4 * 25 * std::log(12.0), 1e-9);
  EXPECT_NEAR(*est.certified_upper_bound, 248.49, 0.01);
  auto d = habegger_data(parse_bi("x^2 - t*x - 1"));
  EXPECT_DOUBLE_EQ(d.q, 0.5);
  EXPECT_DOUBLE_EQ(d.Q, d.gamma);
}

TEST(Habegger, RecurrenceCheck) {
  const BiPoly P = parse_bi("x^2 - t*x - 1");
  auto prof = iterate_sequence(smyth_spec(5, CertMode::Certified));
  EXPECT_TRUE(recurrence_check(prof, P));
  auto bad = prof;
  bad.entries[2].height.value = 1e4;
  EXPECT_FALSE(recurrence_check(bad, P));
}

TEST(Families, Selmer) {
  auto est = selmer_family(12);
  ASSERT_EQ(est.family.size(), 11u);
  for (const auto& e : est.family) {
    EXPECT_TRUE(e.irreducible_certified) << e.index;
    EXPECT_GT(e.height.value, 0.0);
    EXPECT_LE(e.height.upper(), std::log(3.0) / e.index);
  }
  EXPECT_NEAR(est.family[0].height.value, 0.5 * std::log((1 + std::sqrt(5.0)) / 2), 1e-12);
  // x^3 - x - 1: the plastic number
  EXPECT_NEAR(est.family[1].height.value, std::log(1.3247179572447460) / 3, 1e-12);
  EXPECT_THROW(selmer_family(1), DomainError);
}

TEST(Families, PrimeConstant) {
  auto certs = prime_constant_family({{U({5, 1, 0, 1}), 5}, {U({-2, 0, 1}), 2}});
  ASSERT_EQ(certs.size(), 2u);
  EXPECT_TRUE(certs[0].irreducible);
  EXPECT_EQ(certs[0].length, 7);
  EXPECT_NEAR(certs[0].liminf_estimate, std::log(7.0) / 3, 1e-15);
  EXPECT_EQ(certs[1].length, 3);
  EXPECT_THROW(prime_constant_family({{U({7, 7, 1}), 7}}), LengthConditionFailed);
  EXPECT_THROW(prime_constant_family({{U({6, 1, 1}), 6}}), DomainError);
  EXPECT_THROW(prime_constant_family({{U({5, 1, 2}), 5}}), DomainError);
}

TEST(Families, RadicalTower) {
  auto est = radical_tower(2, 5);
  ASSERT_EQ(est.family.size(), 6u);
  EXPECT_NEAR(est.family[0].height.value, std::log(2.0), 1e-15);
  EXPECT_NEAR(est.family[1].height.value, 0.5 * std::log(2.0), 1e-15);
  EXPECT_NEAR(est.family[5].height.value, 0.02166, 1e-5);
  for (const auto& e : est.family) EXPECT_TRUE(e.irreducible_certified);
  EXPECT_NEAR(radical_tower(3, 0).family[0].height.value, std::log(3.0), 1e-15);
  EXPECT_THROW(radical_tower(4, 2), DomainError);
}

TEST(Families, RadicalTowerHeightsAgreeWithMahler) {
  auto est = radical_tower(3, 3);
  for (const auto& e : est.family) {
    EXPECT_NEAR(log_mahler_measure(e.poly).value / e.poly.degree(), e.height.value, 1e-12);
  }
}

TEST(Families, UnramifiedAndEisenstein) {
  EXPECT_NEAR(unramified_tower_bound(4, std::log(5.0 * 5 * 5)), 0.75 * std::log(5.0), 1e-15);
  EXPECT_THROW(unramified_tower_bound(0, 1.0), DomainError);
  EXPECT_TRUE(eisenstein(U({-2, 0, 0, 1}), 2));
  EXPECT_FALSE(eisenstein(U({-4, 0, 1}), 2));
  EXPECT_FALSE(eisenstein(U({-1, -1, 1}), 5));
}
