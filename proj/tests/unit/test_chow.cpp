#include <gtest/gtest.h>

#include <array>
#include <cmath>
#include <complex>
#include <random>

#include "heightlab/chow.hpp"
#include "heightlab/errors.hpp"
#include "heightlab/parse.hpp"

using namespace heightlab;

namespace {

constexpr std::uint64_t kSamples = 200000;

const std::vector<std::string> kX{"x0", "x1", "x2"};

Hypersurface conic() { return Hypersurface::make(parse_poly("x0^2 + x1^2 - x2^2", kX)); }

std::vector<mpz_class> line(long a, long b, long c) { return {a, b, c}; }

}  // namespace

TEST(Sphere, Examples) {
  auto u0 = sphere_log_integral(parse_poly("u0", {"u0", "u1"}), 1, 1, kSamples, 1);
  EXPECT_NEAR(u0.value, -0.5, 5 * u0.std_error);
  EXPECT_GT(u0.std_error, 0.0);
  EXPECT_LT(u0.std_error, 0.01);
  EXPECT_EQ(u0.samples, kSamples);

  auto c = sphere_log_integral([](std::span<const std::complex<double>>) { return std::log(7.0); }, 1, 3, 1000, 2);
  EXPECT_DOUBLE_EQ(c.value, std::log(7.0));
  EXPECT_EQ(c.std_error, 0.0);

  auto l = sphere_log_integral(parse_poly("u0 + 2*u1", {"u0", "u1"}), 1, 1, kSamples, 3);
  EXPECT_NEAR(l.value, 0.5 * std::log(5.0) - 0.5, 5 * l.std_error);
}

TEST(Sphere, HalfHarmonic) {
  EXPECT_EQ(half_harmonic(0), 0.0);
  EXPECT_DOUBLE_EQ(half_harmonic(1), 0.5);
  EXPECT_DOUBLE_EQ(half_harmonic(3), 0.5 + 0.25 + 1.0 / 6);
}

TEST(Sphere, SeedDeterminism) {
  const MultiPoly f = parse_poly("u0 + 3*u1 - u2", {"u0", "u1", "u2"});
  auto a = sphere_log_integral(f, 1, 2, 50000, 42), b = sphere_log_integral(f, 1, 2, 50000, 42);
  EXPECT_EQ(a.value, b.value);
  EXPECT_EQ(a.std_error, b.std_error);
  auto c = sphere_log_integral(f, 1, 2, 50000, 43);
  EXPECT_NE(a.value, c.value);
  EXPECT_NEAR(a.value, c.value, 6 * std::hypot(a.std_error, c.std_error));
}

TEST(ChowPoint, Examples) {
  auto e = chow_height_point(ProjectivePoint::from_ints({1, 0}), kSamples, 5);
  EXPECT_NEAR(e.value, 0.0, 5 * e.std_error);
  EXPECT_DOUBLE_EQ(e.correction, 0.5);
  auto p = chow_height_point(ProjectivePoint::from_ints({1, 2}), kSamples, 6);
  EXPECT_NEAR(p.value, 0.5 * std::log(5.0), 5 * p.std_error);
  auto q = chow_height_point(ProjectivePoint::from_ints({3, 4, 0}), kSamples, 7);
  EXPECT_NEAR(q.value, std::log(5.0), 5 * q.std_error);
  EXPECT_DOUBLE_EQ(q.correction, 0.75);
  EXPECT_EQ(q.as_height().method, HeightMethod::MonteCarlo);
}

TEST(ChowHypersurface, CoordinateLine) {
  auto X = Hypersurface::make(parse_poly("x0", kX));
  auto h = chow_height_hypersurface(X, kSamples, 11);
  EXPECT_DOUBLE_EQ(h.correction, 1.5);
  EXPECT_NEAR(h.value, 0.5, 5 * h.std_error);

  // independent estimate of E log|u1 v2 - u2 v1| over two unit spheres in C^3
  std::mt19937_64 gen(2024);
  std::normal_distribution<double> n01;
  auto draw = [&] {
    std::array<std::complex<double>, 3> z;
    double norm = 0;
    for (auto& c : z) {
      c = {n01(gen), n01(gen)};
      norm += std::norm(c);
    }
    for (auto& c : z) c /= std::sqrt(norm);
    return z;
  };
  double sum = 0, sq = 0;
  for (std::uint64_t k = 0; k < kSamples; ++k) {
    auto u = draw(), v = draw();
    const double s = std::log(std::abs(u[1] * v[2] - u[2] * v[1]));
    sum += s;
    sq += s * s;
  }
  const double mean = sum / kSamples, se = std::sqrt((sq / kSamples - mean * mean) / kSamples);
  EXPECT_NEAR(mean, -1.0, 5 * se);
  EXPECT_NEAR(h.value, mean + 1.5, 5 * std::hypot(se, h.std_error));
}

TEST(ChowHypersurface, ConicStableUnderScaling) {
  auto a = chow_height_hypersurface(conic(), 100000, 9);
  auto b = chow_height_hypersurface(Hypersurface::make(parse_poly("7*x0^2 + 7*x1^2 - 7*x2^2", kX)), 100000, 9);
  EXPECT_EQ(a.value, b.value);
  EXPECT_GE(a.value, -5 * a.std_error);
  auto c = chow_height_hypersurface(conic(), 100000, 9);
  EXPECT_EQ(a.value, c.value);
}

TEST(ChowHypersurface, Errors) {
  EXPECT_THROW(Hypersurface::make(parse_poly("x0^2 + x1", kX)), DomainError);
  EXPECT_THROW(Hypersurface::make(MultiPoly(kX)), DomainError);
  auto big = Hypersurface::make(parse_poly("x0^5 + x1^5 + x2^5", kX));
  EXPECT_THROW(chow_height_hypersurface(big, 100, 1), ScaleCapExceeded);
}

TEST(ConicLine, SplitTangentIrreducible) {
  auto split = intersect_conic_line(conic(), line(0, 1, 0));
  EXPECT_EQ(split.degree(), 2);
  ASSERT_EQ(split.components.size(), 2u);
  for (const auto& c : split.components) {
    EXPECT_EQ(c.degree, 1);
    EXPECT_EQ(c.multiplicity, 1);
  }

  auto tangent = intersect_conic_line(conic(), line(1, 0, -1));
  EXPECT_EQ(tangent.degree(), 2);
  ASSERT_EQ(tangent.components.size(), 1u);
  EXPECT_EQ(tangent.components[0].multiplicity, 2);
  EXPECT_EQ(tangent.components[0].degree, 1);

  auto irr = intersect_conic_line(conic(), line(0, 0, 1));
  EXPECT_EQ(irr.degree(), 2);
  ASSERT_EQ(irr.components.size(), 1u);
  EXPECT_EQ(irr.components[0].degree, 2);

  EXPECT_THROW(intersect_conic_line(conic(), line(0, 0, 0)), DomainError);
  auto pair = Hypersurface::make(parse_poly("x0*x1", kX));
  EXPECT_THROW(intersect_conic_line(pair, line(1, 0, 0)), DomainError);
}

TEST(ConicLine, CycleAdditivity) {
  // x1 = 0 meets the conic in (1:0:1) and (1:0:-1), each of height log sqrt 2
  auto Y = intersect_conic_line(conic(), line(0, 1, 0));
  auto h = chow_height_cycle(Y, kSamples, 30);
  EXPECT_NEAR(h.value, std::log(2.0), 5 * h.std_error);
  double sum = 0;
  std::uint64_t k = 0;
  for (const auto& c : Y.components) sum += chow_height_zero_cycle(c.u_form, 2, kSamples, 30 + k++).value;
  EXPECT_DOUBLE_EQ(h.value, sum);

  // the tangent point (1:0:1) counted twice
  auto T = intersect_conic_line(conic(), line(1, 0, -1));
  auto t = chow_height_cycle(T, kSamples, 31);
  EXPECT_NEAR(t.value, std::log(2.0), 5 * t.std_error);
}

TEST(Remond, SelfComparisonAndLines) {
  auto self = remond_check(conic(), {}, 0.0, 50000, 3);
  ASSERT_EQ(self.instances.size(), 1u);
  EXPECT_TRUE(self.all_hold);

  const auto lines = random_lines(conic(), 4, 3, 17);
  ASSERT_EQ(lines.size(), 4u);
  EXPECT_EQ(lines, random_lines(conic(), 4, 3, 17));
  double H = 0;
  for (const auto& l : lines) {
    std::vector<mpq_class> q(l.begin(), l.end());
    H = std::max(H, height_coefficients(q, Norm::L2).value);
  }
  auto r = remond_check(conic(), lines, H, 50000, 3);
  EXPECT_TRUE(r.all_hold);
  for (const auto& inst : r.instances) {
    EXPECT_EQ(inst.degree_Y, 2);
    EXPECT_NEAR(inst.rhs, r.h_X.value + 2 * H, 1e-12);
  }
  EXPECT_THROW(remond_check(conic(), lines, 0.1, 1000, 3), DomainError);
}
