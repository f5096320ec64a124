#pragma once

#include <gmpxx.h>

#include <complex>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "heightlab/heights.hpp"
#include "heightlab/poly.hpp"

namespace heightlab {

struct SphereIntegralEstimate {
  double value = 0.0;
  double std_error = 0.0;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
};

/// Callback receiving blocks * (N+1) complex coordinates, block-major, and
/// returning log|F| there.
using LogAbsForm = std::function<double(std::span<const std::complex<double>>)>;

/// Mean of log|F| over the product of `blocks` unit spheres in C^(N+1), by
/// Monte Carlo with normalized complex Gaussians. Sample i draws from a
/// counter-based stream keyed by (seed, i); partial sums are reduced in a
/// fixed block order, so the result does not depend on the thread count.
SphereIntegralEstimate sphere_log_integral(const LogAbsForm& log_abs_f, int blocks, int N, std::uint64_t samples,
                                           std::uint64_t seed);
/// Same for a polynomial in blocks*(N+1) variables (block-major order).
SphereIntegralEstimate sphere_log_integral(const MultiPoly& F, int blocks, int N, std::uint64_t samples,
                                           std::uint64_t seed);

/// sum_{j=1}^{N} 1/(2j)
double half_harmonic(int N);

struct ChowHeightEstimate {
  double value = 0.0;
  double std_error = 0.0;
  double correction = 0.0;   // (dim+1) deg sum 1/(2j)
  double finite_part = 0.0;  // 0 for primitive forms
  SphereIntegralEstimate integral;

  HeightValue as_height() const;
};

/// Hypersurface Z(form) in P^N, form homogeneous in N+1 variables.
struct Hypersurface {
  int N = 0;
  MultiPoly form;

  /// Makes the form primitive; checks homogeneity and the variable count.
  static Hypersurface make(const MultiPoly& form);
  int degree() const { return form.total_degree(); }
};

ChowHeightEstimate chow_height_point(const ProjectivePoint& P, std::uint64_t samples, std::uint64_t seed);

/// Chow form f(signed maximal minors of the N x (N+1) matrix of hyperplanes),
/// primitive, in variables u<k> (k = block*(N+1) + coordinate).
MultiPoly hypersurface_chow_form(const Hypersurface& X);
/// Scope: N <= 3, D <= 4 (ScaleCapExceeded otherwise).
ChowHeightEstimate chow_height_hypersurface(const Hypersurface& X, std::uint64_t samples, std::uint64_t seed);

/// Height of a 0-cycle from its u-form (one block, homogeneous of degree =
/// cycle degree, N+1 variables).
ChowHeightEstimate chow_height_zero_cycle(const MultiPoly& u_form, int N, std::uint64_t samples, std::uint64_t seed);

struct CycleComponent {
  MultiPoly u_form;
  int multiplicity = 1;
  int degree = 1;
};

struct ZeroCycleChow {
  int N = 2;
  MultiPoly u_form;  // primitive, includes multiplicities
  std::vector<CycleComponent> components;
  std::vector<mpz_class> p, q;  // integer basis of the line
  UniPoly binary_dehomogenized;  // B(t, 1)
  int degree() const { return u_form.total_degree(); }
};

/// X (conic in P^2) cut by the line l0 x0 + l1 x1 + l2 x2 = 0. Throws
/// DomainError when the line lies on X.
ZeroCycleChow intersect_conic_line(const Hypersurface& X, const std::vector<mpz_class>& line);

/// Sum over components, each weighted by its multiplicity.
ChowHeightEstimate chow_height_cycle(const ZeroCycleChow& Y, std::uint64_t samples, std::uint64_t seed);

struct RemondInstance {
  std::vector<mpz_class> line;
  double line_height = 0.0;  // h2 of the coefficients
  int degree_Y = 0;
  bool degree_ok = false;
  ChowHeightEstimate h_Y;
  double rhs = 0.0;          // h_P(X) + (deg X) H
  double slack = 0.0;        // 3 sqrt(sY^2 + sX^2)
  bool height_ok = false;
};

struct RemondReport {
  ChowHeightEstimate h_X;
  double H = 0.0;
  std::vector<RemondInstance> instances;
  bool all_hold = false;
};

/// For each line (h2 <= H required) checks deg Y <= deg X exactly and
/// h_P(Y) <= h_P(X) + (deg X) H within three combined standard errors. An
/// empty line list compares X with itself.
RemondReport remond_check(const Hypersurface& X, const std::vector<std::vector<mpz_class>>& lines, double H,
                          std::uint64_t samples, std::uint64_t seed);

/// Deterministic random lines with coefficients in [-bound, bound] that are
/// not contained in X.
std::vector<std::vector<mpz_class>> random_lines(const Hypersurface& X, int count, int bound, std::uint64_t seed);

}  // namespace heightlab
