#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

#include "heightlab/bigfloat.hpp"
#include "heightlab/poly.hpp"

namespace heightlab {

enum class HeightMethod { ExactRoots, Quadrature, MonteCarlo, Exact };

std::string to_string(HeightMethod m);

/// A height with a rigorous (exact-roots, exact) or estimated (quadrature)
/// absolute error radius, or a standard error (monte-carlo).
struct HeightValue {
  double value = 0.0;
  double abs_error = 0.0;
  HeightMethod method = HeightMethod::Exact;
  /// Set when the minimal polynomial was assumed irreducible, not proven.
  bool assumed_irreducible = false;

  std::string tag() const;
  double lower() const { return value - abs_error; }
  double upper() const { return value + abs_error; }
};

enum class Norm { Inf, L2 };

/// Minimal polynomial (primitive integer form) plus an isolating ball.
struct AlgebraicNumber {
  UniPoly min_poly;
  ComplexBall approx;
  bool certified = false;

  static AlgebraicNumber rational(const mpq_class& q);
  int degree() const { return min_poly.degree(); }
};

/// All roots of a squarefree polynomial as algebraic numbers sharing it as
/// minimal polynomial (the caller vouches for irreducibility via `certified`).
std::vector<AlgebraicNumber> algebraic_roots(const UniPoly& f, bool certified, Precision precision = 64);

/// Projective point with coprime integer coordinates.
struct ProjectivePoint {
  std::vector<mpz_class> coords;

  ProjectivePoint() = default;
  /// Normalizes: clears denominators, divides by the gcd. Throws DomainError
  /// if all coordinates vanish.
  explicit ProjectivePoint(const std::vector<mpq_class>& rational_coords);
  static ProjectivePoint from_ints(std::initializer_list<long> coords);
  int ambient_dimension() const { return static_cast<int>(coords.size()) - 1; }
};

/// log M(f) = log|lc| + sum log+|roots| (with multiplicity) from certified
/// root balls; abs_error <= tol.
HeightValue log_mahler_measure(const UniPoly& f, double tol = 1e-12);

/// (1/deg f) log M(f) from root balls of a squarefree f that were already
/// isolated by complex_roots. The error reflects the ball radii only.
HeightValue height_from_roots(const UniPoly& f, const std::vector<ComplexBall>& balls);

/// (1/deg m) log M(m) for the minimal polynomial m.
HeightValue height_algebraic(const AlgebraicNumber& a, double tol = 1e-12);

/// (1/deg f) of the integral of log|f| over the unit circle, by tanh-sinh
/// quadrature split at the arguments of roots near the circle.
HeightValue mahler_integral_height(const UniPoly& f, double tol = 1e-6);

HeightValue height_point(const ProjectivePoint& p, Norm norm);
/// Height of a coefficient vector as a projective point.
HeightValue height_coefficients(const std::vector<mpq_class>& coeffs, Norm norm);
HeightValue height_poly(const UniPoly& f, Norm norm);
HeightValue height_poly(const BiPoly& f, Norm norm);
HeightValue height_poly(const MultiPoly& f, Norm norm);

struct SandwichReport {
  bool holds = false;
  double h_inf = 0.0;
  double h_2 = 0.0;
  /// h_inf + (1/2) log(N + 1)
  double upper = 0.0;
};

/// h_inf <= h_2 <= h_inf + (1/2) log(N+1), decided with directed rounding.
SandwichReport sandwich_report(const ProjectivePoint& p, int n);
bool sandwich_check(const ProjectivePoint& p, int n);

}  // namespace heightlab
