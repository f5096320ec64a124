#pragma once

#include <gmpxx.h>

#include <complex>
#include <optional>
#include <vector>

#include "heightlab/heights.hpp"
#include "heightlab/poly.hpp"

namespace heightlab {

/// Number field L = Q(theta), g(theta) = 0, with a caller-supplied integral
/// basis expressed in powers of theta.
struct NumberFieldSpec {
  UniPoly defining_poly;  // monic irreducible integer g, degree d
  /// basis[k][j]: coefficient of theta^j in the k-th basis element.
  std::vector<std::vector<mpq_class>> integral_basis;
  mpz_class abs_disc;
  int r = 0;  // real embeddings
  int s = 0;  // complex pairs

  int degree() const { return defining_poly.degree(); }

  /// Power basis 1, theta, ..., theta^(d-1). When abs_disc is given it must
  /// equal |disc g| (Z[theta] asserted maximal). Signature via Sturm.
  static NumberFieldSpec from_poly(const UniPoly& g, std::optional<mpz_class> abs_disc = std::nullopt);
  /// General basis; checks invertibility and det(B)^2 |disc g| = abs_disc.
  static NumberFieldSpec with_basis(const UniPoly& g, std::vector<std::vector<mpq_class>> basis, const mpz_class& abs_disc);
};

struct OrderElement {
  std::vector<mpz_class> coords;
};

/// The element as a polynomial in theta (reduced, degree < d).
UniPoly to_power_basis(const OrderElement& e, const NumberFieldSpec& F);

/// Characteristic polynomial of multiplication by e (Faddeev-LeVerrier on
/// the exact multiplication matrix). Throws DomainError when the result is
/// not integral (the basis does not span an order).
UniPoly char_poly(const OrderElement& e, const NumberFieldSpec& F);

/// Squarefree characteristic polynomial, i.e. Q(e) = L.
bool is_primitive(const OrderElement& e, const NumberFieldSpec& F);

/// Images of e under the d complex embeddings (double precision).
std::vector<std::complex<double>> embeddings(const OrderElement& e, const NumberFieldSpec& F);

/// (pi/4)(2/pi)^s sqrt|disc| for totally complex fields; nullopt when r > 0.
std::optional<double> minkowski_box_T(const NumberFieldSpec& F);

struct GeneratorResult {
  OrderElement element;
  AlgebraicNumber alpha;
  HeightValue height;
  double bound = 0.0;  // log|disc| / d
  long candidates_tried = 0;
  int shell = 0;       // sup-norm of the winning coordinates
  int radius_cap = 0;
};

/// Enumerates coordinate vectors by sup-norm shell, each shell in a fixed
/// order (last coordinate most significant; values 0, 1, -1, 2, -2, ...), and
/// returns the first primitive element whose height is provably at most
/// log|disc| / d. Throws BudgetExceeded past the radius cap.
GeneratorResult search_small_generator(const NumberFieldSpec& F);

/// Coordinate radius within which the search is guaranteed to succeed
/// (before doubling).
double guaranteed_radius(const NumberFieldSpec& F);

}  // namespace heightlab
