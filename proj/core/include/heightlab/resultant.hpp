#pragma once

#include <gmpxx.h>

#include "heightlab/poly.hpp"

namespace heightlab {

/// Classical (Sylvester) resultant over Q. Throws DomainError on a zero input.
mpq_class resultant(const UniPoly& f, const UniPoly& g);

/// (-1)^{d(d-1)/2} Res(f, f') / lc(f). Throws DomainError for constants.
mpq_class discriminant(const UniPoly& f);

/// Res_t(P(x, t), m(t)) as a polynomial in x, with the Sylvester sign
/// convention (P first, formal t-degree of P). Computed by evaluation at
/// integer abscissae modulo word-size primes and Chinese remaindering up to a
/// proven coefficient bound.
UniPoly resultant_t(const BiPoly& p, const UniPoly& m);

/// Minimal-polynomial candidate of alpha^n when m(alpha) = 0:
/// Res_y(x - y^n, m(y)), primitive integer form.
UniPoly power_polynomial(const UniPoly& m, unsigned n);

}  // namespace heightlab
