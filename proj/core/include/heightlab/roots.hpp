#pragma once

#include <gmpxx.h>

#include <optional>
#include <vector>

#include "heightlab/bigfloat.hpp"
#include "heightlab/poly.hpp"

namespace heightlab {

struct RootOptions {
  /// Starting working precision in bits.
  Precision precision = 64;
  /// Doubling stops here; PrecisionExhausted beyond it.
  Precision ceiling = 16384;
  /// When positive, every radius must end at or below this value.
  double max_radius = 0.0;
};

/// Certified isolation of all complex roots of a squarefree polynomial.
/// Returns deg f pairwise disjoint balls, each containing exactly one root,
/// sorted by (real part, imaginary part) of the centers. Balls proven to hold
/// a real root are snapped onto the real axis. Throws DomainError for
/// constants or non-squarefree input.
std::vector<ComplexBall> complex_roots(const UniPoly& f, const RootOptions& options = {});
std::vector<ComplexBall> complex_roots(const UniPoly& f, Precision precision);

/// True when the ball holds a real root: it meets the real axis and its
/// mirror image overlaps no other ball. Requires real coefficients.
bool certified_real(const std::vector<ComplexBall>& balls, std::size_t index);
std::size_t certified_real_count(const std::vector<ComplexBall>& balls);

/// Open interval (lo, hi); an absent endpoint means infinity.
struct RealInterval {
  std::optional<mpq_class> lo;
  std::optional<mpq_class> hi;
  static RealInterval whole() { return {}; }
};

/// Number of distinct real roots in the open interval, by a Sturm sequence.
int real_root_count(const UniPoly& f, const RealInterval& interval = RealInterval::whole());

}  // namespace heightlab
