#pragma once

#include <gmpxx.h>

#include <vector>

#include "heightlab/poly.hpp"

namespace heightlab {

struct Factor {
  UniPoly poly;  // primitive integer form
  int multiplicity = 1;
};

struct Factorization {
  mpq_class unit = 1;  // f == unit * prod(poly^multiplicity)
  std::vector<Factor> factors;
};

struct FactorOptions {
  /// Largest squarefree-part degree that is factored (and thus certified).
  int degree_cap = 64;
};

/// Yun decomposition: pairwise coprime squarefree parts (primitive integer
/// form) with multiplicities. Constants give an empty list.
std::vector<Factor> squarefree_decompose(const UniPoly& f);

/// Squarefreeness with a modular fast path (f mod p squarefree and p not
/// dividing lc(f) proves it) and an exact gcd fallback.
bool is_squarefree(const UniPoly& f);

/// Complete factorization over Q into irreducible primitive integer factors.
/// Modular factorization, quadratic Hensel lifting past the Landau-Mignotte
/// bound and exhaustive subset recombination make every emitted factor
/// provably irreducible. Throws DegreeCapExceeded when a squarefree part
/// exceeds the cap.
Factorization factor_rationals(const UniPoly& f, const FactorOptions& options = {});

/// True iff f (nonconstant) is irreducible over Q. Same cap as above.
bool is_irreducible(const UniPoly& f, const FactorOptions& options = {});

}  // namespace heightlab
