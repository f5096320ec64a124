#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "heightlab/chow.hpp"
#include "heightlab/groebner.hpp"

namespace heightlab {

struct SmoothnessReport {
  bool smooth = false;
  EmptinessCertificate certificate;
};

/// Nonsingularity of Z(f) in P^N: no common projective zero of f and its
/// partial derivatives. Scope: N <= 3, D <= 4.
SmoothnessReport smoothness_check(const Hypersurface& X);
/// Same for a form over Q(i) (used for plane sections).
SmoothnessReport smoothness_check(const QiPoly& form);

struct SectionCandidate {
  std::vector<GaussianRational> hyperplane;  // a_0 x_0 + ... + a_N x_N = 0
  int eliminated = -1;                        // last nonzero coordinate
  QiPoly section_form;                        // in the remaining N variables
  std::vector<std::string> section_vars;
  std::uint64_t tried = 0;
  SmoothnessReport certificate;
};

/// Tuples of S_sample^(N+1), up to scaling, ordered by the largest naive
/// height max(|num|, |den|) of an entry, then lexicographically by index in
/// S_sample (first coordinate most significant). Returns the first whose
/// section is a smooth curve. Entries must be rationals or +-i.
/// Throws NotSmooth if X is singular, BudgetExceeded after `budget`
/// candidates.
SectionCandidate section_search(const Hypersurface& X, const std::vector<GaussianRational>& S_sample,
                                std::uint64_t budget);

struct Theorem12Report {
  int degree_X = 0;
  int degree_C = 0;
  bool degree_ok = false;
  int genus = 0;
  int genus_cap = 0;  // (deg X)^2 + deg X
  bool genus_ok = false;
  double hyperplane_h2 = 0.0;  // h2 of the coefficient vector
  double H = 0.0;              // (N+1)(m(S)+2)
  bool hyperplane_ok = false;
  double height_excess = 0.0;  // (dim X)(deg X)(N+1)(m(S)+2)
  std::optional<ChowHeightEstimate> h_X;
  std::optional<double> rhs;  // h_P(X) + height_excess when h_X is known
  bool lhs_computed = false;  // space-curve Chow forms are out of scope
};

Theorem12Report theorem12_bound_check(const Hypersurface& X, const SectionCandidate& candidate, double m_S,
                                      std::optional<ChowHeightEstimate> h_X = std::nullopt);

}  // namespace heightlab
