#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "heightlab/heights.hpp"
#include "heightlab/poly.hpp"

namespace heightlab {

enum class CertMode { Certified, AssumeIrreducible };

std::string to_string(CertMode m);
CertMode parse_cert_mode(const std::string& s);

enum class RootSelection {
  /// Largest modulus; ties broken by the smallest principal argument.
  LargestModulus,
};

struct SequenceSpec {
  BiPoly P;
  AlgebraicNumber x0;
  RootSelection selection = RootSelection::LargestModulus;
  CertMode mode = CertMode::Certified;
  int max_index = 1;
  /// Working precision for root tracking; doubled on ambiguity.
  Precision precision = 128;
  /// Degree cap for certified factorization.
  int degree_cap = 64;
  /// Target abs_error of each height.
  double height_tolerance = 1e-12;
};

/// P = x^2 - t x - 1 started at x0 = 1.
SequenceSpec smyth_spec(int max_index, CertMode mode);

struct SequenceEntry {
  int index = 0;
  int degree = 0;
  HeightValue height;
  /// "certified" or "assume-irreducible"
  std::string certification;
  AlgebraicNumber x;
};

struct SequenceProfile {
  HeightValue initial_height;  // h(x0)
  std::vector<SequenceEntry> entries;  // x_1 .. x_max
  double max_height = 0.0;
  double min_height = 0.0;
};

struct FamilyEntry {
  int index = 0;
  UniPoly poly;
  HeightValue height;
  /// log ||f||_1 / deg f
  double length_bound = 0.0;
  bool irreducible_certified = false;
};

struct NorthcottEstimate {
  std::optional<double> certified_upper_bound;
  /// habegger | length | tower | exact
  std::string certificate;
  std::vector<double> empirical_heights;
  std::optional<SequenceProfile> profile;
  std::vector<FamilyEntry> family;
};

/// x_{i+1} is the selected root of P(x, x_i); its minimal polynomial is the
/// irreducible factor of Res_t(P(x,t), m_i(t)) vanishing there (certified
/// mode) or the squarefree primitive resultant (assume-irreducible mode).
SequenceProfile iterate_sequence(const SequenceSpec& spec);

/// 5 (log(2^min(dx,dt) (dx+1)(dt+1)) + h_inf(P))^(1/2)
double habegger_gamma(const BiPoly& P);

struct HabeggerBound {
  double gamma = 0.0;
  double Q = 0.0;  // gamma sqrt(dt)
  double q = 0.0;  // dt / dx
  double bound = 0.0;  // dt (gamma dx / (dx - dt))^2
};

HabeggerBound habegger_data(const BiPoly& P);
NorthcottEstimate habegger_bound(const SequenceSpec& spec);

/// h(x_{i+1}) <= q h(x_i) + Q max(h(x_i), h(x_{i+1}))^(1/2) for every
/// consecutive pair, starting from x0, within the recorded error radii.
bool recurrence_check(const SequenceProfile& profile, const BiPoly& P);

/// f_i = x^i - x - 1 for 2 <= i <= max_i.
NorthcottEstimate selmer_family(int max_i, int degree_cap = 64);

struct PrimeFamilyInput {
  UniPoly poly;
  std::uint64_t prime = 0;
};

struct PrimeFamilyCertificate {
  UniPoly poly;
  std::uint64_t prime = 0;
  mpz_class length;
  bool irreducible = false;
  std::string argument;
  double liminf_estimate = 0.0;  // log ||f||_1 / deg f
};

/// Monic integer f with constant term +-p and ||f||_1 < 2p is irreducible.
/// Throws LengthConditionFailed or DomainError.
std::vector<PrimeFamilyCertificate> prime_constant_family(const std::vector<PrimeFamilyInput>& polys);

/// S = { p^(1/p^i) }: heights log(p)/p^i, Eisenstein-certified.
NorthcottEstimate radical_tower(std::uint64_t p, int max_i);

/// log|disc| / d.
double unramified_tower_bound(int d, double log_abs_disc);

/// Eisenstein criterion at p.
bool eisenstein(const UniPoly& f, const mpz_class& p);

}  // namespace heightlab
