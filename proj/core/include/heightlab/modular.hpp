#pragma once

// Arithmetic in Z/pZ and (Z/pZ)[x] for word-size primes p < 2^62.

#include <gmpxx.h>

#include <cstdint>
#include <random>
#include <tuple>
#include <utility>
#include <vector>

namespace heightlab {

/// Deterministic Miller-Rabin for the full 64-bit range.
bool is_prime_u64(std::uint64_t n);

/// Polynomial over Z/pZ, ascending coefficients, no trailing zeros.
using FpPoly = std::vector<std::uint64_t>;

class PrimeField {
 public:
  explicit PrimeField(std::uint64_t p);

  std::uint64_t p() const { return p_; }

  std::uint64_t add(std::uint64_t a, std::uint64_t b) const {
    std::uint64_t s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  std::uint64_t sub(std::uint64_t a, std::uint64_t b) const { return a >= b ? a - b : a + p_ - b; }
  std::uint64_t neg(std::uint64_t a) const { return a == 0 ? 0 : p_ - a; }
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % p_);
  }
  std::uint64_t pow(std::uint64_t a, std::uint64_t e) const;
  std::uint64_t inv(std::uint64_t a) const;
  std::uint64_t reduce(const mpz_class& v) const;
  std::uint64_t reduce(const mpq_class& v) const;
  /// Symmetric lift to (-p/2, p/2].
  long long lift(std::uint64_t a) const {
    return a > p_ / 2 ? static_cast<long long>(a) - static_cast<long long>(p_) : static_cast<long long>(a);
  }

  // --- polynomials
  void trim(FpPoly& f) const;
  FpPoly reduce(const std::vector<mpz_class>& f) const;
  FpPoly poly_add(const FpPoly& a, const FpPoly& b) const;
  FpPoly poly_sub(const FpPoly& a, const FpPoly& b) const;
  FpPoly poly_mul(const FpPoly& a, const FpPoly& b) const;
  FpPoly poly_scale(const FpPoly& a, std::uint64_t c) const;
  std::pair<FpPoly, FpPoly> poly_divmod(const FpPoly& a, const FpPoly& b) const;
  FpPoly poly_mod(const FpPoly& a, const FpPoly& b) const;
  FpPoly poly_monic(const FpPoly& a) const;
  FpPoly poly_gcd(const FpPoly& a, const FpPoly& b) const;
  /// Extended gcd: returns (g, s, t) with s*a + t*b = g, g monic.
  std::tuple<FpPoly, FpPoly, FpPoly> poly_xgcd(const FpPoly& a, const FpPoly& b) const;
  FpPoly poly_derivative(const FpPoly& a) const;
  FpPoly poly_powmod(const FpPoly& base, const mpz_class& e, const FpPoly& modulus) const;
  std::uint64_t poly_eval(const FpPoly& a, std::uint64_t x) const;
  bool poly_is_squarefree(const FpPoly& a) const;

  /// Resultant of a (formal degree deg_a >= actual degree) and b.
  std::uint64_t resultant(const FpPoly& a, const FpPoly& b) const;

  /// Newton interpolation through (xs[i], ys[i]) with distinct xs.
  FpPoly interpolate(const std::vector<std::uint64_t>& xs, const std::vector<std::uint64_t>& ys) const;

  /// Distinct-degree factorization of a monic squarefree polynomial:
  /// pairs (product of all irreducible factors of degree d, d).
  std::vector<std::pair<FpPoly, int>> distinct_degree(const FpPoly& f) const;
  /// Splits a monic squarefree product of degree-d irreducibles (p odd).
  std::vector<FpPoly> equal_degree(const FpPoly& f, int d, std::mt19937_64& rng) const;
  /// Full factorization of a monic squarefree polynomial into monic
  /// irreducibles, sorted by (degree, coefficients).
  std::vector<FpPoly> factor_squarefree(const FpPoly& f, std::uint64_t seed = 1) const;

 private:
  std::uint64_t p_;
};

/// Largest prime strictly below n.
std::uint64_t previous_prime(std::uint64_t n);

}  // namespace heightlab
