#pragma once

// Reduced Groebner bases (grevlex) over Q(i) and over F_p, used to decide
// whether homogeneous systems have a common projective zero.

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "heightlab/poly.hpp"

namespace heightlab {

/// Element re + im*i of Q(i).
struct GaussianRational {
  mpq_class re = 0;
  mpq_class im = 0;

  GaussianRational() = default;
  GaussianRational(mpq_class r, mpq_class i = 0) : re(std::move(r)), im(std::move(i)) {}
  GaussianRational(long r) : re(r) {}
  static GaussianRational imag_unit() { return {0, 1}; }

  bool is_zero() const { return re == 0 && im == 0; }
  bool is_rational() const { return im == 0; }
  GaussianRational conj() const { return {re, -im}; }
  mpq_class norm() const { return re * re + im * im; }
  GaussianRational inverse() const;

  GaussianRational operator-() const { return {-re, -im}; }
  friend GaussianRational operator+(const GaussianRational& a, const GaussianRational& b) {
    return {a.re + b.re, a.im + b.im};
  }
  friend GaussianRational operator-(const GaussianRational& a, const GaussianRational& b) {
    return {a.re - b.re, a.im - b.im};
  }
  friend GaussianRational operator*(const GaussianRational& a, const GaussianRational& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend GaussianRational operator/(const GaussianRational& a, const GaussianRational& b) { return a * b.inverse(); }
  friend bool operator==(const GaussianRational& a, const GaussianRational& b) { return a.re == b.re && a.im == b.im; }

  std::string to_string() const;
};

/// Parses "3", "-1/2", "i", "-i", "2i", "1+i".
GaussianRational parse_gaussian(const std::string& text);

/// Sparse polynomial over Q(i) in a fixed number of variables.
class QiPoly {
 public:
  QiPoly() = default;
  explicit QiPoly(std::size_t nvars) : nvars_(nvars) {}
  static QiPoly from_multi(const MultiPoly& f);
  static QiPoly variable(std::size_t nvars, std::size_t index);
  static QiPoly constant(std::size_t nvars, const GaussianRational& c);

  std::size_t nvars() const { return nvars_; }
  const std::map<Exponents, GaussianRational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_rational() const;
  int total_degree() const;
  bool is_homogeneous() const;

  void add_term(const Exponents& e, const GaussianRational& c);
  QiPoly& operator+=(const QiPoly& o);
  friend QiPoly operator+(QiPoly a, const QiPoly& b) { return a += b; }
  friend QiPoly operator*(const QiPoly& a, const QiPoly& b);
  friend QiPoly operator*(QiPoly a, const GaussianRational& c);
  friend bool operator==(const QiPoly& a, const QiPoly& b) { return a.nvars_ == b.nvars_ && a.terms_ == b.terms_; }

  QiPoly derivative(std::size_t var) const;
  /// Replaces variable k by images[k] (all in a common variable count).
  QiPoly substitute(const std::vector<QiPoly>& images) const;
  /// Scales by a rational so that all real and imaginary parts are coprime
  /// integers, with the grevlex-leading coefficient having positive real
  /// part (or positive imaginary part when the real part vanishes).
  QiPoly normalized() const;
  std::string to_string(const std::vector<std::string>& vars) const;

 private:
  std::size_t nvars_ = 0;
  std::map<Exponents, GaussianRational> terms_;
};

/// Grevlex order: true if a > b.
bool grevlex_greater(const Exponents& a, const Exponents& b);

/// Reduced, monic Groebner basis over Q(i), sorted by leading monomial.
std::vector<QiPoly> groebner_basis(const std::vector<QiPoly>& system);

/// Leading monomials of the reduced Groebner basis modulo p, or empty if
/// some coefficient is not p-integral. For non-rational input p must be
/// 1 mod 4 (i is sent to a square root of -1).
struct ModularBasis {
  bool valid = false;
  std::uint64_t prime = 0;
  std::vector<Exponents> leading_monomials;
};
ModularBasis groebner_leading_monomials_mod_p(const std::vector<QiPoly>& system, std::uint64_t p);

/// True iff every variable has a pure power among the leading monomials,
/// i.e. the homogeneous ideal has no projective zero.
bool zero_dimensional_at_origin(const std::vector<Exponents>& leading, std::size_t nvars);

struct EmptinessCertificate {
  bool empty = false;
  /// "mod p" (a proof of emptiness) or "exact" (decides both ways).
  std::string route;
  std::uint64_t prime = 0;
};

/// Decides whether a homogeneous system over Q(i) has a common zero in
/// projective space. Emptiness modulo a prime implies emptiness over the
/// algebraic closure, so a few primes are tried first and the exact basis
/// decides the rest.
EmptinessCertificate projective_zero_set_empty(const std::vector<QiPoly>& system);

}  // namespace heightlab
