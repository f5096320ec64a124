#pragma once

// Exact polynomial types over Q: univariate, bivariate (x, t) and sparse
// multivariate with named variables.

#include <gmpxx.h>

#include <complex>
#include <initializer_list>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace heightlab {

/// Univariate polynomial with rational coefficients in ascending degree
/// order. The zero polynomial has an empty coefficient list and degree -1.
class UniPoly {
 public:
  UniPoly() = default;
  explicit UniPoly(std::vector<mpq_class> coeffs);
  explicit UniPoly(const std::vector<mpz_class>& coeffs);
  /// Convenience constructor from small integers, ascending order.
  static UniPoly from_ints(std::initializer_list<long> ascending);
  static UniPoly monomial(const mpq_class& c, int degree);
  static UniPoly constant(const mpq_class& c) { return monomial(c, 0); }
  static UniPoly x() { return monomial(1, 1); }

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  const std::vector<mpq_class>& coeffs() const { return coeffs_; }
  /// Coefficient of x^i, zero outside the support.
  mpq_class coeff(int i) const;
  const mpq_class& lc() const;

  bool is_integral() const;
  /// Integer coefficients; requires is_integral().
  std::vector<mpz_class> int_coeffs() const;
  /// Primitive integer form: integer coefficients, content 1, lc > 0.
  UniPoly primitive() const;
  bool is_primitive_integral() const;
  UniPoly monic() const;
  UniPoly derivative() const;
  /// x^deg f(1/x).
  UniPoly reversed() const;
  mpq_class eval(const mpq_class& x) const;
  /// Sum of absolute values of the coefficients.
  mpq_class length() const;

  UniPoly operator-() const;
  UniPoly& operator+=(const UniPoly& o);
  UniPoly& operator-=(const UniPoly& o);
  UniPoly& operator*=(const UniPoly& o);
  UniPoly& operator*=(const mpq_class& c);
  friend UniPoly operator+(UniPoly a, const UniPoly& b) { return a += b; }
  friend UniPoly operator-(UniPoly a, const UniPoly& b) { return a -= b; }
  friend UniPoly operator*(const UniPoly& a, const UniPoly& b);
  friend UniPoly operator*(UniPoly a, const mpq_class& c) { return a *= c; }
  friend bool operator==(const UniPoly& a, const UniPoly& b) { return a.coeffs_ == b.coeffs_; }

  std::string to_string(const std::string& var = "x") const;

 private:
  void normalize();
  std::vector<mpq_class> coeffs_;
};

/// Quotient and remainder; throws DomainError on division by zero.
std::pair<UniPoly, UniPoly> divmod(const UniPoly& a, const UniPoly& b);
/// Monic gcd over Q (zero if both inputs are zero).
UniPoly gcd(const UniPoly& a, const UniPoly& b);
UniPoly pow(const UniPoly& a, unsigned n);
/// f(g(x)).
UniPoly compose(const UniPoly& f, const UniPoly& g);

/// Polynomial in (x, t) with rational coefficients. Keys are (x-degree,
/// t-degree).
class BiPoly {
 public:
  using Key = std::pair<int, int>;

  BiPoly() = default;
  explicit BiPoly(std::map<Key, mpq_class> terms);

  int deg_x() const;
  int deg_t() const;
  bool is_zero() const { return terms_.empty(); }
  const std::map<Key, mpq_class>& terms() const { return terms_; }
  mpq_class coeff(int i, int j) const;

  /// P(c, t) as a polynomial in t.
  UniPoly at_x(const mpq_class& c) const;
  /// P(x, c) as a polynomial in x.
  UniPoly at_t(const mpq_class& c) const;
  /// Coefficient vector (for heights), in key order.
  std::vector<mpq_class> coefficient_vector() const;

  friend bool operator==(const BiPoly& a, const BiPoly& b) { return a.terms_ == b.terms_; }
  std::string to_string(const std::string& xvar = "x", const std::string& tvar = "t") const;

 private:
  std::map<Key, mpq_class> terms_;
};

using Exponents = std::vector<int>;

/// Sparse multivariate polynomial over Q with a fixed variable list.
class MultiPoly {
 public:
  MultiPoly() = default;
  explicit MultiPoly(std::vector<std::string> vars) : vars_(std::move(vars)) {}
  MultiPoly(std::vector<std::string> vars, std::map<Exponents, mpq_class> terms);

  static MultiPoly constant(std::vector<std::string> vars, const mpq_class& c);
  static MultiPoly variable(std::vector<std::string> vars, std::size_t index);

  const std::vector<std::string>& vars() const { return vars_; }
  std::size_t nvars() const { return vars_.size(); }
  const std::map<Exponents, mpq_class>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  int total_degree() const;
  int degree_in(std::size_t var) const;
  bool is_homogeneous() const;
  mpq_class coeff(const Exponents& e) const;

  /// Positive rational c with this = c * (primitive integer polynomial whose
  /// leading term, in the map's last key, is positive).
  mpq_class content() const;
  MultiPoly primitive() const;
  std::vector<mpq_class> coefficient_vector() const;

  MultiPoly operator-() const;
  MultiPoly& operator+=(const MultiPoly& o);
  MultiPoly& operator-=(const MultiPoly& o);
  MultiPoly& operator*=(const mpq_class& c);
  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
  friend MultiPoly operator*(MultiPoly a, const mpq_class& c) { return a *= c; }
  friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
    return a.vars_ == b.vars_ && a.terms_ == b.terms_;
  }

  MultiPoly derivative(std::size_t var) const;
  /// Replaces each variable by the corresponding polynomial (all in a common
  /// target variable list).
  MultiPoly substitute(const std::vector<MultiPoly>& images) const;
  std::complex<double> eval(std::span<const std::complex<double>> point) const;
  mpq_class eval(std::span<const mpq_class> point) const;

  /// Converts to a univariate polynomial; all other variables must be absent.
  UniPoly to_uni(std::size_t var) const;
  BiPoly to_bi(std::size_t xvar, std::size_t tvar) const;

  /// Canonical print: descending total degree, then descending exponent
  /// vectors; explicit signs.
  std::string to_string() const;

 private:
  void add_term(const Exponents& e, const mpq_class& c);
  std::vector<std::string> vars_;
  std::map<Exponents, mpq_class> terms_;
};

MultiPoly pow(const MultiPoly& a, unsigned n);

}  // namespace heightlab
