#pragma once

// Thin RAII layer over MPFR with explicit per-value precision, plus a
// complex pair and an outward-rounded complex ball.

#include <gmpxx.h>
#include <mpfr.h>

#include <string>
#include <utility>

namespace heightlab {

using Precision = mpfr_prec_t;

class BigFloat {
 public:
  explicit BigFloat(Precision prec = 64) {
    mpfr_init2(v_, prec);
    mpfr_set_zero(v_, 1);
  }
  BigFloat(long value, Precision prec) {
    mpfr_init2(v_, prec);
    mpfr_set_si(v_, value, MPFR_RNDN);
  }
  BigFloat(double value, Precision prec) {
    mpfr_init2(v_, prec);
    mpfr_set_d(v_, value, MPFR_RNDN);
  }
  BigFloat(const mpz_class& value, Precision prec, mpfr_rnd_t rnd = MPFR_RNDN) {
    mpfr_init2(v_, prec);
    mpfr_set_z(v_, value.get_mpz_t(), rnd);
  }
  BigFloat(const mpq_class& value, Precision prec, mpfr_rnd_t rnd = MPFR_RNDN) {
    mpfr_init2(v_, prec);
    mpfr_set_q(v_, value.get_mpq_t(), rnd);
  }
  BigFloat(const BigFloat& other) {
    mpfr_init2(v_, mpfr_get_prec(other.v_));
    mpfr_set(v_, other.v_, MPFR_RNDN);
  }
  BigFloat(BigFloat&& other) noexcept {
    mpfr_init2(v_, MPFR_PREC_MIN);
    mpfr_swap(v_, other.v_);
  }
  BigFloat& operator=(const BigFloat& other) {
    if (this != &other) {
      mpfr_set_prec(v_, mpfr_get_prec(other.v_));
      mpfr_set(v_, other.v_, MPFR_RNDN);
    }
    return *this;
  }
  BigFloat& operator=(BigFloat&& other) noexcept {
    mpfr_swap(v_, other.v_);
    return *this;
  }
  ~BigFloat() { mpfr_clear(v_); }

  Precision precision() const { return mpfr_get_prec(v_); }
  /// Rounds the stored value to a new precision.
  void set_precision(Precision prec) { mpfr_prec_round(v_, prec, MPFR_RNDN); }

  mpfr_ptr raw() { return v_; }
  mpfr_srcptr raw() const { return v_; }

  double to_double(mpfr_rnd_t rnd = MPFR_RNDN) const { return mpfr_get_d(v_, rnd); }
  std::string to_string(int digits = 20) const;

  int sign() const { return mpfr_sgn(v_); }
  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  bool is_finite() const { return mpfr_number_p(v_) != 0; }

  BigFloat& operator+=(const BigFloat& o);
  BigFloat& operator-=(const BigFloat& o);
  BigFloat& operator*=(const BigFloat& o);
  BigFloat& operator/=(const BigFloat& o);

  friend BigFloat operator+(BigFloat a, const BigFloat& b) { return a += b; }
  friend BigFloat operator-(BigFloat a, const BigFloat& b) { return a -= b; }
  friend BigFloat operator*(BigFloat a, const BigFloat& b) { return a *= b; }
  friend BigFloat operator/(BigFloat a, const BigFloat& b) { return a /= b; }
  BigFloat operator-() const {
    BigFloat r(*this);
    mpfr_neg(r.v_, r.v_, MPFR_RNDN);
    return r;
  }

  friend bool operator<(const BigFloat& a, const BigFloat& b) { return mpfr_less_p(a.v_, b.v_); }
  friend bool operator>(const BigFloat& a, const BigFloat& b) { return mpfr_greater_p(a.v_, b.v_); }
  friend bool operator<=(const BigFloat& a, const BigFloat& b) { return mpfr_lessequal_p(a.v_, b.v_); }
  friend bool operator>=(const BigFloat& a, const BigFloat& b) { return mpfr_greaterequal_p(a.v_, b.v_); }
  friend bool operator==(const BigFloat& a, const BigFloat& b) { return mpfr_equal_p(a.v_, b.v_); }

 private:
  mpfr_t v_;
};

// Directed-rounding primitives. The result carries precision `prec`.
BigFloat add(const BigFloat& a, const BigFloat& b, mpfr_rnd_t rnd, Precision prec);
BigFloat sub(const BigFloat& a, const BigFloat& b, mpfr_rnd_t rnd, Precision prec);
BigFloat mul(const BigFloat& a, const BigFloat& b, mpfr_rnd_t rnd, Precision prec);
BigFloat div(const BigFloat& a, const BigFloat& b, mpfr_rnd_t rnd, Precision prec);

BigFloat abs(const BigFloat& a);
BigFloat sqrt(const BigFloat& a, mpfr_rnd_t rnd = MPFR_RNDN);
BigFloat log(const BigFloat& a, mpfr_rnd_t rnd = MPFR_RNDN);
BigFloat log1p(const BigFloat& a, mpfr_rnd_t rnd = MPFR_RNDN);
BigFloat exp(const BigFloat& a, mpfr_rnd_t rnd = MPFR_RNDN);
BigFloat cos(const BigFloat& a);
BigFloat sin(const BigFloat& a);
BigFloat atan2(const BigFloat& y, const BigFloat& x);
BigFloat hypot(const BigFloat& a, const BigFloat& b, mpfr_rnd_t rnd = MPFR_RNDN);
BigFloat mul_2si(const BigFloat& a, long exponent);
BigFloat max(const BigFloat& a, const BigFloat& b);
BigFloat min(const BigFloat& a, const BigFloat& b);
BigFloat const_pi(Precision prec, mpfr_rnd_t rnd = MPFR_RNDN);
/// 2^-p as an exact value.
BigFloat ulp_scale(Precision p, Precision prec);

/// Raises the MPFR exponent range of the calling thread to its maximum.
void widen_exponent_range();

struct BigComplex {
  BigFloat re;
  BigFloat im;

  explicit BigComplex(Precision prec = 64) : re(prec), im(prec) {}
  BigComplex(BigFloat r, BigFloat i) : re(std::move(r)), im(std::move(i)) {}

  Precision precision() const { return re.precision(); }
  void set_precision(Precision prec) {
    re.set_precision(prec);
    im.set_precision(prec);
  }

  BigComplex& operator+=(const BigComplex& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  BigComplex& operator-=(const BigComplex& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  BigComplex& operator*=(const BigComplex& o);
  BigComplex& operator/=(const BigComplex& o);
  friend BigComplex operator+(BigComplex a, const BigComplex& b) { return a += b; }
  friend BigComplex operator-(BigComplex a, const BigComplex& b) { return a -= b; }
  friend BigComplex operator*(BigComplex a, const BigComplex& b) { return a *= b; }
  friend BigComplex operator/(BigComplex a, const BigComplex& b) { return a /= b; }
  BigComplex operator-() const { return BigComplex(-re, -im); }
};

BigFloat abs(const BigComplex& z, mpfr_rnd_t rnd = MPFR_RNDN);
BigFloat arg(const BigComplex& z);
BigComplex conj(const BigComplex& z);

/// A disk in C that contains the quantity it describes. Radius arithmetic is
/// rounded upward.
struct ComplexBall {
  BigComplex center;
  BigFloat radius;

  ComplexBall() : center(64), radius(64) {}
  ComplexBall(BigComplex c, BigFloat r) : center(std::move(c)), radius(std::move(r)) {}

  /// Lower bound for |z| over the disk (clamped at 0).
  BigFloat abs_lower() const;
  /// Upper bound for |z| over the disk.
  BigFloat abs_upper() const;
  bool overlaps(const ComplexBall& other) const;
  bool contains(const BigComplex& z) const;
  /// True when the disk meets the real axis.
  bool meets_real_axis() const;
};

}  // namespace heightlab
