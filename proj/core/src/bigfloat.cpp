#include "heightlab/bigfloat.hpp"

#include <algorithm>
#include <cstdlib>
#include <memory>

namespace heightlab {

namespace {

Precision joint(const BigFloat& a, const BigFloat& b) {
  return std::max(a.precision(), b.precision());
}

}  // namespace

std::string BigFloat::to_string(int digits) const {
  char* buf = nullptr;
  mpfr_asprintf(&buf, "%.*Rg", digits, v_);
  std::string out(buf);
  mpfr_free_str(buf);
  return out;
}

BigFloat& BigFloat::operator+=(const BigFloat& o) {
  if (o.precision() > precision()) mpfr_prec_round(v_, o.precision(), MPFR_RNDN);
  mpfr_add(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}

BigFloat& BigFloat::operator-=(const BigFloat& o) {
  if (o.precision() > precision()) mpfr_prec_round(v_, o.precision(), MPFR_RNDN);
  mpfr_sub(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}

BigFloat& BigFloat::operator*=(const BigFloat& o) {
  if (o.precision() > precision()) mpfr_prec_round(v_, o.precision(), MPFR_RNDN);
  mpfr_mul(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}

BigFloat& BigFloat::operator/=(const BigFloat& o) {
  if (o.precision() > precision()) mpfr_prec_round(v_, o.precision(), MPFR_RNDN);
  mpfr_div(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}

BigFloat add(const BigFloat& a, const BigFloat& b, mpfr_rnd_t rnd, Precision prec) {
  BigFloat r(prec);
  mpfr_add(r.raw(), a.raw(), b.raw(), rnd);
  return r;
}

BigFloat sub(const BigFloat& a, const BigFloat& b, mpfr_rnd_t rnd, Precision prec) {
  BigFloat r(prec);
  mpfr_sub(r.raw(), a.raw(), b.raw(), rnd);
  return r;
}

BigFloat mul(const BigFloat& a, const BigFloat& b, mpfr_rnd_t rnd, Precision prec) {
  BigFloat r(prec);
  mpfr_mul(r.raw(), a.raw(), b.raw(), rnd);
  return r;
}

BigFloat div(const BigFloat& a, const BigFloat& b, mpfr_rnd_t rnd, Precision prec) {
  BigFloat r(prec);
  mpfr_div(r.raw(), a.raw(), b.raw(), rnd);
  return r;
}

BigFloat abs(const BigFloat& a) {
  BigFloat r(a.precision());
  mpfr_abs(r.raw(), a.raw(), MPFR_RNDN);
  return r;
}

BigFloat sqrt(const BigFloat& a, mpfr_rnd_t rnd) {
  BigFloat r(a.precision());
  mpfr_sqrt(r.raw(), a.raw(), rnd);
  return r;
}

BigFloat log(const BigFloat& a, mpfr_rnd_t rnd) {
  BigFloat r(a.precision());
  mpfr_log(r.raw(), a.raw(), rnd);
  return r;
}

BigFloat log1p(const BigFloat& a, mpfr_rnd_t rnd) {
  BigFloat r(a.precision());
  mpfr_log1p(r.raw(), a.raw(), rnd);
  return r;
}

BigFloat exp(const BigFloat& a, mpfr_rnd_t rnd) {
  BigFloat r(a.precision());
  mpfr_exp(r.raw(), a.raw(), rnd);
  return r;
}

BigFloat cos(const BigFloat& a) {
  BigFloat r(a.precision());
  mpfr_cos(r.raw(), a.raw(), MPFR_RNDN);
  return r;
}

BigFloat sin(const BigFloat& a) {
  BigFloat r(a.precision());
  mpfr_sin(r.raw(), a.raw(), MPFR_RNDN);
  return r;
}

BigFloat atan2(const BigFloat& y, const BigFloat& x) {
  BigFloat r(joint(x, y));
  mpfr_atan2(r.raw(), y.raw(), x.raw(), MPFR_RNDN);
  return r;
}

BigFloat hypot(const BigFloat& a, const BigFloat& b, mpfr_rnd_t rnd) {
  BigFloat r(joint(a, b));
  mpfr_hypot(r.raw(), a.raw(), b.raw(), rnd);
  return r;
}

BigFloat mul_2si(const BigFloat& a, long exponent) {
  BigFloat r(a.precision());
  mpfr_mul_2si(r.raw(), a.raw(), exponent, MPFR_RNDN);
  return r;
}

BigFloat max(const BigFloat& a, const BigFloat& b) { return a < b ? b : a; }
BigFloat min(const BigFloat& a, const BigFloat& b) { return b < a ? b : a; }

BigFloat const_pi(Precision prec, mpfr_rnd_t rnd) {
  BigFloat r(prec);
  mpfr_const_pi(r.raw(), rnd);
  return r;
}

BigFloat ulp_scale(Precision p, Precision prec) {
  BigFloat r(1L, prec);
  mpfr_mul_2si(r.raw(), r.raw(), -static_cast<long>(p), MPFR_RNDN);
  return r;
}

void widen_exponent_range() {
  mpfr_set_emax(mpfr_get_emax_max());
  mpfr_set_emin(mpfr_get_emin_min());
}

BigComplex& BigComplex::operator*=(const BigComplex& o) {
  BigFloat r = re * o.re - im * o.im;
  BigFloat i = re * o.im + im * o.re;
  re = std::move(r);
  im = std::move(i);
  return *this;
}

BigComplex& BigComplex::operator/=(const BigComplex& o) {
  BigFloat den = o.re * o.re + o.im * o.im;
  BigFloat r = (re * o.re + im * o.im) / den;
  BigFloat i = (im * o.re - re * o.im) / den;
  re = std::move(r);
  im = std::move(i);
  return *this;
}

BigFloat abs(const BigComplex& z, mpfr_rnd_t rnd) { return hypot(z.re, z.im, rnd); }

BigFloat arg(const BigComplex& z) { return atan2(z.im, z.re); }

BigComplex conj(const BigComplex& z) { return BigComplex(z.re, -z.im); }

BigFloat ComplexBall::abs_lower() const {
  BigFloat m = abs(center, MPFR_RNDD);
  BigFloat r = sub(m, radius, MPFR_RNDD, m.precision());
  if (r.sign() < 0) return BigFloat(0L, m.precision());
  return r;
}

BigFloat ComplexBall::abs_upper() const {
  BigFloat m = abs(center, MPFR_RNDU);
  return add(m, radius, MPFR_RNDU, m.precision());
}

bool ComplexBall::overlaps(const ComplexBall& other) const {
  BigComplex d = center - other.center;
  // |d| is computed with relative error 2^-p; shrink it before comparing.
  Precision p = d.precision();
  BigFloat dist = abs(d, MPFR_RNDD);
  dist = mul(dist, sub(BigFloat(1L, p), ulp_scale(p - 4, p), MPFR_RNDD, p), MPFR_RNDD, p);
  BigFloat reach = add(radius, other.radius, MPFR_RNDU, p);
  return !(reach < dist);
}

bool ComplexBall::contains(const BigComplex& z) const {
  BigComplex d = center - z;
  return abs(d, MPFR_RNDU) <= radius;
}

bool ComplexBall::meets_real_axis() const {
  BigFloat im = abs(center.im);
  return im <= radius;
}

}  // namespace heightlab
