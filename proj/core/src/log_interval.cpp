#include "heightlab/log_interval.hpp"

#include <cmath>
#include <cstdio>

#include "heightlab/errors.hpp"

namespace heightlab {

namespace {

// Plain logs beyond exp(kTowerThreshold) in magnitude move one level up.
constexpr double kTowerThreshold = 65536.0;

BigFloat op(int (*f)(mpfr_ptr, mpfr_srcptr, mpfr_rnd_t), const BigFloat& a, mpfr_rnd_t rnd, Precision prec) {
  BigFloat r(prec);
  f(r.raw(), a.raw(), rnd);
  return r;
}

BigFloat ln(const BigFloat& a, mpfr_rnd_t rnd, Precision prec) { return op(mpfr_log, a, rnd, prec); }
BigFloat ex(const BigFloat& a, mpfr_rnd_t rnd, Precision prec) { return op(mpfr_exp, a, rnd, prec); }
BigFloat l1p(const BigFloat& a, mpfr_rnd_t rnd, Precision prec) { return op(mpfr_log1p, a, rnd, prec); }
BigFloat neg(const BigFloat& a) { return -a; }

// ln(e^a + e^b) rounded in direction rnd; increasing in a and b.
BigFloat logaddexp(const BigFloat& a, const BigFloat& b, mpfr_rnd_t rnd, Precision prec) {
  const BigFloat& m = a >= b ? a : b;
  const BigFloat& n = a >= b ? b : a;
  if (!n.is_finite()) return m;
  BigFloat d = sub(n, m, rnd, prec);
  return add(m, l1p(ex(d, rnd, prec), rnd, prec), rnd, prec);
}

// ln of the largest |v| for v in [lo, hi]; -inf when the interval is {0}.
BigFloat ln_max_abs(const BigFloat& lo, const BigFloat& hi, Precision prec) {
  BigFloat m = max(abs(lo), abs(hi));
  if (m.is_zero()) {
    BigFloat r(prec);
    mpfr_set_inf(r.raw(), -1);
    return r;
  }
  return ln(m, MPFR_RNDU, prec);
}

struct Ln {
  bool tower = false;
  int sign = 1;
  BigFloat lo, hi;
};

Ln negate(const Ln& u) {
  if (u.tower) return {true, -u.sign, u.lo, u.hi};
  return {false, 1, neg(u.hi), neg(u.lo)};
}

// u + v for ln-values.
Ln ln_add(const Ln& u, const Ln& v, Precision prec) {
  if (!u.tower && !v.tower) {
    return {false, 1, add(u.lo, v.lo, MPFR_RNDD, prec), add(u.hi, v.hi, MPFR_RNDU, prec)};
  }
  if (!u.tower) return ln_add(v, u, prec);
  // u is a tower; see whether it dominates v.
  BigFloat mv = v.tower ? v.hi : ln_max_abs(v.lo, v.hi, prec);
  BigFloat gap = sub(mv, u.lo, MPFR_RNDU, prec);
  if (gap < BigFloat(-1.0, prec)) {
    BigFloat rho = ex(gap, MPFR_RNDU, prec);
    Ln r{true, u.sign, BigFloat(prec), BigFloat(prec)};
    r.lo = add(u.lo, l1p(neg(rho), MPFR_RNDD, prec), MPFR_RNDD, prec);
    r.hi = add(u.hi, l1p(rho, MPFR_RNDU, prec), MPFR_RNDU, prec);
    return r;
  }
  if (v.tower && v.sign == u.sign) {
    BigFloat mu = u.hi;
    BigFloat gap2 = sub(mu, v.lo, MPFR_RNDU, prec);
    if (gap2 < BigFloat(-1.0, prec)) return ln_add(v, u, prec);
    return {true, u.sign, logaddexp(u.lo, v.lo, MPFR_RNDD, prec), logaddexp(u.hi, v.hi, MPFR_RNDU, prec)};
  }
  if (v.tower) {
    BigFloat gap2 = sub(u.hi, v.lo, MPFR_RNDU, prec);
    if (gap2 < BigFloat(-1.0, prec)) return ln_add(v, u, prec);
  }
  throw DomainError("log-interval: cancellation between values of comparable size");
}

// Converts a plain ln-value of constant sign to tower form.
std::optional<Ln> to_tower(const Ln& u, Precision prec) {
  if (u.tower) return u;
  if (u.lo.sign() > 0) return Ln{true, 1, ln(u.lo, MPFR_RNDD, prec), ln(u.hi, MPFR_RNDU, prec)};
  if (u.hi.sign() < 0) return Ln{true, -1, ln(neg(u.hi), MPFR_RNDD, prec), ln(neg(u.lo), MPFR_RNDU, prec)};
  return std::nullopt;
}

Ln ln_max(const Ln& u, const Ln& v, Precision prec) {
  if (!u.tower && !v.tower) return {false, 1, max(u.lo, v.lo), max(u.hi, v.hi)};
  if (u.tower && v.tower) {
    if (u.sign != v.sign) return u.sign > 0 ? u : v;
    if (u.sign > 0) return {true, 1, max(u.lo, v.lo), max(u.hi, v.hi)};
    return {true, -1, min(u.lo, v.lo), min(u.hi, v.hi)};
  }
  const Ln& t = u.tower ? u : v;
  const Ln& p = u.tower ? v : u;
  BigFloat mp = ln_max_abs(p.lo, p.hi, prec);
  if (mp < t.lo) return t.sign > 0 ? t : p;  // the tower's magnitude dominates
  auto pt = to_tower(p, prec);
  if (!pt) throw DomainError("log-interval: cannot order values");
  return ln_max(*pt, t, prec);
}

}  // namespace

LogInterval::LogInterval(Precision prec) : prec_(prec), lo_(prec), hi_(prec) {}

LogInterval LogInterval::from_integer(const mpz_class& n, Precision prec) {
  return from_rational(mpq_class(n), prec);
}

LogInterval LogInterval::from_rational(const mpq_class& q, Precision prec) {
  if (q < 0) throw DomainError("log-interval: negative value");
  LogInterval r(prec);
  if (q == 0) return r;
  r.zero_ = false;
  r.lo_ = ln(BigFloat(q, prec, MPFR_RNDD), MPFR_RNDD, prec);
  r.hi_ = ln(BigFloat(q, prec, MPFR_RNDU), MPFR_RNDU, prec);
  return r;
}

LogInterval LogInterval::from_ln(const BigFloat& lo, const BigFloat& hi, Precision prec) {
  if (hi < lo) throw DomainError("log-interval: empty interval");
  LogInterval r(prec);
  r.zero_ = false;
  r.lo_ = BigFloat(prec);
  mpfr_set(r.lo_.raw(), lo.raw(), MPFR_RNDD);
  r.hi_ = BigFloat(prec);
  mpfr_set(r.hi_.raw(), hi.raw(), MPFR_RNDU);
  return r;
}

namespace {

Ln ln_of(const LogInterval& x) { return {x.is_tower(), x.tower_sign(), x.lo(), x.hi()}; }

LogInterval build(const Ln& u, Precision prec) {
  return u.tower ? LogInterval::from_tower(u.sign, u.lo, u.hi, prec) : LogInterval::from_ln(u.lo, u.hi, prec);
}

}  // namespace

LogInterval operator*(const LogInterval& a, const LogInterval& b) {
  const Precision prec = std::max(a.prec_, b.prec_);
  if (a.zero_ || b.zero_) return LogInterval(prec);
  return build(ln_add(ln_of(a), ln_of(b), prec), prec);
}

LogInterval operator/(const LogInterval& a, const LogInterval& b) {
  const Precision prec = std::max(a.prec_, b.prec_);
  if (b.zero_) throw DomainError("log-interval: division by zero");
  if (a.zero_) return LogInterval(prec);
  return build(ln_add(ln_of(a), negate(ln_of(b)), prec), prec);
}

LogInterval operator+(const LogInterval& a, const LogInterval& b) {
  const Precision prec = std::max(a.prec_, b.prec_);
  if (a.zero_) return b;
  if (b.zero_) return a;
  Ln u = ln_of(a), v = ln_of(b);
  if (!u.tower && !v.tower) {
    return build({false, 1, logaddexp(u.lo, v.lo, MPFR_RNDD, prec), logaddexp(u.hi, v.hi, MPFR_RNDU, prec)}, prec);
  }
  // max(a, b) <= a + b <= 2 max(a, b)
  Ln m = ln_max(u, v, prec);
  BigFloat ln2(prec);
  mpfr_const_log2(ln2.raw(), MPFR_RNDU);
  Ln two{false, 1, BigFloat(0L, prec), ln2};
  return build(ln_add(m, two, prec), prec);
}

LogInterval max(const LogInterval& a, const LogInterval& b) {
  const Precision prec = std::max(a.prec_, b.prec_);
  if (a.zero_) return b;
  if (b.zero_) return a;
  return build(ln_max(ln_of(a), ln_of(b), prec), prec);
}

LogInterval pow(const LogInterval& base, const LogInterval& exponent) {
  const Precision prec = std::max(base.prec_, exponent.prec_);
  if (exponent.zero_) return LogInterval::one(prec);
  if (base.zero_) return LogInterval(prec);
  if (exponent.tower_) {
    // ln|ln(x^y)| = ln y + ln|ln x| with ln y = exp(t_y).
    if (exponent.sign_ < 0) throw ScaleCapExceeded("log-interval: exponent too small");
    if (exponent.hi_ > BigFloat(kTowerThreshold, prec)) throw ScaleCapExceeded("log-interval: exponent too large");
    Ln u = ln_of(base);
    auto t = to_tower(u, prec);
    if (!t) throw DomainError("log-interval: base straddles 1 under a huge exponent");
    BigFloat lylo = ex(exponent.lo_, MPFR_RNDD, prec), lyhi = ex(exponent.hi_, MPFR_RNDU, prec);
    return build({true, t->sign, add(lylo, t->lo, MPFR_RNDD, prec), add(lyhi, t->hi, MPFR_RNDU, prec)}, prec);
  }
  const BigFloat& Ylo = exponent.lo_;
  const BigFloat& Yhi = exponent.hi_;
  Ln u = ln_of(base);
  if (u.tower) {
    return build({true, u.sign, add(Ylo, u.lo, MPFR_RNDD, prec), add(Yhi, u.hi, MPFR_RNDU, prec)}, prec);
  }
  if (u.lo.is_zero() && u.hi.is_zero()) return LogInterval::one(prec);
  BigFloat size = add(Yhi, ln_max_abs(u.lo, u.hi, prec), MPFR_RNDU, prec);
  if (size > BigFloat(kTowerThreshold, prec)) {
    auto t = to_tower(u, prec);
    if (!t) throw DomainError("log-interval: base straddles 1 under a huge exponent");
    return build({true, t->sign, add(Ylo, t->lo, MPFR_RNDD, prec), add(Yhi, t->hi, MPFR_RNDU, prec)}, prec);
  }
  BigFloat ylo = ex(Ylo, MPFR_RNDD, prec), yhi = ex(Yhi, MPFR_RNDU, prec);
  BigFloat lo = u.lo.sign() >= 0 ? mul(ylo, u.lo, MPFR_RNDD, prec) : mul(yhi, u.lo, MPFR_RNDD, prec);
  BigFloat hi = u.hi.sign() >= 0 ? mul(yhi, u.hi, MPFR_RNDU, prec) : mul(ylo, u.hi, MPFR_RNDU, prec);
  return build({false, 1, lo, hi}, prec);
}

LogInterval exp(const LogInterval& x) {
  const Precision prec = x.prec_;
  if (x.zero_) return LogInterval::one(prec);
  if (x.tower_) throw ScaleCapExceeded("log-interval: exponential of a tower value");
  if (x.hi_ > BigFloat(kTowerThreshold, prec)) return build({true, 1, x.lo_, x.hi_}, prec);
  return build({false, 1, ex(x.lo_, MPFR_RNDD, prec), ex(x.hi_, MPFR_RNDU, prec)}, prec);
}

LogInterval log(const LogInterval& x) {
  const Precision prec = x.prec_;
  if (x.zero_) throw DomainError("log-interval: logarithm of zero");
  if (x.tower_) {
    if (x.sign_ < 0) throw DomainError("log-interval: logarithm of a value below 1");
    return build({false, 1, x.lo_, x.hi_}, prec);
  }
  if (x.hi_.is_zero()) return LogInterval(prec);
  if (x.lo_.sign() <= 0) throw DomainError("log-interval: logarithm of a value that may be below 1");
  return build({false, 1, ln(x.lo_, MPFR_RNDD, prec), ln(x.hi_, MPFR_RNDU, prec)}, prec);
}

LogInterval LogInterval::from_tower(int sign, const BigFloat& lo, const BigFloat& hi, Precision prec) {
  LogInterval r = from_ln(lo, hi, prec);
  r.tower_ = true;
  r.sign_ = sign < 0 ? -1 : 1;
  return r;
}

bool LogInterval::contains(const mpq_class& q) const {
  if (q < 0) return false;
  if (zero_) return q == 0;
  if (q == 0) return false;
  const Precision p = prec_ + 64;
  BigFloat a = ln(BigFloat(q, p, MPFR_RNDD), MPFR_RNDD, p);
  BigFloat b = ln(BigFloat(q, p, MPFR_RNDU), MPFR_RNDU, p);
  if (!tower_) return b >= lo_ && a <= hi_;
  if ((sign_ > 0 && a.sign() <= 0) || (sign_ < 0 && b.sign() >= 0)) return false;
  BigFloat m1 = sign_ > 0 ? a : neg(b), m2 = sign_ > 0 ? b : neg(a);
  return ln(m2, MPFR_RNDU, p) >= lo_ && ln(m1, MPFR_RNDD, p) <= hi_;
}

double LogInterval::width() const {
  if (zero_) return 0.0;
  return sub(hi_, lo_, MPFR_RNDU, prec_).to_double(MPFR_RNDU);
}

LogInterval::Log10 LogInterval::log10_bounds() const {
  Log10 out;
  if (zero_) {
    out.zero = true;
    return out;
  }
  const Precision p = prec_;
  const BigFloat ten(10L, p);
  const BigFloat l10d = ln(ten, MPFR_RNDD, p), l10u = ln(ten, MPFR_RNDU, p);
  auto scaled = [&](const BigFloat& v, mpfr_rnd_t rnd) {
    // v / ln 10 rounded in direction rnd
    bool down = rnd == MPFR_RNDD;
    const BigFloat& d = (v.sign() >= 0) == down ? l10u : l10d;
    return div(v, d, rnd, p).to_double(rnd);
  };
  if (!tower_) {
    out.lo = scaled(lo_, MPFR_RNDD);
    out.hi = scaled(hi_, MPFR_RNDU);
    return out;
  }
  // log10 |log10 x| = (t - ln ln 10) / ln 10
  out.tower = true;
  out.sign = sign_;
  BigFloat lnl10d = ln(l10d, MPFR_RNDD, p), lnl10u = ln(l10u, MPFR_RNDU, p);
  out.lo = scaled(sub(lo_, lnl10u, MPFR_RNDD, p), MPFR_RNDD);
  out.hi = scaled(sub(hi_, lnl10d, MPFR_RNDU, p), MPFR_RNDU);
  return out;
}

std::optional<double> LogInterval::to_double() const {
  if (zero_) return 0.0;
  if (tower_) return std::nullopt;
  double m = 0.5 * (lo_.to_double() + hi_.to_double());
  if (std::abs(m) > 700.0) return std::nullopt;
  return std::exp(m);
}

std::string LogInterval::to_string(int digits) const {
  if (zero_) return "0";
  auto b = log10_bounds();
  const double mid = 0.5 * (b.lo + b.hi);
  char buf[96];
  if (b.tower) {
    std::snprintf(buf, sizeof buf, "10^(%s10^%.*g)", b.sign < 0 ? "-" : "", digits, mid);
    return buf;
  }
  if (std::abs(mid) < 15.0) {
    std::snprintf(buf, sizeof buf, "%.*g", digits, std::pow(10.0, mid));
    return buf;
  }
  std::snprintf(buf, sizeof buf, "10^%.*g", digits + 2, mid);
  return buf;
}

}  // namespace heightlab
