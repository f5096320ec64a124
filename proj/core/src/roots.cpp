#include "heightlab/roots.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>

#include "heightlab/errors.hpp"
#include "heightlab/factor.hpp"

namespace heightlab {

namespace {

using cld = std::complex<long double>;

long double mpz_log(const mpz_class& a) {
  long e = 0;
  double m = mpz_get_d_2exp(&e, a.get_mpz_t());
  return std::log(std::fabs(static_cast<long double>(m))) + static_cast<long double>(e) * std::numbers::ln2_v<long double>;
}

long double mpz_to_ld(const mpz_class& a) {
  long e = 0;
  double m = mpz_get_d_2exp(&e, a.get_mpz_t());
  return std::ldexp(static_cast<long double>(m), static_cast<int>(e));
}

// Starting points on circles read off the upper convex hull of
// (k, log|a_k|).
std::vector<cld> newton_polygon_start(const std::vector<mpz_class>& a) {
  const int n = static_cast<int>(a.size()) - 1;
  std::vector<int> idx;
  std::vector<long double> lg(a.size(), 0);
  for (int k = 0; k <= n; ++k) {
    if (a[k] == 0) continue;
    lg[k] = mpz_log(a[k]);
    while (idx.size() >= 2) {
      int i1 = idx[idx.size() - 2], i2 = idx.back();
      long double cross = (lg[i2] - lg[i1]) * (k - i1) - (lg[k] - lg[i1]) * (i2 - i1);
      if (cross <= 0) {
        idx.pop_back();
      } else {
        break;
      }
    }
    idx.push_back(k);
  }
  std::vector<cld> z;
  z.reserve(static_cast<std::size_t>(n));
  const long double two_pi = 2 * std::numbers::pi_v<long double>;
  for (std::size_t e = 1; e < idx.size(); ++e) {
    int i0 = idx[e - 1], i1 = idx[e];
    int m = i1 - i0;
    long double u = std::exp((lg[i0] - lg[i1]) / m);
    for (int q = 0; q < m; ++q) {
      long double ang = two_pi * q / m + two_pi * i0 / n + 0.7L;
      z.push_back(std::polar(u, ang));
    }
  }
  return z;
}

// Gauss-Seidel Aberth sweeps in long double. Returns false when values leave
// the representable range.
bool aberth_long_double(const std::vector<mpz_class>& a, std::vector<cld>& z) {
  const int n = static_cast<int>(a.size()) - 1;
  std::vector<long double> c(a.size()), c_abs(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) {
    c[k] = mpz_to_ld(a[k]);
    c_abs[k] = std::fabs(c[k]);
  }
  const long double noise = 8.0L * (n + 2) * std::numeric_limits<long double>::epsilon();
  std::vector<bool> frozen(z.size(), false);
  const int max_sweeps = std::max(200, 4 * n);
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    bool all = true;
    for (int j = 0; j < n; ++j) {
      if (frozen[j]) continue;
      cld p = c[n], dp = 0;
      long double az = std::abs(z[j]), bound = c_abs[n];
      for (int k = n - 1; k >= 0; --k) {
        dp = dp * z[j] + p;
        p = p * z[j] + c[k];
        bound = bound * az + c_abs[k];
      }
      if (!std::isfinite(std::abs(p)) || !std::isfinite(std::abs(dp))) return false;
      if (std::abs(p) <= noise * bound) {
        frozen[j] = true;
        continue;
      }
      cld ratio = p / dp;
      cld s = 0;
      for (int k = 0; k < n; ++k) {
        if (k != j) s += 1.0L / (z[j] - z[k]);
      }
      cld w = ratio / (1.0L - ratio * s);
      if (!std::isfinite(std::abs(w))) return false;
      z[j] -= w;
      if (std::abs(w) <= 1e-18L * std::abs(z[j])) {
        frozen[j] = true;
      } else {
        all = false;
      }
    }
    if (all) break;
  }
  return true;
}

struct Workspace {
  Precision prec;
  std::vector<BigFloat> coeffs;
  BigFloat pr, pi, dr, di, t1, t2, t3;
  explicit Workspace(const std::vector<mpz_class>& a, Precision p)
      : prec(p), pr(p), pi(p), dr(p), di(p), t1(p), t2(p), t3(p) {
    coeffs.reserve(a.size());
    for (const auto& c : a) coeffs.emplace_back(c, p);
  }

  // (xr + i xi) <- (xr + i xi) * (zr + i zi)
  void mul_in_place(BigFloat& xr, BigFloat& xi, const BigFloat& zr, const BigFloat& zi) {
    mpfr_mul(t1.raw(), xr.raw(), zr.raw(), MPFR_RNDN);
    mpfr_mul(t2.raw(), xi.raw(), zi.raw(), MPFR_RNDN);
    mpfr_mul(t3.raw(), xr.raw(), zi.raw(), MPFR_RNDN);
    mpfr_fma(xi.raw(), xi.raw(), zr.raw(), t3.raw(), MPFR_RNDN);
    mpfr_sub(xr.raw(), t1.raw(), t2.raw(), MPFR_RNDN);
  }

  // Leaves f(z) in (pr, pi) and, when `derivative`, f'(z) in (dr, di).
  void horner(const BigComplex& z, bool derivative) {
    const int n = static_cast<int>(coeffs.size()) - 1;
    mpfr_set(pr.raw(), coeffs[n].raw(), MPFR_RNDN);
    mpfr_set_zero(pi.raw(), 1);
    mpfr_set_zero(dr.raw(), 1);
    mpfr_set_zero(di.raw(), 1);
    for (int k = n - 1; k >= 0; --k) {
      if (derivative) {
        mul_in_place(dr, di, z.re, z.im);
        mpfr_add(dr.raw(), dr.raw(), pr.raw(), MPFR_RNDN);
        mpfr_add(di.raw(), di.raw(), pi.raw(), MPFR_RNDN);
      }
      mul_in_place(pr, pi, z.re, z.im);
      mpfr_add(pr.raw(), pr.raw(), coeffs[k].raw(), MPFR_RNDN);
    }
  }
};

long exponent_of(const BigComplex& z) {
  long e = mpfr_get_emin_min();
  if (!z.re.is_zero()) e = std::max(e, static_cast<long>(mpfr_get_exp(z.re.raw())));
  if (!z.im.is_zero()) e = std::max(e, static_cast<long>(mpfr_get_exp(z.im.raw())));
  return e;
}

void aberth_mpfr(const std::vector<mpz_class>& a, std::vector<BigComplex>& z, Precision p) {
  const int n = static_cast<int>(a.size()) - 1;
  Workspace ws(a, p);
  for (auto& zj : z) zj.set_precision(p);
  std::vector<bool> frozen(z.size(), false);
  std::vector<long double> abs_coeffs(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) abs_coeffs[k] = std::fabs(mpz_to_ld(a[k]));
  const long double noise = std::ldexp(16.0L * (n + 2), -static_cast<int>(p));
  BigFloat diff_re(p), diff_im(p);
  const int max_sweeps = 60;
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    bool all = true;
    for (int j = 0; j < n; ++j) {
      if (frozen[j]) continue;
      ws.horner(z[j], true);
      if (ws.pr.is_zero() && ws.pi.is_zero()) {
        frozen[j] = true;
        continue;
      }
      {
        // Stop once |f(z)| is at the level of the evaluation error.
        long double az = std::hypot(mpfr_get_ld(z[j].re.raw(), MPFR_RNDN), mpfr_get_ld(z[j].im.raw(), MPFR_RNDN));
        long double bound = abs_coeffs[n];
        for (int k = n - 1; k >= 0; --k) bound = bound * az + abs_coeffs[k];
        long double fz = std::hypot(mpfr_get_ld(ws.pr.raw(), MPFR_RNDN), mpfr_get_ld(ws.pi.raw(), MPFR_RNDN));
        if (std::isfinite(bound) && fz <= noise * bound) {
          frozen[j] = true;
          continue;
        }
      }
      BigComplex ratio = BigComplex(ws.pr, ws.pi) / BigComplex(ws.dr, ws.di);
      cld s = 0;
      for (int k = 0; k < n; ++k) {
        if (k == j) continue;
        mpfr_sub(diff_re.raw(), z[j].re.raw(), z[k].re.raw(), MPFR_RNDN);
        mpfr_sub(diff_im.raw(), z[j].im.raw(), z[k].im.raw(), MPFR_RNDN);
        cld d(mpfr_get_ld(diff_re.raw(), MPFR_RNDN), mpfr_get_ld(diff_im.raw(), MPFR_RNDN));
        if (d != cld(0)) s += 1.0L / d;
      }
      BigComplex sb(BigFloat(static_cast<double>(s.real()), p), BigFloat(static_cast<double>(s.imag()), p));
      mpfr_set_ld(sb.re.raw(), s.real(), MPFR_RNDN);
      mpfr_set_ld(sb.im.raw(), s.imag(), MPFR_RNDN);
      BigComplex one(BigFloat(1L, p), BigFloat(0L, p));
      BigComplex w = ratio / (one - ratio * sb);
      if (!w.re.is_finite() || !w.im.is_finite()) {
        w = ratio;
      }
      z[j] -= w;
      long ew = exponent_of(w);
      long ez = exponent_of(z[j]);
      if (w.re.is_zero() && w.im.is_zero()) {
        frozen[j] = true;
      } else if (ew < ez - static_cast<long>(p) + 6) {
        frozen[j] = true;
      } else {
        all = false;
      }
    }
    if (all) break;
  }
}

// Inclusion radii from the Weierstrass corrections. Returns false when a
// radius cannot be formed (coincident approximations).
bool inclusion_radii(const std::vector<mpz_class>& a, const std::vector<BigComplex>& z, Precision p,
                     std::vector<BigFloat>& radii) {
  const int n = static_cast<int>(a.size()) - 1;
  Workspace ws(a, p);
  std::vector<BigFloat> abs_coeffs;
  for (const auto& c : a) abs_coeffs.emplace_back(mpz_class(abs(c)), p, MPFR_RNDU);
  BigFloat lc_abs(mpz_class(abs(a.back())), p, MPFR_RNDD);
  // (8n + 16) 2^-p bounds the Horner and coefficient rounding, relative to
  // sum |a_k| |z|^k.
  BigFloat horner_factor = mul(BigFloat(static_cast<long>(8 * n + 16), p), ulp_scale(p, p), MPFR_RNDU, p);
  BigFloat shrink = sub(BigFloat(1L, p),
                        mul(BigFloat(static_cast<long>(3 * n + 8), p), ulp_scale(p, p), MPFR_RNDU, p), MPFR_RNDD, p);
  BigFloat dr(p), di(p), dist(p), prod(p), absz(p), acc(p);
  radii.clear();
  for (int j = 0; j < n; ++j) {
    ws.horner(z[j], false);
    BigFloat fz = hypot(ws.pr, ws.pi, MPFR_RNDU);
    mpfr_hypot(absz.raw(), z[j].re.raw(), z[j].im.raw(), MPFR_RNDU);
    mpfr_set(acc.raw(), abs_coeffs[n].raw(), MPFR_RNDU);
    for (int k = n - 1; k >= 0; --k) {
      mpfr_mul(acc.raw(), acc.raw(), absz.raw(), MPFR_RNDU);
      mpfr_add(acc.raw(), acc.raw(), abs_coeffs[k].raw(), MPFR_RNDU);
    }
    BigFloat num = add(fz, mul(acc, horner_factor, MPFR_RNDU, p), MPFR_RNDU, p);
    mpfr_set(prod.raw(), lc_abs.raw(), MPFR_RNDD);
    for (int k = 0; k < n; ++k) {
      if (k == j) continue;
      mpfr_sub(dr.raw(), z[j].re.raw(), z[k].re.raw(), MPFR_RNDN);
      mpfr_sub(di.raw(), z[j].im.raw(), z[k].im.raw(), MPFR_RNDN);
      mpfr_hypot(dist.raw(), dr.raw(), di.raw(), MPFR_RNDD);
      mpfr_mul(prod.raw(), prod.raw(), dist.raw(), MPFR_RNDD);
    }
    mpfr_mul(prod.raw(), prod.raw(), shrink.raw(), MPFR_RNDD);
    if (prod.sign() <= 0) return false;
    BigFloat r = div(mul(BigFloat(static_cast<long>(n), p), num, MPFR_RNDU, p), prod, MPFR_RNDU, p);
    if (!r.is_finite()) return false;
    radii.push_back(std::move(r));
  }
  return true;
}

bool pairwise_disjoint(const std::vector<ComplexBall>& balls) {
  for (std::size_t j = 0; j < balls.size(); ++j) {
    for (std::size_t k = j + 1; k < balls.size(); ++k) {
      if (balls[j].overlaps(balls[k])) return false;
    }
  }
  return true;
}

int sign_at(const UniPoly& f, const std::optional<mpq_class>& x, bool at_plus_infinity) {
  if (x) return sgn(f.eval(*x));
  int s = sgn(f.lc());
  if (!at_plus_infinity && f.degree() % 2 == 1) s = -s;
  return s;
}

int sign_changes(const std::vector<UniPoly>& seq, const std::optional<mpq_class>& x, bool plus_inf) {
  int changes = 0, last = 0;
  for (const auto& s : seq) {
    int v = sign_at(s, x, plus_inf);
    if (v == 0) continue;
    if (last != 0 && v != last) ++changes;
    last = v;
  }
  return changes;
}

UniPoly positive_primitive(const UniPoly& f) {
  UniPoly p = f.primitive();
  if (sgn(f.lc()) < 0) p = -p;
  return p;
}

}  // namespace

std::vector<ComplexBall> complex_roots(const UniPoly& f, Precision precision) {
  RootOptions o;
  o.precision = precision;
  return complex_roots(f, o);
}

std::vector<ComplexBall> complex_roots(const UniPoly& f, const RootOptions& options) {
  if (f.degree() < 1) throw DomainError("complex_roots: polynomial must have degree >= 1");
  UniPoly g = f.primitive();
  if (!is_squarefree(g)) throw DomainError("complex_roots: polynomial is not squarefree");
  bool zero_root = false;
  if (g.coeff(0) == 0) {
    zero_root = true;
    g = divmod(g, UniPoly::x()).first;
  }
  std::vector<ComplexBall> out;
  Precision p = std::max<Precision>(options.precision, 64);
  if (g.degree() == 0) {
    out.emplace_back(BigComplex(p), BigFloat(0L, p));
    return out;
  }
  const std::vector<mpz_class> a = g.int_coeffs();
  const int n = g.degree();

  std::vector<BigComplex> z;
  if (n == 1) {
    mpq_class root = -mpq_class(a[0]) / mpq_class(a[1]);
    z.emplace_back(BigFloat(root, p), BigFloat(0L, p));
  } else {
    std::vector<cld> z0 = newton_polygon_start(a);
    std::vector<cld> zl = z0;
    if (!aberth_long_double(a, zl)) zl = z0;
    for (const auto& c : zl) {
      BigComplex b(p);
      mpfr_set_ld(b.re.raw(), c.real(), MPFR_RNDN);
      mpfr_set_ld(b.im.raw(), c.imag(), MPFR_RNDN);
      z.push_back(std::move(b));
    }
  }

  while (true) {
    if (n > 1) aberth_mpfr(a, z, p);
    for (auto& zj : z) zj.set_precision(p);
    std::vector<BigFloat> radii;
    bool ok = inclusion_radii(a, z, p, radii);
    if (ok) {
      out.clear();
      for (int j = 0; j < n; ++j) out.emplace_back(z[j], radii[j]);
      if (zero_root) out.emplace_back(BigComplex(p), BigFloat(0L, p));
      ok = pairwise_disjoint(out);
    }
    if (ok) {
      std::vector<ComplexBall> snapped = out;
      for (std::size_t j = 0; j < out.size(); ++j) {
        if (!out[j].center.im.is_zero() && certified_real(out, j)) {
          // The real root x satisfies |x - Re c| <= r as well.
          snapped[j] = ComplexBall(BigComplex(out[j].center.re, BigFloat(0L, p)), out[j].radius);
        }
      }
      if (pairwise_disjoint(snapped)) out = std::move(snapped);
      bool small = true;
      if (options.max_radius > 0) {
        BigFloat limit(options.max_radius, p);
        for (const auto& b : out) small = small && b.radius <= limit;
      }
      if (small) break;
    }
    if (p * 2 > options.ceiling) {
      throw PrecisionExhausted("complex_roots: certification failed at the precision ceiling of " +
                               std::to_string(options.ceiling) + " bits");
    }
    p *= 2;
  }

  std::sort(out.begin(), out.end(), [](const ComplexBall& x, const ComplexBall& y) {
    if (x.center.re != y.center.re) return x.center.re < y.center.re;
    return x.center.im < y.center.im;
  });
  return out;
}

bool certified_real(const std::vector<ComplexBall>& balls, std::size_t index) {
  const ComplexBall& b = balls[index];
  if (!b.meets_real_axis()) return false;
  ComplexBall mirror(conj(b.center), b.radius);
  for (std::size_t k = 0; k < balls.size(); ++k) {
    if (k != index && mirror.overlaps(balls[k])) return false;
  }
  return true;
}

std::size_t certified_real_count(const std::vector<ComplexBall>& balls) {
  std::size_t c = 0;
  for (std::size_t j = 0; j < balls.size(); ++j) c += certified_real(balls, j) ? 1 : 0;
  return c;
}

int real_root_count(const UniPoly& f, const RealInterval& interval) {
  if (f.is_zero()) throw DomainError("real_root_count: zero polynomial");
  if (f.degree() == 0) return 0;
  UniPoly g = f.primitive();
  UniPoly d = gcd(g, g.derivative());
  if (d.degree() > 0) g = divmod(g, d).first.primitive();
  if (interval.lo && interval.hi && *interval.hi <= *interval.lo) return 0;
  std::vector<UniPoly> seq{g, positive_primitive(g.derivative())};
  while (seq.back().degree() > 0) {
    UniPoly r = divmod(seq[seq.size() - 2], seq.back()).second;
    if (r.is_zero()) break;
    seq.push_back(positive_primitive(-r));
  }
  int lo = sign_changes(seq, interval.lo, false);
  int hi = sign_changes(seq, interval.hi, true);
  int count = lo - hi;
  if (interval.hi && g.eval(*interval.hi) == 0) --count;
  return count;
}

}  // namespace heightlab
