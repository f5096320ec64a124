#include "heightlab/heights.hpp"

#include <boost/math/quadrature/tanh_sinh.hpp>

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <complex>
#include <numbers>

#include "heightlab/errors.hpp"
#include "heightlab/factor.hpp"
#include "heightlab/roots.hpp"

namespace heightlab {

namespace {

constexpr Precision kPointPrecision = 192;

// Midpoint and radius of [lo, hi] as doubles, with the conversion error
// folded into the radius.
HeightValue from_interval(const BigFloat& lo, const BigFloat& hi, HeightMethod method) {
  Precision p = std::max(lo.precision(), hi.precision());
  BigFloat mid = mul_2si(add(lo, hi, MPFR_RNDN, p), -1);
  HeightValue h;
  h.value = mid.to_double();
  h.method = method;
  BigFloat v(h.value, p);
  BigFloat e1 = sub(hi, v, MPFR_RNDU, p);
  BigFloat e2 = sub(v, lo, MPFR_RNDU, p);
  h.abs_error = max(e1, e2).to_double(MPFR_RNDU);
  if (h.abs_error < 0) h.abs_error = 0;
  return h;
}

struct Interval {
  BigFloat lo, hi;
};

Interval log_abs(const mpz_class& v, Precision p) {
  mpz_class a = abs(v);
  BigFloat lo(a, p, MPFR_RNDD), hi(a, p, MPFR_RNDU);
  return {log(lo, MPFR_RNDD), log(hi, MPFR_RNDU)};
}

mpz_class max_abs(const std::vector<mpz_class>& c) {
  mpz_class m = 0;
  for (const auto& x : c) m = std::max(m, mpz_class(abs(x)));
  return m;
}

// log ||x||_inf and log ||x||_2 as intervals.
Interval log_norm(const std::vector<mpz_class>& c, Norm norm, Precision p) {
  if (norm == Norm::Inf) return log_abs(max_abs(c), p);
  mpz_class s = 0;
  for (const auto& x : c) s += x * x;
  Interval l = log_abs(s, p);
  return {mul_2si(l.lo, -1), mul_2si(l.hi, -1)};
}

std::vector<mpz_class> normalize_coords(const std::vector<mpq_class>& q) {
  mpz_class den = 1;
  for (const auto& x : q) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), x.get_den_mpz_t());
  std::vector<mpz_class> out;
  mpz_class g = 0;
  for (const auto& x : q) {
    mpz_class v = x.get_num() * (den / x.get_den());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
    out.push_back(v);
  }
  if (g == 0) throw DomainError("projective point with all coordinates zero");
  for (auto& v : out) v /= g;
  return out;
}

Interval log_mahler_from_balls(const mpz_class& lc, const std::vector<ComplexBall>& balls) {
  Precision q = balls.front().center.precision();
  Interval acc = log_abs(lc, q);
  for (const auto& b : balls) {
    BigFloat lo = b.abs_lower();
    BigFloat hi = b.abs_upper();
    if (lo > BigFloat(1L, q)) acc.lo = add(acc.lo, log(lo, MPFR_RNDD), MPFR_RNDD, q);
    if (hi > BigFloat(1L, q)) acc.hi = add(acc.hi, log(hi, MPFR_RNDU), MPFR_RNDU, q);
  }
  return acc;
}

// log M of a squarefree primitive integer polynomial, as an interval.
Interval log_mahler_squarefree(const UniPoly& f, double tol, Precision& p_used) {
  Precision p = 64;
  while (true) {
    RootOptions opt;
    opt.precision = p;
    auto balls = complex_roots(f, opt);
    Precision q = balls.front().center.precision();
    Interval acc = log_mahler_from_balls(f.lc().get_num(), balls);
    BigFloat width = sub(acc.hi, acc.lo, MPFR_RNDU, q);
    if (width.to_double(MPFR_RNDU) <= tol) {
      p_used = q;
      return acc;
    }
    if (q * 2 > 16384) {
      throw PrecisionExhausted("log_mahler_measure: tolerance unreachable at the precision ceiling");
    }
    p = q * 2;
  }
}

}  // namespace

std::string to_string(HeightMethod m) {
  switch (m) {
    case HeightMethod::ExactRoots:
      return "exact-roots";
    case HeightMethod::Quadrature:
      return "quadrature";
    case HeightMethod::MonteCarlo:
      return "monte-carlo";
    case HeightMethod::Exact:
      return "exact";
  }
  return "unknown";
}

std::string HeightValue::tag() const {
  std::string t = to_string(method);
  if (assumed_irreducible) t += "+assumed-irreducible";
  return t;
}

AlgebraicNumber AlgebraicNumber::rational(const mpq_class& q) {
  AlgebraicNumber a;
  a.min_poly = UniPoly(std::vector<mpq_class>{-q, mpq_class(1)}).primitive();
  a.approx = ComplexBall(BigComplex(BigFloat(q, 64), BigFloat(0L, 64)), BigFloat(0L, 64));
  if (BigFloat(q, 64) != BigFloat(q, 128)) {
    a.approx.radius = abs(sub(BigFloat(q, 64), BigFloat(q, 256), MPFR_RNDU, 64));
  }
  a.certified = true;
  return a;
}

std::vector<AlgebraicNumber> algebraic_roots(const UniPoly& f, bool certified, Precision precision) {
  UniPoly g = f.primitive();
  std::vector<AlgebraicNumber> out;
  for (auto& b : complex_roots(g, precision)) {
    AlgebraicNumber a;
    a.min_poly = g;
    a.approx = std::move(b);
    a.certified = certified;
    out.push_back(std::move(a));
  }
  return out;
}

ProjectivePoint::ProjectivePoint(const std::vector<mpq_class>& rational_coords)
    : coords(normalize_coords(rational_coords)) {}

ProjectivePoint ProjectivePoint::from_ints(std::initializer_list<long> c) {
  std::vector<mpq_class> q;
  for (long v : c) q.emplace_back(v);
  return ProjectivePoint(q);
}

HeightValue log_mahler_measure(const UniPoly& f, double tol) {
  if (f.is_zero()) throw DomainError("log_mahler_measure: zero polynomial");
  if (f.degree() == 0) {
    BigFloat lo(abs(f.lc()), 128, MPFR_RNDD), hi(abs(f.lc()), 128, MPFR_RNDU);
    return from_interval(log(lo, MPFR_RNDD), log(hi, MPFR_RNDU), HeightMethod::ExactRoots);
  }
  auto parts = squarefree_decompose(f);
  UniPoly product = UniPoly::constant(1);
  for (const auto& part : parts) product *= pow(part.poly, static_cast<unsigned>(part.multiplicity));
  // f = unit * product
  mpq_class unit = f.lc() / product.lc();
  const double share = tol / (2.0 * static_cast<double>(parts.size() + 1));
  Precision p = 128;
  BigFloat lo(abs(unit), p, MPFR_RNDD), hi(abs(unit), p, MPFR_RNDU);
  Interval acc{log(lo, MPFR_RNDD), log(hi, MPFR_RNDU)};
  for (const auto& part : parts) {
    Precision used = 64;
    Interval l = log_mahler_squarefree(part.poly, share / part.multiplicity, used);
    Precision q = std::max(used, p);
    BigFloat m(static_cast<long>(part.multiplicity), q);
    acc.lo = add(acc.lo, mul(l.lo, m, MPFR_RNDD, q), MPFR_RNDD, q);
    acc.hi = add(acc.hi, mul(l.hi, m, MPFR_RNDU, q), MPFR_RNDU, q);
  }
  return from_interval(acc.lo, acc.hi, HeightMethod::ExactRoots);
}

HeightValue height_from_roots(const UniPoly& f, const std::vector<ComplexBall>& balls) {
  const int d = f.degree();
  if (d < 1 || static_cast<int>(balls.size()) != d) throw DomainError("height_from_roots: ball count must equal degree");
  UniPoly g = f.primitive();
  Interval l = log_mahler_from_balls(g.lc().get_num(), balls);
  Precision q = l.lo.precision();
  BigFloat dd(static_cast<long>(d), q);
  HeightValue h = from_interval(div(l.lo, dd, MPFR_RNDD, q), div(l.hi, dd, MPFR_RNDU, q), HeightMethod::ExactRoots);
  if (h.value < 0 && h.value + h.abs_error >= 0) h.value = 0;
  return h;
}

HeightValue height_algebraic(const AlgebraicNumber& a, double tol) {
  const int d = a.min_poly.degree();
  if (d < 1) throw DomainError("height_algebraic: minimal polynomial must have degree >= 1");
  HeightValue lm = log_mahler_measure(a.min_poly, tol * d);
  HeightValue h = lm;
  h.value = lm.value / d;
  h.abs_error = lm.abs_error / d + std::abs(h.value) * DBL_EPSILON;
  if (h.value < 0 && h.value + h.abs_error >= 0) h.value = 0;
  h.assumed_irreducible = !a.certified;
  return h;
}

HeightValue mahler_integral_height(const UniPoly& f_in, double tol) {
  if (f_in.is_zero() || f_in.degree() < 1) throw DomainError("mahler_integral_height: degree must be >= 1");
  UniPoly f = f_in.primitive();
  const int n = f.degree();
  // log|f| = log|unit| + sum m_i log|f_i| over the squarefree parts, which
  // keeps repeated roots on the circle away from the rounding floor.
  auto parts = squarefree_decompose(f);
  std::vector<std::pair<std::vector<long double>, int>> coeffs;
  UniPoly product = UniPoly::constant(1);
  for (const auto& part : parts) {
    std::vector<long double> c;
    for (const auto& q : part.poly.coeffs()) c.push_back(static_cast<long double>(q.get_d()));
    coeffs.emplace_back(std::move(c), part.multiplicity);
    product *= pow(part.poly, static_cast<unsigned>(part.multiplicity));
  }
  const long double log_unit = std::log(std::fabs(static_cast<long double>(mpq_class(f.lc() / product.lc()).get_d())));

  // Split points: arguments of roots within 1/4 of the unit circle.
  std::vector<double> cuts{0.0, 2.0 * std::numbers::pi};
  for (const auto& part : parts) {
    for (const auto& b : complex_roots(part.poly, 64)) {
      double re = b.center.re.to_double(), im = b.center.im.to_double();
      double r = std::hypot(re, im);
      if (std::abs(r - 1.0) < 0.25) {
        double a = std::atan2(im, re);
        if (a < 0) a += 2.0 * std::numbers::pi;
        cuts.push_back(a);
      }
    }
  }
  std::sort(cuts.begin(), cuts.end());
  // Cuts closer than 1e-6 are merged; the quadrature nodes cannot resolve
  // narrower panels.
  const double two_pi = 2.0 * std::numbers::pi;
  std::vector<double> uniq{0.0};
  for (double x : cuts) {
    if (x - uniq.back() > 1e-6 && x < two_pi - 1e-6) uniq.push_back(x);
  }
  uniq.push_back(two_pi);

  auto integrand = [&](double theta) {
    std::complex<long double> z(std::cos(static_cast<long double>(theta)), std::sin(static_cast<long double>(theta)));
    long double total = log_unit;
    for (const auto& [c, mult] : coeffs) {
      const int d = static_cast<int>(c.size()) - 1;
      std::complex<long double> acc = c[d];
      for (int k = d - 1; k >= 0; --k) acc = acc * z + c[k];
      long double m = std::abs(acc);
      if (!(m > 0)) m = LDBL_MIN;
      total += mult * std::log(m);
    }
    return static_cast<double>(total);
  };

  boost::math::quadrature::tanh_sinh<double> integrator;
  double total = 0, err_total = 0;
  for (std::size_t i = 1; i < uniq.size(); ++i) {
    double err = 0, l1 = 0;
    // Each panel is shifted to [0, w]: the left endpoint branch of the
    // integrator is only exact near zero.
    const double a = uniq[i - 1];
    auto shifted = [&](double x) { return integrand(a + x); };
    double v = integrator.integrate(shifted, 0.0, uniq[i] - a, std::min(1e-10, tol), &err, &l1);
    total += v;
    err_total += err + 1e-15 * l1;
  }
  HeightValue h;
  h.method = HeightMethod::Quadrature;
  h.value = total / (2.0 * std::numbers::pi * n);
  h.abs_error = err_total / (2.0 * std::numbers::pi * n);
  return h;
}

HeightValue height_point(const ProjectivePoint& p, Norm norm) {
  if (p.coords.empty()) throw DomainError("height_point: empty point");
  Interval l = log_norm(p.coords, norm, kPointPrecision);
  return from_interval(l.lo, l.hi, HeightMethod::Exact);
}

HeightValue height_coefficients(const std::vector<mpq_class>& coeffs, Norm norm) {
  std::vector<mpq_class> nz;
  for (const auto& c : coeffs) {
    if (c != 0) nz.push_back(c);
  }
  if (nz.empty()) throw DomainError("height of the zero polynomial");
  return height_point(ProjectivePoint(nz), norm);
}

HeightValue height_poly(const UniPoly& f, Norm norm) { return height_coefficients(f.coeffs(), norm); }
HeightValue height_poly(const BiPoly& f, Norm norm) { return height_coefficients(f.coefficient_vector(), norm); }
HeightValue height_poly(const MultiPoly& f, Norm norm) { return height_coefficients(f.coefficient_vector(), norm); }

SandwichReport sandwich_report(const ProjectivePoint& p, int n) {
  if (static_cast<int>(p.coords.size()) != n + 1) {
    throw DomainError("sandwich_check: point does not lie in P^" + std::to_string(n));
  }
  const Precision q = kPointPrecision;
  Interval hinf = log_norm(p.coords, Norm::Inf, q);
  Interval h2 = log_norm(p.coords, Norm::L2, q);
  Interval half = log_abs(mpz_class(n + 1), q);
  half = {mul_2si(half.lo, -1), mul_2si(half.hi, -1)};
  BigFloat top = add(hinf.hi, half.hi, MPFR_RNDU, q);
  SandwichReport r;
  r.holds = hinf.lo <= h2.hi && h2.lo <= top;
  r.h_inf = from_interval(hinf.lo, hinf.hi, HeightMethod::Exact).value;
  r.h_2 = from_interval(h2.lo, h2.hi, HeightMethod::Exact).value;
  r.upper = add(hinf.lo, half.lo, MPFR_RNDN, q).to_double();
  return r;
}

bool sandwich_check(const ProjectivePoint& p, int n) { return sandwich_report(p, n).holds; }

}  // namespace heightlab
