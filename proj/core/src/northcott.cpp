#include "heightlab/northcott.hpp"

#include <algorithm>
#include <cmath>

#include "heightlab/errors.hpp"
#include "heightlab/factor.hpp"
#include "heightlab/modular.hpp"
#include "heightlab/parse.hpp"
#include "heightlab/resultant.hpp"
#include "heightlab/roots.hpp"

namespace heightlab {

namespace {

constexpr Precision kCeiling = 16384;

// Re-isolates a's root at precision p and returns the ball that tracks it.
AlgebraicNumber refine(const AlgebraicNumber& a, Precision p) {
  if (a.approx.center.precision() >= p) return a;
  if (a.degree() == 1) {
    mpq_class q = -a.min_poly.coeff(0) / a.min_poly.coeff(1);
    AlgebraicNumber r = a;
    r.approx = ComplexBall(BigComplex(BigFloat(q, p), BigFloat(0L, p)), BigFloat(0L, p));
    if (BigFloat(q, p) != BigFloat(q, 2 * p)) r.approx.radius = abs(sub(BigFloat(q, p), BigFloat(q, 2 * p), MPFR_RNDU, p));
    return r;
  }
  auto balls = complex_roots(a.min_poly, p);
  std::vector<std::size_t> hits;
  for (std::size_t j = 0; j < balls.size(); ++j) {
    if (balls[j].overlaps(a.approx)) hits.push_back(j);
  }
  if (hits.size() != 1) {
    if (p * 2 > kCeiling) throw RootTrackingAmbiguity("refine: root cannot be re-identified");
    AlgebraicNumber tighter = a;
    auto more = complex_roots(a.min_poly, p * 2);
    hits.clear();
    for (std::size_t j = 0; j < more.size(); ++j) {
      if (more[j].overlaps(a.approx)) hits.push_back(j);
    }
    if (hits.size() != 1) throw RootTrackingAmbiguity("refine: root cannot be re-identified");
    tighter.approx = more[hits[0]];
    return tighter;
  }
  AlgebraicNumber r = a;
  r.approx = balls[hits[0]];
  return r;
}

struct Term {
  int a;  // x-degree
  int b;  // t-degree
  mpq_class c;
};

struct Evaluation {
  BigFloat value_abs;  // |P(cz, cx)| (rounded up)
  BigFloat slack;      // Lipschitz bound over the balls plus rounding allowance
};

BigComplex cpow(const BigComplex& z, int e, Precision p) {
  BigComplex r(BigFloat(1L, p), BigFloat(0L, p));
  for (int i = 0; i < e; ++i) r *= z;
  return r;
}

Evaluation evaluate(const std::vector<Term>& terms, const ComplexBall& z, const ComplexBall& x, Precision p) {
  BigComplex cz = z.center, cx = x.center;
  cz.set_precision(p);
  cx.set_precision(p);
  BigFloat rz = z.radius, rx = x.radius;
  BigFloat Rz = add(abs(cz, MPFR_RNDU), rz, MPFR_RNDU, p);
  BigFloat Rx = add(abs(cx, MPFR_RNDU), rx, MPFR_RNDU, p);
  BigComplex sum(BigFloat(0L, p), BigFloat(0L, p));
  BigFloat lip(0L, p), scale(0L, p);
  for (const auto& t : terms) {
    BigComplex m = cpow(cz, t.a, p) * cpow(cx, t.b, p);
    BigFloat c(t.c, p);
    sum += BigComplex(m.re * c, m.im * c);
    BigFloat ac(mpq_class(abs(t.c)), p, MPFR_RNDU);
    BigFloat pz(1L, p), px(1L, p);
    for (int i = 0; i < t.a - 1; ++i) pz = mul(pz, Rz, MPFR_RNDU, p);
    for (int i = 0; i < t.b - 1; ++i) px = mul(px, Rx, MPFR_RNDU, p);
    BigFloat full_z = t.a >= 1 ? mul(pz, Rz, MPFR_RNDU, p) : BigFloat(1L, p);
    BigFloat full_x = t.b >= 1 ? mul(px, Rx, MPFR_RNDU, p) : BigFloat(1L, p);
    if (t.a >= 1) {
      BigFloat d = mul(mul(BigFloat(static_cast<long>(t.a), p), pz, MPFR_RNDU, p), full_x, MPFR_RNDU, p);
      lip = add(lip, mul(mul(ac, d, MPFR_RNDU, p), rz, MPFR_RNDU, p), MPFR_RNDU, p);
    }
    if (t.b >= 1) {
      BigFloat d = mul(mul(BigFloat(static_cast<long>(t.b), p), px, MPFR_RNDU, p), full_z, MPFR_RNDU, p);
      lip = add(lip, mul(mul(ac, d, MPFR_RNDU, p), rx, MPFR_RNDU, p), MPFR_RNDU, p);
    }
    scale = add(scale, mul(ac, mul(full_z, full_x, MPFR_RNDU, p), MPFR_RNDU, p), MPFR_RNDU, p);
  }
  BigFloat noise = mul(scale, ulp_scale(p - 10, p), MPFR_RNDU, p);
  return {abs(sum, MPFR_RNDU), add(mul_2si(lip, 1), noise, MPFR_RNDU, p)};
}

bool mirror_pair(const ComplexBall& a, const ComplexBall& b) {
  ComplexBall m(conj(a.center), a.radius);
  return m.overlaps(b) && !a.meets_real_axis();
}

struct StepResult {
  AlgebraicNumber next;
  HeightValue height;
};

// Returns nullopt-like failure through `ok` when the precision is too low
// to separate candidates.
bool try_step(const std::vector<Term>& terms, int deg_x, const AlgebraicNumber& xi, const UniPoly& S,
              const std::vector<ComplexBall>& balls, CertMode mode, int cap, Precision p, StepResult& out) {
  std::vector<std::size_t> cand;
  for (std::size_t j = 0; j < balls.size(); ++j) {
    Evaluation e = evaluate(terms, balls[j], xi.approx, p);
    if (e.value_abs <= e.slack) cand.push_back(j);
  }
  if (cand.empty() || static_cast<int>(cand.size()) > deg_x) return false;

  // Largest modulus, ties by smallest principal argument.
  std::size_t best = cand[0];
  for (std::size_t k = 1; k < cand.size(); ++k) {
    if (balls[cand[k]].abs_lower() > balls[best].abs_upper()) best = cand[k];
  }
  for (std::size_t k : cand) {
    if (k == best) continue;
    const bool overlap = !(balls[k].abs_upper() < balls[best].abs_lower());
    if (!overlap) continue;
    if (!mirror_pair(balls[k], balls[best])) return false;
    if (arg(balls[k].center) < arg(balls[best].center)) best = k;
  }
  const ComplexBall& chosen = balls[best];

  if (mode == CertMode::AssumeIrreducible) {
    out.next.min_poly = S;
    out.next.approx = chosen;
    out.next.certified = false;
    out.height = height_from_roots(S, balls);
    out.height.assumed_irreducible = true;
    return true;
  }
  FactorOptions fo;
  fo.degree_cap = cap;
  auto fac = factor_rationals(S, fo);
  if (fac.factors.size() == 1) {
    out.next.min_poly = S;
    out.next.approx = chosen;
    out.next.certified = true;
    out.height = height_from_roots(S, balls);
    return true;
  }
  int found = -1;
  std::vector<ComplexBall> found_balls;
  for (std::size_t f = 0; f < fac.factors.size(); ++f) {
    auto fb = complex_roots(fac.factors[f].poly, p);
    bool hit = std::any_of(fb.begin(), fb.end(), [&](const ComplexBall& b) { return b.overlaps(chosen); });
    if (hit) {
      if (found >= 0) return false;
      found = static_cast<int>(f);
      found_balls = std::move(fb);
    }
  }
  if (found < 0) return false;
  out.next.min_poly = fac.factors[static_cast<std::size_t>(found)].poly;
  out.next.approx = chosen;
  out.next.certified = true;
  out.height = height_from_roots(out.next.min_poly, found_balls);
  return true;
}

UniPoly squarefree_part(const UniPoly& r) {
  UniPoly g = r.primitive();
  if (is_squarefree(g)) return g;
  return divmod(g, gcd(g, g.derivative())).first.primitive();
}

}  // namespace

std::string to_string(CertMode m) { return m == CertMode::Certified ? "certified" : "assume-irreducible"; }

CertMode parse_cert_mode(const std::string& s) {
  if (s == "certified") return CertMode::Certified;
  if (s == "assume-irreducible") return CertMode::AssumeIrreducible;
  throw DomainError("unknown mode '" + s + "' (expected certified or assume-irreducible)");
}

SequenceSpec smyth_spec(int max_index, CertMode mode) {
  SequenceSpec s;
  s.P = parse_bi("x^2 - t*x - 1");
  s.x0 = AlgebraicNumber::rational(1);
  s.mode = mode;
  s.max_index = max_index;
  return s;
}

SequenceProfile iterate_sequence(const SequenceSpec& spec) {
  const int dx = spec.P.deg_x(), dt = spec.P.deg_t();
  if (!(dx > dt && dt > 0)) throw DomainError("iterate_sequence: need deg_x P > deg_t P > 0");
  if (spec.max_index < 1) throw DomainError("iterate_sequence: max_index must be >= 1");
  std::vector<Term> terms;
  for (const auto& [k, c] : spec.P.terms()) terms.push_back({k.first, k.second, c});

  SequenceProfile profile;
  profile.initial_height = height_algebraic(spec.x0);
  AlgebraicNumber xi = spec.x0;
  for (int i = 1; i <= spec.max_index; ++i) {
    UniPoly S = squarefree_part(resultant_t(spec.P, xi.min_poly));
    if (spec.mode == CertMode::Certified && S.degree() > spec.degree_cap) {
      throw DegreeCapExceeded("iterate_sequence: degree " + std::to_string(S.degree()) + " at index " +
                              std::to_string(i) + " exceeds the certified cap " + std::to_string(spec.degree_cap));
    }
    Precision p = std::max<Precision>(spec.precision, 64);
    StepResult step;
    while (true) {
      AlgebraicNumber x_ref = refine(xi, p);
      auto balls = complex_roots(S, p);
      Precision q = std::max(p, balls.front().center.precision());
      if (try_step(terms, dx, x_ref, S, balls, spec.mode, spec.degree_cap, q, step)) break;
      if (p * 2 > kCeiling) {
        throw RootTrackingAmbiguity("iterate_sequence: candidate roots not separated at index " + std::to_string(i));
      }
      p *= 2;
    }
    Precision hp = step.next.approx.center.precision();
    while (step.height.abs_error > spec.height_tolerance) {
      hp *= 2;
      if (hp > kCeiling) throw PrecisionExhausted("iterate_sequence: height tolerance unreachable");
      bool assumed = step.height.assumed_irreducible;
      step.height = height_from_roots(step.next.min_poly, complex_roots(step.next.min_poly, hp));
      step.height.assumed_irreducible = assumed;
    }
    SequenceEntry e;
    e.index = i;
    e.degree = step.next.min_poly.degree();
    e.height = step.height;
    e.certification = step.next.certified ? "certified" : "assume-irreducible";
    e.x = step.next;
    profile.entries.push_back(e);
    xi = step.next;
  }
  profile.max_height = profile.entries.front().height.value;
  profile.min_height = profile.max_height;
  for (const auto& e : profile.entries) {
    profile.max_height = std::max(profile.max_height, e.height.value);
    profile.min_height = std::min(profile.min_height, e.height.value);
  }
  return profile;
}

double habegger_gamma(const BiPoly& P) {
  const int dx = P.deg_x(), dt = P.deg_t();
  if (dx < 1 || dt < 1) throw DomainError("habegger_gamma: both partial degrees must be >= 1");
  const double h = height_poly(P, Norm::Inf).value;
  const int m = std::min(dx, dt);
  return 5.0 * std::sqrt(m * std::log(2.0) + std::log(static_cast<double>((dx + 1) * (dt + 1))) + h);
}

HabeggerBound habegger_data(const BiPoly& P) {
  const int dx = P.deg_x(), dt = P.deg_t();
  if (!(dx > dt && dt > 0)) throw DomainError("habegger_bound: need deg_x P > deg_t P > 0");
  HabeggerBound b;
  b.gamma = habegger_gamma(P);
  b.Q = b.gamma * std::sqrt(static_cast<double>(dt));
  b.q = static_cast<double>(dt) / dx;
  const double r = b.gamma * dx / (dx - dt);
  b.bound = dt * r * r;
  return b;
}

NorthcottEstimate habegger_bound(const SequenceSpec& spec) {
  NorthcottEstimate est;
  est.certified_upper_bound = habegger_data(spec.P).bound;
  est.certificate = "habegger";
  return est;
}

bool recurrence_check(const SequenceProfile& profile, const BiPoly& P) {
  const HabeggerBound b = habegger_data(P);
  std::vector<HeightValue> hs{profile.initial_height};
  for (const auto& e : profile.entries) hs.push_back(e.height);
  for (std::size_t i = 0; i + 1 < hs.size(); ++i) {
    const double lhs = hs[i + 1].lower();
    const double m = std::max({hs[i].upper(), hs[i + 1].upper(), 0.0});
    const double rhs = b.q * std::max(hs[i].upper(), 0.0) + b.Q * std::sqrt(m);
    if (lhs > rhs * (1 + 1e-12) + 1e-12) return false;
  }
  return true;
}

NorthcottEstimate selmer_family(int max_i, int degree_cap) {
  if (max_i < 2) throw DomainError("selmer_family: max_i must be >= 2");
  NorthcottEstimate est;
  const double log3 = std::log(3.0);
  for (int i = 2; i <= max_i; ++i) {
    std::vector<mpq_class> c(static_cast<std::size_t>(i) + 1, 0);
    c[0] = -1;
    c[1] = -1;
    c[static_cast<std::size_t>(i)] = 1;
    FamilyEntry e;
    e.index = i;
    e.poly = UniPoly(c);
    FactorOptions fo;
    fo.degree_cap = degree_cap;
    if (i <= degree_cap) e.irreducible_certified = is_irreducible(e.poly, fo);
    HeightValue lm = log_mahler_measure(e.poly, 1e-12 * i);
    e.height = lm;
    e.height.value = lm.value / i;
    e.height.abs_error = lm.abs_error / i;
    e.height.assumed_irreducible = !e.irreducible_certified;
    e.length_bound = log3 / i;
    est.empirical_heights.push_back(e.height.value);
    est.family.push_back(e);
  }
  est.certified_upper_bound = log3 / max_i;
  est.certificate = "length";
  return est;
}

std::vector<PrimeFamilyCertificate> prime_constant_family(const std::vector<PrimeFamilyInput>& polys) {
  std::vector<PrimeFamilyCertificate> out;
  for (const auto& in : polys) {
    const UniPoly& f = in.poly;
    if (f.degree() < 1 || !f.is_integral() || f.lc() != 1) {
      throw DomainError("prime_constant_family: " + f.to_string() + " is not a monic integer polynomial");
    }
    if (!is_prime_u64(in.prime)) {
      throw DomainError("prime_constant_family: " + std::to_string(in.prime) + " is not prime");
    }
    const mpz_class p(static_cast<unsigned long>(in.prime));
    const mpz_class c0 = f.coeff(0).get_num();
    if (abs(c0) != p) {
      throw DomainError("prime_constant_family: constant term of " + f.to_string() + " is not +-" + p.get_str());
    }
    mpz_class length = 0;
    for (const auto& c : f.int_coeffs()) length += abs(c);
    if (!(length < 2 * p)) {
      throw LengthConditionFailed("prime_constant_family: ||f||_1 = " + length.get_str() + " >= 2p = " +
                                  mpz_class(2 * p).get_str() + " for " + f.to_string());
    }
    PrimeFamilyCertificate cert;
    cert.poly = f;
    cert.prime = in.prime;
    cert.length = length;
    cert.irreducible = true;
    cert.argument =
        "|f(0)| = p > ||f||_1 - p puts every root outside the closed unit disk, so no monic integer factor can "
        "have constant term +-1";
    cert.liminf_estimate = std::log(length.get_d()) / f.degree();
    out.push_back(cert);
  }
  return out;
}

bool eisenstein(const UniPoly& f, const mpz_class& p) {
  if (f.degree() < 1 || !f.is_integral()) return false;
  auto c = f.int_coeffs();
  if (c.back() % p == 0) return false;
  for (std::size_t i = 0; i + 1 < c.size(); ++i) {
    if (c[i] % p != 0) return false;
  }
  return c[0] % (p * p) != 0;
}

NorthcottEstimate radical_tower(std::uint64_t p, int max_i) {
  if (!is_prime_u64(p)) throw DomainError("radical_tower: " + std::to_string(p) + " is not prime");
  if (max_i < 0) throw DomainError("radical_tower: max_i must be >= 0");
  NorthcottEstimate est;
  const Precision prec = 128;
  const mpz_class pz(static_cast<unsigned long>(p));
  const BigFloat logp = log(BigFloat(pz, prec));
  mpz_class n = 1;
  for (int i = 0; i <= max_i; ++i) {
    FamilyEntry e;
    e.index = i;
    if (n <= 4096) {
      std::vector<mpq_class> c(n.get_ui() + 1, 0);
      c[0] = -mpq_class(pz);
      c.back() = 1;
      e.poly = UniPoly(c);
      e.irreducible_certified = i == 0 || eisenstein(e.poly, pz);
    } else {
      e.irreducible_certified = true;  // x^n - p is Eisenstein at p for every n
    }
    BigFloat h = div(logp, BigFloat(n, prec), MPFR_RNDN, prec);
    e.height.value = h.to_double();
    e.height.abs_error = std::abs(e.height.value) * 1e-16;
    e.height.method = HeightMethod::Exact;
    e.length_bound = e.height.value;
    est.empirical_heights.push_back(e.height.value);
    est.family.push_back(e);
    if (i < max_i) n *= pz;
  }
  est.certified_upper_bound = est.family.back().height.value + est.family.back().height.abs_error;
  est.certificate = "exact";
  return est;
}

double unramified_tower_bound(int d, double log_abs_disc) {
  if (d < 1) throw DomainError("unramified_tower_bound: degree must be >= 1");
  if (!(log_abs_disc >= 0)) throw DomainError("unramified_tower_bound: log|disc| must be >= 0");
  return log_abs_disc / d;
}

}  // namespace heightlab
