#include "heightlab/factor.hpp"

#include <algorithm>
#include <bitset>
#include <cstdint>
#include <numeric>

#include "heightlab/errors.hpp"
#include "heightlab/modular.hpp"

namespace heightlab {

namespace {

using ZPoly = std::vector<mpz_class>;

bool poly_less(const UniPoly& a, const UniPoly& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  for (int i = a.degree(); i >= 0; --i) {
    if (a.coeff(i) != b.coeff(i)) return a.coeff(i) < b.coeff(i);
  }
  return false;
}

void ztrim(ZPoly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

void zreduce(ZPoly& f, const mpz_class& m) {
  for (auto& c : f) {
    mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), m.get_mpz_t());
  }
  ztrim(f);
}

ZPoly zadd(const ZPoly& a, const ZPoly& b, const mpz_class& m) {
  ZPoly r(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (i < a.size()) r[i] += a[i];
    if (i < b.size()) r[i] += b[i];
  }
  zreduce(r, m);
  return r;
}

ZPoly zsub(const ZPoly& a, const ZPoly& b, const mpz_class& m) {
  ZPoly r(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (i < a.size()) r[i] += a[i];
    if (i < b.size()) r[i] -= b[i];
  }
  zreduce(r, m);
  return r;
}

ZPoly zmul(const ZPoly& a, const ZPoly& b, const mpz_class& m) {
  if (a.empty() || b.empty()) return {};
  ZPoly r(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      mpz_addmul(r[i + j].get_mpz_t(), a[i].get_mpz_t(), b[j].get_mpz_t());
    }
  }
  zreduce(r, m);
  return r;
}

// Division by a monic polynomial modulo m.
std::pair<ZPoly, ZPoly> zdivmod_monic(const ZPoly& a, const ZPoly& h, const mpz_class& m) {
  ZPoly r = a;
  ztrim(r);
  int dh = static_cast<int>(h.size()) - 1;
  if (static_cast<int>(r.size()) - 1 < dh) return {ZPoly{}, r};
  ZPoly q(r.size() - h.size() + 1);
  for (int i = static_cast<int>(r.size()) - 1; i >= dh; --i) {
    mpz_class c = r[i];
    mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), m.get_mpz_t());
    if (c == 0) continue;
    q[i - dh] = c;
    for (int j = 0; j <= dh; ++j) r[i - dh + j] -= c * h[j];
  }
  r.resize(dh);
  zreduce(r, m);
  zreduce(q, m);
  return {q, r};
}

ZPoly from_fp(const FpPoly& f) {
  ZPoly r(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) r[i] = mpz_class(static_cast<unsigned long>(f[i]));
  return r;
}

ZPoly scale(const ZPoly& f, const mpz_class& c, const mpz_class& m) {
  ZPoly r = f;
  for (auto& x : r) x *= c;
  zreduce(r, m);
  return r;
}

mpz_class inverse_mod(const mpz_class& a, const mpz_class& m) {
  mpz_class r;
  if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0) {
    throw DomainError("factor: leading coefficient not invertible modulo p^k");
  }
  return r;
}

// One quadratic Hensel step: f = g h mod m, s g + t h = 1 mod m, h monic;
// returns the same data modulo m^2.
void hensel_step(const ZPoly& f, ZPoly& g, ZPoly& h, ZPoly& s, ZPoly& t, const mpz_class& m2) {
  ZPoly e = zsub(f, zmul(g, h, m2), m2);
  auto [q, r] = zdivmod_monic(zmul(s, e, m2), h, m2);
  ZPoly gs = zadd(zadd(g, zmul(t, e, m2), m2), zmul(q, g, m2), m2);
  ZPoly hs = zadd(h, r, m2);
  ZPoly one{mpz_class(1)};
  ZPoly b = zsub(zadd(zmul(s, gs, m2), zmul(t, hs, m2), m2), one, m2);
  auto [c, d] = zdivmod_monic(zmul(s, b, m2), hs, m2);
  ZPoly ss = zsub(s, d, m2);
  ZPoly ts = zsub(zsub(t, zmul(t, b, m2), m2), zmul(c, gs, m2), m2);
  g = std::move(gs);
  h = std::move(hs);
  s = std::move(ss);
  t = std::move(ts);
}

// Lifts the monic modular factors of f (given modulo p) to monic factors
// modulo M = p^(2^k) with f = lc(f) * prod mod M.
void multifactor_lift(const ZPoly& f, const std::vector<FpPoly>& factors, const PrimeField& fp,
                      const mpz_class& M, std::vector<ZPoly>& out) {
  mpz_class lc = f.back();
  if (factors.size() == 1) {
    out.push_back(scale(f, inverse_mod(lc, M), M));
    return;
  }
  std::size_t half = factors.size() / 2;
  std::vector<FpPoly> left(factors.begin(), factors.begin() + half);
  std::vector<FpPoly> right(factors.begin() + half, factors.end());
  FpPoly gl{1};
  for (const auto& q : left) gl = fp.poly_mul(gl, q);
  FpPoly hr{1};
  for (const auto& q : right) hr = fp.poly_mul(hr, q);
  FpPoly g0 = fp.poly_scale(gl, fp.reduce(lc));
  auto [one, s0, t0] = fp.poly_xgcd(g0, hr);
  mpz_class p(static_cast<unsigned long>(fp.p()));
  ZPoly g = from_fp(g0), h = from_fp(hr), s = from_fp(s0), t = from_fp(t0);
  mpz_class m = p;
  while (m < M) {
    m *= m;
    hensel_step(f, g, h, s, t, m);
  }
  ZPoly gm = scale(g, inverse_mod(g.back(), M), M);
  // gm is monic; lift it as the target for the left subtree.
  multifactor_lift(gm, left, fp, M, out);
  multifactor_lift(h, right, fp, M, out);
}

mpz_class symmetric(const mpz_class& a, const mpz_class& M) {
  mpz_class r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), M.get_mpz_t());
  if (2 * r > M) r -= M;
  return r;
}

// Exact division test in Z[x]; returns the quotient when h | g.
bool exact_divide(const UniPoly& g, const UniPoly& h, UniPoly& quotient) {
  const mpz_class g0 = g.coeff(0).get_num();
  const mpz_class h0 = h.coeff(0).get_num();
  if (h0 != 0 && g0 % h0 != 0) return false;
  auto [q, r] = divmod(g, h);
  if (!r.is_zero() || !q.is_integral()) return false;
  quotient = q;
  return true;
}

struct PrimeChoice {
  std::uint64_t p = 0;
  std::vector<FpPoly> factors;
};

const std::uint64_t kSmallPrimes[] = {3,  5,  7,  11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53,
                                      59, 61, 67, 71, 73, 79, 83, 89, 97, 101, 103, 107, 109, 113};

// Factors a primitive squarefree integer polynomial of positive degree.
std::vector<UniPoly> zassenhaus(const UniPoly& g_in) {
  const int n = g_in.degree();
  if (n <= 1) return {g_in};
  ZPoly g = g_in.int_coeffs();
  const mpz_class lc = g.back();

  // Candidate degree sets: bit d set when a factor of degree d is possible.
  std::bitset<1025> possible;
  possible.set();
  int good_primes = 0;
  PrimeChoice best;
  std::size_t best_count = SIZE_MAX;
  for (std::uint64_t p : kSmallPrimes) {
    PrimeField fp(p);
    if (fp.reduce(lc) == 0) continue;
    FpPoly gp = fp.reduce(g);
    if (!fp.poly_is_squarefree(gp)) continue;
    FpPoly monic = fp.poly_monic(gp);
    auto ddf = fp.distinct_degree(monic);
    std::bitset<1025> sums;
    sums.set(0);
    std::size_t count = 0;
    for (const auto& [prod, d] : ddf) {
      int k = (static_cast<int>(prod.size()) - 1) / d;
      for (int i = 0; i < k; ++i) sums |= sums << d;
      count += static_cast<std::size_t>(k);
    }
    possible &= sums;
    ++good_primes;
    if (count == 1) return {g_in};
    if (count < best_count) {
      best_count = count;
      best.p = p;
    }
    bool any = false;
    for (int d = 1; d < n; ++d) any = any || possible.test(d);
    if (!any) return {g_in};
    if (good_primes >= 8) break;
  }
  if (best.p == 0) throw DomainError("factor: no suitable prime found");

  PrimeField fp(best.p);
  FpPoly monic = fp.poly_monic(fp.reduce(g));
  best.factors = fp.factor_squarefree(monic, 0x9e3779b97f4a7c15ULL ^ best.p);

  // Landau-Mignotte style bound for coefficients of lc * (any factor).
  mpz_class norm2sq = 0;
  for (const auto& c : g) norm2sq += c * c;
  mpz_class norm2 = sqrt(norm2sq) + 1;
  mpz_class bound = 2 * abs(lc) * norm2;
  mpz_mul_2exp(bound.get_mpz_t(), bound.get_mpz_t(), static_cast<mp_bitcnt_t>(n));
  mpz_class p(static_cast<unsigned long>(best.p));
  mpz_class M = p;
  while (M <= bound) M *= M;

  std::vector<ZPoly> lifted;
  multifactor_lift(g, best.factors, fp, M, lifted);

  std::vector<UniPoly> result;
  UniPoly rest = g_in;
  std::vector<std::size_t> remaining(lifted.size());
  std::iota(remaining.begin(), remaining.end(), 0);
  std::size_t s = 1;
  while (2 * s <= remaining.size()) {
    bool found = false;
    std::vector<std::size_t> idx(s);
    std::iota(idx.begin(), idx.end(), 0);
    const mpz_class rest_lc = rest.lc().get_num();
    const mpz_class rest_c0 = rest.coeff(0).get_num();
    while (true) {
      mpz_class c0 = rest_lc;
      for (std::size_t i : idx) {
        const ZPoly& fi = lifted[remaining[i]];
        c0 = (c0 * (fi.empty() ? mpz_class(0) : fi[0])) % M;
      }
      c0 = symmetric(c0, M);
      bool plausible = c0 == 0 ? rest_c0 == 0 : (rest_c0 * rest_lc) % c0 == 0;
      if (plausible) {
        ZPoly h{rest_lc};
        for (std::size_t i : idx) h = zmul(h, lifted[remaining[i]], M);
        for (auto& c : h) c = symmetric(c, M);
        UniPoly cand = UniPoly(h).primitive();
        UniPoly q;
        if (cand.degree() > 0 && exact_divide(rest, cand, q)) {
          result.push_back(cand);
          rest = q.primitive();
          std::vector<std::size_t> keep;
          for (std::size_t i = 0; i < remaining.size(); ++i) {
            if (std::find(idx.begin(), idx.end(), i) == idx.end()) keep.push_back(remaining[i]);
          }
          remaining = std::move(keep);
          found = true;
          break;
        }
      }
      // Next combination of size s from remaining.size().
      std::size_t r = remaining.size();
      int i = static_cast<int>(s) - 1;
      while (i >= 0 && idx[i] == r - s + static_cast<std::size_t>(i)) --i;
      if (i < 0) break;
      ++idx[i];
      for (std::size_t j = static_cast<std::size_t>(i) + 1; j < s; ++j) idx[j] = idx[j - 1] + 1;
    }
    if (!found) ++s;
  }
  if (rest.degree() > 0) result.push_back(rest);
  return result;
}

}  // namespace

std::vector<Factor> squarefree_decompose(const UniPoly& f) {
  if (f.degree() <= 0) return {};
  if (is_squarefree(f)) return {Factor{f.primitive(), 1}};
  std::vector<Factor> out;
  UniPoly a = f.monic();
  UniPoly b = gcd(a, a.derivative());
  UniPoly c = divmod(a, b).first;
  UniPoly d = divmod(a.derivative(), b).first - c.derivative();
  int i = 1;
  while (c.degree() > 0) {
    UniPoly y = gcd(c, d);
    if (y.degree() > 0) out.push_back(Factor{y.primitive(), i});
    c = divmod(c, y).first;
    d = divmod(d, y).first - c.derivative();
    ++i;
  }
  return out;
}

bool is_squarefree(const UniPoly& f) {
  if (f.degree() <= 0) return true;
  UniPoly g = f.primitive();
  std::vector<mpz_class> zc = g.int_coeffs();
  int tried = 0;
  for (std::uint64_t p = (std::uint64_t{1} << 61); tried < 4; ++tried) {
    p = previous_prime(p);
    PrimeField fp(p);
    if (fp.reduce(zc.back()) == 0) continue;
    if (fp.poly_is_squarefree(fp.reduce(zc))) return true;
  }
  return gcd(g, g.derivative()).degree() == 0;
}

Factorization factor_rationals(const UniPoly& f, const FactorOptions& options) {
  if (f.is_zero()) throw DomainError("factor: zero polynomial");
  Factorization out;
  if (f.degree() == 0) {
    out.unit = f.lc();
    return out;
  }
  auto parts = squarefree_decompose(f);
  for (const auto& part : parts) {
    if (part.poly.degree() > options.degree_cap) {
      throw DegreeCapExceeded("factor: squarefree part of degree " + std::to_string(part.poly.degree()) +
                              " exceeds cap " + std::to_string(options.degree_cap));
    }
  }
  UniPoly product = UniPoly::constant(1);
  for (const auto& part : parts) {
    for (const auto& q : zassenhaus(part.poly)) {
      out.factors.push_back(Factor{q, part.multiplicity});
      product *= pow(q, static_cast<unsigned>(part.multiplicity));
    }
  }
  std::sort(out.factors.begin(), out.factors.end(), [](const Factor& a, const Factor& b) {
    if (poly_less(a.poly, b.poly)) return true;
    if (poly_less(b.poly, a.poly)) return false;
    return a.multiplicity < b.multiplicity;
  });
  out.unit = f.lc() / product.lc();
  if (!(product * out.unit == f)) throw Error("factor: internal consistency check failed");
  return out;
}

bool is_irreducible(const UniPoly& f, const FactorOptions& options) {
  if (f.degree() <= 0) return false;
  auto fac = factor_rationals(f, options);
  return fac.factors.size() == 1 && fac.factors[0].multiplicity == 1;
}

}  // namespace heightlab
