#include "heightlab/modular.hpp"

#include <algorithm>

#include "heightlab/errors.hpp"

namespace heightlab {

namespace {

std::uint64_t mulmod64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

std::uint64_t powmod64(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1U) r = mulmod64(r, a, m);
    a = mulmod64(a, a, m);
    e >>= 1U;
  }
  return r;
}

}  // namespace

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t q : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % q == 0) return n == q;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1U) == 0) {
    d >>= 1U;
    ++s;
  }
  // These bases are deterministic for n < 3.3e24.
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    std::uint64_t x = powmod64(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod64(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::uint64_t previous_prime(std::uint64_t n) {
  if (n <= 2) throw DomainError("no prime below 2");
  std::uint64_t c = n - 1;
  while (!is_prime_u64(c)) --c;
  return c;
}

PrimeField::PrimeField(std::uint64_t p) : p_(p) {
  if (p < 2 || p >= (1ULL << 62)) throw DomainError("prime out of supported range");
}

std::uint64_t PrimeField::pow(std::uint64_t a, std::uint64_t e) const { return powmod64(a, e, p_); }

std::uint64_t PrimeField::inv(std::uint64_t a) const {
  if (a % p_ == 0) throw DomainError("inverse of zero modulo p");
  return pow(a, p_ - 2);
}

std::uint64_t PrimeField::reduce(const mpz_class& v) const {
  mpz_class r;
  mpz_fdiv_r_ui(r.get_mpz_t(), v.get_mpz_t(), p_);
  return r.get_ui();
}

std::uint64_t PrimeField::reduce(const mpq_class& v) const {
  std::uint64_t d = reduce(v.get_den());
  if (d == 0) throw DomainError("denominator divisible by p");
  return mul(reduce(v.get_num()), inv(d));
}

void PrimeField::trim(FpPoly& f) const {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

FpPoly PrimeField::reduce(const std::vector<mpz_class>& f) const {
  FpPoly r(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) r[i] = reduce(f[i]);
  trim(r);
  return r;
}

FpPoly PrimeField::poly_add(const FpPoly& a, const FpPoly& b) const {
  FpPoly r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] = add(r[i], b[i]);
  trim(r);
  return r;
}

FpPoly PrimeField::poly_sub(const FpPoly& a, const FpPoly& b) const {
  FpPoly r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] = sub(r[i], b[i]);
  trim(r);
  return r;
}

FpPoly PrimeField::poly_mul(const FpPoly& a, const FpPoly& b) const {
  if (a.empty() || b.empty()) return {};
  // Accumulate in 128-bit to defer reductions.
  std::vector<unsigned __int128> acc(a.size() + b.size() - 1, 0);
  const unsigned __int128 limit = static_cast<unsigned __int128>(1) << 124;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      acc[i + j] += static_cast<unsigned __int128>(a[i]) * b[j];
      if (acc[i + j] >= limit) acc[i + j] %= p_;
    }
  }
  FpPoly r(acc.size());
  for (std::size_t i = 0; i < acc.size(); ++i) r[i] = static_cast<std::uint64_t>(acc[i] % p_);
  trim(r);
  return r;
}

FpPoly PrimeField::poly_scale(const FpPoly& a, std::uint64_t c) const {
  FpPoly r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = mul(a[i], c);
  trim(r);
  return r;
}

std::pair<FpPoly, FpPoly> PrimeField::poly_divmod(const FpPoly& a, const FpPoly& b) const {
  if (b.empty()) throw DomainError("polynomial division by zero modulo p");
  if (a.size() < b.size()) return {FpPoly{}, a};
  FpPoly rem = a;
  FpPoly quo(a.size() - b.size() + 1, 0);
  const std::uint64_t inv_lc = inv(b.back());
  for (std::size_t i = quo.size(); i-- > 0;) {
    std::uint64_t q = mul(rem[i + b.size() - 1], inv_lc);
    quo[i] = q;
    if (q == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) rem[i + j] = sub(rem[i + j], mul(q, b[j]));
  }
  rem.resize(b.size() - 1);
  trim(rem);
  trim(quo);
  return {quo, rem};
}

FpPoly PrimeField::poly_mod(const FpPoly& a, const FpPoly& b) const {
  if (b.empty()) throw DomainError("polynomial division by zero modulo p");
  if (a.size() < b.size()) return a;
  FpPoly rem = a;
  const std::uint64_t inv_lc = inv(b.back());
  for (std::size_t i = a.size() - b.size() + 1; i-- > 0;) {
    std::uint64_t q = mul(rem[i + b.size() - 1], inv_lc);
    if (q == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) rem[i + j] = sub(rem[i + j], mul(q, b[j]));
  }
  rem.resize(b.size() - 1);
  trim(rem);
  return rem;
}

FpPoly PrimeField::poly_monic(const FpPoly& a) const {
  if (a.empty()) return a;
  return poly_scale(a, inv(a.back()));
}

FpPoly PrimeField::poly_gcd(const FpPoly& a, const FpPoly& b) const {
  FpPoly u = a, v = b;
  while (!v.empty()) {
    FpPoly r = poly_mod(u, v);
    u = std::move(v);
    v = std::move(r);
  }
  return poly_monic(u);
}

std::tuple<FpPoly, FpPoly, FpPoly> PrimeField::poly_xgcd(const FpPoly& a, const FpPoly& b) const {
  FpPoly r0 = a, r1 = b;
  FpPoly s0{1}, s1{}, t0{}, t1{1};
  while (!r1.empty()) {
    auto [q, r] = poly_divmod(r0, r1);
    FpPoly s2 = poly_sub(s0, poly_mul(q, s1));
    FpPoly t2 = poly_sub(t0, poly_mul(q, t1));
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.empty()) return {r0, s0, t0};
  std::uint64_t c = inv(r0.back());
  return {poly_scale(r0, c), poly_scale(s0, c), poly_scale(t0, c)};
}

FpPoly PrimeField::poly_derivative(const FpPoly& a) const {
  if (a.size() <= 1) return {};
  FpPoly r(a.size() - 1);
  for (std::size_t i = 1; i < a.size(); ++i) r[i - 1] = mul(a[i], i % p_);
  trim(r);
  return r;
}

FpPoly PrimeField::poly_powmod(const FpPoly& base, const mpz_class& e, const FpPoly& modulus) const {
  FpPoly result{1};
  result = poly_mod(result, modulus);
  FpPoly b = poly_mod(base, modulus);
  const std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  for (std::size_t i = bits; i-- > 0;) {
    result = poly_mod(poly_mul(result, result), modulus);
    if (mpz_tstbit(e.get_mpz_t(), i)) result = poly_mod(poly_mul(result, b), modulus);
  }
  return result;
}

std::uint64_t PrimeField::poly_eval(const FpPoly& a, std::uint64_t x) const {
  std::uint64_t acc = 0;
  for (std::size_t i = a.size(); i-- > 0;) acc = add(mul(acc, x), a[i]);
  return acc;
}

bool PrimeField::poly_is_squarefree(const FpPoly& a) const {
  FpPoly d = poly_derivative(a);
  if (d.empty()) return a.size() <= 1;
  return poly_gcd(a, d).size() == 1;
}

std::uint64_t PrimeField::resultant(const FpPoly& a_in, const FpPoly& b_in) const {
  if (a_in.empty() || b_in.empty()) return 0;
  FpPoly a = a_in, b = b_in;
  std::uint64_t s = 1;
  while (b.size() > 1) {
    FpPoly r = poly_mod(a, b);
    if (r.empty()) return 0;
    const std::size_t da = a.size() - 1, db = b.size() - 1, dr = r.size() - 1;
    if ((da * db) & 1U) s = neg(s);
    s = mul(s, pow(b.back(), da - dr));
    a = std::move(b);
    b = std::move(r);
  }
  return mul(s, pow(b[0], a.size() - 1));
}

FpPoly PrimeField::interpolate(const std::vector<std::uint64_t>& xs, const std::vector<std::uint64_t>& ys) const {
  const std::size_t n = xs.size();
  std::vector<std::uint64_t> dd = ys;
  for (std::size_t j = 1; j < n; ++j) {
    for (std::size_t i = n - 1; i >= j; --i) {
      std::uint64_t den = sub(xs[i], xs[i - j]);
      dd[i] = mul(sub(dd[i], dd[i - 1]), inv(den));
      if (i == j) break;
    }
  }
  // Horner on the Newton form.
  FpPoly r;
  for (std::size_t k = n; k-- > 0;) {
    // r = r * (x - xs[k]) + dd[k]
    FpPoly next(r.size() + 1, 0);
    for (std::size_t i = 0; i < r.size(); ++i) {
      next[i + 1] = add(next[i + 1], r[i]);
      next[i] = sub(next[i], mul(r[i], xs[k]));
    }
    next[0] = add(next[0], dd[k]);
    trim(next);
    r = std::move(next);
  }
  return r;
}

std::vector<std::pair<FpPoly, int>> PrimeField::distinct_degree(const FpPoly& f_in) const {
  std::vector<std::pair<FpPoly, int>> out;
  FpPoly f = f_in;
  FpPoly x{0, 1};
  FpPoly h = x;
  const mpz_class pz(static_cast<unsigned long>(p_));
  for (int d = 1; static_cast<int>(f.size()) - 1 >= 2 * d; ++d) {
    h = poly_powmod(h, pz, f);
    FpPoly g = poly_gcd(f, poly_sub(h, x));
    if (g.size() > 1) {
      out.emplace_back(g, d);
      f = poly_divmod(f, g).first;
      h = poly_mod(h, f);
    }
  }
  if (f.size() > 1) out.emplace_back(f, static_cast<int>(f.size()) - 1);
  return out;
}

std::vector<FpPoly> PrimeField::equal_degree(const FpPoly& f, int d, std::mt19937_64& rng) const {
  const int n = static_cast<int>(f.size()) - 1;
  if (n == d) return {f};
  if (p_ == 2) throw DomainError("equal-degree splitting requires an odd prime");
  mpz_class e;
  mpz_ui_pow_ui(e.get_mpz_t(), p_, static_cast<unsigned long>(d));
  e = (e - 1) / 2;
  std::uniform_int_distribution<std::uint64_t> coin(0, p_ - 1);
  for (;;) {
    FpPoly a(static_cast<std::size_t>(n));
    for (auto& c : a) c = coin(rng);
    trim(a);
    if (a.size() <= 1) continue;
    FpPoly g = poly_gcd(a, f);
    if (g.size() > 1 && g.size() < f.size()) {
      auto left = equal_degree(g, d, rng);
      auto right = equal_degree(poly_divmod(f, g).first, d, rng);
      left.insert(left.end(), right.begin(), right.end());
      return left;
    }
    FpPoly b = poly_powmod(a, e, f);
    b = poly_sub(b, FpPoly{1});
    g = poly_gcd(b, f);
    if (g.size() > 1 && g.size() < f.size()) {
      auto left = equal_degree(g, d, rng);
      auto right = equal_degree(poly_monic(poly_divmod(f, g).first), d, rng);
      left.insert(left.end(), right.begin(), right.end());
      return left;
    }
  }
}

std::vector<FpPoly> PrimeField::factor_squarefree(const FpPoly& f, std::uint64_t seed) const {
  std::mt19937_64 rng(seed);
  std::vector<FpPoly> out;
  for (auto& [g, d] : distinct_degree(poly_monic(f))) {
    auto parts = equal_degree(g, d, rng);
    out.insert(out.end(), parts.begin(), parts.end());
  }
  std::sort(out.begin(), out.end(), [](const FpPoly& a, const FpPoly& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  return out;
}

}  // namespace heightlab
