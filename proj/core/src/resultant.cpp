#include "heightlab/resultant.hpp"

#include <algorithm>

#include "heightlab/errors.hpp"
#include "heightlab/modular.hpp"

namespace heightlab {

mpq_class resultant(const UniPoly& f, const UniPoly& g) {
  if (f.is_zero() || g.is_zero()) throw DomainError("resultant of the zero polynomial");
  UniPoly a = f, b = g;
  mpq_class s = 1;
  while (b.degree() > 0) {
    UniPoly r = divmod(a, b).second;
    if (r.is_zero()) return 0;
    const int da = a.degree(), db = b.degree(), dr = r.degree();
    if ((da * db) % 2 != 0) s = -s;
    mpq_class lcb = b.lc();
    for (int i = 0; i < da - dr; ++i) s *= lcb;
    a = std::move(b);
    b = std::move(r);
  }
  mpq_class c = b.lc();
  for (int i = 0; i < a.degree(); ++i) s *= c;
  return s;
}

mpq_class discriminant(const UniPoly& f) {
  if (f.degree() < 1) throw DomainError("discriminant of a constant polynomial");
  const long d = f.degree();
  mpq_class r = resultant(f, f.derivative()) / f.lc();
  if (((d * (d - 1)) / 2) % 2 != 0) r = -r;
  return r;
}

namespace {

mpz_class common_denominator(const std::vector<mpq_class>& cs) {
  mpz_class den = 1;
  for (const auto& c : cs) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
  return den;
}

mpz_class l1_norm(const std::vector<mpz_class>& cs) {
  mpz_class s = 0;
  for (const auto& c : cs) s += abs(c);
  return s;
}

// Ceiling of the Euclidean norm.
mpz_class l2_norm_ceil(const std::vector<mpz_class>& cs) {
  mpz_class s = 0;
  for (const auto& c : cs) s += c * c;
  mpz_class r;
  mpz_sqrt(r.get_mpz_t(), s.get_mpz_t());
  if (r * r < s) r += 1;
  return r;
}

}  // namespace

UniPoly resultant_t(const BiPoly& p, const UniPoly& m) {
  if (p.is_zero() || m.is_zero()) throw DomainError("resultant of the zero polynomial");
  const int n = std::max(p.deg_t(), 0);
  const int dm = m.degree();
  const int dx = std::max(p.deg_x(), 0);

  // Integer images: P_int = dp * P, m_int = dmq * m.
  const mpz_class dp = common_denominator(p.coefficient_vector());
  const mpz_class dmq = common_denominator(m.coeffs());
  std::map<BiPoly::Key, mpz_class> pint;
  std::vector<mpz_class> pcoeffs;
  for (const auto& [k, c] : p.terms()) {
    mpz_class v = c.get_num() * (dp / c.get_den());
    pint[k] = v;
    pcoeffs.push_back(v);
  }
  std::vector<mpz_class> mint;
  for (const auto& c : m.coeffs()) mint.push_back(c.get_num() * (dmq / c.get_den()));

  // ||R||_inf <= ||P||_1^{deg m} * ||m||_2^{deg_t P}.
  mpz_class bound;
  mpz_pow_ui(bound.get_mpz_t(), l1_norm(pcoeffs).get_mpz_t(), static_cast<unsigned long>(dm));
  mpz_class mnorm;
  mpz_pow_ui(mnorm.get_mpz_t(), l2_norm_ceil(mint).get_mpz_t(), static_cast<unsigned long>(n));
  bound *= mnorm;
  const mpz_class target = 2 * bound + 1;

  const int out_degree = dx * dm;
  std::vector<std::uint64_t> nodes(static_cast<std::size_t>(out_degree) + 1);
  for (std::size_t i = 0; i < nodes.size(); ++i) nodes[i] = i;

  std::vector<mpz_class> acc(nodes.size(), 0);
  mpz_class modulus = 1;
  std::uint64_t prime = 1ULL << 61;
  while (modulus < target) {
    prime = previous_prime(prime);
    PrimeField fp(prime);
    if (fp.reduce(mint.back()) == 0) continue;
    FpPoly mp = fp.reduce(mint);
    const std::uint64_t lcm_p = mp.back();
    std::vector<std::uint64_t> values(nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      // P(c, t) mod p, formal t-degree n.
      FpPoly pc(static_cast<std::size_t>(n) + 1, 0);
      for (const auto& [k, c] : pint) {
        std::uint64_t term = fp.mul(fp.reduce(c), fp.pow(nodes[i], static_cast<std::uint64_t>(k.first)));
        pc[static_cast<std::size_t>(k.second)] = fp.add(pc[static_cast<std::size_t>(k.second)], term);
      }
      fp.trim(pc);
      if (pc.empty()) {
        values[i] = 0;
        continue;
      }
      const int k = static_cast<int>(pc.size()) - 1;
      std::uint64_t r = fp.resultant(pc, mp);
      // Res_{n,dm} = (-1)^{(n-k) dm} lc(m)^{n-k} Res_{k,dm}.
      if (((n - k) * dm) % 2 != 0) r = fp.neg(r);
      r = fp.mul(r, fp.pow(lcm_p, static_cast<std::uint64_t>(n - k)));
      values[i] = r;
    }
    FpPoly rp = fp.interpolate(nodes, values);
    rp.resize(nodes.size(), 0);
    // CRT: acc = acc + modulus * ((rp - acc) * modulus^{-1} mod p)
    const std::uint64_t minv = fp.inv(fp.reduce(modulus));
    for (std::size_t i = 0; i < acc.size(); ++i) {
      std::uint64_t delta = fp.mul(fp.sub(rp[i], fp.reduce(acc[i])), minv);
      acc[i] += modulus * mpz_class(static_cast<unsigned long>(delta));
    }
    modulus *= mpz_class(static_cast<unsigned long>(prime));
  }
  const mpz_class half = modulus / 2;
  std::vector<mpq_class> out(acc.size());
  mpz_class scale_p, scale_m;
  mpz_pow_ui(scale_p.get_mpz_t(), dp.get_mpz_t(), static_cast<unsigned long>(dm));
  mpz_pow_ui(scale_m.get_mpz_t(), dmq.get_mpz_t(), static_cast<unsigned long>(n));
  const mpz_class scale = scale_p * scale_m;
  for (std::size_t i = 0; i < acc.size(); ++i) {
    mpz_class v = acc[i] > half ? acc[i] - modulus : acc[i];
    out[i] = mpq_class(v, scale);
    out[i].canonicalize();
  }
  return UniPoly(std::move(out));
}

UniPoly power_polynomial(const UniPoly& m, unsigned n) {
  if (n == 0) throw DomainError("power must be positive");
  std::map<BiPoly::Key, mpq_class> terms;
  terms[{1, 0}] = 1;
  terms[{0, static_cast<int>(n)}] = -1;
  return resultant_t(BiPoly(std::move(terms)), m).primitive();
}

}  // namespace heightlab
