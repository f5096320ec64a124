#include "heightlab/groebner.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <set>
#include <sstream>

#include "heightlab/errors.hpp"
#include "heightlab/modular.hpp"

namespace heightlab {

GaussianRational GaussianRational::inverse() const {
  mpq_class n = norm();
  if (n == 0) throw DomainError("division by zero in Q(i)");
  return {re / n, -im / n};
}

std::string GaussianRational::to_string() const {
  if (im == 0) return re.get_str();
  std::string imag;
  if (im == 1) imag = "i";
  else if (im == -1) imag = "-i";
  else imag = im.get_str() + "i";
  if (re == 0) return imag;
  return re.get_str() + (im > 0 ? "+" : "") + imag;
}

GaussianRational parse_gaussian(const std::string& raw) {
  std::string s;
  for (char ch : raw) {
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  }
  if (s.empty()) throw SyntaxError("empty coefficient", 0);
  GaussianRational out;
  std::size_t pos = 0;
  while (pos < s.size()) {
    std::size_t start = pos;
    if (s[pos] == '+' || s[pos] == '-') ++pos;
    while (pos < s.size() && s[pos] != '+' && s[pos] != '-') ++pos;
    std::string tok = s.substr(start, pos - start);
    bool imag = !tok.empty() && tok.back() == 'i';
    if (imag) tok.pop_back();
    if (tok.empty() || tok == "+") tok = "1";
    if (tok == "-") tok = "-1";
    if (tok[0] == '+') tok.erase(0, 1);
    const bool digits = tok.find_first_not_of("-0123456789/") == std::string::npos;
    mpq_class v;
    if (!digits || v.set_str(tok, 10) != 0 || v.get_den() == 0) {
      throw SyntaxError("invalid coefficient '" + raw + "'", start);
    }
    v.canonicalize();
    if (imag) out.im += v;
    else out.re += v;
  }
  return out;
}

QiPoly QiPoly::from_multi(const MultiPoly& f) {
  QiPoly out(f.nvars());
  for (const auto& [e, c] : f.terms()) out.terms_[e] = GaussianRational(c);
  return out;
}

QiPoly QiPoly::variable(std::size_t nvars, std::size_t index) {
  QiPoly out(nvars);
  Exponents e(nvars, 0);
  e[index] = 1;
  out.terms_[e] = GaussianRational(1);
  return out;
}

QiPoly QiPoly::constant(std::size_t nvars, const GaussianRational& c) {
  QiPoly out(nvars);
  out.add_term(Exponents(nvars, 0), c);
  return out;
}

bool QiPoly::is_rational() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const auto& t) { return t.second.is_rational(); });
}

int QiPoly::total_degree() const {
  int d = -1;
  for (const auto& [e, c] : terms_) d = std::max(d, std::accumulate(e.begin(), e.end(), 0));
  return d;
}

bool QiPoly::is_homogeneous() const {
  const int d = total_degree();
  return std::all_of(terms_.begin(), terms_.end(),
                     [d](const auto& t) { return std::accumulate(t.first.begin(), t.first.end(), 0) == d; });
}

void QiPoly::add_term(const Exponents& e, const GaussianRational& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.emplace(e, c);
  if (!inserted) {
    it->second = it->second + c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

QiPoly& QiPoly::operator+=(const QiPoly& o) {
  if (nvars_ != o.nvars_) throw DomainError("QiPoly: variable count mismatch");
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

QiPoly operator*(const QiPoly& a, const QiPoly& b) {
  if (a.nvars_ != b.nvars_) throw DomainError("QiPoly: variable count mismatch");
  QiPoly out(a.nvars_);
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      Exponents e(ea);
      for (std::size_t k = 0; k < e.size(); ++k) e[k] += eb[k];
      out.add_term(e, ca * cb);
    }
  }
  return out;
}

QiPoly operator*(QiPoly a, const GaussianRational& c) {
  if (c.is_zero()) return QiPoly(a.nvars_);
  for (auto& [e, v] : a.terms_) v = v * c;
  return a;
}

QiPoly QiPoly::derivative(std::size_t var) const {
  QiPoly out(nvars_);
  for (const auto& [e, c] : terms_) {
    if (e[var] == 0) continue;
    Exponents d(e);
    d[var] -= 1;
    out.add_term(d, c * GaussianRational(e[var]));
  }
  return out;
}

QiPoly QiPoly::substitute(const std::vector<QiPoly>& images) const {
  if (images.size() != nvars_) throw DomainError("QiPoly::substitute: wrong number of images");
  const std::size_t target = images.empty() ? 0 : images[0].nvars();
  QiPoly out(target);
  for (const auto& [e, c] : terms_) {
    QiPoly m = QiPoly::constant(target, c);
    for (std::size_t k = 0; k < e.size(); ++k) {
      for (int j = 0; j < e[k]; ++j) m = m * images[k];
    }
    out += m;
  }
  return out;
}

bool grevlex_greater(const Exponents& a, const Exponents& b) {
  const int da = std::accumulate(a.begin(), a.end(), 0), db = std::accumulate(b.begin(), b.end(), 0);
  if (da != db) return da > db;
  for (std::size_t k = a.size(); k-- > 0;) {
    if (a[k] != b[k]) return a[k] < b[k];
  }
  return false;
}

QiPoly QiPoly::normalized() const {
  if (terms_.empty()) return *this;
  mpz_class den = 1, num = 0;
  for (const auto& [e, c] : terms_) {
    den = lcm(den, c.re.get_den());
    den = lcm(den, c.im.get_den());
  }
  for (const auto& [e, c] : terms_) {
    num = gcd(num, mpz_class(c.re * den));
    num = gcd(num, mpz_class(c.im * den));
  }
  const Exponents* lead = nullptr;
  for (const auto& [e, c] : terms_) {
    if (!lead || grevlex_greater(e, *lead)) lead = &e;
  }
  const auto& lc = terms_.at(*lead);
  mpq_class scale(den, num);
  scale.canonicalize();
  if (lc.re < 0 || (lc.re == 0 && lc.im < 0)) scale = -scale;
  return *this * GaussianRational(scale);
}

std::string QiPoly::to_string(const std::vector<std::string>& vars) const {
  if (terms_.empty()) return "0";
  std::vector<const std::pair<const Exponents, GaussianRational>*> order;
  for (const auto& t : terms_) order.push_back(&t);
  std::sort(order.begin(), order.end(), [](auto* a, auto* b) { return grevlex_greater(a->first, b->first); });
  std::ostringstream out;
  bool first = true;
  for (auto* t : order) {
    const auto& [e, c] = *t;
    std::string mono;
    for (std::size_t k = 0; k < e.size(); ++k) {
      if (e[k] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += vars.at(k);
      if (e[k] > 1) mono += "^" + std::to_string(e[k]);
    }
    std::string coef;
    bool negative = false;
    if (c.is_rational() || c.re == 0) {
      mpq_class v = c.is_rational() ? c.re : c.im;
      negative = v < 0;
      mpq_class a = abs(v);
      if (c.is_rational()) coef = (a == 1 && !mono.empty()) ? "" : a.get_str();
      else coef = (a == 1 ? "" : a.get_str()) + "i";
    } else {
      coef = "(" + c.to_string() + ")";
    }
    if (first) out << (negative ? "-" : "");
    else out << (negative ? " - " : " + ");
    out << coef;
    if (!coef.empty() && !mono.empty()) out << "*";
    out << mono;
    first = false;
  }
  return out.str();
}

namespace {

// Field wrappers for the generic algorithm.
struct QiField {
  using T = GaussianRational;
  T zero() const { return {}; }
  T one() const { return GaussianRational(1); }
  bool is_zero(const T& a) const { return a.is_zero(); }
  T add(const T& a, const T& b) const { return a + b; }
  T sub(const T& a, const T& b) const { return a - b; }
  T mul(const T& a, const T& b) const { return a * b; }
  T inv(const T& a) const { return a.inverse(); }
};

struct FpField {
  using T = std::uint64_t;
  PrimeField F;
  T zero() const { return 0; }
  T one() const { return 1; }
  bool is_zero(T a) const { return a == 0; }
  T add(T a, T b) const { return F.add(a, b); }
  T sub(T a, T b) const { return F.sub(a, b); }
  T mul(T a, T b) const { return F.mul(a, b); }
  T inv(T a) const { return F.inv(a); }
};

template <class K>
struct Term {
  Exponents e;
  typename K::T c;
};

template <class K>
using Poly = std::vector<Term<K>>;  // strictly decreasing in grevlex

bool divides(const Exponents& a, const Exponents& b) {
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (a[k] > b[k]) return false;
  }
  return true;
}

Exponents lcm_mono(const Exponents& a, const Exponents& b) {
  Exponents out(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) out[k] = std::max(a[k], b[k]);
  return out;
}

Exponents quotient_mono(const Exponents& a, const Exponents& b) {
  Exponents out(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) out[k] = a[k] - b[k];
  return out;
}

bool coprime_mono(const Exponents& a, const Exponents& b) {
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (a[k] > 0 && b[k] > 0) return false;
  }
  return true;
}

int degree_of(const Exponents& e) { return std::accumulate(e.begin(), e.end(), 0); }

// f - c * x^shift * g
template <class K>
Poly<K> sub_scaled(const K& k, const Poly<K>& f, const typename K::T& c, const Exponents& shift, const Poly<K>& g) {
  Poly<K> out;
  out.reserve(f.size() + g.size());
  std::size_t i = 0, j = 0;
  while (i < f.size() || j < g.size()) {
    Exponents ge;
    if (j < g.size()) {
      ge = g[j].e;
      for (std::size_t v = 0; v < ge.size(); ++v) ge[v] += shift[v];
    }
    if (j >= g.size() || (i < f.size() && grevlex_greater(f[i].e, ge))) {
      out.push_back(f[i++]);
    } else if (i >= f.size() || grevlex_greater(ge, f[i].e)) {
      out.push_back({ge, k.sub(k.zero(), k.mul(c, g[j++].c))});
    } else {
      auto v = k.sub(f[i].c, k.mul(c, g[j].c));
      if (!k.is_zero(v)) out.push_back({f[i].e, v});
      ++i;
      ++j;
    }
  }
  return out;
}

template <class K>
Poly<K> make_monic(const K& k, Poly<K> f) {
  if (f.empty()) return f;
  auto inv = k.inv(f[0].c);
  for (auto& t : f) t.c = k.mul(t.c, inv);
  return f;
}

template <class K>
Poly<K> normal_form(const K& k, Poly<K> f, const std::vector<Poly<K>>& G) {
  Poly<K> rest;
  while (!f.empty()) {
    bool reduced = false;
    for (const auto& g : G) {
      if (g.empty() || !divides(g[0].e, f[0].e)) continue;
      auto c = k.mul(f[0].c, k.inv(g[0].c));
      f = sub_scaled(k, f, c, quotient_mono(f[0].e, g[0].e), g);
      reduced = true;
      break;
    }
    if (!reduced) {
      rest.push_back(f[0]);
      f.erase(f.begin());
    }
  }
  return rest;
}

template <class K>
Poly<K> s_polynomial(const K& k, const Poly<K>& f, const Poly<K>& g) {
  Exponents l = lcm_mono(f[0].e, g[0].e);
  Poly<K> a = sub_scaled(k, Poly<K>{}, k.sub(k.zero(), k.one()), quotient_mono(l, f[0].e), f);
  return sub_scaled(k, a, k.one(), quotient_mono(l, g[0].e), g);
}

template <class K>
std::vector<Poly<K>> buchberger(const K& k, const std::vector<Poly<K>>& input) {
  std::vector<Poly<K>> G;
  for (const auto& f : input) {
    auto r = make_monic(k, normal_form(k, f, G));
    if (!r.empty()) G.push_back(std::move(r));
  }
  std::set<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t j = 0; j < G.size(); ++j) {
    for (std::size_t i = 0; i < j; ++i) pairs.insert({i, j});
  }
  while (!pairs.empty()) {
    auto best = pairs.begin();
    for (auto it = pairs.begin(); it != pairs.end(); ++it) {
      const auto a = lcm_mono(G[it->first][0].e, G[it->second][0].e);
      const auto b = lcm_mono(G[best->first][0].e, G[best->second][0].e);
      if (degree_of(a) < degree_of(b) || (degree_of(a) == degree_of(b) && grevlex_greater(b, a))) best = it;
    }
    const auto [i, j] = *best;
    pairs.erase(best);
    const auto& lmi = G[i][0].e;
    const auto& lmj = G[j][0].e;
    if (coprime_mono(lmi, lmj)) continue;
    const Exponents l = lcm_mono(lmi, lmj);
    bool chain = false;
    for (std::size_t m = 0; m < G.size() && !chain; ++m) {
      if (m == i || m == j || !divides(G[m][0].e, l)) continue;
      auto key = [](std::size_t a, std::size_t b) { return std::make_pair(std::min(a, b), std::max(a, b)); };
      chain = !pairs.count(key(i, m)) && !pairs.count(key(j, m));
    }
    if (chain) continue;
    auto h = make_monic(k, normal_form(k, s_polynomial(k, G[i], G[j]), G));
    if (h.empty()) continue;
    G.push_back(std::move(h));
    for (std::size_t m = 0; m + 1 < G.size(); ++m) pairs.insert({m, G.size() - 1});
  }
  // Minimal basis, then interreduction.
  std::vector<Poly<K>> minimal;
  for (std::size_t a = 0; a < G.size(); ++a) {
    bool redundant = false;
    for (std::size_t b = 0; b < G.size() && !redundant; ++b) {
      if (a == b || !divides(G[b][0].e, G[a][0].e)) continue;
      redundant = G[b][0].e != G[a][0].e || b < a;
    }
    if (!redundant) minimal.push_back(G[a]);
  }
  std::vector<Poly<K>> reduced;
  for (std::size_t a = 0; a < minimal.size(); ++a) {
    std::vector<Poly<K>> others;
    for (std::size_t b = 0; b < minimal.size(); ++b) {
      if (b != a) others.push_back(minimal[b]);
    }
    Poly<K> head{minimal[a][0]};
    Poly<K> tail(minimal[a].begin() + 1, minimal[a].end());
    tail = normal_form(k, tail, others);
    head.insert(head.end(), tail.begin(), tail.end());
    reduced.push_back(std::move(head));
  }
  std::sort(reduced.begin(), reduced.end(), [](const auto& a, const auto& b) { return grevlex_greater(b[0].e, a[0].e); });
  return reduced;
}

Poly<QiField> to_poly(const QiPoly& f) {
  Poly<QiField> out;
  for (const auto& [e, c] : f.terms()) out.push_back({e, c});
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return grevlex_greater(a.e, b.e); });
  return out;
}

std::uint64_t sqrt_minus_one(const PrimeField& F) {
  const std::uint64_t p = F.p();
  for (std::uint64_t g = 2;; ++g) {
    std::uint64_t r = F.pow(g, (p - 1) / 4);
    if (F.mul(r, r) == p - 1) return r;
  }
}

std::size_t check_system(const std::vector<QiPoly>& system) {
  if (system.empty()) throw DomainError("groebner: empty system");
  const std::size_t n = system[0].nvars();
  for (const auto& f : system) {
    if (f.nvars() != n) throw DomainError("groebner: variable count mismatch");
  }
  return n;
}

}  // namespace

std::vector<QiPoly> groebner_basis(const std::vector<QiPoly>& system) {
  const std::size_t n = check_system(system);
  std::vector<Poly<QiField>> input;
  for (const auto& f : system) {
    if (!f.is_zero()) input.push_back(to_poly(f));
  }
  QiField k;
  auto G = buchberger(k, input);
  std::vector<QiPoly> out;
  for (const auto& g : G) {
    QiPoly q(n);
    for (const auto& t : g) q.add_term(t.e, t.c);
    out.push_back(std::move(q));
  }
  return out;
}

ModularBasis groebner_leading_monomials_mod_p(const std::vector<QiPoly>& system, std::uint64_t p) {
  check_system(system);
  ModularBasis out;
  out.prime = p;
  FpField k{PrimeField(p)};
  bool rational = std::all_of(system.begin(), system.end(), [](const QiPoly& f) { return f.is_rational(); });
  if (!rational && p % 4 != 1) throw DomainError("groebner mod p: need p = 1 mod 4 for Gaussian coefficients");
  const std::uint64_t iota = rational ? 0 : sqrt_minus_one(k.F);
  std::vector<Poly<FpField>> input;
  for (const auto& f : system) {
    Poly<FpField> g;
    for (const auto& [e, c] : f.terms()) {
      if (c.re.get_den() % p == 0 || c.im.get_den() % p == 0) return out;
      std::uint64_t v = k.F.add(k.F.reduce(c.re), k.F.mul(iota, k.F.reduce(c.im)));
      if (v) g.push_back({e, v});
    }
    std::sort(g.begin(), g.end(), [](const auto& a, const auto& b) { return grevlex_greater(a.e, b.e); });
    if (!g.empty()) input.push_back(std::move(g));
  }
  out.valid = true;
  for (const auto& g : buchberger(k, input)) out.leading_monomials.push_back(g[0].e);
  return out;
}

bool zero_dimensional_at_origin(const std::vector<Exponents>& leading, std::size_t nvars) {
  for (const auto& e : leading) {
    if (degree_of(e) == 0) return true;  // unit ideal
  }
  for (std::size_t v = 0; v < nvars; ++v) {
    bool found = false;
    for (const auto& e : leading) {
      bool pure = e[v] > 0;
      for (std::size_t w = 0; w < nvars && pure; ++w) pure = (w == v) || e[w] == 0;
      found = found || pure;
    }
    if (!found) return false;
  }
  return true;
}

EmptinessCertificate projective_zero_set_empty(const std::vector<QiPoly>& system) {
  const std::size_t n = check_system(system);
  for (const auto& f : system) {
    if (!f.is_zero() && !f.is_homogeneous()) throw DomainError("projective_zero_set_empty: inhomogeneous input");
  }
  std::uint64_t p = std::uint64_t{1} << 61;
  for (int attempt = 0; attempt < 3;) {
    p = previous_prime(p);
    if (p % 4 != 1) continue;
    ++attempt;
    auto mb = groebner_leading_monomials_mod_p(system, p);
    if (mb.valid && zero_dimensional_at_origin(mb.leading_monomials, n)) return {true, "mod p", p};
  }
  std::vector<Exponents> leading;
  for (const auto& g : groebner_basis(system)) {
    const Exponents* lead = nullptr;
    for (const auto& [e, c] : g.terms()) {
      if (!lead || grevlex_greater(e, *lead)) lead = &e;
    }
    leading.push_back(*lead);
  }
  return {zero_dimensional_at_origin(leading, n), "exact", 0};
}

}  // namespace heightlab
