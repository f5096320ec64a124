#include "heightlab/poly.hpp"

#include <algorithm>
#include <sstream>

#include "heightlab/errors.hpp"

namespace heightlab {

namespace {

// Appends "c*mono" to out with an explicit sign separator. `mono` is empty for
// the constant term.
void append_term(std::string& out, const mpq_class& c, const std::string& mono) {
  const bool negative = sgn(c) < 0;
  mpq_class a = abs(c);
  if (out.empty()) {
    if (negative) out += "-";
  } else {
    out += negative ? " - " : " + ";
  }
  if (mono.empty()) {
    out += a.get_str();
  } else if (a == 1) {
    out += mono;
  } else {
    out += a.get_str() + "*" + mono;
  }
}

std::string power_str(const std::string& var, int e) {
  if (e == 1) return var;
  return var + "^" + std::to_string(e);
}

}  // namespace

// ---------------------------------------------------------------- UniPoly

UniPoly::UniPoly(std::vector<mpq_class> coeffs) : coeffs_(std::move(coeffs)) {
  for (auto& c : coeffs_) c.canonicalize();
  normalize();
}

UniPoly::UniPoly(const std::vector<mpz_class>& coeffs) {
  coeffs_.reserve(coeffs.size());
  for (const auto& c : coeffs) coeffs_.emplace_back(c);
  normalize();
}

UniPoly UniPoly::from_ints(std::initializer_list<long> ascending) {
  std::vector<mpq_class> c;
  for (long v : ascending) c.emplace_back(v);
  return UniPoly(std::move(c));
}

UniPoly UniPoly::monomial(const mpq_class& c, int degree) {
  if (c == 0) return {};
  std::vector<mpq_class> v(static_cast<std::size_t>(degree) + 1);
  v.back() = c;
  return UniPoly(std::move(v));
}

void UniPoly::normalize() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

mpq_class UniPoly::coeff(int i) const {
  if (i < 0 || i > degree()) return 0;
  return coeffs_[static_cast<std::size_t>(i)];
}

const mpq_class& UniPoly::lc() const {
  if (coeffs_.empty()) throw DomainError("leading coefficient of the zero polynomial");
  return coeffs_.back();
}

bool UniPoly::is_integral() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(),
                     [](const mpq_class& c) { return c.get_den() == 1; });
}

std::vector<mpz_class> UniPoly::int_coeffs() const {
  std::vector<mpz_class> out;
  out.reserve(coeffs_.size());
  for (const auto& c : coeffs_) {
    if (c.get_den() != 1) throw DomainError("polynomial has non-integral coefficients");
    out.push_back(c.get_num());
  }
  return out;
}

UniPoly UniPoly::primitive() const {
  if (is_zero()) return {};
  mpz_class den = 1;
  for (const auto& c : coeffs_) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
  std::vector<mpz_class> ints;
  mpz_class g = 0;
  for (const auto& c : coeffs_) {
    mpz_class v = c.get_num() * (den / c.get_den());
    g = gcd(g, v);
    ints.push_back(v);
  }
  if (sgn(ints.back()) < 0) g = -g;
  for (auto& v : ints) v /= g;
  return UniPoly(ints);
}

bool UniPoly::is_primitive_integral() const {
  return !is_zero() && *this == primitive();
}

UniPoly UniPoly::monic() const {
  if (is_zero()) return {};
  UniPoly r(*this);
  mpq_class inv = 1 / lc();
  r *= inv;
  return r;
}

UniPoly UniPoly::derivative() const {
  if (degree() < 1) return {};
  std::vector<mpq_class> d(coeffs_.size() - 1);
  for (std::size_t i = 1; i < coeffs_.size(); ++i) d[i - 1] = coeffs_[i] * static_cast<long>(i);
  return UniPoly(std::move(d));
}

UniPoly UniPoly::reversed() const {
  std::vector<mpq_class> r(coeffs_.rbegin(), coeffs_.rend());
  return UniPoly(std::move(r));
}

mpq_class UniPoly::eval(const mpq_class& x) const {
  mpq_class acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

mpq_class UniPoly::length() const {
  mpq_class s = 0;
  for (const auto& c : coeffs_) s += abs(c);
  return s;
}

UniPoly UniPoly::operator-() const {
  UniPoly r(*this);
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

UniPoly& UniPoly::operator+=(const UniPoly& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
  normalize();
  return *this;
}

UniPoly& UniPoly::operator-=(const UniPoly& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
  normalize();
  return *this;
}

UniPoly operator*(const UniPoly& a, const UniPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<mpq_class> r(a.coeffs_.size() + b.coeffs_.size() - 1);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (a.coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) r[i + j] += a.coeffs_[i] * b.coeffs_[j];
  }
  return UniPoly(std::move(r));
}

UniPoly& UniPoly::operator*=(const UniPoly& o) {
  *this = *this * o;
  return *this;
}

UniPoly& UniPoly::operator*=(const mpq_class& c) {
  if (c == 0) {
    coeffs_.clear();
    return *this;
  }
  for (auto& v : coeffs_) v *= c;
  return *this;
}

std::string UniPoly::to_string(const std::string& var) const {
  if (is_zero()) return "0";
  std::string out;
  for (int i = degree(); i >= 0; --i) {
    const mpq_class& c = coeffs_[static_cast<std::size_t>(i)];
    if (c == 0) continue;
    append_term(out, c, i == 0 ? std::string() : power_str(var, i));
  }
  return out;
}

std::pair<UniPoly, UniPoly> divmod(const UniPoly& a, const UniPoly& b) {
  if (b.is_zero()) throw DomainError("polynomial division by zero");
  if (a.degree() < b.degree()) return {UniPoly(), a};
  std::vector<mpq_class> rem = a.coeffs();
  std::vector<mpq_class> quo(static_cast<std::size_t>(a.degree() - b.degree() + 1));
  const auto& bc = b.coeffs();
  const mpq_class inv = 1 / b.lc();
  for (int i = a.degree() - b.degree(); i >= 0; --i) {
    const std::size_t top = static_cast<std::size_t>(i + b.degree());
    mpq_class q = rem[top] * inv;
    quo[static_cast<std::size_t>(i)] = q;
    if (q == 0) continue;
    for (std::size_t j = 0; j < bc.size(); ++j) rem[static_cast<std::size_t>(i) + j] -= q * bc[j];
  }
  rem.resize(static_cast<std::size_t>(b.degree()));
  return {UniPoly(std::move(quo)), UniPoly(std::move(rem))};
}

UniPoly gcd(const UniPoly& a, const UniPoly& b) {
  UniPoly u = a, v = b;
  while (!v.is_zero()) {
    UniPoly r = divmod(u, v).second;
    // Keep intermediate sizes in check.
    u = std::move(v);
    v = r.is_zero() ? r : r.primitive();
  }
  return u.monic();
}

UniPoly pow(const UniPoly& a, unsigned n) {
  UniPoly result = UniPoly::constant(1);
  UniPoly base = a;
  while (n > 0) {
    if (n & 1U) result *= base;
    n >>= 1U;
    if (n) base = base * base;
  }
  return result;
}

UniPoly compose(const UniPoly& f, const UniPoly& g) {
  UniPoly acc;
  for (int i = f.degree(); i >= 0; --i) acc = acc * g + UniPoly::constant(f.coeff(i));
  return acc;
}

// ---------------------------------------------------------------- BiPoly

BiPoly::BiPoly(std::map<Key, mpq_class> terms) {
  for (auto& [k, c] : terms) {
    if (k.first < 0 || k.second < 0) throw DomainError("negative exponent in BiPoly");
    if (c != 0) terms_.emplace(k, c);
  }
}

int BiPoly::deg_x() const {
  int d = -1;
  for (const auto& [k, c] : terms_) d = std::max(d, k.first);
  return d;
}

int BiPoly::deg_t() const {
  int d = -1;
  for (const auto& [k, c] : terms_) d = std::max(d, k.second);
  return d;
}

mpq_class BiPoly::coeff(int i, int j) const {
  auto it = terms_.find({i, j});
  return it == terms_.end() ? mpq_class(0) : it->second;
}

UniPoly BiPoly::at_x(const mpq_class& c) const {
  std::vector<mpq_class> out(static_cast<std::size_t>(std::max(deg_t(), 0)) + 1);
  for (const auto& [k, v] : terms_) {
    mpq_class p = 1;
    for (int e = 0; e < k.first; ++e) p *= c;
    out[static_cast<std::size_t>(k.second)] += v * p;
  }
  return UniPoly(std::move(out));
}

UniPoly BiPoly::at_t(const mpq_class& c) const {
  std::vector<mpq_class> out(static_cast<std::size_t>(std::max(deg_x(), 0)) + 1);
  for (const auto& [k, v] : terms_) {
    mpq_class p = 1;
    for (int e = 0; e < k.second; ++e) p *= c;
    out[static_cast<std::size_t>(k.first)] += v * p;
  }
  return UniPoly(std::move(out));
}

std::vector<mpq_class> BiPoly::coefficient_vector() const {
  std::vector<mpq_class> out;
  for (const auto& [k, c] : terms_) out.push_back(c);
  return out;
}

std::string BiPoly::to_string(const std::string& xvar, const std::string& tvar) const {
  MultiPoly m({xvar, tvar});
  std::map<Exponents, mpq_class> t;
  for (const auto& [k, c] : terms_) t[{k.first, k.second}] = c;
  return MultiPoly({xvar, tvar}, std::move(t)).to_string();
}

// ---------------------------------------------------------------- MultiPoly

MultiPoly::MultiPoly(std::vector<std::string> vars, std::map<Exponents, mpq_class> terms)
    : vars_(std::move(vars)) {
  for (auto& [e, c] : terms) {
    if (e.size() != vars_.size()) throw DomainError("exponent vector has wrong arity");
    if (c != 0) terms_.emplace(e, c);
  }
}

MultiPoly MultiPoly::constant(std::vector<std::string> vars, const mpq_class& c) {
  MultiPoly p(std::move(vars));
  if (c != 0) p.terms_.emplace(Exponents(p.vars_.size(), 0), c);
  return p;
}

MultiPoly MultiPoly::variable(std::vector<std::string> vars, std::size_t index) {
  MultiPoly p(std::move(vars));
  Exponents e(p.vars_.size(), 0);
  e.at(index) = 1;
  p.terms_.emplace(std::move(e), 1);
  return p;
}

void MultiPoly::add_term(const Exponents& e, const mpq_class& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

bool MultiPoly::is_constant() const {
  if (terms_.empty()) return true;
  if (terms_.size() > 1) return false;
  const auto& e = terms_.begin()->first;
  return std::all_of(e.begin(), e.end(), [](int v) { return v == 0; });
}

int MultiPoly::total_degree() const {
  int d = -1;
  for (const auto& [e, c] : terms_) {
    int s = 0;
    for (int v : e) s += v;
    d = std::max(d, s);
  }
  return d;
}

int MultiPoly::degree_in(std::size_t var) const {
  int d = -1;
  for (const auto& [e, c] : terms_) d = std::max(d, e.at(var));
  return d;
}

bool MultiPoly::is_homogeneous() const {
  int d = -1;
  for (const auto& [e, c] : terms_) {
    int s = 0;
    for (int v : e) s += v;
    if (d >= 0 && s != d) return false;
    d = s;
  }
  return true;
}

mpq_class MultiPoly::coeff(const Exponents& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? mpq_class(0) : it->second;
}

mpq_class MultiPoly::content() const {
  if (terms_.empty()) return 0;
  mpz_class num = 0, den = 1;
  for (const auto& [e, c] : terms_) {
    num = gcd(num, c.get_num());
    mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
  }
  mpq_class r(num, den);
  r.canonicalize();
  return r;
}

MultiPoly MultiPoly::primitive() const {
  if (terms_.empty()) return *this;
  mpq_class c = content();
  if (sgn(terms_.rbegin()->second) < 0) c = -c;
  MultiPoly r(*this);
  for (auto& [e, v] : r.terms_) v /= c;
  return r;
}

std::vector<mpq_class> MultiPoly::coefficient_vector() const {
  std::vector<mpq_class> out;
  out.reserve(terms_.size());
  for (const auto& [e, c] : terms_) out.push_back(c);
  return out;
}

MultiPoly MultiPoly::operator-() const {
  MultiPoly r(*this);
  for (auto& [e, c] : r.terms_) c = -c;
  return r;
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& o) {
  if (vars_.empty() && terms_.empty()) vars_ = o.vars_;
  if (!o.terms_.empty() && o.vars_ != vars_) throw DomainError("variable lists differ");
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& o) {
  if (vars_.empty() && terms_.empty()) vars_ = o.vars_;
  if (!o.terms_.empty() && o.vars_ != vars_) throw DomainError("variable lists differ");
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

MultiPoly& MultiPoly::operator*=(const mpq_class& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, v] : terms_) v *= c;
  return *this;
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
  if (a.vars_ != b.vars_) throw DomainError("variable lists differ");
  MultiPoly r(a.vars_);
  Exponents e(a.vars_.size());
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      r.add_term(e, ca * cb);
    }
  }
  return r;
}

MultiPoly pow(const MultiPoly& a, unsigned n) {
  MultiPoly result = MultiPoly::constant(a.vars(), 1);
  MultiPoly base = a;
  while (n > 0) {
    if (n & 1U) result = result * base;
    n >>= 1U;
    if (n) base = base * base;
  }
  return result;
}

MultiPoly MultiPoly::derivative(std::size_t var) const {
  MultiPoly r(vars_);
  for (const auto& [e, c] : terms_) {
    if (e.at(var) == 0) continue;
    Exponents d = e;
    d[var] -= 1;
    r.add_term(d, c * e[var]);
  }
  return r;
}

MultiPoly MultiPoly::substitute(const std::vector<MultiPoly>& images) const {
  if (images.size() != vars_.size()) throw DomainError("substitution arity mismatch");
  if (images.empty()) return *this;
  const auto& target = images.front().vars();
  // Cache powers of each image.
  std::vector<std::vector<MultiPoly>> powers(images.size());
  for (std::size_t i = 0; i < images.size(); ++i) {
    int d = std::max(degree_in(i), 0);
    powers[i].push_back(MultiPoly::constant(target, 1));
    for (int k = 1; k <= d; ++k) powers[i].push_back(powers[i].back() * images[i]);
  }
  MultiPoly r(target);
  for (const auto& [e, c] : terms_) {
    MultiPoly term = MultiPoly::constant(target, c);
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i] > 0) term = term * powers[i][static_cast<std::size_t>(e[i])];
    r += term;
  }
  return r;
}

std::complex<double> MultiPoly::eval(std::span<const std::complex<double>> point) const {
  std::complex<double> acc = 0;
  for (const auto& [e, c] : terms_) {
    std::complex<double> t = c.get_d();
    for (std::size_t i = 0; i < e.size(); ++i)
      for (int k = 0; k < e[i]; ++k) t *= point[i];
    acc += t;
  }
  return acc;
}

mpq_class MultiPoly::eval(std::span<const mpq_class> point) const {
  mpq_class acc = 0;
  for (const auto& [e, c] : terms_) {
    mpq_class t = c;
    for (std::size_t i = 0; i < e.size(); ++i)
      for (int k = 0; k < e[i]; ++k) t *= point[i];
    acc += t;
  }
  return acc;
}

UniPoly MultiPoly::to_uni(std::size_t var) const {
  std::vector<mpq_class> out(static_cast<std::size_t>(std::max(degree_in(var), 0)) + 1);
  for (const auto& [e, c] : terms_) {
    for (std::size_t i = 0; i < e.size(); ++i)
      if (i != var && e[i] != 0)
        throw DomainError("polynomial involves variable '" + vars_[i] + "'");
    out[static_cast<std::size_t>(e[var])] += c;
  }
  return UniPoly(std::move(out));
}

BiPoly MultiPoly::to_bi(std::size_t xvar, std::size_t tvar) const {
  std::map<BiPoly::Key, mpq_class> out;
  for (const auto& [e, c] : terms_) {
    for (std::size_t i = 0; i < e.size(); ++i)
      if (i != xvar && i != tvar && e[i] != 0)
        throw DomainError("polynomial involves variable '" + vars_[i] + "'");
    out[{e[xvar], e[tvar]}] += c;
  }
  return BiPoly(std::move(out));
}

std::string MultiPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::vector<std::pair<int, const Exponents*>> order;
  for (const auto& [e, c] : terms_) {
    int s = 0;
    for (int v : e) s += v;
    order.emplace_back(s, &e);
  }
  std::sort(order.begin(), order.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first > b.first;
    return *a.second > *b.second;
  });
  std::string out;
  for (const auto& [deg, e] : order) {
    std::string mono;
    for (std::size_t i = 0; i < e->size(); ++i) {
      if ((*e)[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += power_str(vars_[i], (*e)[i]);
    }
    append_term(out, terms_.at(*e), mono);
  }
  return out;
}

}  // namespace heightlab
