#include "heightlab/generators.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "heightlab/errors.hpp"
#include "heightlab/factor.hpp"
#include "heightlab/resultant.hpp"
#include "heightlab/roots.hpp"

namespace heightlab {

namespace {

using Matrix = std::vector<std::vector<mpq_class>>;

mpq_class determinant(Matrix m) {
  const std::size_t n = m.size();
  mpq_class det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && m[piv][c] == 0) ++piv;
    if (piv == n) return 0;
    if (piv != c) {
      std::swap(m[piv], m[c]);
      det = -det;
    }
    det *= m[c][c];
    for (std::size_t r = c + 1; r < n; ++r) {
      if (m[r][c] == 0) continue;
      mpq_class f = m[r][c] / m[c][c];
      for (std::size_t k = c; k < n; ++k) m[r][k] -= f * m[c][k];
    }
  }
  return det;
}

Matrix multiply(const Matrix& a, const Matrix& b) {
  const std::size_t n = a.size();
  Matrix r(n, std::vector<mpq_class>(n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      if (a[i][k] == 0) continue;
      for (std::size_t j = 0; j < n; ++j) r[i][j] += a[i][k] * b[k][j];
    }
  }
  return r;
}

// Matrix of multiplication by `elem` on Q[theta]/(g), power basis.
Matrix multiplication_matrix(const UniPoly& elem, const UniPoly& g) {
  const int d = g.degree();
  Matrix m(static_cast<std::size_t>(d), std::vector<mpq_class>(static_cast<std::size_t>(d), 0));
  for (int j = 0; j < d; ++j) {
    UniPoly col = divmod(elem * UniPoly::monomial(1, j), g).second;
    for (int i = 0; i < d; ++i) m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = col.coeff(i);
  }
  return m;
}

UniPoly faddeev_leverrier(const Matrix& a) {
  const std::size_t n = a.size();
  std::vector<mpq_class> c(n + 1, 0);
  c[n] = 1;
  Matrix mk(n, std::vector<mpq_class>(n, 0));
  for (std::size_t k = 1; k <= n; ++k) {
    for (std::size_t i = 0; i < n; ++i) mk[i][i] += c[n - k + 1];
    Matrix amk = multiply(a, mk);
    mpq_class tr = 0;
    for (std::size_t i = 0; i < n; ++i) tr += amk[i][i];
    c[n - k] = -tr / static_cast<long>(k);
    mk = std::move(amk);
  }
  return UniPoly(c);
}

int key_value(int key) { return key % 2 == 1 ? (key + 1) / 2 : -key / 2; }

std::vector<std::complex<double>> root_centers(const UniPoly& g) {
  std::vector<std::complex<double>> out;
  for (const auto& b : complex_roots(g, 64)) out.emplace_back(b.center.re.to_double(), b.center.im.to_double());
  return out;
}

std::complex<double> eval_complex(const UniPoly& f, std::complex<double> z) {
  std::complex<double> acc = 0;
  for (int k = f.degree(); k >= 0; --k) acc = acc * z + f.coeff(k).get_d();
  return acc;
}

// Infinity norm of the inverse of a small complex matrix.
double inverse_inf_norm(std::vector<std::vector<std::complex<double>>> m) {
  const std::size_t n = m.size();
  std::vector<std::vector<std::complex<double>>> inv(n, std::vector<std::complex<double>>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1.0;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < n; ++r) {
      if (std::abs(m[r][c]) > std::abs(m[piv][c])) piv = r;
    }
    if (std::abs(m[piv][c]) == 0.0) throw DomainError("embedding matrix is singular");
    std::swap(m[piv], m[c]);
    std::swap(inv[piv], inv[c]);
    std::complex<double> p = m[c][c];
    for (std::size_t k = 0; k < n; ++k) {
      m[c][k] /= p;
      inv[c][k] /= p;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c) continue;
      std::complex<double> f = m[r][c];
      for (std::size_t k = 0; k < n; ++k) {
        m[r][k] -= f * m[c][k];
        inv[r][k] -= f * inv[c][k];
      }
    }
  }
  double norm = 0;
  for (const auto& row : inv) {
    double s = 0;
    for (const auto& v : row) s += std::abs(v);
    norm = std::max(norm, s);
  }
  return norm;
}

std::string coords_string(const OrderElement& e) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < e.coords.size(); ++i) os << (i ? ", " : "") << e.coords[i].get_str();
  os << ")";
  return os.str();
}

}  // namespace

NumberFieldSpec NumberFieldSpec::from_poly(const UniPoly& g, std::optional<mpz_class> abs_disc) {
  if (g.degree() < 1 || !g.is_integral() || g.lc() != 1) throw DomainError("number field: g must be monic integer");
  if (g.degree() > 1 && !is_irreducible(g)) throw DomainError("number field: g must be irreducible");
  const mpz_class dg = g.degree() == 1 ? mpz_class(1) : mpq_class(abs(discriminant(g))).get_num();
  if (abs_disc && *abs_disc != dg) {
    throw DomainError("number field: |disc g| = " + dg.get_str() + " differs from the given discriminant " +
                      abs_disc->get_str() + "; supply an integral basis");
  }
  std::vector<std::vector<mpq_class>> basis;
  const int d = g.degree();
  for (int k = 0; k < d; ++k) {
    std::vector<mpq_class> row(static_cast<std::size_t>(d), 0);
    row[static_cast<std::size_t>(k)] = 1;
    basis.push_back(row);
  }
  return with_basis(g, basis, dg);
}

NumberFieldSpec NumberFieldSpec::with_basis(const UniPoly& g, std::vector<std::vector<mpq_class>> basis,
                                            const mpz_class& abs_disc) {
  NumberFieldSpec F;
  F.defining_poly = g;
  const int d = g.degree();
  if (static_cast<int>(basis.size()) != d) throw DomainError("number field: basis must have d elements");
  for (auto& row : basis) {
    if (static_cast<int>(row.size()) > d) throw DomainError("number field: basis element has degree >= d");
    row.resize(static_cast<std::size_t>(d), 0);
  }
  mpq_class det = determinant(basis);
  if (det == 0) throw DomainError("number field: basis is not invertible");
  const mpq_class dg = d == 1 ? mpq_class(1) : mpq_class(abs(discriminant(g)));
  if (det * det * dg != mpq_class(abs_disc)) {
    throw DomainError("number field: inconsistent basis (det(B)^2 |disc g| != |disc|)");
  }
  F.integral_basis = std::move(basis);
  F.abs_disc = abs_disc;
  F.r = real_root_count(g);
  F.s = (d - F.r) / 2;
  return F;
}

UniPoly to_power_basis(const OrderElement& e, const NumberFieldSpec& F) {
  const int d = F.degree();
  if (static_cast<int>(e.coords.size()) != d) throw DomainError("order element: expected " + std::to_string(d) + " coordinates");
  std::vector<mpq_class> v(static_cast<std::size_t>(d), 0);
  for (int k = 0; k < d; ++k) {
    for (int j = 0; j < d; ++j) v[static_cast<std::size_t>(j)] += mpq_class(e.coords[static_cast<std::size_t>(k)]) * F.integral_basis[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)];
  }
  return UniPoly(v);
}

UniPoly char_poly(const OrderElement& e, const NumberFieldSpec& F) {
  UniPoly elem = to_power_basis(e, F);
  UniPoly chi = faddeev_leverrier(multiplication_matrix(elem, F.defining_poly));
  if (!chi.is_integral()) throw DomainError("char_poly: not integral; the basis does not span an order");
  return chi;
}

bool is_primitive(const OrderElement& e, const NumberFieldSpec& F) { return is_squarefree(char_poly(e, F)); }

std::vector<std::complex<double>> embeddings(const OrderElement& e, const NumberFieldSpec& F) {
  UniPoly elem = to_power_basis(e, F);
  std::vector<std::complex<double>> out;
  for (auto z : root_centers(F.defining_poly)) out.push_back(eval_complex(elem, z));
  return out;
}

std::optional<double> minkowski_box_T(const NumberFieldSpec& F) {
  if (F.r > 0) return std::nullopt;
  return std::numbers::pi / 4 * std::pow(2 / std::numbers::pi, F.s) * std::sqrt(F.abs_disc.get_d());
}

double guaranteed_radius(const NumberFieldSpec& F) {
  const int d = F.degree();
  if (d == 1) return 1.0;
  auto roots = root_centers(F.defining_poly);
  std::vector<std::vector<std::complex<double>>> m(static_cast<std::size_t>(d));
  for (int i = 0; i < d; ++i) {
    for (int k = 0; k < d; ++k) {
      UniPoly w(F.integral_basis[static_cast<std::size_t>(k)]);
      m[static_cast<std::size_t>(i)].push_back(eval_complex(w, roots[static_cast<std::size_t>(i)]));
    }
  }
  const double norm = inverse_inf_norm(m);
  double conj_bound = F.abs_disc.get_d();
  if (auto T = minkowski_box_T(F)) {
    const double t = *T * (1 + 1e-9);
    conj_bound = std::min(conj_bound, std::sqrt(t * t + 1));
  }
  return norm * conj_bound * (1 + 1e-9);
}

GeneratorResult search_small_generator(const NumberFieldSpec& F) {
  const int d = F.degree();
  GeneratorResult res;
  res.bound = std::log(F.abs_disc.get_d()) / d;
  if (d == 1) {
    mpq_class w = F.integral_basis[0][0];
    mpq_class c = 1 / w;
    if (c.get_den() != 1) throw DomainError("search_small_generator: basis does not contain 1");
    res.element.coords = {c.get_num()};
    res.alpha = AlgebraicNumber::rational(1);
    res.height = height_algebraic(res.alpha);
    res.candidates_tried = 1;
    res.shell = 1;
    res.radius_cap = 1;
    return res;
  }
  const int cap = std::max(1, static_cast<int>(std::ceil(2 * guaranteed_radius(F))));
  res.radius_cap = cap;
  std::optional<GeneratorResult> best;
  long tried = 0;
  for (int R = 1; R <= cap; ++R) {
    const int base = 2 * R + 1;
    std::vector<int> digit(static_cast<std::size_t>(d), 0);
    while (true) {
      OrderElement e;
      int sup = 0;
      for (int k = 0; k < d; ++k) {
        int v = key_value(digit[static_cast<std::size_t>(k)]);
        sup = std::max(sup, std::abs(v));
        e.coords.emplace_back(v);
      }
      if (sup == R) {
        ++tried;
        UniPoly chi = char_poly(e, F);
        if (is_squarefree(chi)) {
          HeightValue lm = log_mahler_measure(chi, 1e-12 * d);
          HeightValue h = lm;
          h.value = lm.value / d;
          h.abs_error = lm.abs_error / d;
          if (h.value < 0) h.value = 0;
          if (!best || h.value < best->height.value) {
            GeneratorResult g;
            g.element = e;
            g.height = h;
            best = g;
          }
          if (h.upper() <= res.bound) {
            res.element = e;
            res.height = h;
            res.candidates_tried = tried;
            res.shell = R;
            // Locate alpha's ball at the first embedding.
            const std::complex<double> target = embeddings(e, F).front();
            auto balls = complex_roots(chi, 64);
            std::size_t pick = 0;
            double bestd = INFINITY;
            for (std::size_t j = 0; j < balls.size(); ++j) {
              std::complex<double> c(balls[j].center.re.to_double(), balls[j].center.im.to_double());
              if (std::abs(c - target) < bestd) {
                bestd = std::abs(c - target);
                pick = j;
              }
            }
            res.alpha.min_poly = chi;
            res.alpha.approx = balls[pick];
            res.alpha.certified = true;  // squarefree char poly is the minimal polynomial
            return res;
          }
        }
      }
      std::size_t k = 0;
      while (k < digit.size() && digit[k] == base - 1) digit[k++] = 0;
      if (k == digit.size()) break;
      ++digit[k];
    }
  }
  std::string msg = "search_small_generator: no element within radius cap " + std::to_string(cap);
  if (best) {
    msg += "; best primitive candidate " + coords_string(best->element) + " with height " +
           std::to_string(best->height.value);
  }
  throw BudgetExceeded(msg);
}

}  // namespace heightlab
