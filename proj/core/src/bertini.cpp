#include "heightlab/bertini.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "heightlab/errors.hpp"
#include "heightlab/heights.hpp"

namespace heightlab {

namespace {

SmoothnessReport singular_locus_empty(const QiPoly& f) {
  std::vector<QiPoly> system{f};
  for (std::size_t v = 0; v < f.nvars(); ++v) system.push_back(f.derivative(v));
  SmoothnessReport r;
  r.certificate = projective_zero_set_empty(system);
  r.smooth = r.certificate.empty;
  return r;
}

mpz_class naive_height(const GaussianRational& a) {
  if (a.is_zero()) return 1;
  if (a.is_rational()) return std::max<mpz_class>(abs(a.re.get_num()), a.re.get_den());
  return 1;
}

void check_sample(const std::vector<GaussianRational>& S) {
  if (S.empty()) throw DomainError("section_search: empty coefficient sample");
  for (const auto& s : S) {
    bool unit = s.re == 0 && (s.im == 1 || s.im == -1);
    if (!s.is_rational() && !unit) {
      throw DomainError("section_search: coefficients must be rational or +-i, got " + s.to_string());
    }
  }
}

// Canonical key of a hyperplane up to scaling: divide by the last nonzero
// coordinate.
std::string projective_key(const std::vector<GaussianRational>& a) {
  std::size_t k = a.size();
  while (k-- > 0 && a[k].is_zero()) {
  }
  auto inv = a[k].inverse();
  std::string key;
  for (const auto& c : a) key += (c * inv).to_string() + ",";
  return key;
}

}  // namespace

SmoothnessReport smoothness_check(const Hypersurface& X) {
  if (X.N > 3 || X.degree() > 4) {
    throw ScaleCapExceeded("smoothness_check: scope is N <= 3 and D <= 4");
  }
  return singular_locus_empty(QiPoly::from_multi(X.form));
}

SmoothnessReport smoothness_check(const QiPoly& form) {
  if (form.is_zero() || !form.is_homogeneous()) throw DomainError("smoothness_check: need a nonzero form");
  if (form.nvars() > 4 || form.total_degree() > 4) {
    throw ScaleCapExceeded("smoothness_check: scope is N <= 3 and D <= 4");
  }
  return singular_locus_empty(form);
}

SectionCandidate section_search(const Hypersurface& X, const std::vector<GaussianRational>& S_sample,
                                std::uint64_t budget) {
  check_sample(S_sample);
  if (!smoothness_check(X).smooth) throw NotSmooth("section_search: X is singular");
  const std::size_t n1 = static_cast<std::size_t>(X.N + 1);
  const std::size_t s = S_sample.size();

  // Heights of entries, and the sample indices ordered by height so tuples
  // can be enumerated level by level.
  std::vector<mpz_class> heights;
  for (const auto& a : S_sample) heights.push_back(naive_height(a));
  std::vector<mpz_class> levels(heights);
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());

  const QiPoly f = QiPoly::from_multi(X.form);
  std::set<std::string> seen;
  std::uint64_t tried = 0;
  std::vector<std::size_t> idx(n1);
  for (const auto& level : levels) {
    std::fill(idx.begin(), idx.end(), 0);
    while (true) {
      mpz_class top = 0;
      bool any_nonzero = false;
      std::vector<GaussianRational> a(n1);
      for (std::size_t k = 0; k < n1; ++k) {
        a[k] = S_sample[idx[k]];
        top = std::max(top, heights[idx[k]]);
        any_nonzero = any_nonzero || !a[k].is_zero();
      }
      if (top == level && any_nonzero && seen.insert(projective_key(a)).second) {
        if (tried >= budget) {
          throw BudgetExceeded("section_search: no smooth section among " + std::to_string(tried) + " candidates");
        }
        ++tried;
        std::size_t e = n1;
        while (a[--e].is_zero()) {
        }
        // x_e = -sum_{j != e} (a_j / a_e) x_j
        const std::size_t m = n1 - 1;
        std::vector<QiPoly> images;
        std::vector<std::string> vars;
        QiPoly elim(m);
        const auto inv = a[e].inverse();
        for (std::size_t j = 0, col = 0; j < n1; ++j) {
          if (j == e) continue;
          elim += QiPoly::variable(m, col) * (-(a[j] * inv));
          ++col;
        }
        for (std::size_t j = 0, col = 0; j < n1; ++j) {
          if (j == e) {
            images.push_back(elim);
          } else {
            images.push_back(QiPoly::variable(m, col++));
            vars.push_back(X.form.vars()[j]);
          }
        }
        QiPoly g = f.substitute(images);
        if (!g.is_zero() && g.total_degree() == X.degree()) {
          auto cert = smoothness_check(g);
          if (cert.smooth) {
            SectionCandidate c;
            c.hyperplane = a;
            c.eliminated = static_cast<int>(e);
            c.section_form = g.normalized();
            c.section_vars = vars;
            c.tried = tried;
            c.certificate = cert;
            return c;
          }
        }
      }
      // Next tuple, last coordinate fastest.
      std::size_t k = n1;
      while (k > 0 && ++idx[k - 1] == s) idx[--k] = 0;
      if (k == 0) break;
    }
  }
  throw BudgetExceeded("section_search: sample exhausted after " + std::to_string(tried) + " candidates");
}

Theorem12Report theorem12_bound_check(const Hypersurface& X, const SectionCandidate& candidate, double m_S,
                                      std::optional<ChowHeightEstimate> h_X) {
  Theorem12Report r;
  const int D = X.degree();
  const int dim = X.N - 1;
  r.degree_X = D;
  r.degree_C = candidate.section_form.total_degree();
  r.degree_ok = r.degree_C <= D;
  r.genus = (r.degree_C - 1) * (r.degree_C - 2) / 2;
  r.genus_cap = D * D + D;
  r.genus_ok = r.genus <= r.genus_cap;
  // Entries are rationals or +-i, so after clearing denominators the
  // coordinates are integers times units and h2 is that of the moduli.
  std::vector<mpq_class> moduli;
  for (const auto& a : candidate.hyperplane) moduli.push_back(a.is_rational() ? abs(a.re) : abs(a.im));
  r.hyperplane_h2 = height_coefficients(moduli, Norm::L2).value;
  r.H = (X.N + 1) * (m_S + 2.0);
  r.hyperplane_ok = r.hyperplane_h2 <= r.H;
  r.height_excess = dim * D * (X.N + 1) * (m_S + 2.0);
  r.h_X = h_X;
  if (h_X) r.rhs = h_X->value + r.height_excess;
  return r;
}

}  // namespace heightlab
