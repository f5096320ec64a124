#include "heightlab/chow.hpp"

#include <cmath>
#include <numeric>
#include <random>
#include <string>

#include "compiled_poly.hpp"
#include "heightlab/errors.hpp"
#include "heightlab/factor.hpp"

namespace heightlab {

namespace {

constexpr int kMaxN = 3;
constexpr int kMaxDegree = 4;

std::vector<std::string> dual_vars(int count) {
  std::vector<std::string> v;
  for (int k = 0; k < count; ++k) v.push_back("u" + std::to_string(k));
  return v;
}

// N x (N+1) matrix of dual variables, block-major.
std::vector<std::vector<MultiPoly>> dual_matrix(int N) {
  const auto vars = dual_vars(N * (N + 1));
  std::vector<std::vector<MultiPoly>> U(static_cast<std::size_t>(N));
  for (int b = 0; b < N; ++b) {
    for (int j = 0; j <= N; ++j) {
      U[static_cast<std::size_t>(b)].push_back(MultiPoly::variable(vars, static_cast<std::size_t>(b * (N + 1) + j)));
    }
  }
  return U;
}

// Laplace expansion along the first row.
template <class T>
T determinant(const std::vector<std::vector<T>>& m, T zero) {
  const std::size_t n = m.size();
  if (n == 1) return m[0][0];
  T acc = zero;
  for (std::size_t c = 0; c < n; ++c) {
    std::vector<std::vector<T>> sub;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<T> row;
      for (std::size_t k = 0; k < n; ++k) {
        if (k != c) row.push_back(m[r][k]);
      }
      sub.push_back(std::move(row));
    }
    T term = m[0][c] * determinant(sub, zero);
    if (c % 2) acc = acc - term;
    else acc = acc + term;
  }
  return acc;
}

// Signed maximal minors p_j = (-1)^j det(U without column j) of an
// N x (N+1) matrix.
template <class T>
std::vector<T> signed_minors(const std::vector<std::vector<T>>& U, T zero) {
  const std::size_t cols = U.empty() ? 0 : U[0].size();
  std::vector<T> out;
  for (std::size_t j = 0; j < cols; ++j) {
    std::vector<std::vector<T>> sub;
    for (const auto& row : U) {
      std::vector<T> r;
      for (std::size_t k = 0; k < cols; ++k) {
        if (k != j) r.push_back(row[k]);
      }
      sub.push_back(std::move(r));
    }
    T d = determinant(sub, zero);
    out.push_back(j % 2 ? zero - d : d);
  }
  return out;
}

MultiPoly linear_form(const std::vector<std::string>& vars, const std::vector<mpz_class>& coeffs) {
  MultiPoly out(vars);
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (coeffs[i] != 0) out += MultiPoly::variable(vars, i) * mpq_class(coeffs[i]);
  }
  return out;
}

std::vector<mpz_class> primitive_vector(std::vector<mpz_class> v) {
  mpz_class g = 0;
  for (const auto& x : v) g = gcd(g, x);
  if (g > 1) {
    for (auto& x : v) x /= g;
  }
  return v;
}

std::vector<mpz_class> cross(const std::vector<mpz_class>& a, const std::vector<mpz_class>& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

bool is_zero_vector(const std::vector<mpz_class>& v) {
  return std::all_of(v.begin(), v.end(), [](const mpz_class& x) { return x == 0; });
}

// phi(L1, L2) for a binary form given by its dehomogenized coefficients and
// total degree e.
MultiPoly binary_substitute(const UniPoly& phi, int e, const MultiPoly& L1, const MultiPoly& L2) {
  MultiPoly out(L1.vars());
  for (int i = 0; i <= phi.degree(); ++i) {
    if (phi.coeff(i) == 0) continue;
    out += pow(L1, static_cast<unsigned>(i)) * pow(L2, static_cast<unsigned>(e - i)) * phi.coeff(i);
  }
  return out;
}

ChowHeightEstimate assemble(const SphereIntegralEstimate& integral, int dim, int degree, int N) {
  ChowHeightEstimate h;
  h.integral = integral;
  h.correction = (dim + 1) * degree * half_harmonic(N);
  h.finite_part = 0.0;
  h.value = h.integral.value + h.correction;
  h.std_error = h.integral.std_error;
  return h;
}

}  // namespace

HeightValue ChowHeightEstimate::as_height() const {
  HeightValue h;
  h.value = value;
  h.abs_error = std_error;
  h.method = HeightMethod::MonteCarlo;
  return h;
}

Hypersurface Hypersurface::make(const MultiPoly& form) {
  if (form.is_zero()) throw DomainError("hypersurface: zero form");
  if (form.nvars() < 2) throw DomainError("hypersurface: need at least two variables");
  if (!form.is_homogeneous()) throw DomainError("hypersurface: form is not homogeneous");
  if (form.total_degree() < 1) throw DomainError("hypersurface: constant form");
  Hypersurface X;
  X.N = static_cast<int>(form.nvars()) - 1;
  X.form = form.primitive();
  return X;
}

ChowHeightEstimate chow_height_point(const ProjectivePoint& P, std::uint64_t samples, std::uint64_t seed) {
  const int N = P.ambient_dimension();
  if (N < 1) throw DomainError("chow_height_point: need a point in P^N with N >= 1");
  std::vector<std::complex<double>> x;
  for (const auto& c : P.coords) x.emplace_back(c.get_d(), 0.0);
  auto integral = sphere_log_integral(
      [&](std::span<const std::complex<double>> u) {
        std::complex<double> s = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) s += u[i] * x[i];
        return std::log(std::abs(s));
      },
      1, N, samples, seed);
  return assemble(integral, 0, 1, N);
}

MultiPoly hypersurface_chow_form(const Hypersurface& X) {
  const auto vars = dual_vars(X.N * (X.N + 1));
  auto U = dual_matrix(X.N);
  auto minors = signed_minors(U, MultiPoly(vars));
  MultiPoly F = X.form.substitute(minors);
  if (F.is_zero()) throw DomainError("hypersurface_chow_form: vanishing Chow form");
  return F.primitive();
}

ChowHeightEstimate chow_height_hypersurface(const Hypersurface& X, std::uint64_t samples, std::uint64_t seed) {
  const int N = X.N, D = X.degree();
  if (N > kMaxN || D > kMaxDegree) {
    throw ScaleCapExceeded("chow_height_hypersurface: scope is N <= 3 and D <= 4, got N = " + std::to_string(N) +
                           ", D = " + std::to_string(D));
  }
  // The exact expansion only fixes the content; sampling evaluates the
  // defining form at numeric minors.
  MultiPoly F = X.form.substitute(signed_minors(dual_matrix(N), MultiPoly(dual_vars(N * (N + 1)))));
  if (F.is_zero()) throw DomainError("chow_height_hypersurface: vanishing Chow form");
  const double log_content = std::log(F.content().get_d());
  detail::CompiledPoly f(X.form);
  const std::size_t n1 = static_cast<std::size_t>(N + 1);
  auto integral = sphere_log_integral(
      [&](std::span<const std::complex<double>> u) {
        std::vector<std::vector<std::complex<double>>> M(static_cast<std::size_t>(N));
        for (std::size_t b = 0; b < M.size(); ++b) M[b].assign(u.begin() + b * n1, u.begin() + (b + 1) * n1);
        auto p = signed_minors(M, std::complex<double>(0.0));
        return std::log(std::abs(f.eval(p))) - log_content;
      },
      N, N, samples, seed);
  return assemble(integral, N - 1, D, N);
}

ChowHeightEstimate chow_height_zero_cycle(const MultiPoly& u_form, int N, std::uint64_t samples, std::uint64_t seed) {
  if (u_form.nvars() != static_cast<std::size_t>(N + 1)) {
    throw DomainError("chow_height_zero_cycle: u-form must have N+1 variables");
  }
  if (!u_form.is_homogeneous() || u_form.total_degree() < 1) {
    throw DomainError("chow_height_zero_cycle: u-form must be homogeneous of positive degree");
  }
  if (u_form.total_degree() > kMaxDegree) throw ScaleCapExceeded("chow_height_zero_cycle: cycle degree above 4");
  MultiPoly F = u_form.primitive();
  auto integral = sphere_log_integral(F, 1, N, samples, seed);
  return assemble(integral, 0, F.total_degree(), N);
}

ZeroCycleChow intersect_conic_line(const Hypersurface& X, const std::vector<mpz_class>& line) {
  if (X.N != 2 || X.degree() != 2) throw DomainError("intersect_conic_line: X must be a conic in P^2");
  if (line.size() != 3 || is_zero_vector(line)) throw DomainError("intersect_conic_line: invalid line");
  // Integer basis of the line from cross products with coordinate vectors.
  std::vector<std::vector<mpz_class>> candidates;
  for (int e = 0; e < 3; ++e) {
    std::vector<mpz_class> unit(3, 0);
    unit[static_cast<std::size_t>(e)] = 1;
    auto c = cross(line, unit);
    if (!is_zero_vector(c)) candidates.push_back(primitive_vector(c));
  }
  std::vector<mpz_class> p = candidates[0], q;
  for (std::size_t i = 1; i < candidates.size() && q.empty(); ++i) {
    if (!is_zero_vector(cross(p, candidates[i]))) q = candidates[i];
  }
  if (q.empty()) throw DomainError("intersect_conic_line: could not parametrize the line");

  // B(t, 1) = f(t p + q).
  const auto tv = std::vector<std::string>{"t"};
  std::vector<MultiPoly> images;
  for (int i = 0; i < 3; ++i) {
    MultiPoly c = MultiPoly::variable(tv, 0) * mpq_class(p[static_cast<std::size_t>(i)]);
    c += MultiPoly::constant(tv, mpq_class(q[static_cast<std::size_t>(i)]));
    images.push_back(c);
  }
  UniPoly b = X.form.substitute(images).to_uni(0);
  if (b.is_zero()) throw DomainError("intersect_conic_line: the line lies on X");

  ZeroCycleChow Y;
  Y.N = 2;
  Y.p = p;
  Y.q = q;
  Y.binary_dehomogenized = b;
  const auto vars = dual_vars(3);
  const MultiPoly L1 = linear_form(vars, q);
  const MultiPoly L2 = -linear_form(vars, p);
  const int D = X.degree();
  int covered = 0;
  Factorization fac = factor_rationals(b);
  MultiPoly total = MultiPoly::constant(vars, 1);
  for (const auto& fc : fac.factors) {
    const int e = fc.poly.degree();
    CycleComponent comp;
    comp.u_form = binary_substitute(fc.poly, e, L1, L2).primitive();
    comp.multiplicity = fc.multiplicity;
    comp.degree = e;
    for (int k = 0; k < fc.multiplicity; ++k) total = total * comp.u_form;
    covered += e * fc.multiplicity;
    Y.components.push_back(std::move(comp));
  }
  if (covered < D) {
    // Points with mu = 0, i.e. the point p itself.
    CycleComponent comp;
    comp.u_form = linear_form(vars, p).primitive();
    comp.multiplicity = D - covered;
    comp.degree = 1;
    for (int k = 0; k < comp.multiplicity; ++k) total = total * comp.u_form;
    Y.components.push_back(std::move(comp));
  }
  Y.u_form = total.primitive();
  return Y;
}

ChowHeightEstimate chow_height_cycle(const ZeroCycleChow& Y, std::uint64_t samples, std::uint64_t seed) {
  ChowHeightEstimate out;
  double var = 0.0;
  std::uint64_t k = 0;
  for (const auto& c : Y.components) {
    auto h = chow_height_zero_cycle(c.u_form, Y.N, samples, seed + k++);
    out.value += c.multiplicity * h.value;
    out.correction += c.multiplicity * h.correction;
    out.integral.value += c.multiplicity * h.integral.value;
    var += c.multiplicity * c.multiplicity * h.std_error * h.std_error;
  }
  out.std_error = std::sqrt(var);
  out.integral.std_error = out.std_error;
  out.integral.samples = samples;
  out.integral.seed = seed;
  return out;
}

RemondReport remond_check(const Hypersurface& X, const std::vector<std::vector<mpz_class>>& lines, double H,
                          std::uint64_t samples, std::uint64_t seed) {
  RemondReport report;
  report.H = H;
  report.h_X = chow_height_hypersurface(X, samples, seed);
  const double sX = report.h_X.std_error;
  report.all_hold = true;
  if (lines.empty()) {
    RemondInstance inst;
    inst.degree_Y = X.degree();
    inst.degree_ok = true;
    inst.h_Y = report.h_X;
    inst.rhs = report.h_X.value;
    inst.slack = 3.0 * std::sqrt(2.0) * sX;
    inst.height_ok = inst.h_Y.value <= inst.rhs + inst.slack;
    report.all_hold = inst.height_ok;
    report.instances.push_back(std::move(inst));
    return report;
  }
  std::uint64_t idx = 1;
  for (const auto& line : lines) {
    RemondInstance inst;
    inst.line = line;
    std::vector<mpq_class> lq(line.begin(), line.end());
    inst.line_height = height_coefficients(lq, Norm::L2).value;
    if (inst.line_height > H * (1 + 1e-12) + 1e-12) {
      throw DomainError("remond_check: line height " + std::to_string(inst.line_height) + " exceeds H");
    }
    auto Y = intersect_conic_line(X, line);
    inst.degree_Y = Y.degree();
    inst.degree_ok = inst.degree_Y <= X.degree();
    inst.h_Y = chow_height_cycle(Y, samples, seed + 1000 * idx++);
    inst.rhs = report.h_X.value + X.degree() * H;
    inst.slack = 3.0 * std::sqrt(inst.h_Y.std_error * inst.h_Y.std_error + sX * sX);
    inst.height_ok = inst.h_Y.value <= inst.rhs + inst.slack;
    report.all_hold = report.all_hold && inst.degree_ok && inst.height_ok;
    report.instances.push_back(std::move(inst));
  }
  return report;
}

std::vector<std::vector<mpz_class>> random_lines(const Hypersurface& X, int count, int bound, std::uint64_t seed) {
  if (bound < 1) throw DomainError("random_lines: bound must be positive");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> dist(-bound, bound);
  std::vector<std::vector<mpz_class>> out;
  while (static_cast<int>(out.size()) < count) {
    std::vector<mpz_class> l{dist(rng), dist(rng), dist(rng)};
    if (is_zero_vector(l)) continue;
    try {
      intersect_conic_line(X, l);
    } catch (const DomainError&) {
      continue;
    }
    out.push_back(std::move(l));
  }
  return out;
}

}  // namespace heightlab
