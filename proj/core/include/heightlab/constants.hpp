#pragma once

// Explicit constants of the reduction to jacobians, as expression DAGs.

#include <gmpxx.h>

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "heightlab/bound_expr.hpp"
#include "heightlab/log_interval.hpp"

namespace heightlab {

/// C2(g) = (16^g g!)^2 + 16^g g!
mpz_class genus_cap(int g);

struct ThetaAmbient {
  mpz_class N;      // 16^g - 1
  mpz_class degA;   // 16^g g!
};
ThetaAmbient theta_ambient(int g);

/// c9(g) = 4^(3g+1) g! (g+1)
mpz_class c9(int g);
BoundExpr c9_expr(int g);

/// K(g) = 7 4^(2g) log(4^(2g)), so that B(g, h) = K(g) log(max(1, h) + 2).
BoundExpr bost_david_K(const mpz_class& g);
BoundExpr bost_david_gap(const mpz_class& g, const mpq_class& h);
/// c31(g) = max(2K log 3, 2K log(2K) - 2K + 2) = sup_{h >= 0} (2B(g, h) - h).
BoundExpr derive_c31(const mpz_class& g);

struct C31Sweep {
  std::size_t points = 0;
  double worst_margin = 0.0;  // min over the grid of c31 - (2B - h), relative to c31
  bool holds = false;
};
/// Checks 2B(g, h) - h <= c31(g) on a logarithmic grid of h in [1e-6, h_max]
/// plus the maximizer h = 2K - 2.
C31Sweep c31_sweep(int g, double h_max = 1e10, std::size_t points = 2000, Precision prec = 256);

/// (2 degC + 1)^2 (log(N+1))^4 m^(20 m 8^g0), m = 4 g0 + 2 degC - 2 >= 1.
BoundExpr remond_theta_coefficient(const mpz_class& g0, const mpz_class& degC, const mpz_class& N);
LogInterval remond_theta_log(const mpz_class& g0, const mpz_class& degC, const mpz_class& N, Precision prec = 256);

/// c7(g) = c9(g) (c31(g) + 1)
BoundExpr c7_chain(int g);
/// c10 = 3 (remond coefficient) + c31(max(g0, 1))
BoundExpr c10_chain(const mpz_class& g0, const mpz_class& degC, const mpz_class& N);

struct C3Parts {
  BoundExpr c7, c10, c13;
  BoundExpr a;    // c10 (c7 + 1)
  BoundExpr b;    // c10 g degA (N+1)
  BoundExpr c14;  // a + b (m(S) + 2), in the variable "mS"
  BoundExpr C3;   // max(c13, a + 2b)
};
/// The C3 chain at g0 = C2(g), degC = degA = 16^g g!, N = 16^g - 1.
C3Parts C3_chain(int g);

struct Theorem14 {
  BoundExpr c5, c6;
};
/// c5 = c0 c1 c3 / C3(g), c6 = c2(C2(g)) c3 / C3(g) + c4 / C3(g) + m(S) + 1.
Theorem14 theorem14_compose(const BoundExpr& c0, const BoundExpr& c1, const BoundExpr& c2_at_cap,
                            const BoundExpr& c3, const BoundExpr& c4, int g, const BoundExpr& mS);

struct ZarhinFactors {
  int dimension = 0;      // 8g
  int height_factor = 8;  // h_F(Z(A)) = 8 h_F(A)
  BoundExpr field_degree; // 48^(256 g^2)
};
ZarhinFactors zarhin_factors(int g);
/// N^(4 g^2)
BoundExpr torsion_degree(const mpz_class& N, int g);

/// c5(8g) / (8 * 48^(256 g^2) * [K:Q]).
BoundExpr faltbad_coefficient(int g, const mpz_class& K_degree, const BoundExpr& c5_at_8g);

using C20Map = std::function<BoundExpr(const BoundExpr&, const BoundExpr&)>;
/// c20(C2(g), C3(g) (hF + mS + 1)).
BoundExpr honda_compose(int g, const BoundExpr& hF, const BoundExpr& mS, const C20Map& c20);

struct ConstantRow {
  std::string name;
  std::string value;      // exact integer or log-domain rendering
  double log10_lo = 0.0;  // bounds of log10 value (or of log10 log10 for towers)
  double log10_hi = 0.0;
  bool tower = false;
  bool exact = false;
  std::string trace;
};
/// The report's constants by name, in display order.
std::vector<std::pair<std::string, BoundExpr>> constant_expressions(int g, const mpq_class& mS);

/// Every constant at genus g, with the identity admissible family
/// (c0 = c1 = c3 = 1, c2 = c4 = 0) for the compositions.
std::vector<ConstantRow> constants_report(int g, const mpq_class& mS, Precision prec = 256);

}  // namespace heightlab
