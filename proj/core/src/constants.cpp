#include "heightlab/constants.hpp"

#include <cmath>

#include "heightlab/errors.hpp"

namespace heightlab {

namespace {

void require_genus(long g) {
  if (g < 1) throw DomainError("genus must be at least 1");
}

mpz_class pow_ui(long base, unsigned long e) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(base), e);
  return r;
}

mpz_class factorial(unsigned long n) {
  mpz_class r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

using E = BoundExpr;

E lit(const mpz_class& v) { return E(v); }

std::string argument_label(const std::string& name, const mpz_class& g) {
  std::string arg = g.get_str();
  return name + "(" + (arg.size() <= 12 ? arg : "g0") + ")";
}

}  // namespace

mpz_class genus_cap(int g) {
  require_genus(g);
  mpz_class t = pow_ui(16, static_cast<unsigned long>(g)) * factorial(static_cast<unsigned long>(g));
  return t * t + t;
}

ThetaAmbient theta_ambient(int g) {
  require_genus(g);
  mpz_class s = pow_ui(16, static_cast<unsigned long>(g));
  return {s - 1, s * factorial(static_cast<unsigned long>(g))};
}

mpz_class c9(int g) {
  require_genus(g);
  return pow_ui(4, 3 * static_cast<unsigned long>(g) + 1) * factorial(static_cast<unsigned long>(g)) * (g + 1);
}

E c9_expr(int g) {
  require_genus(g);
  return E::product({E::power(4, E(3L * g + 1)), E::factorial(E(long{g})), E(long{g} + 1)}).named("c9");
}

E bost_david_K(const mpz_class& g) {
  if (g < 1) throw DomainError("genus must be at least 1");
  E q = E::power(4, lit(2 * g));
  return E::product({7, q, E::logarithm(q)}).named(argument_label("K", g));
}

E bost_david_gap(const mpz_class& g, const mpq_class& h) {
  if (h < 0) throw DomainError("bost_david_gap: h must be non-negative");
  return (bost_david_K(g) * E::logarithm(E::maximum({1, E(h)}) + 2)).named("B");
}

E derive_c31(const mpz_class& g) {
  E twoK = E::product({2, bost_david_K(g)});
  E at_zero = twoK * E::logarithm(3);
  E at_peak = twoK * E::logarithm(twoK / E::exponential(1)) + 2;
  return E::maximum({at_zero, at_peak}).named(argument_label("c31", g));
}

C31Sweep c31_sweep(int g, double h_max, std::size_t points, Precision prec) {
  require_genus(g);
  if (points < 2 || !(h_max > 1e-6)) throw DomainError("c31_sweep: bad grid");
  const LogInterval c31 = derive_c31(g).evaluate({}, prec);
  const LogInterval K = bost_david_K(g).evaluate({}, prec);
  BigFloat c31_hi(prec), c31_mid(prec), K_hi(prec);
  mpfr_exp(c31_hi.raw(), c31.hi().raw(), MPFR_RNDU);
  mpfr_exp(c31_mid.raw(), c31.lo().raw(), MPFR_RNDN);
  mpfr_exp(K_hi.raw(), K.hi().raw(), MPFR_RNDU);

  auto excess = [&](const BigFloat& h) {
    // 2 K log(max(1, h) + 2) - h, rounded up
    BigFloat one(1L, prec), two(2L, prec);
    BigFloat arg = add(max(one, h), two, MPFR_RNDU, prec);
    BigFloat l(prec);
    mpfr_log(l.raw(), arg.raw(), MPFR_RNDU);
    BigFloat v = mul(mul(two, K_hi, MPFR_RNDU, prec), l, MPFR_RNDU, prec);
    return sub(v, h, MPFR_RNDU, prec);
  };

  C31Sweep out;
  out.holds = true;
  out.worst_margin = 1.0;
  auto visit = [&](const BigFloat& h) {
    BigFloat f = excess(h);
    ++out.points;
    if (f > c31_hi) out.holds = false;
    double margin = div(sub(c31_mid, f, MPFR_RNDN, prec), c31_mid, MPFR_RNDN, prec).to_double();
    out.worst_margin = std::min(out.worst_margin, margin);
  };
  const double a = -6.0, b = std::log10(h_max);
  for (std::size_t i = 0; i < points; ++i) {
    double e = a + (b - a) * static_cast<double>(i) / static_cast<double>(points - 1);
    visit(BigFloat(std::pow(10.0, e), prec));
  }
  // The maximizer h = 2K - 2.
  BigFloat Kn(prec);
  mpfr_exp(Kn.raw(), K.lo().raw(), MPFR_RNDN);
  visit(sub(mul(BigFloat(2L, prec), Kn, MPFR_RNDN, prec), BigFloat(2L, prec), MPFR_RNDN, prec));
  return out;
}

E remond_theta_coefficient(const mpz_class& g0, const mpz_class& degC, const mpz_class& N) {
  if (g0 < 0 || degC < 1 || N < 1) throw DomainError("remond coefficient: need g0 >= 0, degC >= 1, N >= 1");
  const mpz_class m = 4 * g0 + 2 * degC - 2;
  if (m < 1) throw DomainError("remond coefficient: m = 4 g0 + 2 degC - 2 must be at least 1");
  E mm = lit(m).named("m");
  E exponent = E::product({20, mm, E::power(8, lit(g0))});
  return E::product({E::power(lit(2 * degC + 1), 2), E::power(E::logarithm(lit(N + 1)), 4), E::power(mm, exponent)})
      .named("remond_coefficient");
}

LogInterval remond_theta_log(const mpz_class& g0, const mpz_class& degC, const mpz_class& N, Precision prec) {
  return remond_theta_coefficient(g0, degC, N).evaluate({}, prec);
}

E c7_chain(int g) { return (c9_expr(g) * (derive_c31(g) + 1)).named("c7"); }

E c10_chain(const mpz_class& g0, const mpz_class& degC, const mpz_class& N) {
  mpz_class floor_g = g0 < 1 ? mpz_class(1) : g0;
  return (E::product({3, remond_theta_coefficient(g0, degC, N)}) + derive_c31(floor_g)).named("c10");
}

C3Parts C3_chain(int g) {
  require_genus(g);
  const mpz_class g0 = genus_cap(g);
  const ThetaAmbient t = theta_ambient(g);
  C3Parts p;
  p.c7 = c7_chain(g);
  p.c10 = c10_chain(g0, t.degA, t.N);
  p.c13 = (p.c7 * p.c10).named("c13");
  p.a = (p.c10 * (p.c7 + 1)).named("a");
  p.b = E::product({p.c10, E(long{g}), lit(t.degA), lit(t.N + 1)}).named("b");
  p.c14 = (p.a + p.b * (E::variable("mS") + 2)).named("c14");
  p.C3 = E::maximum({p.c13, p.a + E::product({2, p.b})}).named("C3");
  return p;
}

Theorem14 theorem14_compose(const E& c0, const E& c1, const E& c2_at_cap, const E& c3, const E& c4, int g,
                            const E& mS) {
  E C3 = C3_chain(g).C3;
  Theorem14 t;
  t.c5 = (E::product({c0, c1, c3}) / C3).named("c5");
  t.c6 = E::sum({(c2_at_cap * c3) / C3, c4 / C3, mS, 1}).named("c6");
  return t;
}

ZarhinFactors zarhin_factors(int g) {
  require_genus(g);
  ZarhinFactors z;
  z.dimension = 8 * g;
  z.height_factor = 8;
  z.field_degree = E::power(48, E(256L * g * g)).named("zarhin_degree");
  return z;
}

E torsion_degree(const mpz_class& N, int g) {
  require_genus(g);
  if (N < 1) throw DomainError("torsion_degree: N must be positive");
  return E::power(lit(N), E(4L * g * g)).named("torsion_degree");
}

E faltbad_coefficient(int g, const mpz_class& K_degree, const E& c5_at_8g) {
  require_genus(g);
  if (K_degree < 1) throw DomainError("faltbad_coefficient: [K:Q] must be positive");
  return (c5_at_8g / E::product({8, zarhin_factors(g).field_degree, lit(K_degree)})).named("faltbad");
}

E honda_compose(int g, const E& hF, const E& mS, const C20Map& c20) {
  E C2 = lit(genus_cap(g)).named("C2");
  E C3 = C3_chain(g).C3;
  return c20(C2, C3 * E::sum({hF, mS, 1})).named("c27");
}

std::vector<std::pair<std::string, BoundExpr>> constant_expressions(int g, const mpq_class& mS) {
  require_genus(g);
  std::vector<std::pair<std::string, E>> out;
  const ThetaAmbient t = theta_ambient(g);
  out.emplace_back("C2", lit(genus_cap(g)));
  out.emplace_back("N", lit(t.N));
  out.emplace_back("degA", lit(t.degA));
  out.emplace_back("c9", c9_expr(g));
  out.emplace_back("K", bost_david_K(g));
  out.emplace_back("c31", derive_c31(g));
  out.emplace_back("c7", c7_chain(g));
  out.emplace_back("remond_coefficient", remond_theta_coefficient(genus_cap(g), t.degA, t.N));
  C3Parts p = C3_chain(g);
  out.emplace_back("c10", p.c10);
  out.emplace_back("c13", p.c13);
  out.emplace_back("c14", p.c14);
  out.emplace_back("C3", p.C3);
  Theorem14 id = theorem14_compose(1, 1, 0, 1, 0, g, E(mS));
  out.emplace_back("c5", id.c5);
  out.emplace_back("c6", id.c6);
  ZarhinFactors z = zarhin_factors(g);
  out.emplace_back("zarhin_dimension", E(long{z.dimension}));
  out.emplace_back("zarhin_height_factor", E(long{z.height_factor}));
  out.emplace_back("zarhin_degree", z.field_degree);
  out.emplace_back("torsion_degree_48", torsion_degree(48, g));
  Theorem14 id8 = theorem14_compose(1, 1, 0, 1, 0, 8 * g, E(mS));
  out.emplace_back("faltbad", faltbad_coefficient(g, 1, id8.c5));
  return out;
}

std::vector<ConstantRow> constants_report(int g, const mpq_class& mS, Precision prec) {
  const BoundExpr::Env env{{"mS", LogInterval::from_rational(mS, prec)}};
  const BoundExpr::ExactEnv exact_env{{"mS", mS}};
  std::vector<ConstantRow> rows;
  for (const auto& [name, e] : constant_expressions(g, mS)) {
    ConstantRow r;
    r.name = name;
    r.trace = e.trace();
    auto ex = e.exact(exact_env);
    LogInterval v = e.evaluate(env, prec);
    auto b = v.log10_bounds();
    r.tower = b.tower;
    r.log10_lo = b.lo;
    r.log10_hi = b.hi;
    if (ex && ex->get_den() == 1 && mpz_sizeinbase(ex->get_num().get_mpz_t(), 10) <= 40) {
      r.exact = true;
      r.value = ex->get_str();
    } else {
      r.value = v.to_string(8);
    }
    rows.push_back(std::move(r));
  }
  return rows;
}

}  // namespace heightlab
