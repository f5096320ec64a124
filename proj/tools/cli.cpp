#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "heightlab/acceptance.hpp"
#include "heightlab/bertini.hpp"
#include "heightlab/chow.hpp"
#include "heightlab/constants.hpp"
#include "heightlab/errors.hpp"
#include "heightlab/factor.hpp"
#include "heightlab/generators.hpp"
#include "heightlab/heights.hpp"
#include "heightlab/northcott.hpp"
#include "heightlab/parse.hpp"
#include "report.hpp"

namespace heightlab::cli {
namespace {

struct Config {
  long precision = 256;
  double tol = 1e-9;
  std::uint64_t samples = 1000000;
  std::uint64_t seed = 0;
  std::string format;  // empty: subcommand default
  std::string mode = "certified";
};

struct Outcome {
  Report report;
  Format default_format = Format::Json;
  bool check_failed = false;
  std::string failure;
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) {
    cur.erase(0, cur.find_first_not_of(" \t"));
    cur.erase(cur.find_last_not_of(" \t") + 1);
    if (!cur.empty()) out.push_back(cur);
  }
  return out;
}

mpq_class parse_rational(const std::string& s) {
  mpq_class q;
  std::string t = s;
  if (!t.empty() && t[0] == '+') t.erase(0, 1);
  if (t.empty() || q.set_str(t, 10) != 0) throw DomainError("not a rational number: '" + s + "'");
  if (q.get_den() == 0) throw DomainError("zero denominator: '" + s + "'");
  q.canonicalize();
  return q;
}

std::vector<mpq_class> parse_rationals(const std::string& s) {
  std::vector<mpq_class> out;
  for (const auto& part : split(s, ',')) out.push_back(parse_rational(part));
  if (out.empty()) throw DomainError("empty coordinate list");
  return out;
}

MultiPoly parse_form(const std::string& text) {
  auto vars = scan_variables(text);
  for (const auto& v : vars) {
    if (v.size() < 2 || v[0] != 'x') throw DomainError("forms use the variables x0, x1, ...; got '" + v + "'");
  }
  return parse_poly(text, vars);
}

std::string join(const std::vector<mpz_class>& v) {
  std::string s = "(";
  for (std::size_t k = 0; k < v.size(); ++k) s += (k ? ":" : "") + v[k].get_str();
  return s + ")";
}

std::string join(const std::vector<GaussianRational>& v) {
  std::string s = "(";
  for (std::size_t k = 0; k < v.size(); ++k) s += (k ? ":" : "") + v[k].to_string();
  return s + ")";
}

double rounding_error(double v) { return std::ldexp(std::max(1.0, std::fabs(v)), -50); }

ResultRow closed_form_row(const std::string& name, double v, const std::string& certificate = "") {
  ResultRow r;
  r.name = name;
  r.value = v;
  r.abs_error = rounding_error(v);
  r.method = "closed-form";
  r.certificate = certificate;
  return r;
}

ResultRow exact_row(const std::string& name, Json value, const std::string& certificate = "") {
  ResultRow r;
  r.name = name;
  r.value = std::move(value);
  r.abs_error = 0.0;
  r.method = "exact";
  r.certificate = certificate;
  return r;
}

ResultRow chow_row(const std::string& name, const ChowHeightEstimate& e) {
  ResultRow r = height_row(name, e.as_height());
  r.extra["samples"] = e.integral.samples;
  r.extra["seed"] = e.integral.seed;
  r.extra["integral"] = e.integral.value;
  r.extra["correction"] = e.correction;
  return r;
}

Columns sequence_columns(const SequenceProfile& prof) {
  Columns c;
  c.header = {"i", "degree", "height", "error", "tag"};
  for (const auto& e : prof.entries) {
    c.rows.push_back({std::to_string(e.index), std::to_string(e.degree), shortest(e.height.value),
                      shortest(e.height.abs_error), e.height.tag() + "/" + e.certification});
  }
  return c;
}

void add_sequence(Outcome& o, const SequenceProfile& prof) {
  o.report.results.push_back(height_row("h(x_0)", prof.initial_height));
  for (const auto& e : prof.entries) {
    ResultRow r = height_row("h(x_" + std::to_string(e.index) + ")", e.height, e.certification);
    r.extra["i"] = e.index;
    r.extra["degree"] = e.degree;
    o.report.results.push_back(std::move(r));
  }
  o.report.columns = sequence_columns(prof);
  o.default_format = Format::Csv;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) throw DomainError("cannot open '" + path + "' for writing");
  f << text;
}

// --- commands -------------------------------------------------------------------

Outcome cmd_height(const Config& cfg, const std::string& poly, const std::string& method) {
  if (method != "roots" && method != "integral") throw DomainError("--method must be roots or integral");
  Outcome o;
  o.report.inputs["poly"] = poly;
  o.report.inputs["method"] = method;
  const UniPoly f = parse_uni(poly).primitive();
  if (f.degree() < 1) throw DomainError("height: polynomial of degree >= 1 expected");
  auto one = [&](const UniPoly& g, bool assumed) {
    HeightValue h;
    if (method == "roots") {
      h = log_mahler_measure(g, cfg.tol * g.degree());
      h.value /= g.degree();
      h.abs_error /= g.degree();
    } else {
      h = mahler_integral_height(g, cfg.tol);
    }
    h.assumed_irreducible = assumed;
    return h;
  };
  if (parse_cert_mode(cfg.mode) == CertMode::AssumeIrreducible) {
    if (!is_squarefree(f)) throw DomainError("height: polynomial is not squarefree");
    o.report.results.push_back(height_row("h", one(f, true), "minimal polynomial assumed"));
    return o;
  }
  const Factorization fac = factor_rationals(f);
  if (fac.factors.size() == 1 && fac.factors[0].multiplicity == 1) {
    o.report.results.push_back(height_row("h", one(f, false), "irreducible (certified factorization)"));
    return o;
  }
  for (const auto& fa : fac.factors) {
    ResultRow r = height_row("h(root of " + fa.poly.primitive().to_string() + ")", one(fa.poly.primitive(), false),
                             "irreducible factor of multiplicity " + std::to_string(fa.multiplicity));
    o.report.results.push_back(std::move(r));
  }
  return o;
}

Outcome cmd_mahler(const Config& cfg, const std::string& poly) {
  Outcome o;
  o.report.inputs["poly"] = poly;
  const UniPoly f = parse_uni(poly);
  if (f.degree() < 1) throw DomainError("mahler: polynomial of degree >= 1 expected");
  const int d = f.degree();
  const HeightValue roots = log_mahler_measure(f, cfg.tol);
  HeightValue integral = mahler_integral_height(f, cfg.tol);
  // the integral route works on the primitive polynomial
  const double log_content = std::log(mpq_class(abs(f.lc()) / f.primitive().lc()).get_d());
  integral.value = integral.value * d + log_content;
  integral.abs_error *= d;
  const double gap = std::fabs(roots.value - integral.value);
  const double allowed = cfg.tol + roots.abs_error + integral.abs_error;
  o.report.results.push_back(height_row("log M (roots)", roots));
  o.report.results.push_back(height_row("log M (integral)", integral));
  ResultRow g = closed_form_row("gap", gap, gap <= allowed ? "agree" : "disagree");
  g.method = "difference";
  o.report.results.push_back(std::move(g));
  if (gap > allowed) {
    o.check_failed = true;
    o.failure = "root and integral routes differ by " + shortest(gap);
  }
  return o;
}

Outcome cmd_point_height(const Config&, const std::string& point) {
  Outcome o;
  o.report.inputs["point"] = point;
  const ProjectivePoint p(parse_rationals(point));
  const int n = p.ambient_dimension();
  const SandwichReport s = sandwich_report(p, n);
  o.report.results.push_back(height_row("h_inf", height_point(p, Norm::Inf)));
  o.report.results.push_back(height_row("h_2", height_point(p, Norm::L2)));
  ResultRow up = closed_form_row("h_inf + log(N+1)/2", s.upper, s.holds ? "h_inf <= h_2 <= bound holds" : "fails");
  o.report.results.push_back(std::move(up));
  o.report.inputs["normalized"] = join(p.coords);
  if (!s.holds) {
    o.check_failed = true;
    o.failure = "h_inf <= h_2 <= h_inf + log(N+1)/2 fails";
  }
  return o;
}

SequenceSpec sequence_spec(const Config& cfg, const BiPoly& P, const mpq_class& x0, int max_i) {
  SequenceSpec spec;
  spec.P = P;
  spec.x0 = AlgebraicNumber::rational(x0);
  spec.mode = parse_cert_mode(cfg.mode);
  spec.max_index = max_i;
  spec.height_tolerance = std::min(cfg.tol, 1e-9);
  return spec;
}

Outcome cmd_sequence(const Config& cfg, const std::string& poly, const std::string& x0,
                     int max_i, const std::string& out_path) {
  Outcome o;
  o.report.inputs["poly"] = poly;
  o.report.inputs["x0"] = x0;
  o.report.inputs["max_i"] = max_i;
  o.report.inputs["mode"] = cfg.mode;
  const auto prof = iterate_sequence(sequence_spec(cfg, parse_bi(poly), parse_rational(x0), max_i));
  add_sequence(o, prof);
  if (!out_path.empty()) write_file(out_path, render(o.report, Format::Csv));
  return o;
}

Outcome cmd_habegger(const Config& cfg, const std::string& poly, int check_max_i) {
  Outcome o;
  o.report.inputs["poly"] = poly;
  o.report.inputs["check_max_i"] = check_max_i;
  const BiPoly P = parse_bi(poly);
  const HabeggerBound hb = habegger_data(P);
  o.report.results.push_back(closed_form_row("gamma", hb.gamma));
  o.report.results.push_back(closed_form_row("Q", hb.Q));
  o.report.results.push_back(closed_form_row("q", hb.q));
  o.report.results.push_back(closed_form_row("bound", hb.bound, "northcott number upper bound"));
  if (check_max_i > 0) {
    const auto prof = iterate_sequence(sequence_spec(cfg, P, 1, check_max_i));
    const bool ok = recurrence_check(prof, P);
    o.report.results.push_back(exact_row("recurrence", ok, "consecutive pairs from x0 = 1"));
    if (!ok) {
      o.check_failed = true;
      o.failure = "recurrence inequality fails";
    }
  }
  return o;
}

Outcome cmd_selmer(const Config&, int max_i) {
  Outcome o;
  o.report.inputs["max_i"] = max_i;
  const auto est = selmer_family(max_i);
  const double log3 = std::log(3.0);
  Columns c;
  c.header = {"i", "height", "error", "i*height", "irreducible", "tag"};
  for (const auto& e : est.family) {
    const bool ok = e.index * e.height.upper() <= log3 && e.height.lower() > 0.0;
    ResultRow r = height_row("h(alpha_" + std::to_string(e.index) + ")", e.height,
                             e.irreducible_certified ? "irreducible" : "irreducibility not certified");
    r.extra["i"] = e.index;
    o.report.results.push_back(std::move(r));
    c.rows.push_back({std::to_string(e.index), shortest(e.height.value), shortest(e.height.abs_error),
                      shortest(e.index * e.height.value), e.irreducible_certified ? "yes" : "no", e.height.tag()});
    if (!ok || !e.irreducible_certified) {
      o.check_failed = true;
      o.failure = "family check fails at i = " + std::to_string(e.index);
    }
  }
  o.report.results.push_back(closed_form_row("upper_bound", *est.certified_upper_bound, est.certificate));
  o.report.columns = std::move(c);
  return o;
}

Outcome cmd_prime_family(const Config&, const std::vector<std::string>& polys, const std::vector<std::uint64_t>& primes) {
  if (polys.size() != primes.size()) throw DomainError("prime-family: give one --prime per --poly");
  Outcome o;
  o.report.inputs["polys"] = polys;
  o.report.inputs["primes"] = primes;
  std::vector<PrimeFamilyInput> in;
  for (std::size_t k = 0; k < polys.size(); ++k) in.push_back({parse_uni(polys[k]), primes[k]});
  for (const auto& c : prime_constant_family(in)) {
    ResultRow r = closed_form_row("liminf estimate " + c.poly.to_string(), c.liminf_estimate, c.argument);
    r.extra["prime"] = c.prime;
    r.extra["length"] = c.length.get_str();
    r.extra["irreducible"] = c.irreducible;
    o.report.results.push_back(std::move(r));
  }
  return o;
}

Outcome cmd_radical_tower(const Config&, std::uint64_t p, int max_i) {
  Outcome o;
  o.report.inputs["p"] = p;
  o.report.inputs["max_i"] = max_i;
  const auto est = radical_tower(p, max_i);
  for (const auto& e : est.family) {
    ResultRow r = height_row("h(" + std::to_string(p) + "^(1/" + std::to_string(p) + "^" + std::to_string(e.index) + "))", e.height,
                             e.irreducible_certified ? "eisenstein" : "not certified");
    r.extra["i"] = e.index;
    o.report.results.push_back(std::move(r));
  }
  if (est.certified_upper_bound) {
    o.report.results.push_back(closed_form_row("upper_bound", *est.certified_upper_bound, est.certificate));
  }
  return o;
}

Outcome cmd_generator(const Config&, const std::string& poly, const std::string& disc) {
  Outcome o;
  o.report.inputs["poly"] = poly;
  o.report.inputs["disc"] = disc;
  std::optional<mpz_class> d;
  if (!disc.empty()) d = abs(mpz_class(disc));
  const auto F = NumberFieldSpec::from_poly(parse_uni(poly), d);
  const auto r = search_small_generator(F);
  Json coords = Json::array();
  for (const auto& c : r.element.coords) coords.push_back(c.get_str());
  o.report.results.push_back(exact_row("coords", coords, "power basis"));
  o.report.results.push_back(exact_row("min_poly", r.alpha.min_poly.to_string()));
  o.report.results.push_back(height_row("height", r.height, r.height.upper() <= r.bound ? "<= bound" : "above bound"));
  o.report.results.push_back(closed_form_row("bound", r.bound, "log|disc| / d"));
  o.report.results.push_back(exact_row("candidates_tried", r.candidates_tried));
  if (r.height.upper() > r.bound + 1e-12) {
    o.check_failed = true;
    o.failure = "height above log|disc| / d";
  }
  return o;
}

Outcome cmd_chow_height(const Config& cfg, const std::string& form, const std::string& point) {
  if (form.empty() == point.empty()) throw DomainError("chow-height: give exactly one of --form, --point");
  Outcome o;
  o.report.inputs["form"] = form;
  o.report.inputs["point"] = point;
  o.report.inputs["samples"] = cfg.samples;
  if (!point.empty()) {
    const ProjectivePoint p(parse_rationals(point));
    const auto e = chow_height_point(p, cfg.samples, cfg.seed);
    o.report.results.push_back(chow_row("h_P", e));
    o.report.results.push_back(height_row("h_2", height_point(p, Norm::L2), "reference"));
  } else {
    const auto X = Hypersurface::make(parse_form(form));
    const auto e = chow_height_hypersurface(X, cfg.samples, cfg.seed);
    o.report.results.push_back(chow_row("h_P", e));
  }
  return o;
}

Outcome cmd_remond(const Config& cfg, const std::string& form, int instances, int bound, double H) {
  Outcome o;
  o.report.inputs["form"] = form;
  o.report.inputs["instances"] = instances;
  o.report.inputs["bound"] = bound;
  o.report.inputs["samples"] = cfg.samples;
  o.default_format = Format::Table;
  const auto X = Hypersurface::make(parse_form(form));
  const auto lines = random_lines(X, instances, bound, cfg.seed);
  if (!(H > 0.0)) {
    H = 0.0;
    for (const auto& l : lines) {
      H = std::max(H, height_coefficients(std::vector<mpq_class>(l.begin(), l.end()), Norm::L2).value);
    }
  }
  o.report.inputs["H"] = H;
  const auto rep = remond_check(X, lines, H, cfg.samples, cfg.seed);
  o.report.results.push_back(chow_row("h_P(X)", rep.h_X));
  Columns c;
  c.header = {"line", "deg Y", "h_P(Y)", "std_error", "rhs", "slack", "result"};
  for (const auto& in : rep.instances) {
    const bool ok = in.degree_ok && in.height_ok;
    ResultRow r = chow_row("h_P(Y) " + join(in.line), in.h_Y);
    r.certificate = ok ? "pass" : "fail";
    r.extra["degree_Y"] = in.degree_Y;
    r.extra["rhs"] = in.rhs;
    r.extra["slack"] = in.slack;
    o.report.results.push_back(std::move(r));
    c.rows.push_back({join(in.line), std::to_string(in.degree_Y), shortest(in.h_Y.value), shortest(in.h_Y.std_error),
                      shortest(in.rhs), shortest(in.slack), ok ? "pass" : "FAIL"});
  }
  o.report.columns = std::move(c);
  if (!rep.all_hold) {
    o.check_failed = true;
    o.failure = "an intersection inequality fails";
  }
  return o;
}

Outcome cmd_bertini(const Config& cfg, const std::string& form, const std::string& coeff_set, std::uint64_t budget,
                    double m_S, bool with_height) {
  Outcome o;
  o.report.inputs["form"] = form;
  o.report.inputs["coeff_set"] = coeff_set;
  o.report.inputs["budget"] = budget;
  o.report.inputs["m_S"] = m_S;
  const auto X = Hypersurface::make(parse_form(form));
  std::vector<GaussianRational> S;
  for (const auto& part : split(coeff_set, ',')) S.push_back(parse_gaussian(part));
  const auto cand = section_search(X, S, budget);
  std::optional<ChowHeightEstimate> hX;
  if (with_height) {
    o.report.inputs["samples"] = cfg.samples;
    hX = chow_height_hypersurface(X, cfg.samples, cfg.seed);
  }
  const auto rep = theorem12_bound_check(X, cand, m_S, hX);
  const std::string cert = cand.certificate.certificate.route +
                           (cand.certificate.certificate.prime ? " " + std::to_string(cand.certificate.certificate.prime) : "");
  o.report.results.push_back(exact_row("hyperplane", join(cand.hyperplane), "smooth section (" + cert + ")"));
  std::vector<std::string> vars = cand.section_vars;
  o.report.results.push_back(exact_row("section_form", cand.section_form.to_string(vars)));
  o.report.results.push_back(exact_row("candidates_tried", cand.tried));
  o.report.results.push_back(exact_row("degree", rep.degree_C, rep.degree_ok ? "<= deg X" : "fails"));
  o.report.results.push_back(exact_row("genus", rep.genus, "cap " + std::to_string(rep.genus_cap)));
  o.report.results.push_back(exact_row("genus_cap", rep.genus_cap, "(deg X)^2 + deg X"));
  o.report.results.push_back(closed_form_row("hyperplane_h2", rep.hyperplane_h2, rep.hyperplane_ok ? "<= H" : "> H"));
  o.report.results.push_back(closed_form_row("H", rep.H, "(N+1)(m(S)+2)"));
  o.report.results.push_back(closed_form_row("height_excess", rep.height_excess, "(dim X)(deg X)(N+1)(m(S)+2)"));
  if (rep.h_X) {
    o.report.results.push_back(chow_row("h_P(X)", *rep.h_X));
    o.report.results.push_back(closed_form_row("rhs", *rep.rhs, "h_P(X) + height_excess"));
  }
  if (!(rep.degree_ok && rep.genus_ok && rep.hyperplane_ok)) {
    o.check_failed = true;
    o.failure = "section bound check fails";
  }
  return o;
}

Outcome cmd_constants(const Config& cfg, int g, const std::string& report, const std::string& m_S,
                      const std::string& dag, std::ostream& out) {
  Outcome o;
  o.report.inputs["g"] = g;
  o.report.inputs["report"] = report;
  o.report.inputs["m_S"] = m_S;
  o.default_format = Format::Table;
  const mpq_class mS = parse_rational(m_S);
  if (!dag.empty()) {
    for (const auto& [name, e] : constant_expressions(g, mS)) {
      if (name == dag) {
        out << e.to_json() << "\n";
        return {};
      }
    }
    throw DomainError("unknown constant '" + dag + "'");
  }
  Columns c;
  c.header = {"name", "value", "log10", "trace"};
  bool found = false;
  for (const auto& row : constants_report(g, mS, cfg.precision)) {
    if (report != "all" && report != row.name) continue;
    found = true;
    ResultRow r;
    r.name = row.name;
    r.value = row.value;
    r.abs_error = row.exact ? 0.0 : (row.log10_hi - row.log10_lo) / 2;
    r.method = row.exact ? "exact" : (row.tower ? "log10-log10-interval" : "log10-interval");
    r.certificate = row.trace;
    r.extra["log10_lo"] = row.log10_lo;
    r.extra["log10_hi"] = row.log10_hi;
    r.extra["tower"] = row.tower;
    o.report.results.push_back(std::move(r));
    std::string l10 = row.tower ? "10^[" + shortest(row.log10_lo) + ", " + shortest(row.log10_hi) + "]"
                                : "[" + shortest(row.log10_lo) + ", " + shortest(row.log10_hi) + "]";
    c.rows.push_back({row.name, row.value, l10, row.trace});
  }
  if (!found) throw DomainError("unknown constant '" + report + "'");
  o.report.columns = std::move(c);
  return o;
}

Outcome cmd_verify_all(const Config& cfg, const std::vector<int>& only, std::ostream& out, bool stream_lines) {
  Outcome o;
  o.report.inputs["samples"] = cfg.samples;
  o.report.inputs["precision"] = cfg.precision;
  o.report.inputs["only"] = only;
  o.default_format = Format::Table;
  AcceptanceOptions opt;
  opt.samples = cfg.samples;
  opt.seed = cfg.seed;
  opt.precision = static_cast<Precision>(cfg.precision);
  Columns c;
  c.header = {"criterion", "result", "seconds", "detail"};
  int failed = 0;
  for (int id : acceptance_ids()) {
    if (!only.empty() && std::find(only.begin(), only.end(), id) == only.end()) continue;
    const auto r = run_criterion(id, opt);
    if (stream_lines) out << format_result(r) << std::endl;
    ResultRow row = exact_row("[" + std::to_string(id) + "] " + r.name, r.passed ? "pass" : "fail", r.detail);
    row.method = "acceptance";
    o.report.results.push_back(std::move(row));
    std::ostringstream secs;
    secs.precision(3);
    secs << r.seconds;
    c.rows.push_back({"[" + std::to_string(id) + "] " + r.name, r.passed ? "PASS" : "FAIL", secs.str(), r.detail});
    if (!r.passed) ++failed;
  }
  o.report.columns = std::move(c);
  if (failed) {
    o.check_failed = true;
    o.failure = std::to_string(failed) + " acceptance criteria failed";
  }
  return o;
}

long default_precision() {
  if (const char* env = std::getenv("HEIGHTLAB_PRECISION")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 16) return v;
  }
  return 256;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Heights of algebraic numbers, Northcott bounds, Chow heights and explicit constants", "heightlab"};
  app.require_subcommand(1);
  app.fallthrough();
  Config cfg;
  cfg.precision = default_precision();
  app.add_option("--precision", cfg.precision, "Working precision in bits (env HEIGHTLAB_PRECISION)")
      ->check(CLI::Range(16L, 1L << 20))
      ->capture_default_str();
  app.add_option("--tol", cfg.tol, "Absolute tolerance for heights")->check(CLI::PositiveNumber)->capture_default_str();
  app.add_option("--samples", cfg.samples, "Monte Carlo sample count")->check(CLI::Range(2ULL, 1ULL << 40))->capture_default_str();
  app.add_option("--seed", cfg.seed, "Random seed")->capture_default_str();
  app.add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"json", "csv", "table"}));
  app.add_option("--mode", cfg.mode, "Irreducibility handling")
      ->check(CLI::IsMember({"certified", "assume-irreducible"}))
      ->capture_default_str();

  std::function<Outcome()> action;
  std::string poly, method = "roots", point, x0 = "1", out_path, disc, form, coeff_set = "0,1,-1", report = "all",
                    m_S = "0", dag;
  int max_i = 8, check_max_i = 0, instances = 10, bound = 3, g = 2;
  std::uint64_t p = 2, budget = 1000;
  double H = 0.0, m_S_real = 0.0;
  bool with_height = false;
  std::vector<std::string> polys;
  std::vector<std::uint64_t> primes;
  std::vector<int> only;

  auto* height = app.add_subcommand("height", "Weil height of the roots of a polynomial");
  height->add_option("--poly", poly, "Polynomial in x")->required();
  height->add_option("--method", method, "roots or integral")->check(CLI::IsMember({"roots", "integral"}));
  height->callback([&] { action = [&] { return cmd_height(cfg, poly, method); }; });

  auto* mahler = app.add_subcommand("mahler", "log Mahler measure by roots and by the circle integral");
  mahler->add_option("--poly", poly, "Polynomial in x")->required();
  mahler->callback([&] { action = [&] { return cmd_mahler(cfg, poly); }; });

  auto* ph = app.add_subcommand("point-height", "Heights h_inf and h_2 of a rational projective point");
  ph->add_option("--point", point, "Comma-separated coordinates")->required()->allow_extra_args(false);
  ph->callback([&] { action = [&] { return cmd_point_height(cfg, point); }; });

  auto* smyth = app.add_subcommand("smyth", "The sequence x^2 - x_i x - 1 = 0 from x_0 = 1");
  smyth->add_option("--max-i", max_i, "Last index")->check(CLI::Range(1, 12))->capture_default_str();
  smyth->add_option("--out", out_path, "Also write the CSV profile to this file");
  smyth->callback([&] { action = [&] { return cmd_sequence(cfg, "x^2-t*x-1", "1", max_i, out_path); }; });

  auto* seq = app.add_subcommand("sequence", "Iterate P(x, x_i) = 0 from a rational x_0");
  seq->add_option("--poly", poly, "P(x, t)")->required();
  seq->add_option("--x0", x0, "Rational starting point")->capture_default_str();
  seq->add_option("--max-i", max_i, "Last index")->check(CLI::Range(1, 12))->capture_default_str();
  seq->add_option("--out", out_path, "Also write the CSV profile to this file");
  seq->callback([&] { action = [&] { return cmd_sequence(cfg, poly, x0, max_i, out_path); }; });

  auto* hab = app.add_subcommand("habegger", "Northcott number bound for P(x, t)");
  hab->add_option("--poly", poly, "P(x, t)")->required();
  hab->add_option("--check-max-i", check_max_i, "Check the recurrence on x_1..x_k from x_0 = 1")->check(CLI::Range(0, 10));
  hab->callback([&] { action = [&] { return cmd_habegger(cfg, poly, check_max_i); }; });

  auto* sel = app.add_subcommand("selmer", "Heights of the roots of x^i - x - 1");
  sel->add_option("--max-i", max_i, "Last index (default 30)")->check(CLI::Range(2, 64));
  sel->callback([&] { action = [&] { return cmd_selmer(cfg, sel->count("--max-i") ? max_i : 30); }; });

  auto* pf = app.add_subcommand("prime-family", "Irreducibility from the length condition ||f||_1 < 2p");
  pf->add_option("--poly", polys, "Monic polynomial (repeatable)")->required();
  pf->add_option("--prime", primes, "Prime p with f(0) = +-p (repeatable)")->required();
  pf->callback([&] { action = [&] { return cmd_prime_family(cfg, polys, primes); }; });

  auto* rt = app.add_subcommand("radical-tower", "Heights of p^(1/p^i)");
  rt->add_option("--p", p, "Prime")->required();
  rt->add_option("--max-i", max_i, "Last index")->check(CLI::Range(1, 12));
  rt->callback([&] { action = [&] { return cmd_radical_tower(cfg, p, rt->count("--max-i") ? max_i : 4); }; });

  auto* gen = app.add_subcommand("generator", "Small integral generator of Q(theta)");
  gen->add_option("--poly", poly, "Monic irreducible defining polynomial")->required();
  gen->add_option("--disc", disc, "|disc| of the ring of integers (asserts Z[theta] is maximal)");
  gen->callback([&] { action = [&] { return cmd_generator(cfg, poly, disc); }; });

  auto* ch = app.add_subcommand("chow-height", "Monte Carlo Chow height of a hypersurface or point");
  ch->add_option("--form", form, "Homogeneous form in x0..xN");
  ch->add_option("--point", point, "Comma-separated coordinates");
  ch->callback([&] { action = [&] { return cmd_chow_height(cfg, form, point); }; });

  auto* rem = app.add_subcommand("remond-check", "Height inequality for conic-line intersections");
  std::string conic = "x0^2+x1^2-x2^2";
  rem->add_option("--form", conic, "Conic in x0, x1, x2")->capture_default_str();
  rem->add_option("--instances", instances, "Number of random lines")->check(CLI::Range(1, 1000))->capture_default_str();
  rem->add_option("--bound", bound, "Line coefficients in [-bound, bound]")->check(CLI::Range(1, 1000))->capture_default_str();
  rem->add_option("--H", H, "Height bound for the lines (default: their largest h_2)");
  rem->callback([&] { action = [&] { return cmd_remond(cfg, conic, instances, bound, H); }; });

  auto* ber = app.add_subcommand("bertini", "Smooth hyperplane section with bounded coefficients");
  ber->add_option("--form", form, "Homogeneous form in x0..xN")->required();
  ber->add_option("--coeff-set", coeff_set, "Comma-separated coefficients (rationals, i, -i)")->capture_default_str();
  ber->add_option("--budget", budget, "Candidate budget")->capture_default_str();
  ber->add_option("--m-S", m_S_real, "Northcott number m(S) of the coefficient set")->capture_default_str();
  ber->add_flag("--with-height", with_height, "Also estimate h_P(X) by Monte Carlo");
  ber->callback([&] { action = [&] { return cmd_bertini(cfg, form, coeff_set, budget, m_S_real, with_height); }; });

  auto* con = app.add_subcommand("constants", "Explicit constants at genus g");
  con->add_option("--g", g, "Genus")->check(CLI::Range(1, 64))->capture_default_str();
  con->add_option("--report", report, "all or a constant name")->capture_default_str();
  con->add_option("--m-S", m_S, "Rational value of m(S)")->capture_default_str();
  con->add_option("--dag", dag, "Print the expression DAG of this constant as JSON");
  con->callback([&] { action = [&] { return cmd_constants(cfg, g, report, m_S, dag, out); }; });

  bool streaming = false;
  auto* va = app.add_subcommand("verify-all", "Run the acceptance suite");
  va->add_option("--only", only, "Criterion numbers to run")->check(CLI::Range(1, 10));
  va->callback([&] {
    streaming = cfg.format.empty() || cfg.format == "table";
    action = [&] { return cmd_verify_all(cfg, only, out, streaming); };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kUsage;
  }

  try {
    Outcome o = action();
    if (o.report.subcommand.empty() && o.report.results.empty()) return kOk;  // raw output already written
    o.report.subcommand = app.get_subcommands().front()->get_name();
    o.report.seed = cfg.seed;
    Json config;
    config["precision"] = cfg.precision;
    config["tol"] = cfg.tol;
    config["mode"] = cfg.mode;
    o.report.inputs["config"] = config;
    const Format f = cfg.format.empty() ? o.default_format : parse_format(cfg.format);
    if (!(streaming && f == Format::Table)) out << render(o.report, f);
    if (o.check_failed) {
      err << "check failed: " << o.failure << "\n";
      return kCheckFailed;
    }
    return kOk;
  } catch (const LengthConditionFailed& e) {
    err << "check failed: " << e.what() << "\n";
    return kCheckFailed;
  } catch (const NotSmooth& e) {
    err << "check failed: " << e.what() << "\n";
    return kCheckFailed;
  } catch (const BudgetExceeded& e) {
    err << "check failed: " << e.what() << "\n";
    return kCheckFailed;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
}

}  // namespace heightlab::cli
