#include "report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

#include "heightlab/errors.hpp"

#ifndef HEIGHTLAB_VERSION
#define HEIGHTLAB_VERSION "0.0.0"
#endif

namespace heightlab::cli {

Format parse_format(const std::string& s) {
  if (s == "json") return Format::Json;
  if (s == "csv") return Format::Csv;
  if (s == "table") return Format::Table;
  throw DomainError("unknown format '" + s + "'");
}

ResultRow height_row(const std::string& name, const HeightValue& h, const std::string& certificate) {
  ResultRow r;
  r.name = name;
  r.value = h.value;
  if (h.method == HeightMethod::MonteCarlo) {
    r.std_error = h.abs_error;
  } else {
    r.abs_error = h.abs_error;
  }
  r.method = h.tag();
  r.certificate = certificate;
  return r;
}

std::string shortest(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string cell(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_float()) return shortest(v.get<double>());
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_null()) return "";
  return v.dump();
}

namespace {

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

Columns default_columns(const Report& report) {
  Columns c;
  c.header = {"name", "value", "error", "error_kind", "method", "certificate"};
  for (const auto& r : report.results) {
    std::string err, kind;
    if (r.std_error) {
      err = shortest(*r.std_error);
      kind = "std_error";
    } else if (r.abs_error) {
      err = shortest(*r.abs_error);
      kind = "abs_error";
    }
    c.rows.push_back({r.name, cell(r.value), err, kind, r.method, r.certificate});
  }
  return c;
}

std::string render_json(const Report& report) {
  Json j;
  j["tool_version"] = HEIGHTLAB_VERSION;
  j["subcommand"] = report.subcommand;
  j["inputs"] = report.inputs;
  j["seed"] = report.seed;
  Json rows = Json::array();
  for (const auto& r : report.results) {
    Json row;
    row["name"] = r.name;
    row["value"] = r.value;
    if (r.abs_error) row["abs_error"] = *r.abs_error;
    if (r.std_error) row["std_error"] = *r.std_error;
    row["method"] = r.method;
    row["certificate"] = r.certificate;
    for (const auto& [k, v] : r.extra.items()) row[k] = v;
    rows.push_back(std::move(row));
  }
  j["results"] = std::move(rows);
  return j.dump(2) + "\n";
}

std::string render_csv(const Columns& c) {
  std::ostringstream os;
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t k = 0; k < cells.size(); ++k) os << (k ? "," : "") << csv_escape(cells[k]);
    os << "\n";
  };
  line(c.header);
  for (const auto& r : c.rows) line(r);
  return os.str();
}

std::string render_table(const Columns& c) {
  std::vector<std::size_t> width(c.header.size(), 0);
  auto measure = [&](const std::vector<std::string>& cells) {
    for (std::size_t k = 0; k < cells.size() && k < width.size(); ++k) width[k] = std::max(width[k], cells[k].size());
  };
  measure(c.header);
  for (const auto& r : c.rows) measure(r);
  std::ostringstream os;
  auto line = [&](const std::vector<std::string>& cells) {
    std::string s;
    for (std::size_t k = 0; k < cells.size(); ++k) {
      if (k) s += "  ";
      s += cells[k];
      if (k + 1 < cells.size()) s.append(width[k] - std::min(width[k], cells[k].size()), ' ');
    }
    os << s << "\n";
  };
  line(c.header);
  std::vector<std::string> rule;
  for (auto w : width) rule.push_back(std::string(w, '-'));
  line(rule);
  for (const auto& r : c.rows) line(r);
  return os.str();
}

}  // namespace

std::string render(const Report& report, Format format) {
  if (format == Format::Json) return render_json(report);
  const Columns c = report.columns ? *report.columns : default_columns(report);
  return format == Format::Csv ? render_csv(c) : render_table(c);
}

}  // namespace heightlab::cli
