#pragma once

// Result rows and their JSON / CSV / table renderings.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "heightlab/heights.hpp"

namespace heightlab::cli {

using Json = nlohmann::ordered_json;

enum class Format { Json, Csv, Table };

Format parse_format(const std::string& s);

struct ResultRow {
  std::string name;
  Json value;
  std::optional<double> abs_error;
  std::optional<double> std_error;
  std::string method;
  std::string certificate;
  Json extra = Json::object();  // appended to the JSON row
};

/// Alternative column layout for CSV and table output.
struct Columns {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

struct Report {
  std::string subcommand;
  Json inputs = Json::object();
  std::uint64_t seed = 0;
  std::vector<ResultRow> results;
  std::optional<Columns> columns;
};

ResultRow height_row(const std::string& name, const HeightValue& h, const std::string& certificate = "");

/// Shortest decimal that reads back to the same double.
std::string shortest(double v);
std::string cell(const Json& v);

std::string render(const Report& report, Format format);

}  // namespace heightlab::cli
