#include <gtest/gtest.h>

#include <cstdlib>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cli.hpp"
#include "report.hpp"

namespace {

struct Run {
  int code = 0;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "heightlab");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  Run r;
  r.code = heightlab::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

nlohmann::json parse(const Run& r) { return nlohmann::json::parse(r.out); }

}  // namespace

TEST(Cli, SmythCsv) {
  auto r = run({"smyth", "--max-i", "3"});
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream lines(r.out);
  std::string header, first;
  std::getline(lines, header);
  std::getline(lines, first);
  EXPECT_EQ(header, "i,degree,height,error,tag");
  EXPECT_EQ(first.rfind("1,2,0.2406059125298", 0), 0u);
}

TEST(Cli, ConstantsTable) {
  auto r = run({"constants", "--g", "2"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("262656"), std::string::npos);
  EXPECT_NE(r.out.find("c31"), std::string::npos);
}

TEST(Cli, UsageErrors) {
  auto typo = run({"smyht"});
  EXPECT_EQ(typo.code, heightlab::cli::kUsage);
  EXPECT_FALSE(typo.err.empty());
  EXPECT_EQ(run({}).code, heightlab::cli::kUsage);
  EXPECT_EQ(run({"height", "--poly", "x^2 +* 1"}).code, heightlab::cli::kUsage);
  EXPECT_EQ(run({"--format", "xml", "smyth"}).code, heightlab::cli::kUsage);
  EXPECT_EQ(run({"--help"}).code, heightlab::cli::kOk);
}

TEST(Cli, CheckFailures) {
  auto r = run({"prime-family", "--poly", "x^2+7*x+7", "--prime", "7"});
  EXPECT_EQ(r.code, heightlab::cli::kCheckFailed);
  EXPECT_NE(r.err.find("check failed"), std::string::npos);
  auto cone = run({"bertini", "--form", "x0^2+x1^2-x2^2+0*x3"});
  EXPECT_EQ(cone.code, heightlab::cli::kCheckFailed);
  auto ok = run({"prime-family", "--poly", "x^3+x+5", "--prime", "5"});
  EXPECT_EQ(ok.code, 0) << ok.err;
}

TEST(Cli, JsonSchema) {
  auto r = run({"--seed", "3", "point-height", "--point", "3,4,0"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = parse(r);
  for (const char* key : {"tool_version", "subcommand", "inputs", "seed", "results"}) EXPECT_TRUE(j.contains(key)) << key;
  EXPECT_EQ(j["subcommand"], "point-height");
  EXPECT_EQ(j["seed"], 3);
  EXPECT_EQ(j["inputs"]["config"]["precision"], 256);
  ASSERT_TRUE(j["results"].is_array());
  ASSERT_FALSE(j["results"].empty());
  for (const auto& row : j["results"]) {
    EXPECT_TRUE(row.contains("name"));
    EXPECT_TRUE(row.contains("value"));
    EXPECT_TRUE(row.contains("method"));
  }
}

TEST(Cli, ChowHeightReproducible) {
  const std::vector<std::string> args{"--seed", "11", "--samples", "20000", "chow-height", "--form", "x0^2+x1^2-x2^2"};
  auto a = run(args), b = run(args);
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  auto other = run({"--seed", "12", "--samples", "20000", "chow-height", "--form", "x0^2+x1^2-x2^2"});
  EXPECT_NE(a.out, other.out);
  auto j = parse(a);
  EXPECT_TRUE(j["results"][0].contains("std_error"));
  EXPECT_EQ(run({"chow-height"}).code, heightlab::cli::kUsage);
}

TEST(Cli, PrecisionFromEnvironment) {
  ::setenv("HEIGHTLAB_PRECISION", "512", 1);
  auto r = run({"point-height", "--point", "1,2"});
  ::unsetenv("HEIGHTLAB_PRECISION");
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(parse(r)["inputs"]["config"]["precision"], 512);
  auto flag = run({"--precision", "128", "point-height", "--point", "1,2"});
  EXPECT_EQ(parse(flag)["inputs"]["config"]["precision"], 128);
}

TEST(Cli, HeightAndMahler) {
  auto h = run({"height", "--poly", "x^2-x-1"});
  ASSERT_EQ(h.code, 0) << h.err;
  auto j = parse(h);
  EXPECT_NEAR(j["results"][0]["value"].get<double>(), 0.2406059125298, 1e-12);
  auto m = run({"--tol", "1e-8", "mahler", "--poly", "x^3-x-1"});
  EXPECT_EQ(m.code, 0) << m.err;
}

TEST(Cli, Renderers) {
  heightlab::cli::Report rep;
  rep.subcommand = "demo";
  heightlab::cli::ResultRow row;
  row.name = "a,b";
  row.value = 0.1;
  row.abs_error = 1e-12;
  row.method = "exact";
  rep.results.push_back(row);
  const std::string csv = heightlab::cli::render(rep, heightlab::cli::Format::Csv);
  EXPECT_NE(csv.find("\"a,b\""), std::string::npos);
  EXPECT_NE(csv.find("0.1,"), std::string::npos);
  const std::string table = heightlab::cli::render(rep, heightlab::cli::Format::Table);
  EXPECT_NE(table.find("---"), std::string::npos);
  EXPECT_EQ(heightlab::cli::shortest(0.1), "0.1");
  EXPECT_ANY_THROW(heightlab::cli::parse_format("yaml"));
}
