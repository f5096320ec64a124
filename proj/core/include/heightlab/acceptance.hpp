#pragma once

// The acceptance suite: ten end-to-end checks, each against an oracle that
// does not share code with the route under test.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "heightlab/bigfloat.hpp"

namespace heightlab {

struct AcceptanceOptions {
  std::uint64_t samples = 1000000;  // Monte Carlo sample count
  std::uint64_t seed = 0;
  Precision precision = 256;
};

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
  double time_limit = 0.0;  // seconds, 0 when unbounded
};

std::vector<int> acceptance_ids();
std::string acceptance_name(int id);

/// Runs one criterion; exceptions are reported as a failure.
CriterionResult run_criterion(int id, const AcceptanceOptions& options);

/// Runs all criteria in order, calling `on_result` after each.
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options,
                                            const std::function<void(const CriterionResult&)>& on_result = {});

/// "PASS [k] name (t s): detail"
std::string format_result(const CriterionResult& r);

}  // namespace heightlab
