#include <gtest/gtest.h>

#include <iostream>

#include "heightlab/acceptance.hpp"

namespace {

class Acceptance : public ::testing::TestWithParam<int> {};

TEST_P(Acceptance, Criterion) {
  heightlab::AcceptanceOptions options;  // 10^6 samples, seed 0
  const auto r = heightlab::run_criterion(GetParam(), options);
  std::cout << heightlab::format_result(r) << std::endl;
  EXPECT_TRUE(r.passed) << r.detail;
}

INSTANTIATE_TEST_SUITE_P(All, Acceptance, ::testing::ValuesIn(heightlab::acceptance_ids()),
                         [](const ::testing::TestParamInfo<int>& info) {
                           std::string name = heightlab::acceptance_name(info.param);
                           for (auto& c : name) {
                             if (c == '-') c = '_';
                           }
                           return "c" + std::to_string(info.param) + "_" + name;
                         });

}  // namespace
