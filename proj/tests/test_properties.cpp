#include <gtest/gtest.h>

#include "properties.hpp"

namespace aszeta::testing {
namespace {

class Suites : public ::testing::TestWithParam<std::uint64_t> {};

TEST_P(Suites, AllHold) {
  for (const PropertyResult& r : run_property_suites(GetParam(), 12)) {
    EXPECT_TRUE(r.ok()) << describe(r);
    EXPECT_GT(r.cases, 10u) << r.name;
  }
}

INSTANTIATE_TEST_SUITE_P(Seeds, Suites, ::testing::Values(1u, 20260101u, 777u));

}  // namespace
}  // namespace aszeta::testing
