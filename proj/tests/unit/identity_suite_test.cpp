#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "schur/identity_suite.hpp"

namespace {

using namespace schur;

TEST(IdentitySuite, PassesOnEachFamily) {
  const FamilySpec specs[] = {RoundSpec{3, 1.0}, ConformalSpec{4, 3, 0.05}, NeckSpec{4, 0.2}};
  for (const auto& spec : specs) {
    const auto suite = identity_suite(spec, 4096);
    EXPECT_TRUE(suite.passed()) << suite.family;
    EXPECT_EQ(suite.entries.size(), 6u);
    EXPECT_EQ(suite.intervals, 4096u);
  }
}

TEST(IdentitySuite, NeckResidualsConvergeAtHighOrder) {
  const auto suite = identity_suite(NeckSpec{5, 0.2}, 2048);
  for (const auto& e : suite.entries) {
    if (e.name == "split") continue;
    EXPECT_TRUE(e.order >= 3.0 || e.fine < 1e-12) << e.name << " order " << e.order;
  }
}

TEST(IdentitySuite, SampledInputSkipsDoubling) {
  SamplesSpec s;
  s.n = 3;
  s.length = std::numbers::pi;
  for (int i = 0; i <= 512; ++i) s.phi.push_back(std::sin(std::numbers::pi * std::min(i, 512 - i) / 512));
  const auto suite = identity_suite(s, 4096);
  EXPECT_EQ(suite.intervals, 512u);
  for (const auto& e : suite.entries) EXPECT_TRUE(std::isnan(e.order));
  EXPECT_TRUE(suite.passed());
}

TEST(IdentitySuite, TightToleranceFails) {
  IdentitySuiteOptions options;
  options.tol = 1e-20;
  const auto suite = identity_suite(ConformalSpec{3, 2, 0.1}, 512, options);
  EXPECT_FALSE(suite.passed());
}

}  // namespace
