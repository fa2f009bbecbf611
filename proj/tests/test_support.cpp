// Copyright 2026 The nonrecip Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <stdexcept>

#include "nonrecip/parallel.hpp"
#include "nonrecip/quadrature.hpp"
#include "nonrecip/units.hpp"

namespace nonrecip {
namespace {

TEST(Quadrature, PolynomialAndTrigIntegrals) {
  EXPECT_NEAR(adaptive_simpson([](double x) { return std::sin(x); }, 0.0, kPi, 1e-12).value, 2.0, 1e-11);
  EXPECT_NEAR(adaptive_simpson([](double x) { return x * x * x; }, 0.0, 2.0, 1e-12).value, 4.0, 1e-13);
  EXPECT_NEAR(adaptive_simpson([](double x) { return std::exp(-x * x); }, -6.0, 6.0, 1e-12).value, std::sqrt(kPi), 1e-10);
}

TEST(Quadrature, SharpPeakIsRefined) {
  const double w = 1e-3;
  auto f = [w](double x) { return w / (kPi * (x * x + w * w)); };  // Lorentzian
  EXPECT_NEAR(adaptive_simpson(f, -1.0, 1.0, 1e-10).value, 2.0 / kPi * std::atan(1.0 / w), 1e-8);
}

TEST(Quadrature, NonFiniteIntegrandThrows) {
  EXPECT_THROW(adaptive_simpson([](double x) { return 1.0 / x; }, 0.0, 1.0, 1e-8), DomainError);
}

TEST(Units, Conversions) {
  EXPECT_NEAR(mhz_to_rad_per_ns(10.0), 2 * kPi * 0.01, 1e-16);
  EXPECT_NEAR(ghz_to_rad_per_ns(5.0), 2 * kPi * 5.0, 1e-14);
  EXPECT_NEAR(khz_to_rad_per_ns(3.0), 2 * kPi * 3e-6, 1e-19);
}

TEST(ParallelMap, KeepsIndexOrder) {
  for (std::size_t jobs : {1u, 3u, 16u}) {
    const auto out = parallel_map(50, jobs, [](std::size_t i) { return i * i; });
    ASSERT_EQ(out.size(), 50u);
    for (std::size_t i = 0; i < out.size(); ++i) EXPECT_EQ(out[i], i * i);
  }
}

TEST(ParallelMap, RethrowsLowestFailingIndex) {
  auto fn = [](std::size_t i) -> int {
    if (i == 7 || i == 3 || i == 40) throw std::runtime_error(std::to_string(i));
    return static_cast<int>(i);
  };
  for (std::size_t jobs : {1u, 4u}) {
    try {
      parallel_map(50, jobs, fn);
      FAIL();
    } catch (const std::runtime_error& e) {
      EXPECT_STREQ(e.what(), "3");
    }
  }
}

TEST(ParallelMap, EmptyRange) { EXPECT_TRUE(parallel_map(0, 4, [](std::size_t) { return 1; }).empty()); }

}  // namespace
}  // namespace nonrecip
