// SPDX-License-Identifier: Apache-2.0
//
// fasrssi - RSSI ranging with fluid antenna systems
// Copyright (C) 2026 The fasrssi Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include <cmath>
#include <random>
#include <stdexcept>

#include <boost/math/special_functions/bessel.hpp>
#include <gtest/gtest.h>

#include "bessel_oracle.hpp"
#include "fasrssi/specfun.hpp"

namespace {

using fasrssi::specfun::bessel_j0;
using fasrssi::oracle::j0_series_oracle;

constexpr double kPi = 3.141592653589793;

TEST(BesselJ0, ValueAtZeroIsOne) { EXPECT_EQ(bessel_j0(0.0), 1.0); }

TEST(BesselJ0, FirstRoot) { EXPECT_LT(std::abs(bessel_j0(2.404825557695773)), 1e-9); }

TEST(BesselJ0, ValueAtPi) { EXPECT_NEAR(bessel_j0(kPi), -0.304242177644093864, 1e-9); }

TEST(BesselJ0, EvenSymmetry) {
    std::mt19937_64 gen(7);
    std::uniform_real_distribution<double> u(-50.0, 50.0);
    for (int k = 0; k < 1000; ++k) {
        const double x = u(gen);
        EXPECT_EQ(bessel_j0(x), bessel_j0(-x)) << "x=" << x;
    }
}

TEST(BesselJ0, BoundedByOne) {
    for (double x = -200.0; x <= 200.0; x += 0.0137) {
        ASSERT_LE(std::abs(bessel_j0(x)), 1.0) << "x=" << x;
    }
}

TEST(BesselJ0, MatchesWideSeriesOn1000Points) {
    std::mt19937_64 gen(20260101);
    std::uniform_real_distribution<double> u(-30.0, 30.0);
    double worst = 0.0;
    for (int k = 0; k < 1000; ++k) {
        const double x = u(gen);
        worst = std::max(worst, std::abs(bessel_j0(x) - j0_series_oracle(x)));
    }
    EXPECT_LE(worst, 1e-10);
}

// Regime boundaries are where piecewise schemes usually slip.
TEST(BesselJ0, ContinuousAcrossRegimeSwitches) {
    for (double edge : {8.0, 25.0}) {
        for (double dx : {-1e-9, 0.0, 1e-9}) {
            const double x = edge + dx;
            EXPECT_NEAR(bessel_j0(x), j0_series_oracle(x), 1e-12) << "x=" << x;
        }
    }
}

TEST(BesselJ0, LargeArgumentAgainstBoost) {
    for (double x = 30.0; x < 2000.0; x *= 1.07) {
        const double ref = boost::math::cyl_bessel_j(0, x);
        EXPECT_NEAR(bessel_j0(x), ref, 1e-12) << "x=" << x;
    }
}

TEST(BesselJ0, PinnedLargeArgumentValues) {
    const struct { double x, j0; } cases[] = {
        {10.0, -0.24593576445134834},   {20.0, 0.16702466434058315},
        {50.0, 0.055812327669251815},   {100.0, 0.019985850304223122},
        {500.0, -0.034100556880731998}, {1000.0, 0.024786686152420175},
        {-999.5, 0.024019300140883570},
    };
    for (const auto& c : cases) EXPECT_NEAR(bessel_j0(c.x), c.j0, 1e-13) << "x=" << c.x;
}

TEST(BesselJ0, SignChangesBracketKnownRoots) {
    const double roots[] = {2.404825557695772769, 5.520078110286310650, 8.653727912911012217};
    for (double r : roots) {
        EXPECT_LT(bessel_j0(r - 1e-6) * bessel_j0(r + 1e-6), 0.0) << r;
    }
    // Exactly three sign changes below 10.
    int changes = 0;
    double prev = bessel_j0(0.0);
    for (double x = 0.01; x <= 10.0; x += 0.01) {
        const double v = bessel_j0(x);
        if ((v > 0) != (prev > 0)) ++changes;
        prev = v;
    }
    EXPECT_EQ(changes, 3);
}

TEST(BesselJ0, RejectsNonFinite) {
    EXPECT_THROW(bessel_j0(std::nan("")), std::domain_error);
    EXPECT_THROW(bessel_j0(INFINITY), std::domain_error);
}

} // namespace
