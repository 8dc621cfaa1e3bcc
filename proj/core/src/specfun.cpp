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

#include "fasrssi/specfun.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace fasrssi::specfun {
namespace {

constexpr double kSeriesLimit = 8.0;
constexpr double kAsymptoticLimit = 25.0;

// sum_k (-x^2/4)^k / (k!)^2
double j0_series(double ax) {
    const double q = -0.25 * ax * ax;
    double term = 1.0;
    double sum = 1.0;
    for (int k = 1; k < 200; ++k) {
        term *= q / (static_cast<double>(k) * static_cast<double>(k));
        sum += term;
        if (std::abs(term) < 1e-18) break;
    }
    return sum;
}

// Miller's backward recurrence normalized with 1 = J0 + 2 sum_k J_2k.
double j0_backward_recurrence(double ax) {
    const int n = static_cast<int>(ax);
    int start = 2 * ((n + static_cast<int>(std::sqrt(160.0 * n))) / 2) + 10;
    const double two_over_x = 2.0 / ax;
    double next = 0.0;  // J_{k+1}
    double curr = 1e-30;  // J_k
    double norm = 0.0;
    for (int k = start; k > 0; --k) {
        const double prev = k * two_over_x * curr - next;
        next = curr;
        curr = prev;  // now J_{k-1}
        if (std::abs(curr) > 1e200) {
            curr *= 1e-200;
            next *= 1e-200;
            norm *= 1e-200;
        }
        if ((k - 1) % 2 == 0 && k - 1 > 0) norm += 2.0 * curr;
    }
    norm += curr;
    return curr / norm;
}

// Hankel expansion; the phase x - pi/4 is expanded through cos/sin of x
// so no rounding enters the argument for large x.
double j0_asymptotic(double ax) {
    double p = 0.0;
    double q = 0.0;
    double a = 1.0;  // a_k / x^k
    double last = 2.0;
    for (int k = 0; k < 60; ++k) {
        if (k > 0) {
            const double odd = 2.0 * k - 1.0;
            a *= odd * odd / (8.0 * k * ax);
        }
        if (a > last) break;  // series started to diverge
        last = a;
        // P alternates + - + ...; Q (odd k) is carried with flipped sign.
        const int quarter = k / 2;
        const double sign = (quarter % 2 == 0) ? 1.0 : -1.0;
        if (k % 2 == 0) {
            p += sign * a;
        } else {
            q += sign * a;
        }
        if (a < 1e-17) break;
    }
    const double c = std::cos(ax);
    const double s = std::sin(ax);
    return std::sqrt(1.0 / (std::numbers::pi * ax)) * (p * (c + s) + q * (s - c));
}

} // namespace

double bessel_j0(double x) {
    if (!std::isfinite(x)) throw std::domain_error("bessel_j0: argument is not finite");
    const double ax = std::abs(x);
    if (ax < kSeriesLimit) return j0_series(ax);
    if (ax < kAsymptoticLimit) return j0_backward_recurrence(ax);
    return j0_asymptotic(ax);
}

} // namespace fasrssi::specfun
