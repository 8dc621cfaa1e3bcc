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

#pragma once

#include <functional>

namespace fasrssi::solve1d {

struct Result {
    double x = 0.0;
    double fx = 0.0;
    int iterations = 0;
    bool converged = false;
    double last_step = 0.0; ///< size of the final bracket/step
};

/// Brent-Dekker root finder (bisection, secant and inverse quadratic steps).
/// Requires f(lo) and f(hi) of opposite sign (or one of them zero);
/// otherwise returns converged = false at the endpoint with smaller |f|.
Result find_root(const std::function<double(double)>& f, double lo, double hi, double xtol,
                 int max_iterations);

/// Brent minimizer: golden-section steps with parabolic interpolation.
/// Converges to a local minimum in (lo, hi).
Result minimize(const std::function<double(double)>& f, double lo, double hi, double xtol,
                int max_iterations);

} // namespace fasrssi::solve1d
