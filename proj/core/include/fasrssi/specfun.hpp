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

namespace fasrssi::specfun {

/// Zero-order Bessel function of the first kind.
///
/// Absolute error stays below 1e-10 for |x| <= 1000 (tested against a
/// multiprecision oracle). Evaluated on |x|, so J0(-x) == J0(x) bit for bit.
/// Throws std::domain_error for NaN or infinite input.
double bessel_j0(double x);

} // namespace fasrssi::specfun
