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

#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "fasrssi/forward_model.hpp"

namespace fasrssi {

/// Line-oriented snapshot records:
///
///     <snapshot_index>,<rssi_0>,<rssi_1>,...,<rssi_{N-1}>
///
/// Values are dBm written with 9 significant digits. Blank lines and lines
/// starting with '#' are ignored on input.
void write_measurements(std::ostream& os, std::span<const MeasurementSet> snapshots);

/// Parses records for `layout`; every line must carry exactly n_ports values.
/// Throws InputError (with the line number) on malformed input.
std::vector<MeasurementSet> read_measurements(std::istream& is, const FasLayout& layout);

std::vector<MeasurementSet> read_measurements_file(const std::string& path,
                                                   const FasLayout& layout);

} // namespace fasrssi
