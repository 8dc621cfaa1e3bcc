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

#include <ostream>
#include <string>

#include "fasrssi/experiments.hpp"

namespace fasrssi {

/// CSV: '# key: value' header lines, a column header, then one row per
/// (spacing, axis value, estimator). Numbers carry 9 significant digits.
void write_csv(std::ostream& os, const ResultTable& table);

/// JSON object {"header": {...}, "columns": [...], "rows": [{...}, ...]}
/// with the same fields as the CSV.
void write_json(std::ostream& os, const ResultTable& table);

void write_csv_file(const std::string& path, const ResultTable& table);
void write_json_file(const std::string& path, const ResultTable& table);

} // namespace fasrssi
