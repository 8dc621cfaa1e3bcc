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

#include "fasrssi/result_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include <nlohmann/json.hpp>

#include "fasrssi/errors.hpp"

namespace fasrssi {
namespace {

const char* const kColumns[] = {"axis_value", "realized_n", "spacing_h", "mu2",
                                "estimator",  "nmse_db",    "stderr_db", "trials",
                                "excluded",   "flagged"};

std::string g9(double v) {
    if (std::isnan(v)) return "nan";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

// Round-trips through the 9-digit text so CSV and JSON carry the same values.
double rounded(double v) {
    return std::isfinite(v) ? std::stod(g9(v)) : v;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot open '" + path + "' for writing");
    return out;
}

} // namespace

void write_csv(std::ostream& os, const ResultTable& table) {
    for (const auto& [key, value] : table.header) os << "# " << key << ": " << value << '\n';
    for (std::size_t c = 0; c < std::size(kColumns); ++c) os << (c ? "," : "") << kColumns[c];
    os << '\n';
    for (const auto& r : table.rows) {
        os << g9(r.axis_value) << ',' << r.realized_n << ','
           << (r.spacing_h ? g9(*r.spacing_h) : std::string()) << ',' << g9(r.mu2) << ','
           << to_string(r.estimator) << ',' << g9(r.nmse_db) << ',' << g9(r.stderr_db) << ','
           << r.trials << ',' << r.excluded << ',' << (r.flagged ? 1 : 0) << '\n';
    }
}

void write_json(std::ostream& os, const ResultTable& table) {
    nlohmann::ordered_json doc;
    nlohmann::ordered_json header = nlohmann::ordered_json::object();
    for (const auto& [key, value] : table.header) header[key] = value;
    doc["header"] = header;
    doc["columns"] = kColumns;
    auto rows = nlohmann::ordered_json::array();
    for (const auto& r : table.rows) {
        nlohmann::ordered_json row;
        row["axis_value"] = rounded(r.axis_value);
        row["realized_n"] = r.realized_n;
        row["spacing_h"] = r.spacing_h ? nlohmann::ordered_json(rounded(*r.spacing_h))
                                       : nlohmann::ordered_json(nullptr);
        row["mu2"] = rounded(r.mu2);
        row["estimator"] = std::string(to_string(r.estimator));
        row["nmse_db"] = std::isfinite(r.nmse_db) ? nlohmann::ordered_json(rounded(r.nmse_db))
                                                  : nlohmann::ordered_json(nullptr);
        row["stderr_db"] = rounded(r.stderr_db);
        row["trials"] = r.trials;
        row["excluded"] = r.excluded;
        row["flagged"] = r.flagged;
        rows.push_back(row);
    }
    doc["rows"] = rows;
    os << doc.dump(2) << '\n';
}

void write_csv_file(const std::string& path, const ResultTable& table) {
    auto out = open_out(path);
    write_csv(out, table);
}

void write_json_file(const std::string& path, const ResultTable& table) {
    auto out = open_out(path);
    write_json(out, table);
}

} // namespace fasrssi
