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

#include "fasrssi/measurement_io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <string_view>

#include "fasrssi/errors.hpp"

namespace fasrssi {
namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) {
        s.remove_prefix(1);
    }
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
        s.remove_suffix(1);
    }
    return s;
}

template <typename T>
bool parse_number(std::string_view s, T& out) {
    s = trim(s);
    if (s.empty()) return false;
    const auto* end = s.data() + s.size();
    const auto [ptr, ec] = std::from_chars(s.data(), end, out);
    return ec == std::errc() && ptr == end;
}

} // namespace

void write_measurements(std::ostream& os, std::span<const MeasurementSet> snapshots) {
    char buf[32];
    for (std::size_t t = 0; t < snapshots.size(); ++t) {
        os << t;
        for (double v : snapshots[t].rssi_dbm) {
            std::snprintf(buf, sizeof buf, "%.9g", v);
            os << ',' << buf;
        }
        os << '\n';
    }
}

std::vector<MeasurementSet> read_measurements(std::istream& is, const FasLayout& layout) {
    std::vector<MeasurementSet> out;
    std::string line;
    int line_no = 0;
    while (std::getline(is, line)) {
        ++line_no;
        const std::string_view view = trim(line);
        if (view.empty() || view.front() == '#') continue;
        auto fail = [&](const std::string& why) {
            throw InputError("measurement line " + std::to_string(line_no) + ": " + why);
        };

        std::vector<std::string_view> fields;
        std::size_t start = 0;
        while (true) {
            const std::size_t comma = view.find(',', start);
            fields.push_back(view.substr(start, comma - start));
            if (comma == std::string_view::npos) break;
            start = comma + 1;
        }
        long long index = 0;
        if (!parse_number(fields.front(), index) || index < 0) fail("bad snapshot index");
        if (static_cast<int>(fields.size()) - 1 != layout.n_ports) {
            fail("expected " + std::to_string(layout.n_ports) + " readings, got " +
                 std::to_string(fields.size() - 1));
        }
        MeasurementSet ms;
        ms.layout = layout;
        ms.rssi_dbm.resize(layout.n_ports);
        for (int i = 0; i < layout.n_ports; ++i) {
            double v = 0.0;
            if (!parse_number(fields[i + 1], v) || !std::isfinite(v)) {
                fail("reading " + std::to_string(i) + " is not a finite number");
            }
            ms.rssi_dbm[i] = v;
        }
        out.push_back(std::move(ms));
    }
    if (out.empty()) throw InputError("measurement input contains no snapshots");
    return out;
}

std::vector<MeasurementSet> read_measurements_file(const std::string& path,
                                                   const FasLayout& layout) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open measurement file '" + path + "'");
    return read_measurements(in, layout);
}

} // namespace fasrssi
