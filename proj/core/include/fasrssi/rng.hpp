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

#include <array>
#include <cstdint>

namespace fasrssi {

/// Philox4x32-10 block function: maps (counter, key) to four 32-bit words.
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter,
                                       std::array<std::uint32_t, 2> key);

/// Identifies one reproducible random stream. Two streams with the same seed
/// but different ids never share counter values.
struct StreamId {
    std::uint64_t seed = 0;
    std::uint64_t stream = 0;
};

/// Stream id for trial `trial` of sweep point `axis_index`.
constexpr StreamId trial_stream(std::uint64_t seed, std::uint32_t axis_index, std::uint32_t trial) {
    return {seed, (static_cast<std::uint64_t>(axis_index) << 32) | trial};
}

/// Counter-based generator over a single stream. Output depends only on
/// (seed, stream, position), never on scheduling or thread count.
/// Normal variates use Box-Muller, so results do not depend on the standard
/// library's distribution implementations.
class CounterRng {
public:
    explicit CounterRng(StreamId id);

    std::uint32_t next_u32();
    std::uint64_t next_u64();
    /// Uniform on the open interval (0, 1) with 53 random bits.
    double uniform();
    double standard_normal();

    StreamId id() const { return id_; }

private:
    void refill();

    StreamId id_;
    std::uint64_t block_ = 0;
    std::array<std::uint32_t, 4> buffer_{};
    int used_ = 4;
    double spare_normal_ = 0.0;
    bool has_spare_ = false;
};

} // namespace fasrssi
