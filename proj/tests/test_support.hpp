/*
   Copyright 2026 The Aeroledger Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#pragma once

#include <cstdint>
#include <string>

#include "bytes.hpp"
#include "merkle.hpp"
#include "types.hpp"

namespace aero::testing {

// splitmix64: tiny deterministic generator so fuzz scripts and frozen values
// do not depend on libstdc++ distribution internals.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // uniform in [0, bound)
    std::uint64_t below(std::uint64_t bound) { return next() % bound; }

    // uniform double in [0, 1)
    double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    // uniform double in [lo, hi)
    double range(double lo, double hi) { return lo + (hi - lo) * unit(); }

    bool coin() { return (next() & 1) != 0; }

    Bytes bytes(std::size_t n) {
        Bytes out(n);
        for (auto& b : out) b = static_cast<std::uint8_t>(next());
        return out;
    }

  private:
    std::uint64_t state_;
};

inline merkle::DataBlock make_block(std::uint64_t index, Rng& rng, std::size_t payload_len = 24) {
    merkle::DataBlock b;
    b.index = index;
    b.timestamp_us = 1'000'000 * (index + 1);
    b.payload = rng.bytes(payload_len);
    return b;
}

inline std::vector<merkle::DataBlock> make_blocks(std::size_t n, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<merkle::DataBlock> blocks;
    blocks.reserve(n);
    for (std::size_t i = 0; i < n; ++i) blocks.push_back(make_block(i, rng));
    return blocks;
}

inline Principal principal(const std::string& label) {
    return Principal::derive(as_view(to_bytes("test-seed")), label);
}

}  // namespace aero::testing
