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
#include <vector>

#include "bytes.hpp"

namespace aero::privacy {

struct NumericSeries {
    std::vector<double> values;
    double clamp_lo = 0.0;
    double clamp_hi = 0.0;  // must exceed clamp_lo
    std::string unit;
};

struct Budget {
    double epsilon = 0.0;      // > 0
    double delta = 0.0;        // in (0, 1)
    double sensitivity = 0.0;  // per-record bound, clamp_hi - clamp_lo
};

// Classical Gaussian-mechanism calibration:
//   sigma = sensitivity * sqrt(2 * ln(1.25 / delta)) / epsilon
double calibrate_sigma(const Budget& budget);

// Deterministic N(0,1) stream, documented for cross-language replay:
//   block_i = sha256(canonical("aero.privacy.gauss.v1") || u64(seed) || u64(i))
//   x = u64_be(block_i[0..8)),  y = u64_be(block_i[8..16))
//   u1 = ((x >> 11) + 1) * 2^-53   in (0, 1]
//   u2 =  (y >> 11)      * 2^-53   in [0, 1)
//   z_i = sqrt(-2 ln u1) * cos(2 pi u2)
// One Gaussian per counter value (the Box-Muller sine branch is discarded).
class GaussianStream {
  public:
    explicit GaussianStream(std::uint64_t seed) : seed_(seed) {}

    double next();

  private:
    std::uint64_t seed_;
    std::uint64_t counter_ = 0;
};

// Clamps every value to [clamp_lo, clamp_hi], then adds independent
// N(0, sigma^2) noise from the seeded stream. sigma = 0 exports the clamped
// series exactly.
NumericSeries add_noise(const NumericSeries& series, double sigma, std::uint64_t rng_seed);

}  // namespace aero::privacy
