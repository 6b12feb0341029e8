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

#include "privacy.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "canonical.hpp"
#include "crypto.hpp"
#include "errors.hpp"

namespace aero::privacy {

double calibrate_sigma(const Budget& budget) {
    if (!(budget.epsilon > 0.0) || !std::isfinite(budget.epsilon))
        raise(Errc::invalid_argument, "privacy: epsilon must be positive");
    if (!(budget.delta > 0.0) || !(budget.delta < 1.0))
        raise(Errc::invalid_argument, "privacy: delta must lie in (0, 1)");
    if (!(budget.sensitivity > 0.0) || !std::isfinite(budget.sensitivity))
        raise(Errc::invalid_argument, "privacy: sensitivity must be positive");
    return budget.sensitivity * std::sqrt(2.0 * std::log(1.25 / budget.delta)) / budget.epsilon;
}

double GaussianStream::next() {
    canonical::Writer w;
    w.str("aero.privacy.gauss.v1");
    w.u64(seed_);
    w.u64(counter_++);
    crypto::Digest d = crypto::sha256(as_view(w.data()));

    std::uint64_t x = 0, y = 0;
    for (int i = 0; i < 8; ++i) x = (x << 8) | d.bytes[static_cast<std::size_t>(i)];
    for (int i = 8; i < 16; ++i) y = (y << 8) | d.bytes[static_cast<std::size_t>(i)];

    double u1 = (static_cast<double>(x >> 11) + 1.0) * 0x1.0p-53;  // (0, 1]
    double u2 = static_cast<double>(y >> 11) * 0x1.0p-53;          // [0, 1)
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

NumericSeries add_noise(const NumericSeries& series, double sigma, std::uint64_t rng_seed) {
    if (!(series.clamp_lo < series.clamp_hi))
        raise(Errc::invalid_argument, "privacy: clamp_lo must be below clamp_hi");
    if (sigma < 0.0 || !std::isfinite(sigma))
        raise(Errc::invalid_argument, "privacy: sigma must be non-negative");

    NumericSeries out = series;
    GaussianStream stream(rng_seed);
    for (double& v : out.values) {
        if (!std::isfinite(v)) raise(Errc::invalid_argument, "privacy: non-finite input value");
        double clamped = std::clamp(v, series.clamp_lo, series.clamp_hi);
        // clamp before noise: the exported value for an out-of-range reading
        // at sigma 0 is exactly the bound
        v = (sigma == 0.0) ? clamped : clamped + sigma * stream.next();
    }
    return out;
}

}  // namespace aero::privacy
