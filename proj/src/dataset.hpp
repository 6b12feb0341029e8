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

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "merkle.hpp"

namespace aero::data {

// One telemetry record. File form is JSON lines:
//   {"timestamp_us": 12000000, "position": [x, y, z], "sensor": {"altitude": 101.5, ...}}
// Sensor entries are kept sorted by name so the canonical encoding is stable.
struct FlightRecord {
    std::uint64_t timestamp_us = 0;
    std::array<double, 3> position{};
    std::vector<std::pair<std::string, double>> sensors;
};

void encode(canonical::Writer& w, const FlightRecord& record);

struct FlightDataset {
    std::vector<FlightRecord> records;
    std::vector<merkle::DataBlock> blocks;
    std::uint64_t chunk_size = 1;
};

// Parse failures throw Errc::parse with a "line N" message. Timestamps must
// be non-decreasing in file order.
std::vector<FlightRecord> parse_flight_file(const std::filesystem::path& path);

// Groups records into blocks of at most chunk_size, in file order. The block
// timestamp is the first record's; payload is the canonical encoding of the
// contained records.
std::vector<merkle::DataBlock> chunk_records(std::span<const FlightRecord> records,
                                             std::uint64_t chunk_size);

FlightDataset load_dataset(const std::filesystem::path& path, std::uint64_t chunk_size);

// Privacy export: rewrites the file with the named sensor field clamped and
// noised (see privacy::add_noise); every other column is preserved. Returns
// the sigma used and the record count. When encrypt_seed is set the output
// file is an AEAD container (see docs/FORMATS.md) instead of plain JSONL.
struct ExportResult {
    double sigma = 0.0;
    std::uint64_t records = 0;
};
ExportResult export_noised(const std::filesystem::path& in, const std::filesystem::path& out,
                           const std::string& field, double epsilon, double delta, double clamp_lo,
                           double clamp_hi, std::uint64_t rng_seed,
                           const std::optional<std::string>& encrypt_seed = std::nullopt);

// Decrypts an AEAD export container back to plaintext bytes.
Bytes decrypt_export(const std::filesystem::path& path, const std::string& encrypt_seed);

}  // namespace aero::data
