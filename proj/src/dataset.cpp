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

#include "dataset.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include <json.hpp>

#include "crypto.hpp"
#include "errors.hpp"
#include "privacy.hpp"

namespace aero::data {

namespace {

using nlohmann::json;

[[noreturn]] void parse_fail(std::size_t line_no, const std::string& what) {
    raise(Errc::parse, "line " + std::to_string(line_no) + ": " + what);
}

FlightRecord record_from_json(const json& j, std::size_t line_no) {
    FlightRecord rec;
    if (!j.is_object()) parse_fail(line_no, "record is not a JSON object");
    if (!j.contains("timestamp_us") || !j["timestamp_us"].is_number_unsigned())
        parse_fail(line_no, "missing or invalid timestamp_us");
    rec.timestamp_us = j["timestamp_us"].get<std::uint64_t>();

    if (!j.contains("position") || !j["position"].is_array() || j["position"].size() != 3)
        parse_fail(line_no, "position must be an array of 3 numbers");
    for (std::size_t i = 0; i < 3; ++i) {
        if (!j["position"][i].is_number()) parse_fail(line_no, "position must be numeric");
        rec.position[i] = j["position"][i].get<double>();
        if (!std::isfinite(rec.position[i])) parse_fail(line_no, "position must be finite");
    }

    if (j.contains("sensor")) {
        if (!j["sensor"].is_object()) parse_fail(line_no, "sensor must be an object");
        for (const auto& [name, value] : j["sensor"].items()) {
            if (!value.is_number()) parse_fail(line_no, "sensor '" + name + "' must be numeric");
            double v = value.get<double>();
            if (!std::isfinite(v)) parse_fail(line_no, "sensor '" + name + "' must be finite");
            rec.sensors.emplace_back(name, v);
        }
        std::sort(rec.sensors.begin(), rec.sensors.end());
    }
    return rec;
}

json record_to_json(const FlightRecord& rec) {
    json j;
    j["timestamp_us"] = rec.timestamp_us;
    j["position"] = {rec.position[0], rec.position[1], rec.position[2]};
    json sensor = json::object();
    for (const auto& [name, value] : rec.sensors) sensor[name] = value;
    j["sensor"] = sensor;
    return j;
}

constexpr std::array<std::uint8_t, 4> kExportMagic = {'A', 'E', 'N', 'C'};

}  // namespace

void encode(canonical::Writer& w, const FlightRecord& record) {
    w.u64(record.timestamp_us);
    for (double c : record.position) w.f64(c);
    w.u64(record.sensors.size());
    for (const auto& [name, value] : record.sensors) {
        w.str(name);
        w.f64(value);
    }
}

std::vector<FlightRecord> parse_flight_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) raise(Errc::io, "cannot open dataset: " + path.string());

    std::vector<FlightRecord> records;
    std::string line;
    std::size_t line_no = 0;
    std::uint64_t last_ts = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        json j = json::parse(line, nullptr, false);
        if (j.is_discarded()) parse_fail(line_no, "invalid JSON");
        FlightRecord rec = record_from_json(j, line_no);
        if (!records.empty() && rec.timestamp_us < last_ts)
            parse_fail(line_no, "timestamps must be non-decreasing");
        last_ts = rec.timestamp_us;
        records.push_back(std::move(rec));
    }
    if (records.empty()) raise(Errc::parse, "line 1: dataset has no records");
    return records;
}

std::vector<merkle::DataBlock> chunk_records(std::span<const FlightRecord> records,
                                             std::uint64_t chunk_size) {
    if (chunk_size == 0) raise(Errc::invalid_argument, "chunk_size must be >= 1");
    std::vector<merkle::DataBlock> blocks;
    for (std::size_t start = 0; start < records.size(); start += chunk_size) {
        std::size_t end = std::min(records.size(), start + chunk_size);
        canonical::Writer w;
        w.u64(end - start);
        for (std::size_t i = start; i < end; ++i) encode(w, records[i]);
        merkle::DataBlock block;
        block.index = blocks.size();
        block.timestamp_us = records[start].timestamp_us;
        block.payload = w.take();
        blocks.push_back(std::move(block));
    }
    return blocks;
}

FlightDataset load_dataset(const std::filesystem::path& path, std::uint64_t chunk_size) {
    FlightDataset ds;
    ds.records = parse_flight_file(path);
    ds.blocks = chunk_records(ds.records, chunk_size);
    ds.chunk_size = chunk_size;
    return ds;
}

ExportResult export_noised(const std::filesystem::path& in, const std::filesystem::path& out,
                           const std::string& field, double epsilon, double delta, double clamp_lo,
                           double clamp_hi, std::uint64_t rng_seed,
                           const std::optional<std::string>& encrypt_seed) {
    std::vector<FlightRecord> records = parse_flight_file(in);

    privacy::NumericSeries series;
    series.clamp_lo = clamp_lo;
    series.clamp_hi = clamp_hi;
    series.unit = field;
    std::vector<std::size_t> positions;  // index of the field within each record
    for (std::size_t i = 0; i < records.size(); ++i) {
        const auto& sensors = records[i].sensors;
        auto it = std::find_if(sensors.begin(), sensors.end(),
                               [&](const auto& kv) { return kv.first == field; });
        if (it == sensors.end())
            raise(Errc::not_found, "record " + std::to_string(i + 1) + " has no sensor field '" +
                                       field + "'");
        positions.push_back(static_cast<std::size_t>(it - sensors.begin()));
        series.values.push_back(it->second);
    }

    privacy::Budget budget{epsilon, delta, clamp_hi - clamp_lo};
    double sigma = privacy::calibrate_sigma(budget);
    privacy::NumericSeries noised = privacy::add_noise(series, sigma, rng_seed);

    std::string body;
    for (std::size_t i = 0; i < records.size(); ++i) {
        records[i].sensors[positions[i]].second = noised.values[i];
        body += record_to_json(records[i]).dump();
        body += '\n';
    }

    std::ofstream os(out, std::ios::binary | std::ios::trunc);
    if (!os) raise(Errc::io, "cannot open output: " + out.string());
    if (!encrypt_seed) {
        os << body;
    } else {
        // Deterministic container: the nonce is bound to the plaintext, so a
        // given (key, content) pair always produces the same file and the
        // nonce never repeats across distinct contents.
        crypto::SymmetricKey key =
            crypto::derive_key(as_view(to_bytes(*encrypt_seed)), "aero.export");
        canonical::Writer nw;
        nw.str("aero.export.nonce");
        nw.bytes(as_view(to_bytes(body)));
        crypto::Digest nd = crypto::sha256(as_view(nw.data()));
        crypto::Nonce nonce{};
        std::copy_n(nd.bytes.begin(), nonce.size(), nonce.begin());
        crypto::Ciphertext ct = crypto::aead_encrypt(key, as_view(to_bytes(body)), nonce);
        os.write(reinterpret_cast<const char*>(kExportMagic.data()), kExportMagic.size());
        os.write(reinterpret_cast<const char*>(ct.nonce.data()), ct.nonce.size());
        os.write(reinterpret_cast<const char*>(ct.auth_tag.data()), ct.auth_tag.size());
        os.write(reinterpret_cast<const char*>(ct.body.data()),
                 static_cast<std::streamsize>(ct.body.size()));
    }
    if (!os) raise(Errc::io, "write failed: " + out.string());
    return ExportResult{sigma, records.size()};
}

Bytes decrypt_export(const std::filesystem::path& path, const std::string& encrypt_seed) {
    std::ifstream in(path, std::ios::binary);
    if (!in) raise(Errc::io, "cannot open export: " + path.string());
    Bytes raw((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (raw.size() < 4 + crypto::kNonceSize + crypto::kTagSize ||
        !std::equal(kExportMagic.begin(), kExportMagic.end(), raw.begin()))
        raise(Errc::parse, "not an encrypted export container");

    crypto::Ciphertext ct;
    std::size_t off = kExportMagic.size();
    std::copy_n(raw.begin() + static_cast<std::ptrdiff_t>(off), ct.nonce.size(), ct.nonce.begin());
    off += ct.nonce.size();
    std::copy_n(raw.begin() + static_cast<std::ptrdiff_t>(off), ct.auth_tag.size(),
                ct.auth_tag.begin());
    off += ct.auth_tag.size();
    ct.body.assign(raw.begin() + static_cast<std::ptrdiff_t>(off), raw.end());

    crypto::SymmetricKey key = crypto::derive_key(as_view(to_bytes(encrypt_seed)), "aero.export");
    return crypto::aead_decrypt(key, ct);
}

}  // namespace aero::data
