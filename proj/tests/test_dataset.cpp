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

#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "dataset.hpp"
#include "errors.hpp"
#include "privacy.hpp"
#include "test_support.hpp"

using namespace aero;
namespace fs = std::filesystem;

namespace {

struct TempFile {
    fs::path path;

    explicit TempFile(const std::string& name, const std::string& content)
        : path(fs::temp_directory_path() / name) {
        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        out << content;
    }
    ~TempFile() {
        std::error_code ec;
        fs::remove(path, ec);
    }
};

std::string sample_flight(int records) {
    std::string out;
    for (int i = 0; i < records; ++i) {
        out += "{\"timestamp_us\": " + std::to_string(1000000 * (i + 1)) +
               ", \"position\": [" + std::to_string(i) + ".0, 2.0, 30.5], " +
               "\"sensor\": {\"altitude\": " + std::to_string(100 + i) +
               ".25, \"battery\": 0.9}}\n";
    }
    return out;
}

}  // namespace

TEST_SUITE_BEGIN("dataset");

TEST_CASE("well-formed files parse with sorted sensor fields") {
    TempFile f("aero_ds1.jsonl",
               "{\"timestamp_us\": 1, \"position\": [0,0,0], \"sensor\": {\"zeta\": 1.0, "
               "\"alpha\": 2.0}}\n");
    auto records = data::parse_flight_file(f.path);
    REQUIRE(records.size() == 1);
    REQUIRE(records[0].sensors.size() == 2);
    CHECK(records[0].sensors[0].first == "alpha");
    CHECK(records[0].sensors[1].first == "zeta");
}

TEST_CASE("parse failures carry the offending line number") {
    TempFile f("aero_ds2.jsonl", sample_flight(2) + "not json\n");
    try {
        data::parse_flight_file(f.path);
        FAIL("expected throw");
    } catch (const Error& e) {
        CHECK(std::string(e.what()).find("line 3") != std::string::npos);
    }
}

TEST_CASE("decreasing timestamps are rejected with the line number") {
    TempFile f("aero_ds3.jsonl",
               "{\"timestamp_us\": 5, \"position\": [0,0,0]}\n"
               "{\"timestamp_us\": 4, \"position\": [0,0,0]}\n");
    try {
        data::parse_flight_file(f.path);
        FAIL("expected throw");
    } catch (const Error& e) {
        std::string msg = e.what();
        CHECK(msg.find("line 2") != std::string::npos);
        CHECK(msg.find("non-decreasing") != std::string::npos);
    }
}

TEST_CASE("empty files are rejected") {
    TempFile f("aero_ds4.jsonl", "\n\n");
    CHECK_THROWS_AS(data::parse_flight_file(f.path), Error);
}

TEST_CASE("chunking follows ceiling arithmetic") {
    TempFile f("aero_ds5.jsonl", sample_flight(10));
    auto ds = data::load_dataset(f.path, 4);
    CHECK(ds.blocks.size() == 3);  // 4 + 4 + 2
    CHECK(ds.blocks[0].index == 0);
    CHECK(ds.blocks[2].index == 2);
    CHECK(ds.blocks[0].timestamp_us == 1000000);
    CHECK(ds.blocks[1].timestamp_us == 5000000);

    auto single = data::load_dataset(f.path, 1);
    CHECK(single.blocks.size() == 10);
    auto all = data::load_dataset(f.path, 100);
    CHECK(all.blocks.size() == 1);
}

TEST_CASE("zero chunk size is rejected") {
    TempFile f("aero_ds6.jsonl", sample_flight(1));
    CHECK_THROWS_AS(data::load_dataset(f.path, 0), Error);
}

TEST_CASE("a single-record ingest follows the single-leaf root rule") {
    TempFile f("aero_ds6b.jsonl", sample_flight(1));
    auto ds = data::load_dataset(f.path, 1);
    REQUIRE(ds.blocks.size() == 1);
    CHECK(merkle::Tree::build(ds.blocks).root() == merkle::leaf_digest(ds.blocks[0]));
}

TEST_CASE("ingest roots are deterministic across loads") {
    TempFile f("aero_ds7.jsonl", sample_flight(7));
    auto a = data::load_dataset(f.path, 2);
    auto b = data::load_dataset(f.path, 2);
    CHECK(merkle::Tree::build(a.blocks).root() == merkle::Tree::build(b.blocks).root());
    // chunk size changes the commitment
    auto c = data::load_dataset(f.path, 3);
    CHECK(merkle::Tree::build(a.blocks).root() != merkle::Tree::build(c.blocks).root());
}

TEST_CASE("noised export preserves every other column") {
    TempFile in("aero_ds8.jsonl", sample_flight(5));
    fs::path out = fs::temp_directory_path() / "aero_ds8_out.jsonl";
    data::ExportResult result =
        data::export_noised(in.path, out, "altitude", 1.0, 1e-5, 0.0, 1000.0, 42);
    CHECK(result.records == 5);
    CHECK(result.sigma ==
          doctest::Approx(privacy::calibrate_sigma({1.0, 1e-5, 1000.0})).epsilon(1e-15));

    auto original = data::parse_flight_file(in.path);
    auto noised = data::parse_flight_file(out);
    REQUIRE(noised.size() == original.size());
    for (std::size_t i = 0; i < noised.size(); ++i) {
        CHECK(noised[i].timestamp_us == original[i].timestamp_us);
        CHECK(noised[i].position == original[i].position);
        REQUIRE(noised[i].sensors.size() == original[i].sensors.size());
        for (std::size_t k = 0; k < noised[i].sensors.size(); ++k) {
            CHECK(noised[i].sensors[k].first == original[i].sensors[k].first);
            if (noised[i].sensors[k].first == "battery")
                CHECK(noised[i].sensors[k].second == original[i].sensors[k].second);
            if (noised[i].sensors[k].first == "altitude")
                CHECK(noised[i].sensors[k].second != original[i].sensors[k].second);
        }
    }
    fs::remove(out);
}

TEST_CASE("export is deterministic for a fixed seed") {
    TempFile in("aero_ds9.jsonl", sample_flight(4));
    fs::path out1 = fs::temp_directory_path() / "aero_ds9_a.jsonl";
    fs::path out2 = fs::temp_directory_path() / "aero_ds9_b.jsonl";
    data::export_noised(in.path, out1, "altitude", 1.0, 1e-5, 0.0, 500.0, 7);
    data::export_noised(in.path, out2, "altitude", 1.0, 1e-5, 0.0, 500.0, 7);
    std::ifstream a(out1), b(out2);
    std::string sa((std::istreambuf_iterator<char>(a)), std::istreambuf_iterator<char>());
    std::string sb((std::istreambuf_iterator<char>(b)), std::istreambuf_iterator<char>());
    CHECK(sa == sb);
    CHECK(!sa.empty());
    fs::remove(out1);
    fs::remove(out2);
}

TEST_CASE("missing field names the record") {
    TempFile in("aero_ds10.jsonl", sample_flight(3));
    fs::path out = fs::temp_directory_path() / "aero_ds10_out.jsonl";
    CHECK_THROWS_AS(data::export_noised(in.path, out, "nothere", 1.0, 1e-5, 0, 1, 1), Error);
}

TEST_CASE("encrypted exports round-trip only with the right seed") {
    TempFile in("aero_ds11.jsonl", sample_flight(3));
    fs::path plain = fs::temp_directory_path() / "aero_ds11_plain.jsonl";
    fs::path enc = fs::temp_directory_path() / "aero_ds11_enc.bin";
    data::export_noised(in.path, plain, "altitude", 1.0, 1e-5, 0, 1000, 11);
    data::export_noised(in.path, enc, "altitude", 1.0, 1e-5, 0, 1000, 11,
                        std::string("export-key"));

    Bytes decrypted = data::decrypt_export(enc, "export-key");
    std::ifstream p(plain, std::ios::binary);
    std::string expected((std::istreambuf_iterator<char>(p)), std::istreambuf_iterator<char>());
    CHECK(std::string(decrypted.begin(), decrypted.end()) == expected);

    CHECK_THROWS_AS(data::decrypt_export(enc, "wrong-key"), Error);
    fs::remove(plain);
    fs::remove(enc);
}

TEST_SUITE_END();
