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

#include <map>

#include "canonical.hpp"
#include "errors.hpp"
#include "merkle.hpp"
#include "test_support.hpp"

using namespace aero;

TEST_SUITE_BEGIN("canonical");

TEST_CASE("u64 zero encodes as 8 zero bytes") {
    canonical::Writer w;
    w.u64(0);
    CHECK(to_hex(as_view(w.data())) == "0000000000000000");
}

TEST_CASE("empty string encodes as a zero length prefix and no payload") {
    canonical::Writer w;
    w.str("");
    CHECK(to_hex(as_view(w.data())) == "0000000000000000");
    CHECK(w.data().size() == 8);
}

TEST_CASE("integers are big-endian") {
    canonical::Writer w;
    w.u64(0x0102030405060708ull);
    w.u16(0xbeef);
    CHECK(to_hex(as_view(w.data())) == "0102030405060708beef");
}

TEST_CASE("f64 uses the IEEE-754 bit pattern") {
    canonical::Writer w;
    w.f64(1.0);
    CHECK(to_hex(as_view(w.data())) == "3ff0000000000000");
}

TEST_CASE("reader round-trips and rejects trailing bytes") {
    canonical::Writer w;
    w.u64(42);
    w.str("hello");
    w.boolean(true);
    canonical::Reader r(as_view(w.data()));
    CHECK(r.u64() == 42);
    CHECK(r.str() == "hello");
    CHECK(r.boolean() == true);
    CHECK_NOTHROW(r.expect_done());

    canonical::Reader r2(as_view(w.data()));
    CHECK(r2.u64() == 42);
    CHECK_THROWS_AS(r2.expect_done(), Error);
}

TEST_CASE("reader rejects truncated input") {
    canonical::Writer w;
    w.str("payload");
    Bytes cut(w.data().begin(), w.data().end() - 2);
    canonical::Reader r(as_view(cut));
    CHECK_THROWS_AS(r.str(), Error);
}

TEST_CASE("block encoding is injective over a small value lattice") {
    // Exhaustive enumeration: every distinct (index, timestamp, payload)
    // combination must map to a distinct byte string.
    std::map<Bytes, merkle::DataBlock> seen;
    std::vector<Bytes> payloads = {{}, {0x00}, {0x01}, {0x00, 0x00}, {0x00, 0x01}, {0x01, 0x00}};
    int combos = 0;
    for (std::uint64_t index : {0u, 1u, 2u}) {
        for (std::uint64_t ts : {0u, 1u, 255u}) {
            for (const Bytes& payload : payloads) {
                merkle::DataBlock b{index, ts, payload};
                canonical::Writer w;
                merkle::encode(w, b);
                auto [it, inserted] = seen.emplace(w.take(), b);
                if (!inserted) CHECK(it->second == b);
                CHECK(inserted);
                ++combos;
            }
        }
    }
    CHECK(combos == 3 * 3 * 6);
    CHECK(seen.size() == static_cast<std::size_t>(combos));
}

TEST_CASE("encodings are equal exactly when blocks are equal") {
    aero::testing::Rng rng(0x5eedc0de);
    for (int i = 0; i < 100; ++i) {
        merkle::DataBlock a = aero::testing::make_block(rng.below(10), rng, rng.below(8));
        merkle::DataBlock b = aero::testing::make_block(rng.below(10), rng, rng.below(8));
        canonical::Writer wa, wb;
        merkle::encode(wa, a);
        merkle::encode(wb, b);
        CHECK((wa.data() == wb.data()) == (a == b));
    }
}

TEST_SUITE_END();
