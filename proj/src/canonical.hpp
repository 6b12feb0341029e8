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
#include <bit>
#include <cstdint>
#include <string_view>

#include "bytes.hpp"
#include "errors.hpp"

namespace aero::canonical {

// Normative byte encoding for everything that gets hashed or logged.
// The rules (see docs/FORMATS.md):
//   - integers: fixed-width big-endian
//   - f64: IEEE-754 bit pattern as u64 big-endian
//   - bytes / strings: u64 BE length prefix, then raw bytes
//   - fixed-size values (digests, addresses): raw, no prefix
//   - sequences: u64 BE element count, then elements
//   - variants / enums: 1-byte tag, then payload
// Field order per type is fixed; the encoding is injective by construction.

class Writer {
  public:
    void u8(std::uint8_t v) { out_.push_back(v); }

    void u16(std::uint16_t v) {
        out_.push_back(static_cast<std::uint8_t>(v >> 8));
        out_.push_back(static_cast<std::uint8_t>(v));
    }

    void u32(std::uint32_t v) {
        for (int shift = 24; shift >= 0; shift -= 8)
            out_.push_back(static_cast<std::uint8_t>(v >> shift));
    }

    void u64(std::uint64_t v) {
        for (int shift = 56; shift >= 0; shift -= 8)
            out_.push_back(static_cast<std::uint8_t>(v >> shift));
    }

    void f64(double v) { u64(std::bit_cast<std::uint64_t>(v)); }

    void boolean(bool v) { u8(v ? 1 : 0); }

    void raw(BytesView data) { out_.insert(out_.end(), data.begin(), data.end()); }

    template <std::size_t N>
    void fixed(const std::array<std::uint8_t, N>& data) {
        out_.insert(out_.end(), data.begin(), data.end());
    }

    void bytes(BytesView data) {
        u64(data.size());
        raw(data);
    }

    void str(std::string_view s) {
        u64(s.size());
        out_.insert(out_.end(), s.begin(), s.end());
    }

    const Bytes& data() const noexcept { return out_; }
    Bytes take() { return std::move(out_); }

  private:
    Bytes out_;
};

class Reader {
  public:
    explicit Reader(BytesView data) : data_(data) {}

    std::uint8_t u8() {
        need(1);
        return data_[pos_++];
    }

    std::uint16_t u16() {
        need(2);
        std::uint16_t v = static_cast<std::uint16_t>(
            (static_cast<std::uint16_t>(data_[pos_]) << 8) | data_[pos_ + 1]);
        pos_ += 2;
        return v;
    }

    std::uint32_t u32() {
        need(4);
        std::uint32_t v = 0;
        for (int i = 0; i < 4; ++i) v = (v << 8) | data_[pos_ + i];
        pos_ += 4;
        return v;
    }

    std::uint64_t u64() {
        need(8);
        std::uint64_t v = 0;
        for (int i = 0; i < 8; ++i) v = (v << 8) | data_[pos_ + i];
        pos_ += 8;
        return v;
    }

    double f64() { return std::bit_cast<double>(u64()); }

    bool boolean() {
        std::uint8_t v = u8();
        if (v > 1) raise(Errc::parse, "canonical: boolean byte out of range");
        return v == 1;
    }

    Bytes bytes() {
        std::uint64_t n = u64();
        need(n);
        Bytes out(data_.begin() + static_cast<std::ptrdiff_t>(pos_),
                  data_.begin() + static_cast<std::ptrdiff_t>(pos_ + n));
        pos_ += n;
        return out;
    }

    std::string str() {
        Bytes b = bytes();
        return std::string(b.begin(), b.end());
    }

    template <std::size_t N>
    std::array<std::uint8_t, N> fixed() {
        need(N);
        std::array<std::uint8_t, N> out{};
        for (std::size_t i = 0; i < N; ++i) out[i] = data_[pos_ + i];
        pos_ += N;
        return out;
    }

    bool done() const noexcept { return pos_ == data_.size(); }

    // Every decoder calls this last; trailing bytes make two distinct
    // encodings decode to the same value, which breaks injectivity.
    void expect_done() const {
        if (!done()) raise(Errc::parse, "canonical: trailing bytes after value");
    }

  private:
    void need(std::uint64_t n) const {
        if (pos_ + n > data_.size() || pos_ + n < pos_)
            raise(Errc::parse, "canonical: truncated input");
    }

    BytesView data_;
    std::size_t pos_ = 0;
};

}  // namespace aero::canonical
