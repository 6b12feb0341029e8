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
#include <compare>
#include <cstdint>
#include <set>
#include <string>
#include <string_view>

#include "bytes.hpp"
#include "canonical.hpp"

namespace aero::crypto {

inline constexpr std::size_t kDigestSize = 32;
inline constexpr std::size_t kKeySize = 32;
inline constexpr std::size_t kNonceSize = 12;
inline constexpr std::size_t kTagSize = 16;

// 256-bit hash value. Renders as lowercase hex everywhere.
struct Digest {
    std::array<std::uint8_t, kDigestSize> bytes{};

    auto operator<=>(const Digest&) const = default;

    std::string hex() const;
    static Digest from_hex(std::string_view hex);
};

// SHA-256 of the given bytes.
Digest sha256(BytesView data);

// Number of sha256() invocations on this thread so far. Lets tests pin the
// hash-count cost of proof verification.
std::uint64_t hash_invocations();

// 32-byte secret. Never serialized into the ledger log or any report.
struct SymmetricKey {
    std::array<std::uint8_t, kKeySize> bytes{};

    auto operator<=>(const SymmetricKey&) const = default;
};

using Nonce = std::array<std::uint8_t, kNonceSize>;

struct Ciphertext {
    Nonce nonce{};
    Bytes body;
    std::array<std::uint8_t, kTagSize> auth_tag{};
};

// HKDF-SHA256(ikm = seed, salt = "aero.kdf.v1", info = context).
// Deterministic; distinct contexts give independent keys. Empty seed is an
// error.
SymmetricKey derive_key(BytesView seed, std::string_view context);

// AES-256-GCM. The tag authenticates nonce and body; decryption throws
// Errc::auth on any mismatch and never returns partial plaintext.
Ciphertext aead_encrypt(const SymmetricKey& key, BytesView plaintext, const Nonce& nonce);
Bytes aead_decrypt(const SymmetricKey& key, const Ciphertext& ct);

// Session wrapper that refuses nonce reuse under its key. One session per
// thread of control; concurrent callers need their own sessions.
class CipherSession {
  public:
    explicit CipherSession(const SymmetricKey& key) : key_(key) {}

    Ciphertext encrypt(BytesView plaintext, const Nonce& nonce);
    Bytes decrypt(const Ciphertext& ct) const { return aead_decrypt(key_, ct); }

  private:
    SymmetricKey key_;
    std::set<Nonce> used_;
};

inline void encode(canonical::Writer& w, const Digest& d) { w.fixed(d.bytes); }

}  // namespace aero::crypto
