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

#include "crypto.hpp"

#include <openssl/evp.h>
#include <openssl/hmac.h>

#include <cstring>
#include <memory>

#include "errors.hpp"

namespace aero {

namespace {

constexpr char kHexDigits[] = "0123456789abcdef";

int hex_nibble(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    return -1;
}

}  // namespace

std::string to_hex(BytesView data) {
    std::string out;
    out.reserve(data.size() * 2);
    for (std::uint8_t b : data) {
        out.push_back(kHexDigits[b >> 4]);
        out.push_back(kHexDigits[b & 0x0f]);
    }
    return out;
}

Bytes from_hex(std::string_view hex) {
    if (hex.size() % 2 != 0) raise(Errc::parse, "hex: odd length");
    Bytes out(hex.size() / 2);
    for (std::size_t i = 0; i < out.size(); ++i) {
        int hi = hex_nibble(hex[2 * i]);
        int lo = hex_nibble(hex[2 * i + 1]);
        if (hi < 0 || lo < 0) raise(Errc::parse, "hex: invalid character");
        out[i] = static_cast<std::uint8_t>((hi << 4) | lo);
    }
    return out;
}

}  // namespace aero

namespace aero::crypto {

namespace {

thread_local std::uint64_t t_hash_count = 0;

struct CtxFree {
    void operator()(EVP_MD_CTX* p) const { EVP_MD_CTX_free(p); }
    void operator()(EVP_CIPHER_CTX* p) const { EVP_CIPHER_CTX_free(p); }
};

Bytes hmac_sha256(BytesView key, BytesView data) {
    Bytes out(kDigestSize);
    unsigned int len = 0;
    if (HMAC(EVP_sha256(), key.data(), static_cast<int>(key.size()), data.data(), data.size(),
             out.data(), &len) == nullptr ||
        len != kDigestSize)
        raise(Errc::crypto, "hmac-sha256 failed");
    return out;
}

}  // namespace

std::string Digest::hex() const {
    return to_hex(BytesView{bytes.data(), bytes.size()});
}

Digest Digest::from_hex(std::string_view hex) {
    Bytes raw = aero::from_hex(hex);
    if (raw.size() != kDigestSize) raise(Errc::parse, "digest: expected 32 bytes");
    Digest d;
    std::memcpy(d.bytes.data(), raw.data(), kDigestSize);
    return d;
}

Digest sha256(BytesView data) {
    ++t_hash_count;
    std::unique_ptr<EVP_MD_CTX, CtxFree> ctx(EVP_MD_CTX_new());
    Digest d;
    unsigned int len = 0;
    if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1 ||
        EVP_DigestUpdate(ctx.get(), data.data(), data.size()) != 1 ||
        EVP_DigestFinal_ex(ctx.get(), d.bytes.data(), &len) != 1 || len != kDigestSize)
        raise(Errc::crypto, "sha256 failed");
    return d;
}

std::uint64_t hash_invocations() {
    return t_hash_count;
}

SymmetricKey derive_key(BytesView seed, std::string_view context) {
    if (seed.empty()) raise(Errc::invalid_argument, "derive_key: empty seed");
    // HKDF-SHA256 (RFC 5869) with a fixed salt.
    static constexpr std::string_view kSalt = "aero.kdf.v1";
    Bytes prk = hmac_sha256(as_view(to_bytes(kSalt)), seed);
    Bytes info(context.begin(), context.end());
    info.push_back(0x01);
    Bytes okm = hmac_sha256(as_view(prk), as_view(info));
    SymmetricKey key;
    std::memcpy(key.bytes.data(), okm.data(), kKeySize);
    return key;
}

Ciphertext aead_encrypt(const SymmetricKey& key, BytesView plaintext, const Nonce& nonce) {
    std::unique_ptr<EVP_CIPHER_CTX, CtxFree> ctx(EVP_CIPHER_CTX_new());
    if (!ctx || EVP_EncryptInit_ex(ctx.get(), EVP_aes_256_gcm(), nullptr, key.bytes.data(),
                                   nonce.data()) != 1)
        raise(Errc::crypto, "aes-256-gcm init failed");

    Ciphertext ct;
    ct.nonce = nonce;
    ct.body.resize(plaintext.size());
    int len = 0;
    if (!plaintext.empty() &&
        EVP_EncryptUpdate(ctx.get(), ct.body.data(), &len, plaintext.data(),
                          static_cast<int>(plaintext.size())) != 1)
        raise(Errc::crypto, "aes-256-gcm encrypt failed");
    int fin = 0;
    if (EVP_EncryptFinal_ex(ctx.get(), ct.body.data() + len, &fin) != 1)
        raise(Errc::crypto, "aes-256-gcm finalize failed");
    if (EVP_CIPHER_CTX_ctrl(ctx.get(), EVP_CTRL_GCM_GET_TAG, kTagSize, ct.auth_tag.data()) != 1)
        raise(Errc::crypto, "aes-256-gcm tag extraction failed");
    return ct;
}

Bytes aead_decrypt(const SymmetricKey& key, const Ciphertext& ct) {
    std::unique_ptr<EVP_CIPHER_CTX, CtxFree> ctx(EVP_CIPHER_CTX_new());
    if (!ctx || EVP_DecryptInit_ex(ctx.get(), EVP_aes_256_gcm(), nullptr, key.bytes.data(),
                                   ct.nonce.data()) != 1)
        raise(Errc::crypto, "aes-256-gcm init failed");

    Bytes plain(ct.body.size());
    int len = 0;
    if (!ct.body.empty() &&
        EVP_DecryptUpdate(ctx.get(), plain.data(), &len, ct.body.data(),
                          static_cast<int>(ct.body.size())) != 1)
        raise(Errc::auth, "aead: decryption failed");
    std::array<std::uint8_t, kTagSize> tag = ct.auth_tag;
    if (EVP_CIPHER_CTX_ctrl(ctx.get(), EVP_CTRL_GCM_SET_TAG, kTagSize, tag.data()) != 1)
        raise(Errc::crypto, "aes-256-gcm tag set failed");
    int fin = 0;
    if (EVP_DecryptFinal_ex(ctx.get(), plain.data() + len, &fin) != 1)
        raise(Errc::auth, "aead: authentication failed");
    return plain;
}

Ciphertext CipherSession::encrypt(BytesView plaintext, const Nonce& nonce) {
    if (!used_.insert(nonce).second)
        raise(Errc::invalid_argument, "aead: nonce reuse within session");
    return aead_encrypt(key_, plaintext, nonce);
}

}  // namespace aero::crypto
