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

#include "possession.hpp"

#include <openssl/bn.h>

#include <memory>

#include "errors.hpp"

namespace aero::possession {

namespace {

// RFC 3526 group 14 prime (2^2048 - 2^1984 - 1 + 2^64*(floor(2^1918*pi) + 124476)).
// Safe prime; 4 generates the subgroup of quadratic residues of order (p-1)/2.
constexpr const char* kModp2048PHex =
    "ffffffffffffffffc90fdaa22168c234c4c6628b80dc1cd129024e088a67cc74"
    "020bbea63b139b22514a08798e3404ddef9519b3cd3a431b302b0a6df25f1437"
    "4fe1356d6d51c245e485b576625e7ec6f44c42e9a637ed6b0bff5cb6f406b7ed"
    "ee386bfb5a899fa5ae9f24117c4b1fe649286651ece45b3dc2007cb8a163bf05"
    "98da48361c55d39a69163fa8fd24cf5f83655d23dca3ad961c62f356208552bb"
    "9ed529077096966d670c354e4abc9804f1746c08ca18217c32905e462e36ce3b"
    "e39e772c180e86039b2783a2ec07a28fb5c55df06f4c52c9de2bcbf695581718"
    "3995497cea956ae515d2261898fa051015728e5a8aacaa68ffffffffffffffff";

// Fixed 256-bit safe prime for exhaustive test sweeps (largest safe prime
// below 2^256); 4 again has prime order (p-1)/2.
constexpr const char* kTest256PHex =
    "ffffffffffffffffffffffffffffffffffffffffffffffffffffffffffff72ef";

struct BnDeleter {
    void operator()(BIGNUM* p) const { BN_free(p); }
    void operator()(BN_CTX* p) const { BN_CTX_free(p); }
};

using Bn = std::unique_ptr<BIGNUM, BnDeleter>;
using BnCtx = std::unique_ptr<BN_CTX, BnDeleter>;

Bn bn_new() {
    Bn b(BN_new());
    if (!b) raise(Errc::crypto, "BN_new failed");
    return b;
}

Bn bn_from_bytes(BytesView data) {
    Bn b(BN_bin2bn(data.data(), static_cast<int>(data.size()), nullptr));
    if (!b) raise(Errc::crypto, "BN_bin2bn failed");
    return b;
}

Bn bn_from_hex(const char* hex) {
    BIGNUM* raw = nullptr;
    if (BN_hex2bn(&raw, hex) == 0) raise(Errc::crypto, "BN_hex2bn failed");
    return Bn(raw);
}

Bn bn_from_u64(std::uint64_t v) {
    Bn b = bn_new();
    if (BN_set_word(b.get(), v) != 1) raise(Errc::crypto, "BN_set_word failed");
    return b;
}

Bytes bn_to_bytes(const BIGNUM* b, std::size_t width) {
    Bytes out(width);
    if (BN_bn2binpad(b, out.data(), static_cast<int>(width)) < 0)
        raise(Errc::crypto, "BN_bn2binpad failed");
    return out;
}

// Big-endian bytes with no fixed width (used for group parameter storage).
Bytes bn_to_bytes(const BIGNUM* b) {
    Bytes out(static_cast<std::size_t>(BN_num_bytes(b)));
    if (!out.empty()) BN_bn2bin(b, out.data());
    return out;
}

struct Group {
    Bn p;
    Bn q;
    Bn g;
    BnCtx ctx;
    std::size_t p_width;
    std::size_t q_width;

    explicit Group(const GroupParams& params)
        : p(bn_from_bytes(as_view(params.p))),
          q(bn_from_bytes(as_view(params.q))),
          g(bn_from_bytes(as_view(params.g))),
          ctx(BN_CTX_new()),
          p_width(params.p.size()),
          q_width(params.q.size()) {
        if (!ctx) raise(Errc::crypto, "BN_CTX_new failed");
        if (BN_is_zero(p.get()) || BN_is_zero(q.get()) || BN_is_zero(g.get()))
            raise(Errc::invalid_argument, "possession: degenerate group");
    }

    Bn modexp(const BIGNUM* base, const BIGNUM* exp) const {
        Bn out = bn_new();
        if (BN_mod_exp(out.get(), base, exp, p.get(), ctx.get()) != 1)
            raise(Errc::crypto, "BN_mod_exp failed");
        return out;
    }

    Bn modmul(const BIGNUM* a, const BIGNUM* b) const {
        Bn out = bn_new();
        if (BN_mod_mul(out.get(), a, b, p.get(), ctx.get()) != 1)
            raise(Errc::crypto, "BN_mod_mul failed");
        return out;
    }
};

// Counter-mode PRF over SHA-256, reduced mod q. Draws 128 extra bits so the
// reduction bias is negligible.
Bn prf_mod_q(const Group& grp, std::string_view label, BytesView seed, BytesView extra) {
    std::size_t blocks = (grp.q_width + 16 + crypto::kDigestSize - 1) / crypto::kDigestSize;
    Bytes stream;
    for (std::size_t i = 0; i < blocks; ++i) {
        canonical::Writer w;
        w.str(label);
        w.bytes(seed);
        w.bytes(extra);
        w.u64(i);
        crypto::Digest d = crypto::sha256(as_view(w.data()));
        stream.insert(stream.end(), d.bytes.begin(), d.bytes.end());
    }
    Bn wide = bn_from_bytes(as_view(stream));
    Bn out = bn_new();
    if (BN_mod(out.get(), wide.get(), grp.q.get(), grp.ctx.get()) != 1)
        raise(Errc::crypto, "BN_mod failed");
    return out;
}

// m = committed digest interpreted as an integer mod q; y = g^m is the public
// value the Schnorr relation is proven against. Anyone can derive y from the
// statement, so verification needs no witness.
Bn statement_exponent(const Group& grp, const Statement& statement) {
    Bn m = bn_from_bytes(BytesView{statement.committed_digest.bytes.data(),
                                   statement.committed_digest.bytes.size()});
    Bn out = bn_new();
    if (BN_mod(out.get(), m.get(), grp.q.get(), grp.ctx.get()) != 1)
        raise(Errc::crypto, "BN_mod failed");
    return out;
}

crypto::Digest fiat_shamir_challenge(const Params& params, const Statement& statement,
                                     BytesView commitment) {
    canonical::Writer w;
    w.str(params.domain);
    w.bytes(as_view(serialize_params(params)));
    encode(w, statement);
    w.bytes(commitment);
    return crypto::sha256(as_view(w.data()));
}

bool verify_sigma(const Proof& proof, const Statement& statement, const Params& params) {
    const SigmaTranscript& t = proof.sigma;
    Group grp(params.group);
    if (t.commitment.size() != grp.p_width || t.challenge.size() != crypto::kDigestSize ||
        t.response.size() != grp.q_width)
        return false;

    // cheap rejection first: the challenge must be the transcript hash
    crypto::Digest expected = fiat_shamir_challenge(params, statement, as_view(t.commitment));
    if (!std::equal(t.challenge.begin(), t.challenge.end(), expected.bytes.begin(),
                    expected.bytes.end()))
        return false;

    Bn commitment = bn_from_bytes(as_view(t.commitment));
    Bn response = bn_from_bytes(as_view(t.response));
    if (BN_is_zero(commitment.get()) || BN_cmp(commitment.get(), grp.p.get()) >= 0) return false;
    if (BN_cmp(response.get(), grp.q.get()) >= 0) return false;

    Bn c = bn_from_bytes(as_view(t.challenge));
    Bn c_mod = bn_new();
    if (BN_mod(c_mod.get(), c.get(), grp.q.get(), grp.ctx.get()) != 1) return false;

    // g^z == A * y^c (mod p)
    Bn m = statement_exponent(grp, statement);
    Bn y = grp.modexp(grp.g.get(), m.get());
    Bn lhs = grp.modexp(grp.g.get(), response.get());
    Bn yc = grp.modexp(y.get(), c_mod.get());
    Bn rhs = grp.modmul(commitment.get(), yc.get());
    return BN_cmp(lhs.get(), rhs.get()) == 0;
}

bool verify_merkle(const Proof& proof, const Statement& statement, const Params& params) {
    if (statement.leaf_count == 0) return false;
    std::vector<std::uint64_t> indices = challenge_indices(statement, params);
    if (proof.opened.size() != indices.size()) return false;
    for (std::size_t r = 0; r < indices.size(); ++r) {
        const OpenedLeaf& leaf = proof.opened[r];
        if (leaf.index != indices[r]) return false;
        if (leaf.block.index != indices[r]) return false;
        if (leaf.proof.leaf_index != indices[r]) return false;
        if (leaf.proof.leaf_count != statement.leaf_count) return false;
        if (!merkle::verify_inclusion(statement.committed_digest, leaf.block, leaf.proof))
            return false;
    }
    return true;
}

}  // namespace

GroupParams named_group(const std::string& name) {
    Bn p;
    if (name == "modp-2048") {
        p = bn_from_hex(kModp2048PHex);
    } else if (name == "test-256") {
        p = bn_from_hex(kTest256PHex);
    } else {
        raise(Errc::invalid_argument, "possession: unknown group '" + name + "'");
    }
    // q = (p-1)/2, g = 4
    Bn q(BN_dup(p.get()));
    if (!q || BN_sub_word(q.get(), 1) != 1 || BN_rshift1(q.get(), q.get()) != 1)
        raise(Errc::crypto, "group derivation failed");
    GroupParams out;
    out.name = name;
    out.p = bn_to_bytes(p.get());
    out.q = bn_to_bytes(q.get());
    out.g = bn_to_bytes(bn_from_u64(4).get());
    return out;
}

Params setup(const SetupConfig& config) {
    Params params;
    params.backend = config.backend;
    params.domain = config.domain;
    if (config.backend == Backend::sigma_commit) {
        params.group = named_group(config.group_name);
    } else {
        if (config.challenge_count == 0)
            raise(Errc::invalid_argument, "possession: challenge_count must be >= 1");
        params.challenge_count = config.challenge_count;
    }
    return params;
}

std::vector<std::uint64_t> challenge_indices(const Statement& statement, const Params& params) {
    std::vector<std::uint64_t> out;
    out.reserve(params.challenge_count);
    for (std::uint32_t r = 0; r < params.challenge_count; ++r) {
        canonical::Writer w;
        w.str(params.domain);
        encode(w, statement);
        w.u64(r);
        crypto::Digest d = crypto::sha256(as_view(w.data()));
        std::uint64_t v = 0;
        for (int i = 0; i < 8; ++i) v = (v << 8) | d.bytes[static_cast<std::size_t>(i)];
        out.push_back(v % statement.leaf_count);
    }
    return out;
}

Proof prove(std::span<const merkle::DataBlock> blocks, const Statement& statement,
            const Params& params, BytesView randomness_seed) {
    merkle::Tree tree = merkle::Tree::build(blocks);
    if (tree.root() != statement.committed_digest)
        raise(Errc::invalid_argument, "statement mismatch");

    Proof proof;
    proof.backend = params.backend;

    if (params.backend == Backend::sigma_commit) {
        Group grp(params.group);
        Bn m = statement_exponent(grp, statement);
        canonical::Writer stmt;
        encode(stmt, statement);
        Bn s = prf_mod_q(grp, "aero.sigma.nonce", randomness_seed, as_view(stmt.data()));
        Bn commitment = grp.modexp(grp.g.get(), s.get());
        Bytes commitment_bytes = bn_to_bytes(commitment.get(), grp.p_width);

        crypto::Digest challenge = fiat_shamir_challenge(params, statement, as_view(commitment_bytes));
        Bn c = bn_from_bytes(BytesView{challenge.bytes.data(), challenge.bytes.size()});
        Bn c_mod = bn_new();
        if (BN_mod(c_mod.get(), c.get(), grp.q.get(), grp.ctx.get()) != 1)
            raise(Errc::crypto, "BN_mod failed");

        // z = s + c*m (mod q)
        Bn cm = bn_new();
        if (BN_mod_mul(cm.get(), c_mod.get(), m.get(), grp.q.get(), grp.ctx.get()) != 1)
            raise(Errc::crypto, "BN_mod_mul failed");
        Bn z = bn_new();
        if (BN_mod_add(z.get(), s.get(), cm.get(), grp.q.get(), grp.ctx.get()) != 1)
            raise(Errc::crypto, "BN_mod_add failed");

        proof.sigma.commitment = std::move(commitment_bytes);
        proof.sigma.challenge.assign(challenge.bytes.begin(), challenge.bytes.end());
        proof.sigma.response = bn_to_bytes(z.get(), grp.q_width);
        return proof;
    }

    if (statement.leaf_count != tree.leaf_count())
        raise(Errc::invalid_argument, "statement mismatch");
    for (std::uint64_t idx : challenge_indices(statement, params)) {
        OpenedLeaf leaf;
        leaf.index = idx;
        leaf.block = blocks[idx];
        leaf.proof = tree.inclusion_proof(idx);
        proof.opened.push_back(std::move(leaf));
    }
    return proof;
}

bool verify(const Proof& proof, const Statement& statement, const Params& params) {
    if (proof.backend != params.backend) return false;
    try {
        return (params.backend == Backend::sigma_commit) ? verify_sigma(proof, statement, params)
                                                         : verify_merkle(proof, statement, params);
    } catch (const Error&) {
        return false;
    }
}

Proof simulate_sigma(const Statement& statement, const Params& params, BytesView seed) {
    if (params.backend != Backend::sigma_commit)
        raise(Errc::invalid_argument, "possession: simulator is sigma-only");
    Group grp(params.group);
    canonical::Writer stmt;
    encode(stmt, statement);

    // pick (c, z) first, solve A = g^z * y^(-c)
    Bn z = prf_mod_q(grp, "aero.sigma.sim.z", seed, as_view(stmt.data()));
    canonical::Writer cw;
    cw.str("aero.sigma.sim.c");
    cw.bytes(seed);
    cw.bytes(as_view(stmt.data()));
    cw.u64(0);
    crypto::Digest challenge = crypto::sha256(as_view(cw.data()));

    Bn c = bn_from_bytes(BytesView{challenge.bytes.data(), challenge.bytes.size()});
    Bn c_mod = bn_new();
    if (BN_mod(c_mod.get(), c.get(), grp.q.get(), grp.ctx.get()) != 1)
        raise(Errc::crypto, "BN_mod failed");

    Bn m = statement_exponent(grp, statement);
    Bn y = grp.modexp(grp.g.get(), m.get());
    Bn y_c = grp.modexp(y.get(), c_mod.get());
    Bn y_c_inv(BN_mod_inverse(nullptr, y_c.get(), grp.p.get(), grp.ctx.get()));
    if (!y_c_inv) raise(Errc::crypto, "BN_mod_inverse failed");
    Bn gz = grp.modexp(grp.g.get(), z.get());
    Bn commitment = grp.modmul(gz.get(), y_c_inv.get());

    Proof proof;
    proof.backend = Backend::sigma_commit;
    proof.sigma.commitment = bn_to_bytes(commitment.get(), grp.p_width);
    proof.sigma.challenge.assign(challenge.bytes.begin(), challenge.bytes.end());
    proof.sigma.response = bn_to_bytes(z.get(), grp.q_width);
    return proof;
}

void encode(canonical::Writer& w, const Statement& statement) {
    w.fixed(statement.committed_digest.bytes);
    w.u64(statement.leaf_count);
}

Bytes serialize_proof(const Proof& proof) {
    canonical::Writer w;
    w.u8(static_cast<std::uint8_t>(proof.backend));
    if (proof.backend == Backend::sigma_commit) {
        w.bytes(as_view(proof.sigma.commitment));
        w.bytes(as_view(proof.sigma.challenge));
        w.bytes(as_view(proof.sigma.response));
    } else {
        w.u64(proof.opened.size());
        for (const OpenedLeaf& leaf : proof.opened) {
            w.u64(leaf.index);
            merkle::encode(w, leaf.block);
            w.bytes(as_view(merkle::serialize_proof(leaf.proof)));
        }
    }
    return w.take();
}

Proof parse_proof(BytesView data) {
    canonical::Reader r(data);
    Proof proof;
    std::uint8_t tag = r.u8();
    if (tag != 1 && tag != 2) raise(Errc::parse, "proof: unknown backend tag");
    proof.backend = static_cast<Backend>(tag);
    if (proof.backend == Backend::sigma_commit) {
        proof.sigma.commitment = r.bytes();
        proof.sigma.challenge = r.bytes();
        proof.sigma.response = r.bytes();
    } else {
        std::uint64_t count = r.u64();
        if (count > 4096) raise(Errc::parse, "proof: implausible leaf count");
        for (std::uint64_t i = 0; i < count; ++i) {
            OpenedLeaf leaf;
            leaf.index = r.u64();
            leaf.block.index = r.u64();
            leaf.block.timestamp_us = r.u64();
            leaf.block.payload = r.bytes();
            leaf.proof = merkle::parse_proof(as_view(r.bytes()));
            proof.opened.push_back(std::move(leaf));
        }
    }
    r.expect_done();
    return proof;
}

Bytes serialize_params(const Params& params) {
    canonical::Writer w;
    w.u8(static_cast<std::uint8_t>(params.backend));
    w.str(params.domain);
    if (params.backend == Backend::sigma_commit) {
        w.str(params.group.name);
        w.bytes(as_view(params.group.p));
        w.bytes(as_view(params.group.q));
        w.bytes(as_view(params.group.g));
    } else {
        w.u32(params.challenge_count);
    }
    return w.take();
}

Params parse_params(BytesView data) {
    canonical::Reader r(data);
    Params params;
    std::uint8_t tag = r.u8();
    if (tag != 1 && tag != 2) raise(Errc::parse, "params: unknown backend tag");
    params.backend = static_cast<Backend>(tag);
    params.domain = r.str();
    if (params.backend == Backend::sigma_commit) {
        params.group.name = r.str();
        params.group.p = r.bytes();
        params.group.q = r.bytes();
        params.group.g = r.bytes();
    } else {
        params.challenge_count = r.u32();
        if (params.challenge_count == 0) raise(Errc::parse, "params: zero challenge count");
    }
    r.expect_done();
    return params;
}

}  // namespace aero::possession
