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
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "merkle.hpp"

namespace aero::possession {

// Two desk-scale stand-ins behind the setup/prove/verify interface:
//
//   sigma_commit      Schnorr-style proof of knowledge of the committed
//                     digest value over a prime-order subgroup, made
//                     non-interactive by a transcript hash. Reveals no data
//                     blocks at all. Proves knowledge of the digest, not of
//                     a hash preimage.
//
//   merkle_challenge  probabilistic possession proof: the transcript opens
//                     challenge_count leaves at indices derived from the
//                     statement. NOT zero-knowledge - it reveals exactly the
//                     sampled blocks, and is labeled as such.
enum class Backend : std::uint8_t { sigma_commit = 1, merkle_challenge = 2 };

// Multiplicative subgroup of prime order q inside Z_p^* (p a safe prime,
// q = (p-1)/2, g a generator of the order-q subgroup). Magnitudes are
// big-endian byte strings.
struct GroupParams {
    std::string name;
    Bytes p;
    Bytes q;
    Bytes g;
};

// Named groups: "modp-2048" (the RFC 3526 2048-bit MODP prime, g = 4) for
// real use, "test-256" (a fixed 256-bit safe prime, g = 4) for exhaustive
// soundness and distribution tests.
GroupParams named_group(const std::string& name);

struct SetupConfig {
    Backend backend = Backend::sigma_commit;
    std::string group_name = "modp-2048";    // sigma_commit only
    std::uint32_t challenge_count = 4;       // merkle_challenge only
    std::string domain = "aero.possession.v1";
};

struct Params {
    Backend backend = Backend::sigma_commit;
    GroupParams group;                  // sigma_commit only
    std::uint32_t challenge_count = 0;  // merkle_challenge only
    std::string domain;
};

// The public claim: the prover holds data whose commitment is
// committed_digest (a token's data_root once anchored). leaf_count sizes the
// challenge space for merkle_challenge and is 0 for sigma_commit.
struct Statement {
    crypto::Digest committed_digest;
    std::uint64_t leaf_count = 0;
};

struct SigmaTranscript {
    Bytes commitment;  // A = g^s mod p
    Bytes challenge;   // 32-byte transcript hash
    Bytes response;    // z = s + c*m mod q
};

struct OpenedLeaf {
    std::uint64_t index = 0;
    merkle::DataBlock block;
    merkle::Proof proof;
};

struct Proof {
    Backend backend = Backend::sigma_commit;
    SigmaTranscript sigma;           // sigma_commit
    std::vector<OpenedLeaf> opened;  // merkle_challenge
};

// Deterministic for a given config. Throws on malformed configs (unknown
// group, zero challenge count).
Params setup(const SetupConfig& config);

// Fails with "statement mismatch" unless the dataset's Merkle root equals the
// committed digest (and, for merkle_challenge, the leaf count matches).
// randomness_seed re-randomizes sigma transcripts; merkle_challenge proofs
// are fully determined by the statement.
Proof prove(std::span<const merkle::DataBlock> blocks, const Statement& statement,
            const Params& params, BytesView randomness_seed);

// Deterministic transcript check; malformed transcripts are simply invalid.
bool verify(const Proof& proof, const Statement& statement, const Params& params);

// Honest-verifier zero-knowledge simulator: samples (c, z) and solves for
// the commitment, producing transcripts with the same component
// distributions as real ones but without the witness. The Fiat-Shamir
// relation c = H(...||A) does not hold for simulated transcripts, so
// verify() rejects them; distribution tests compare components only.
Proof simulate_sigma(const Statement& statement, const Params& params, BytesView seed);

// Challenge indices for merkle_challenge round r:
// u64_be(sha256(domain || canonical(statement) || u64(r))[0..8)) mod leaf_count.
std::vector<std::uint64_t> challenge_indices(const Statement& statement, const Params& params);

// File form: backend tag byte, then the canonical transcript fields.
Bytes serialize_proof(const Proof& proof);
Proof parse_proof(BytesView data);

Bytes serialize_params(const Params& params);
Params parse_params(BytesView data);

void encode(canonical::Writer& w, const Statement& statement);

}  // namespace aero::possession
