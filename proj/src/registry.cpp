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

#include "registry.hpp"

#include "errors.hpp"

namespace aero::registry {

namespace {

Receipt reverted(std::string reason) {
    Receipt r;
    r.status = Receipt::Status::reverted;
    r.reason = std::move(reason);
    return r;
}

Receipt applied() {
    Receipt r;
    r.status = Receipt::Status::applied;
    return r;
}

}  // namespace

const Principal& owner_of(const State& state, std::uint64_t token_id) {
    auto it = state.owners.find(token_id);
    if (it == state.owners.end())
        raise(Errc::not_found, "unknown token " + std::to_string(token_id));
    return it->second;
}

const NftToken& token_of(const State& state, std::uint64_t token_id) {
    auto it = state.tokens.find(token_id);
    if (it == state.tokens.end())
        raise(Errc::not_found, "unknown token " + std::to_string(token_id));
    return it->second;
}

bool check_access(const State& state, const Principal& grantee, std::uint64_t token_id,
                  std::uint64_t t_now) {
    auto it = state.grants.find(ledger::AccessKey{grantee, token_id});
    if (it == state.grants.end()) return false;
    const AccessGrant& g = it->second;
    return !g.revoked && t_now < g.expiration && conditions_satisfied(g.conditions);
}

Receipt apply_mint(State& state, const Transaction& tx, const ledger::MintToken& op) {
    if (!op.metadata.valid()) return reverted("invalid metadata");

    std::uint64_t id = state.next_token_id++;
    NftToken token;
    token.token_id = id;
    token.data_root = op.data_root;
    token.metadata = op.metadata;
    state.tokens.emplace(id, std::move(token));
    state.owners[id] = tx.sender;

    Receipt r = applied();
    r.token_id = id;
    return r;
}

Receipt apply_transfer(State& state, const Transaction& tx, const ledger::TransferToken& op) {
    auto owner_it = state.owners.find(op.token_id);
    if (owner_it == state.owners.end()) return reverted("unknown token");
    // A UAV companion token moves only through the fleet transfer rule, which
    // keeps asset and token ownership in lockstep.
    for (const auto& [uav_id, uav] : state.uavs) {
        if (uav.token_id == op.token_id) return reverted("token bound to UAV asset");
    }
    if (tx.sender != owner_it->second || op.from != owner_it->second)
        return reverted("Only the owner can transfer");

    owner_it->second = op.to;
    return applied();
}

Receipt apply_grant(State& state, const Transaction& tx, const ledger::GrantAccess& op) {
    auto owner_it = state.owners.find(op.token_id);
    if (owner_it == state.owners.end()) return reverted("unknown token");
    if (tx.sender != owner_it->second) return reverted("Only the owner can grant access");
    if (op.expiration <= tx.logical_time) return reverted("grant already expired");

    // accessPermissions[grantee][tokenId] <- expiration; a re-grant overwrites.
    AccessGrant grant;
    grant.grantee = op.grantee;
    grant.token_id = op.token_id;
    grant.expiration = op.expiration;
    grant.conditions = op.conditions;
    grant.revoked = false;
    state.grants[ledger::AccessKey{op.grantee, op.token_id}] = grant;
    return applied();
}

Receipt apply_revoke(State& state, const Transaction& tx, const ledger::RevokeAccess& op) {
    auto owner_it = state.owners.find(op.token_id);
    if (owner_it == state.owners.end()) return reverted("unknown token");
    if (tx.sender != owner_it->second) return reverted("Only the owner can grant access");

    auto it = state.grants.find(ledger::AccessKey{op.grantee, op.token_id});
    if (it == state.grants.end() || it->second.revoked) return reverted("no active grant");

    it->second.revoked = true;
    return applied();
}

Receipt apply_anchor(State& state, const Transaction& tx, const ledger::AnchorProof& op) {
    auto owner_it = state.owners.find(op.token_id);
    if (owner_it == state.owners.end()) return reverted("unknown token");
    bool is_owner = (tx.sender == owner_it->second);
    if (!is_owner && !check_access(state, tx.sender, op.token_id, tx.logical_time))
        return reverted("not authorized to anchor");
    return applied();
}

namespace {

Receipt wrap(State& state, const Principal& sender, std::uint64_t logical_time,
             ledger::Action action) {
    Transaction tx;
    tx.seq = state.last_seq + 1;
    tx.sender = sender;
    tx.logical_time = logical_time;
    tx.action = std::move(action);
    return ledger::submit_inplace(state, tx);
}

}  // namespace

Receipt mint(State& state, const Principal& sender, std::uint64_t logical_time,
             const crypto::Digest& data_root, const NftMetadata& metadata) {
    return wrap(state, sender, logical_time, ledger::MintToken{data_root, metadata});
}

Receipt transfer_token(State& state, const Principal& sender, std::uint64_t logical_time,
                       const Principal& from, const Principal& to, std::uint64_t token_id) {
    return wrap(state, sender, logical_time, ledger::TransferToken{from, to, token_id});
}

Receipt grant_access(State& state, const Principal& sender, std::uint64_t logical_time,
                     const Principal& grantee, std::uint64_t token_id, std::uint64_t expiration,
                     const LicenseConditions& conditions) {
    return wrap(state, sender, logical_time,
                ledger::GrantAccess{grantee, token_id, expiration, conditions});
}

Receipt revoke_access(State& state, const Principal& sender, std::uint64_t logical_time,
                      const Principal& grantee, std::uint64_t token_id) {
    return wrap(state, sender, logical_time, ledger::RevokeAccess{grantee, token_id});
}

Receipt anchor_proof(State& state, const Principal& sender, std::uint64_t logical_time,
                     std::uint64_t token_id, const crypto::Digest& proof_digest) {
    return wrap(state, sender, logical_time, ledger::AnchorProof{token_id, proof_digest});
}

}  // namespace aero::registry
