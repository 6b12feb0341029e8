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

#include "ledger.hpp"

#include <fstream>

#include "errors.hpp"
#include "fleet.hpp"
#include "registry.hpp"

namespace aero::ledger {

namespace {

enum ActionTag : std::uint8_t {
    kMintToken = 1,
    kTransferToken = 2,
    kGrantAccess = 3,
    kRevokeAccess = 4,
    kRegisterUav = 5,
    kAssignTask = 6,
    kTransferUav = 7,
    kCompleteTask = 8,
    kAnchorProof = 9,
};

void encode_action(canonical::Writer& w, const Action& action) {
    std::visit(
        [&w](const auto& op) {
            using T = std::decay_t<decltype(op)>;
            if constexpr (std::is_same_v<T, MintToken>) {
                w.u8(kMintToken);
                w.fixed(op.data_root.bytes);
                encode(w, op.metadata);
            } else if constexpr (std::is_same_v<T, TransferToken>) {
                w.u8(kTransferToken);
                encode(w, op.from);
                encode(w, op.to);
                w.u64(op.token_id);
            } else if constexpr (std::is_same_v<T, GrantAccess>) {
                w.u8(kGrantAccess);
                encode(w, op.grantee);
                w.u64(op.token_id);
                w.u64(op.expiration);
                encode(w, op.conditions);
            } else if constexpr (std::is_same_v<T, RevokeAccess>) {
                w.u8(kRevokeAccess);
                encode(w, op.grantee);
                w.u64(op.token_id);
            } else if constexpr (std::is_same_v<T, RegisterUav>) {
                w.u8(kRegisterUav);
                for (double c : op.location) w.f64(c);
                w.f64(op.payload_capacity);
                w.u8(static_cast<std::uint8_t>(op.status));
            } else if constexpr (std::is_same_v<T, AssignTask>) {
                w.u8(kAssignTask);
                encode(w, op.task);
                w.u64(op.selected_uav);
                w.f64(op.distance);
            } else if constexpr (std::is_same_v<T, TransferUav>) {
                w.u8(kTransferUav);
                w.u64(op.uav_id);
                encode(w, op.new_owner);
            } else if constexpr (std::is_same_v<T, CompleteTask>) {
                w.u8(kCompleteTask);
                w.u64(op.task_id);
            } else if constexpr (std::is_same_v<T, AnchorProof>) {
                w.u8(kAnchorProof);
                w.u64(op.token_id);
                w.fixed(op.proof_digest.bytes);
            }
        },
        action);
}

Principal read_principal(canonical::Reader& r) {
    Principal p;
    p.address = r.fixed<kAddressSize>();
    return p;
}

NftMetadata read_metadata(canonical::Reader& r) {
    NftMetadata m;
    m.mission_id = r.str();
    m.uav_id = r.str();
    m.start_time_us = r.u64();
    m.end_time_us = r.u64();
    m.block_count = r.u64();
    m.declared_region = r.str();
    return m;
}

LicenseConditions read_conditions(canonical::Reader& r) {
    LicenseConditions c;
    c.fee_paid = r.boolean();
    c.region_ok = r.boolean();
    std::uint8_t usage = r.u8();
    if (usage > 2) raise(Errc::parse, "tx: bad usage class");
    c.usage_class = static_cast<UsageClass>(usage);
    return c;
}

Task read_task(canonical::Reader& r) {
    Task t;
    t.task_id = r.u64();
    for (double& c : t.location) c = r.f64();
    t.required_payload = r.f64();
    t.urgency = r.u8();
    std::uint8_t has_radius = r.u8();
    if (has_radius > 1) raise(Errc::parse, "tx: bad optional flag");
    if (has_radius) t.max_radius = r.f64();
    return t;
}

Action decode_action(canonical::Reader& r) {
    std::uint8_t tag = r.u8();
    switch (tag) {
        case kMintToken: {
            MintToken op;
            op.data_root.bytes = r.fixed<crypto::kDigestSize>();
            op.metadata = read_metadata(r);
            return op;
        }
        case kTransferToken: {
            TransferToken op;
            op.from = read_principal(r);
            op.to = read_principal(r);
            op.token_id = r.u64();
            return op;
        }
        case kGrantAccess: {
            GrantAccess op;
            op.grantee = read_principal(r);
            op.token_id = r.u64();
            op.expiration = r.u64();
            op.conditions = read_conditions(r);
            return op;
        }
        case kRevokeAccess: {
            RevokeAccess op;
            op.grantee = read_principal(r);
            op.token_id = r.u64();
            return op;
        }
        case kRegisterUav: {
            RegisterUav op;
            for (double& c : op.location) c = r.f64();
            op.payload_capacity = r.f64();
            std::uint8_t status = r.u8();
            if (status > 2) raise(Errc::parse, "tx: bad uav status");
            op.status = static_cast<UavStatus>(status);
            return op;
        }
        case kAssignTask: {
            AssignTask op;
            op.task = read_task(r);
            op.selected_uav = r.u64();
            op.distance = r.f64();
            return op;
        }
        case kTransferUav: {
            TransferUav op;
            op.uav_id = r.u64();
            op.new_owner = read_principal(r);
            return op;
        }
        case kCompleteTask: {
            CompleteTask op;
            op.task_id = r.u64();
            return op;
        }
        case kAnchorProof: {
            AnchorProof op;
            op.token_id = r.u64();
            op.proof_digest.bytes = r.fixed<crypto::kDigestSize>();
            return op;
        }
        default:
            raise(Errc::parse, "tx: unknown action tag");
    }
}

Receipt dispatch(State& scratch, const Transaction& tx) {
    return std::visit(
        [&](const auto& op) -> Receipt {
            using T = std::decay_t<decltype(op)>;
            if constexpr (std::is_same_v<T, MintToken>)
                return registry::apply_mint(scratch, tx, op);
            else if constexpr (std::is_same_v<T, TransferToken>)
                return registry::apply_transfer(scratch, tx, op);
            else if constexpr (std::is_same_v<T, GrantAccess>)
                return registry::apply_grant(scratch, tx, op);
            else if constexpr (std::is_same_v<T, RevokeAccess>)
                return registry::apply_revoke(scratch, tx, op);
            else if constexpr (std::is_same_v<T, AnchorProof>)
                return registry::apply_anchor(scratch, tx, op);
            else if constexpr (std::is_same_v<T, RegisterUav>)
                return fleet::apply_register(scratch, tx, op);
            else if constexpr (std::is_same_v<T, AssignTask>)
                return fleet::apply_assign(scratch, tx, op);
            else if constexpr (std::is_same_v<T, TransferUav>)
                return fleet::apply_transfer_uav(scratch, tx, op);
            else
                return fleet::apply_complete(scratch, tx, op);
        },
        tx.action);
}

}  // namespace

crypto::Digest genesis_digest() {
    canonical::Writer w;
    w.str("genesis");
    return crypto::sha256(as_view(w.data()));
}

State genesis() {
    State st;
    st.head = genesis_digest();
    return st;
}

void encode(canonical::Writer& w, const Transaction& tx) {
    w.u64(tx.seq);
    encode(w, tx.sender);
    w.u64(tx.logical_time);
    encode_action(w, tx.action);
}

Bytes encode_transaction(const Transaction& tx) {
    canonical::Writer w;
    encode(w, tx);
    return w.take();
}

Transaction decode_transaction(BytesView data) {
    canonical::Reader r(data);
    Transaction tx;
    tx.seq = r.u64();
    tx.sender = read_principal(r);
    tx.logical_time = r.u64();
    tx.action = decode_action(r);
    r.expect_done();
    return tx;
}

Receipt submit_inplace(State& state, const Transaction& tx) {
    if (tx.seq != state.last_seq + 1)
        raise(Errc::invalid_argument, "submit: sequence gap (expected " +
                                          std::to_string(state.last_seq + 1) + ", got " +
                                          std::to_string(tx.seq) + ")");
    if (tx.logical_time < state.last_time)
        raise(Errc::invalid_argument, "submit: logical time went backwards");

    State scratch = state;
    Receipt receipt = dispatch(scratch, tx);
    if (receipt.status == Receipt::Status::applied) {
        canonical::Writer w;
        w.fixed(scratch.head.bytes);
        encode(w, tx);
        scratch.head = crypto::sha256(as_view(w.data()));
        scratch.last_seq = tx.seq;
        scratch.last_time = tx.logical_time;
        scratch.log.push_back(tx);
        state = std::move(scratch);
    }
    return receipt;
}

std::pair<State, Receipt> submit(const State& state, const Transaction& tx) {
    State next = state;
    Receipt receipt = submit_inplace(next, tx);
    return {std::move(next), std::move(receipt)};
}

State replay(std::span<const Transaction> log) {
    State state = genesis();
    for (const Transaction& tx : log) {
        if (tx.seq != state.last_seq + 1)
            raise(Errc::parse, "replay: bad seq " + std::to_string(tx.seq) + " (expected " +
                                   std::to_string(state.last_seq + 1) + ")");
        Receipt r = submit_inplace(state, tx);
        if (r.status != Receipt::Status::applied)
            raise(Errc::parse, "replay: transaction " + std::to_string(tx.seq) +
                                   " does not apply: " + (r.reason.empty() ? "no-op" : r.reason));
    }
    return state;
}

std::vector<Transaction> history(const State& state, std::uint64_t token_id) {
    if (!state.tokens.contains(token_id))
        raise(Errc::not_found, "history: unknown token " + std::to_string(token_id));

    // Reconstruct id assignment by walking the log with the same counters the
    // transitions use, so implicit references (mints, UAV companions) resolve.
    std::vector<Transaction> out;
    std::uint64_t next_token = 1;
    std::map<std::uint64_t, std::uint64_t> uav_token;  // uav_id -> companion token
    std::uint64_t next_uav = 1;

    for (const Transaction& tx : state.log) {
        bool references = false;
        std::visit(
            [&](const auto& op) {
                using T = std::decay_t<decltype(op)>;
                if constexpr (std::is_same_v<T, MintToken>) {
                    references = (next_token == token_id);
                    ++next_token;
                } else if constexpr (std::is_same_v<T, TransferToken>) {
                    references = (op.token_id == token_id);
                } else if constexpr (std::is_same_v<T, GrantAccess>) {
                    references = (op.token_id == token_id);
                } else if constexpr (std::is_same_v<T, RevokeAccess>) {
                    references = (op.token_id == token_id);
                } else if constexpr (std::is_same_v<T, AnchorProof>) {
                    references = (op.token_id == token_id);
                } else if constexpr (std::is_same_v<T, RegisterUav>) {
                    uav_token[next_uav] = next_token;
                    references = (next_token == token_id);
                    ++next_token;
                    ++next_uav;
                } else if constexpr (std::is_same_v<T, TransferUav>) {
                    auto it = uav_token.find(op.uav_id);
                    references = (it != uav_token.end() && it->second == token_id);
                }
                // AssignTask / CompleteTask reference no token
            },
            tx.action);
        if (references) out.push_back(tx);
    }
    return out;
}

Bytes encode_state(const State& state) {
    canonical::Writer w;
    w.u64(state.tokens.size());
    for (const auto& [id, token] : state.tokens) encode(w, token);
    w.u64(state.owners.size());
    for (const auto& [id, owner] : state.owners) {
        w.u64(id);
        encode(w, owner);
    }
    w.u64(state.grants.size());
    for (const auto& [key, grant] : state.grants) encode(w, grant);
    w.u64(state.uavs.size());
    for (const auto& [id, uav] : state.uavs) encode(w, uav);
    w.u64(state.tasks.size());
    for (const auto& [id, rec] : state.tasks) {
        encode(w, rec.task);
        w.u64(rec.uav_id);
        w.boolean(rec.active);
    }
    w.u64(state.next_token_id);
    w.u64(state.next_uav_id);
    w.u64(state.next_task_id);
    w.u64(state.last_seq);
    w.u64(state.last_time);
    w.fixed(state.head.bytes);
    return w.take();
}

void save_log(const State& state, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) raise(Errc::io, "cannot open log for writing: " + path.string());
    out << genesis_digest().hex() << '\n';
    for (const Transaction& tx : state.log) out << to_hex(as_view(encode_transaction(tx))) << '\n';
    out << state.head.hex() << '\n';
    if (!out) raise(Errc::io, "write failed: " + path.string());
}

namespace {

std::vector<std::string> read_lines(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) raise(Errc::io, "cannot open log: " + path.string());
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) lines.push_back(line);
    return lines;
}

State parse_and_replay(const std::filesystem::path& path) {
    std::vector<std::string> lines = read_lines(path);
    if (lines.size() < 2)
        raise(Errc::parse, "log line 1: expected genesis digest and head trailer");
    if (lines.front() != genesis_digest().hex())
        raise(Errc::parse, "log line 1: genesis digest mismatch");

    std::vector<Transaction> log;
    for (std::size_t i = 1; i + 1 < lines.size(); ++i) {
        try {
            log.push_back(decode_transaction(as_view(from_hex(lines[i]))));
        } catch (const Error& e) {
            raise(Errc::parse, "log line " + std::to_string(i + 1) + ": " + e.what());
        }
    }
    State state = replay(log);
    crypto::Digest trailer;
    try {
        trailer = crypto::Digest::from_hex(lines.back());
    } catch (const Error& e) {
        raise(Errc::parse, "log line " + std::to_string(lines.size()) + ": " + e.what());
    }
    if (trailer != state.head)
        raise(Errc::parse, "log line " + std::to_string(lines.size()) +
                               ": head digest mismatch (chain broken)");
    return state;
}

}  // namespace

State load_log(const std::filesystem::path& path) {
    return parse_and_replay(path);
}

ChainInfo verify_chain_file(const std::filesystem::path& path) {
    State state = parse_and_replay(path);
    return ChainInfo{state.log.size(), state.head};
}

std::string action_name(const Action& action) {
    return std::visit(
        [](const auto& op) -> std::string {
            using T = std::decay_t<decltype(op)>;
            if constexpr (std::is_same_v<T, MintToken>) return "mint";
            else if constexpr (std::is_same_v<T, TransferToken>) return "transfer";
            else if constexpr (std::is_same_v<T, GrantAccess>) return "grant";
            else if constexpr (std::is_same_v<T, RevokeAccess>) return "revoke";
            else if constexpr (std::is_same_v<T, RegisterUav>) return "register_uav";
            else if constexpr (std::is_same_v<T, AssignTask>) return "assign_task";
            else if constexpr (std::is_same_v<T, TransferUav>) return "transfer_uav";
            else if constexpr (std::is_same_v<T, CompleteTask>) return "complete_task";
            else return "anchor_proof";
        },
        action);
}

}  // namespace aero::ledger
