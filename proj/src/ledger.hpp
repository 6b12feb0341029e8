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
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "types.hpp"

namespace aero::ledger {

// ------------------------------------------------------------------------
// Transactions. One signed intent per record; the log is transaction-granular
// (no block batching) and single-writer. Reverted submissions never enter the
// log, so every logged transaction replays cleanly.
// ------------------------------------------------------------------------

struct MintToken {
    crypto::Digest data_root;
    NftMetadata metadata;
};

struct TransferToken {
    Principal from;
    Principal to;
    std::uint64_t token_id = 0;
};

struct GrantAccess {
    Principal grantee;
    std::uint64_t token_id = 0;
    std::uint64_t expiration = 0;
    LicenseConditions conditions;
};

struct RevokeAccess {
    Principal grantee;
    std::uint64_t token_id = 0;
};

struct RegisterUav {
    std::array<double, 3> location{};
    double payload_capacity = 0.0;
    UavStatus status = UavStatus::available;
};

// Carries the task and the selection the submitter computed; on replay the
// transition recomputes the selection and rejects the log if they differ.
struct AssignTask {
    Task task;
    std::uint64_t selected_uav = 0;
    double distance = 0.0;
};

struct TransferUav {
    std::uint64_t uav_id = 0;
    Principal new_owner;
};

struct CompleteTask {
    std::uint64_t task_id = 0;
};

struct AnchorProof {
    std::uint64_t token_id = 0;
    crypto::Digest proof_digest;
};

using Action = std::variant<MintToken, TransferToken, GrantAccess, RevokeAccess, RegisterUav,
                            AssignTask, TransferUav, CompleteTask, AnchorProof>;

struct Transaction {
    std::uint64_t seq = 0;  // strictly increasing, no gaps
    Principal sender;
    std::uint64_t logical_time = 0;  // non-decreasing across the log
    Action action;
};

// ------------------------------------------------------------------------
// State. A pure function of the applied transaction sequence; head_digest
// chains the log: head' = sha256(head || canonical(tx)).
// ------------------------------------------------------------------------

struct AccessKey {
    Principal grantee;
    std::uint64_t token_id = 0;

    auto operator<=>(const AccessKey&) const = default;
};

struct TaskRecord {
    Task task;
    std::uint64_t uav_id = 0;
    bool active = false;

    bool operator==(const TaskRecord&) const = default;
};

struct State {
    std::map<std::uint64_t, NftToken> tokens;
    std::map<std::uint64_t, Principal> owners;
    std::map<AccessKey, AccessGrant> grants;
    std::map<std::uint64_t, UavAsset> uavs;
    std::map<std::uint64_t, TaskRecord> tasks;
    std::uint64_t next_token_id = 1;
    std::uint64_t next_uav_id = 1;
    std::uint64_t next_task_id = 1;
    std::uint64_t last_seq = 0;
    std::uint64_t last_time = 0;
    crypto::Digest head;
    std::vector<Transaction> log;  // applied transactions, in seq order
};

crypto::Digest genesis_digest();  // sha256(canonical("genesis"))
State genesis();

struct Receipt {
    enum class Status {
        applied,   // transition ran, tx appended
        noop,      // nothing to do (e.g. no feasible UAV); state untouched
        reverted,  // transition refused; state untouched
    };

    Status status = Status::reverted;
    std::string reason;  // set iff reverted

    // transition outputs
    std::optional<std::uint64_t> token_id;
    std::optional<std::uint64_t> uav_id;
    std::optional<AssignmentResult> assignment;

    bool ok() const { return status != Status::reverted; }
};

// Applies tx on top of state. Throws Errc::invalid_argument on a sequence gap
// or a logical-time regression (caller bugs); transition refusals come back
// as reverted receipts with the state untouched. Reverts and no-ops do not
// consume a sequence number.
std::pair<State, Receipt> submit(const State& state, const Transaction& tx);

// In-place flavor used by the runners; identical semantics.
Receipt submit_inplace(State& state, const Transaction& tx);

// Replays a well-formed log from genesis. Throws naming the first bad seq if
// the log has gaps or contains a transaction that does not apply.
State replay(std::span<const Transaction> log);

// All logged transactions that reference token_id (creation, transfers,
// grants, revocations, anchors, and UAV transfers of its companion asset).
std::vector<Transaction> history(const State& state, std::uint64_t token_id);

// ------------------------------------------------------------------------
// Wire forms.
// ------------------------------------------------------------------------

Bytes encode_transaction(const Transaction& tx);
Transaction decode_transaction(BytesView data);
void encode(canonical::Writer& w, const Transaction& tx);

// Canonical encoding of the full state (excluding the log; the head digest
// already commits to it). Two states are equal iff their encodings are.
Bytes encode_state(const State& state);

// Log file layout: genesis digest hex line, one lowercase-hex transaction
// line per applied transaction, then the final head digest hex line.
void save_log(const State& state, const std::filesystem::path& path);
State load_log(const std::filesystem::path& path);

// Structural + chain check of a log file; throws Errc::parse with the first
// offending line on any failure.
struct ChainInfo {
    std::uint64_t transactions = 0;
    crypto::Digest head;
};
ChainInfo verify_chain_file(const std::filesystem::path& path);

std::string action_name(const Action& action);

}  // namespace aero::ledger
