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

#include "ledger.hpp"

namespace aero::registry {

using ledger::Receipt;
using ledger::State;
using ledger::Transaction;

// ---- queries (pure reads over state) ----

const Principal& owner_of(const State& state, std::uint64_t token_id);  // throws not_found
const NftToken& token_of(const State& state, std::uint64_t token_id);   // throws not_found

// Access holds iff an unrevoked grant exists, t_now < expiration (strict) and
// the licensing conditions are satisfied. Unknown tokens and missing grants
// are simply false.
bool check_access(const State& state, const Principal& grantee, std::uint64_t token_id,
                  std::uint64_t t_now);

// ---- convenience wrappers: build the transaction at the next seq and submit ----

Receipt mint(State& state, const Principal& sender, std::uint64_t logical_time,
             const crypto::Digest& data_root, const NftMetadata& metadata);

Receipt transfer_token(State& state, const Principal& sender, std::uint64_t logical_time,
                       const Principal& from, const Principal& to, std::uint64_t token_id);

Receipt grant_access(State& state, const Principal& sender, std::uint64_t logical_time,
                     const Principal& grantee, std::uint64_t token_id, std::uint64_t expiration,
                     const LicenseConditions& conditions);

Receipt revoke_access(State& state, const Principal& sender, std::uint64_t logical_time,
                      const Principal& grantee, std::uint64_t token_id);

Receipt anchor_proof(State& state, const Principal& sender, std::uint64_t logical_time,
                     std::uint64_t token_id, const crypto::Digest& proof_digest);

// ---- transitions (entered through ledger dispatch; state is the scratch copy) ----

Receipt apply_mint(State& state, const Transaction& tx, const ledger::MintToken& op);
Receipt apply_transfer(State& state, const Transaction& tx, const ledger::TransferToken& op);
Receipt apply_grant(State& state, const Transaction& tx, const ledger::GrantAccess& op);
Receipt apply_revoke(State& state, const Transaction& tx, const ledger::RevokeAccess& op);
Receipt apply_anchor(State& state, const Transaction& tx, const ledger::AnchorProof& op);

}  // namespace aero::registry
