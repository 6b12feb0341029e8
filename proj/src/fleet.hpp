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

namespace aero::fleet {

using ledger::Receipt;
using ledger::State;
using ledger::Transaction;

double distance(const std::array<double, 3>& a, const std::array<double, 3>& b);

// Feasible-argmin selection: among UAVs that are available, can carry the
// required payload, and sit within max_radius when one is set, pick the one
// with the smallest Euclidean distance to the task; ties go to the lowest
// uav_id (the scan keeps the first strict minimum in id order). Returns an
// empty selection when nothing qualifies.
AssignmentResult select_uav(const State& state, const Task& task);

// ---- convenience wrappers ----

Receipt register_uav(State& state, const Principal& sender, std::uint64_t logical_time,
                     const std::array<double, 3>& location, double payload_capacity,
                     UavStatus status = UavStatus::available);

// Computes the selection over the current state, then submits an AssignTask
// transaction recording it. No feasible UAV -> noop receipt, nothing logged.
Receipt assign_task(State& state, const Principal& sender, std::uint64_t logical_time,
                    const Task& task);

Receipt complete_task(State& state, const Principal& sender, std::uint64_t logical_time,
                      std::uint64_t task_id);

// Success iff sender is the current owner and the UAV is not in
// mission; on success the asset owner and its companion NFT owner move
// together atomically. Failures come back as reverted receipts carrying the
// reason.
Receipt transfer_uav(State& state, const Principal& sender, std::uint64_t logical_time,
                     std::uint64_t uav_id, const Principal& new_owner);

// ---- transitions ----

Receipt apply_register(State& state, const Transaction& tx, const ledger::RegisterUav& op);
Receipt apply_assign(State& state, const Transaction& tx, const ledger::AssignTask& op);
Receipt apply_transfer_uav(State& state, const Transaction& tx, const ledger::TransferUav& op);
Receipt apply_complete(State& state, const Transaction& tx, const ledger::CompleteTask& op);

}  // namespace aero::fleet
