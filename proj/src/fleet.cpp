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

#include "fleet.hpp"

#include <cmath>
#include <limits>

#include "errors.hpp"
#include "registry.hpp"

namespace aero::fleet {

namespace {

Receipt reverted(std::string reason) {
    Receipt r;
    r.status = Receipt::Status::reverted;
    r.reason = std::move(reason);
    return r;
}

}  // namespace

double distance(const std::array<double, 3>& a, const std::array<double, 3>& b) {
    double dx = a[0] - b[0];
    double dy = a[1] - b[1];
    double dz = a[2] - b[2];
    return std::sqrt(dx * dx + dy * dy + dz * dz);
}

AssignmentResult select_uav(const State& state, const Task& task) {
    AssignmentResult result;
    result.task_id = task.task_id;

    double best = std::numeric_limits<double>::infinity();
    // std::map iterates in uav_id order, so the strict < keeps the lowest id
    // among equidistant candidates.
    for (const auto& [id, uav] : state.uavs) {
        if (uav.status != UavStatus::available) continue;
        if (uav.payload_capacity < task.required_payload) continue;
        double d = distance(uav.location, task.location);
        if (task.max_radius && d > *task.max_radius) continue;
        if (d < best) {
            best = d;
            result.selected = id;
            result.distance = d;
        }
    }
    return result;
}

Receipt apply_register(State& state, const Transaction& tx, const ledger::RegisterUav& op) {
    if (!(op.payload_capacity > 0.0) || !std::isfinite(op.payload_capacity))
        return reverted("invalid payload capacity");
    for (double c : op.location)
        if (!std::isfinite(c)) return reverted("invalid location");
    // in_mission implies an active task, which a fresh asset cannot have
    if (op.status == UavStatus::in_mission) return reverted("invalid initial status");

    std::uint64_t uav_id = state.next_uav_id++;
    std::uint64_t token_id = state.next_token_id++;

    UavAsset uav;
    uav.uav_id = uav_id;
    uav.location = op.location;
    uav.payload_capacity = op.payload_capacity;
    uav.status = op.status;
    uav.owner = tx.sender;
    uav.token_id = token_id;

    // Companion NFT: the commitment is the hash of the registration payload.
    canonical::Writer w;
    w.str("uav-registration");
    w.u64(uav_id);
    for (double c : op.location) w.f64(c);
    w.f64(op.payload_capacity);
    NftToken token;
    token.token_id = token_id;
    token.data_root = crypto::sha256(as_view(w.data()));
    token.metadata.mission_id = "uav-registration";
    token.metadata.uav_id = std::to_string(uav_id);
    token.metadata.start_time_us = tx.logical_time;
    token.metadata.end_time_us = tx.logical_time;
    token.metadata.block_count = 1;

    state.uavs.emplace(uav_id, std::move(uav));
    state.tokens.emplace(token_id, std::move(token));
    state.owners[token_id] = tx.sender;

    Receipt r;
    r.status = Receipt::Status::applied;
    r.uav_id = uav_id;
    r.token_id = token_id;
    return r;
}

Receipt apply_assign(State& state, const Transaction& tx, const ledger::AssignTask& op) {
    (void)tx;
    if (!(op.task.required_payload > 0.0) || !std::isfinite(op.task.required_payload))
        return reverted("invalid task");
    for (double c : op.task.location)
        if (!std::isfinite(c)) return reverted("invalid task");
    if (op.task.max_radius && (!(*op.task.max_radius >= 0.0) || !std::isfinite(*op.task.max_radius)))
        return reverted("invalid task");
    if (state.tasks.contains(op.task.task_id)) return reverted("duplicate task id");

    AssignmentResult computed = select_uav(state, op.task);
    if (!computed.selected) {
        Receipt r;
        r.status = Receipt::Status::noop;
        r.assignment = computed;
        return r;
    }
    // The logged selection must match the deterministic rule, otherwise the
    // log has been tampered with.
    if (*computed.selected != op.selected_uav || computed.distance != op.distance)
        return reverted("assignment does not match selection rule");

    state.uavs.at(op.selected_uav).status = UavStatus::in_mission;
    state.tasks[op.task.task_id] = ledger::TaskRecord{op.task, op.selected_uav, true};
    if (op.task.task_id >= state.next_task_id) state.next_task_id = op.task.task_id + 1;

    Receipt r;
    r.status = Receipt::Status::applied;
    r.assignment = computed;
    return r;
}

Receipt apply_complete(State& state, const Transaction& tx, const ledger::CompleteTask& op) {
    auto it = state.tasks.find(op.task_id);
    if (it == state.tasks.end() || !it->second.active) return reverted("task not active");
    UavAsset& uav = state.uavs.at(it->second.uav_id);
    if (tx.sender != uav.owner) return reverted("not the operator");

    uav.status = UavStatus::available;
    it->second.active = false;
    return Receipt{Receipt::Status::applied, {}, {}, {}, {}};
}

Receipt apply_transfer_uav(State& state, const Transaction& tx, const ledger::TransferUav& op) {
    auto it = state.uavs.find(op.uav_id);
    if (it == state.uavs.end()) return reverted("unknown uav");
    UavAsset& uav = it->second;
    // SC_transfer validity: owner match, and no active mission to disrupt.
    if (tx.sender != uav.owner) return reverted("not current owner");
    if (uav.status == UavStatus::in_mission) return reverted("UAV in mission");

    uav.owner = op.new_owner;
    state.owners.at(uav.token_id) = op.new_owner;  // asset and NFT move together
    return Receipt{Receipt::Status::applied, {}, {}, {}, {}};
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

Receipt register_uav(State& state, const Principal& sender, std::uint64_t logical_time,
                     const std::array<double, 3>& location, double payload_capacity,
                     UavStatus status) {
    return wrap(state, sender, logical_time, ledger::RegisterUav{location, payload_capacity, status});
}

Receipt assign_task(State& state, const Principal& sender, std::uint64_t logical_time,
                    const Task& task) {
    AssignmentResult pick = select_uav(state, task);
    ledger::AssignTask op;
    op.task = task;
    if (pick.selected) {
        op.selected_uav = *pick.selected;
        op.distance = pick.distance;
    }
    return wrap(state, sender, logical_time, std::move(op));
}

Receipt complete_task(State& state, const Principal& sender, std::uint64_t logical_time,
                      std::uint64_t task_id) {
    return wrap(state, sender, logical_time, ledger::CompleteTask{task_id});
}

Receipt transfer_uav(State& state, const Principal& sender, std::uint64_t logical_time,
                     std::uint64_t uav_id, const Principal& new_owner) {
    return wrap(state, sender, logical_time, ledger::TransferUav{uav_id, new_owner});
}

}  // namespace aero::fleet
