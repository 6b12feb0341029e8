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

#include <doctest.h>

#include <cmath>

#include "errors.hpp"
#include "fleet.hpp"
#include "registry.hpp"
#include "test_support.hpp"

using namespace aero;
using aero::testing::principal;

namespace {

// Brute-force oracle, written independently of fleet::select_uav: scan every
// UAV, apply the feasibility rules, keep the strict minimum in id order.
struct OraclePick {
    bool any = false;
    std::uint64_t uav_id = 0;
    double dist = 0;
};

OraclePick oracle_select(const ledger::State& st, const Task& task) {
    OraclePick pick;
    for (const auto& [id, uav] : st.uavs) {
        if (uav.status != UavStatus::available) continue;
        if (uav.payload_capacity < task.required_payload) continue;
        double dx = uav.location[0] - task.location[0];
        double dy = uav.location[1] - task.location[1];
        double dz = uav.location[2] - task.location[2];
        double d = std::sqrt(dx * dx + dy * dy + dz * dz);
        if (task.max_radius.has_value() && d > task.max_radius.value()) continue;
        if (!pick.any || d < pick.dist) {
            pick.any = true;
            pick.uav_id = id;
            pick.dist = d;
        }
    }
    return pick;
}

Task make_task(std::uint64_t id, std::array<double, 3> loc, double payload,
               std::optional<double> radius = std::nullopt) {
    Task t;
    t.task_id = id;
    t.location = loc;
    t.required_payload = payload;
    t.urgency = 5;
    t.max_radius = radius;
    return t;
}

}  // namespace

TEST_SUITE_BEGIN("fleet");

TEST_CASE("first registration mints uav 1 with a fresh companion token") {
    ledger::State st = ledger::genesis();
    ledger::Receipt r = fleet::register_uav(st, principal("alice"), 1, {0, 0, 0}, 5.0);
    CHECK(r.ok());
    CHECK(r.uav_id == 1);
    REQUIRE(r.token_id.has_value());
    CHECK(registry::owner_of(st, *r.token_id) == principal("alice"));
    CHECK(st.uavs.at(1).owner == principal("alice"));
    CHECK(st.uavs.at(1).token_id == *r.token_id);
}

TEST_CASE("registrations get distinct uav and token ids") {
    ledger::State st = ledger::genesis();
    auto r1 = fleet::register_uav(st, principal("alice"), 1, {0, 0, 0}, 5.0);
    auto r2 = fleet::register_uav(st, principal("bob"), 2, {1, 1, 1}, 3.0);
    CHECK(r1.uav_id != r2.uav_id);
    CHECK(r1.token_id != r2.token_id);
}

TEST_CASE("registration validates fields") {
    ledger::State st = ledger::genesis();
    CHECK(fleet::register_uav(st, principal("a"), 1, {0, 0, 0}, 0.0).reason ==
          "invalid payload capacity");
    CHECK(fleet::register_uav(st, principal("a"), 1, {0, 0, 0}, -2.0).reason ==
          "invalid payload capacity");
    CHECK(fleet::register_uav(st, principal("a"), 1, {std::nan(""), 0, 0}, 1.0).reason ==
          "invalid location");
    CHECK(fleet::register_uav(st, principal("a"), 1, {0, 0, 0}, 1.0, UavStatus::in_mission).reason ==
          "invalid initial status");
    CHECK(fleet::register_uav(st, principal("a"), 1, {0, 0, 0}, 1.0, UavStatus::maintenance).ok());
}

TEST_CASE("registered owner matches the companion token owner across fuzzed scripts") {
    aero::testing::Rng rng(0x5eed3001);
    ledger::State st = ledger::genesis();
    std::vector<Principal> actors;
    for (int i = 0; i < 4; ++i) actors.push_back(principal("op" + std::to_string(i)));
    std::uint64_t time = 1;
    for (int i = 0; i < 60; ++i) {
        time += rng.below(2);
        fleet::register_uav(st, actors[rng.below(actors.size())], time,
                            {rng.range(-100, 100), rng.range(-100, 100), rng.range(0, 50)},
                            rng.range(0.5, 10.0));
    }
    for (const auto& [id, uav] : st.uavs) CHECK(registry::owner_of(st, uav.token_id) == uav.owner);
}

TEST_CASE("empty fleet yields no selection and leaves state untouched") {
    ledger::State st = ledger::genesis();
    Bytes before = ledger::encode_state(st);
    ledger::Receipt r = fleet::assign_task(st, principal("ops"), 1, make_task(1, {0, 0, 0}, 1.0));
    CHECK(r.status == ledger::Receipt::Status::noop);
    REQUIRE(r.assignment.has_value());
    CHECK_FALSE(r.assignment->selected.has_value());
    CHECK(ledger::encode_state(st) == before);
}

TEST_CASE("feasibility dominates proximity") {
    ledger::State st = ledger::genesis();
    fleet::register_uav(st, principal("a"), 1, {10, 0, 0}, 5.0);  // far, payload ok
    fleet::register_uav(st, principal("a"), 2, {5, 0, 0}, 1.0);   // near, payload too small
    ledger::Receipt r = fleet::assign_task(st, principal("ops"), 3, make_task(1, {0, 0, 0}, 2.0));
    REQUIRE(r.assignment.has_value());
    CHECK(r.assignment->selected == 1);
    CHECK(r.assignment->distance == doctest::Approx(10.0));
}

TEST_CASE("ties break to the lowest uav id") {
    ledger::State st = ledger::genesis();
    fleet::register_uav(st, principal("a"), 1, {3, 4, 0}, 5.0);
    fleet::register_uav(st, principal("a"), 2, {0, 5, 0}, 5.0);  // same distance 5
    fleet::register_uav(st, principal("a"), 3, {5, 0, 0}, 5.0);
    ledger::Receipt r = fleet::assign_task(st, principal("ops"), 4, make_task(1, {0, 0, 0}, 1.0));
    CHECK(r.assignment->selected == 1);
}

TEST_CASE("max radius excludes distant UAVs") {
    ledger::State st = ledger::genesis();
    fleet::register_uav(st, principal("a"), 1, {100, 0, 0}, 5.0);
    ledger::Receipt r =
        fleet::assign_task(st, principal("ops"), 2, make_task(1, {0, 0, 0}, 1.0, 50.0));
    CHECK(r.status == ledger::Receipt::Status::noop);
    ledger::Receipt r2 =
        fleet::assign_task(st, principal("ops"), 3, make_task(2, {0, 0, 0}, 1.0, 150.0));
    CHECK(r2.assignment->selected == 1);
}

TEST_CASE("assignment flips status and records the task") {
    ledger::State st = ledger::genesis();
    fleet::register_uav(st, principal("a"), 1, {1, 2, 2}, 5.0);
    ledger::Receipt r = fleet::assign_task(st, principal("ops"), 2, make_task(7, {0, 0, 0}, 1.0));
    CHECK(r.ok());
    CHECK(st.uavs.at(1).status == UavStatus::in_mission);
    CHECK(st.tasks.at(7).active);
    CHECK(st.tasks.at(7).uav_id == 1);
    CHECK(r.assignment->distance == doctest::Approx(3.0));

    // busy UAV is not selectable
    ledger::Receipt r2 = fleet::assign_task(st, principal("ops"), 3, make_task(8, {0, 0, 0}, 1.0));
    CHECK(r2.status == ledger::Receipt::Status::noop);
}

TEST_CASE("duplicate task ids revert") {
    ledger::State st = ledger::genesis();
    fleet::register_uav(st, principal("a"), 1, {0, 0, 0}, 5.0);
    fleet::register_uav(st, principal("a"), 1, {9, 9, 9}, 5.0);
    CHECK(fleet::assign_task(st, principal("ops"), 2, make_task(7, {0, 0, 0}, 1.0)).ok());
    CHECK(fleet::assign_task(st, principal("ops"), 3, make_task(7, {1, 1, 1}, 1.0)).reason ==
          "duplicate task id");
}

TEST_CASE("complete_task releases the UAV for the next assignment") {
    ledger::State st = ledger::genesis();
    fleet::register_uav(st, principal("a"), 1, {0, 0, 0}, 5.0);
    fleet::assign_task(st, principal("ops"), 2, make_task(1, {0, 0, 0}, 1.0));
    CHECK(fleet::complete_task(st, principal("a"), 3, 1).ok());
    CHECK(st.uavs.at(1).status == UavStatus::available);
    CHECK_FALSE(st.tasks.at(1).active);
    ledger::Receipt r = fleet::assign_task(st, principal("ops"), 4, make_task(2, {0, 0, 0}, 1.0));
    CHECK(r.assignment->selected == 1);
}

TEST_CASE("complete_task authorization and idempotence boundary") {
    ledger::State st = ledger::genesis();
    fleet::register_uav(st, principal("a"), 1, {0, 0, 0}, 5.0);
    fleet::assign_task(st, principal("ops"), 2, make_task(1, {0, 0, 0}, 1.0));
    CHECK(fleet::complete_task(st, principal("b"), 3, 1).reason == "not the operator");
    CHECK(st.uavs.at(1).status == UavStatus::in_mission);
    CHECK(fleet::complete_task(st, principal("a"), 3, 1).ok());
    CHECK(fleet::complete_task(st, principal("a"), 4, 1).reason == "task not active");
    CHECK(fleet::complete_task(st, principal("a"), 4, 99).reason == "task not active");
}

TEST_CASE("owner transfers an idle UAV and both ownership records move") {
    ledger::State st = ledger::genesis();
    auto r = fleet::register_uav(st, principal("alice"), 1, {0, 0, 0}, 5.0);
    CHECK(fleet::transfer_uav(st, principal("alice"), 2, 1, principal("bob")).ok());
    CHECK(st.uavs.at(1).owner == principal("bob"));
    CHECK(registry::owner_of(st, *r.token_id) == principal("bob"));
}

TEST_CASE("non-owner UAV transfer fails with no change") {
    ledger::State st = ledger::genesis();
    fleet::register_uav(st, principal("alice"), 1, {0, 0, 0}, 5.0);
    Bytes before = ledger::encode_state(st);
    ledger::Receipt r = fleet::transfer_uav(st, principal("mallory"), 2, 1, principal("mallory"));
    CHECK(r.reason == "not current owner");
    CHECK(ledger::encode_state(st) == before);
}

TEST_CASE("transfer while in mission fails") {
    ledger::State st = ledger::genesis();
    fleet::register_uav(st, principal("alice"), 1, {0, 0, 0}, 5.0);
    fleet::assign_task(st, principal("ops"), 2, make_task(1, {0, 0, 0}, 1.0));
    CHECK(fleet::transfer_uav(st, principal("alice"), 3, 1, principal("bob")).reason ==
          "UAV in mission");
    fleet::complete_task(st, principal("alice"), 4, 1);
    CHECK(fleet::transfer_uav(st, principal("alice"), 5, 1, principal("bob")).ok());
}

TEST_CASE("unknown UAV transfer fails") {
    ledger::State st = ledger::genesis();
    CHECK(fleet::transfer_uav(st, principal("alice"), 1, 9, principal("bob")).reason ==
          "unknown uav");
}

TEST_CASE("direct transfer of a companion token is rejected") {
    ledger::State st = ledger::genesis();
    auto r = fleet::register_uav(st, principal("alice"), 1, {0, 0, 0}, 5.0);
    ledger::Receipt t = registry::transfer_token(st, principal("alice"), 2, principal("alice"),
                                                 principal("bob"), *r.token_id);
    CHECK(t.reason == "token bound to UAV asset");
    CHECK(st.uavs.at(1).owner == registry::owner_of(st, *r.token_id));
}

TEST_CASE("fuzzed selections match the brute-force oracle") {
    aero::testing::Rng rng(0x5eed3002);
    for (int round = 0; round < 300; ++round) {
        ledger::State st = ledger::genesis();
        std::uint64_t n = 1 + rng.below(50);
        std::uint64_t time = 1;
        for (std::uint64_t i = 0; i < n; ++i) {
            UavStatus status = UavStatus::available;
            if (rng.below(5) == 0) status = UavStatus::maintenance;
            fleet::register_uav(st, principal("op"), ++time,
                                {rng.range(-500, 500), rng.range(-500, 500), rng.range(0, 120)},
                                rng.range(0.5, 8.0), status);
        }
        Task task = make_task(1, {rng.range(-500, 500), rng.range(-500, 500), rng.range(0, 120)},
                              rng.range(0.5, 8.0),
                              rng.coin() ? std::optional<double>(rng.range(50, 700)) : std::nullopt);
        OraclePick expected = oracle_select(st, task);
        AssignmentResult got = fleet::select_uav(st, task);
        CHECK(got.selected.has_value() == expected.any);
        if (expected.any) {
            CHECK(*got.selected == expected.uav_id);
            CHECK(got.distance == expected.dist);
        }
    }
}

TEST_CASE("no double booking across random assign/complete interleavings") {
    aero::testing::Rng rng(0x5eed3003);
    ledger::State st = ledger::genesis();
    std::uint64_t time = 1;
    for (int i = 0; i < 12; ++i)
        fleet::register_uav(st, principal("op"), ++time,
                            {rng.range(-50, 50), rng.range(-50, 50), 0}, 5.0);
    std::uint64_t next_task = 1;
    for (int step = 0; step < 400; ++step) {
        ++time;
        if (rng.coin()) {
            fleet::assign_task(st, principal("op"), time,
                               make_task(next_task++, {rng.range(-50, 50), rng.range(-50, 50), 0},
                                         rng.range(0.5, 6.0)));
        } else {
            std::vector<std::uint64_t> active;
            for (const auto& [id, rec] : st.tasks)
                if (rec.active) active.push_back(id);
            if (!active.empty())
                fleet::complete_task(st, principal("op"), time, active[rng.below(active.size())]);
        }
        // each UAV holds at most one active task, and exactly the in_mission
        // ones hold one
        std::map<std::uint64_t, int> load;
        for (const auto& [id, rec] : st.tasks)
            if (rec.active) load[rec.uav_id] += 1;
        for (const auto& [uav_id, count] : load) CHECK(count == 1);
        std::size_t busy = 0;
        for (const auto& [id, uav] : st.uavs)
            if (uav.status == UavStatus::in_mission) ++busy;
        CHECK(busy == load.size());
    }
}

TEST_CASE("status conservation holds at every log position") {
    aero::testing::Rng rng(0x5eed3004);
    ledger::State st = ledger::genesis();
    std::uint64_t time = 1;
    std::uint64_t next_task = 1;
    for (int step = 0; step < 200; ++step) {
        ++time;
        switch (rng.below(3)) {
            case 0:
                fleet::register_uav(st, principal("op"), time,
                                    {rng.range(-10, 10), rng.range(-10, 10), 0},
                                    rng.range(1.0, 5.0),
                                    rng.below(4) == 0 ? UavStatus::maintenance
                                                      : UavStatus::available);
                break;
            case 1:
                fleet::assign_task(st, principal("op"), time,
                                   make_task(next_task++, {0, 0, 0}, rng.range(0.5, 4.0)));
                break;
            case 2: {
                for (const auto& [id, rec] : st.tasks)
                    if (rec.active) {
                        fleet::complete_task(st, principal("op"), time, id);
                        break;
                    }
                break;
            }
        }
        std::size_t available = 0, busy = 0, maintenance = 0;
        for (const auto& [id, uav] : st.uavs) {
            if (uav.status == UavStatus::available) ++available;
            if (uav.status == UavStatus::in_mission) ++busy;
            if (uav.status == UavStatus::maintenance) ++maintenance;
        }
        CHECK(available + busy + maintenance == st.uavs.size());
    }
}

TEST_CASE("assignment traces are deterministic for identical scripts") {
    auto run = []() {
        ledger::State st = ledger::genesis();
        fleet::register_uav(st, principal("a"), 1, {0, 0, 0}, 5.0);
        fleet::register_uav(st, principal("a"), 2, {10, 0, 0}, 5.0);
        fleet::assign_task(st, principal("ops"), 3, make_task(1, {6, 0, 0}, 1.0));
        fleet::complete_task(st, principal("a"), 4, 1);
        fleet::assign_task(st, principal("ops"), 5, make_task(2, {1, 0, 0}, 1.0));
        return ledger::encode_state(st);
    };
    CHECK(run() == run());
}

TEST_SUITE_END();
