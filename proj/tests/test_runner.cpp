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

#include <filesystem>
#include <fstream>

#include "errors.hpp"
#include "runner.hpp"
#include "test_support.hpp"

using namespace aero;
namespace fs = std::filesystem;

namespace {

struct TempFile {
    fs::path path;

    explicit TempFile(const std::string& name, const std::string& content)
        : path(fs::temp_directory_path() / name) {
        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        out << content;
    }
    ~TempFile() {
        std::error_code ec;
        fs::remove(path, ec);
    }
};

constexpr const char* kRootA =
    "1111111111111111111111111111111111111111111111111111111111111111";

std::string basic_script() {
    return std::string() +
           R"({"seq": 1, "time": 10, "sender": "alice", "action": "mint", "root": ")" + kRootA +
           R"(", "mission": "M1", "blocks": 5})" + "\n" +
           R"({"seq": 2, "time": 20, "sender": "alice", "action": "transfer", "from": "alice", "to": "bob", "token": 1})" +
           "\n" +
           R"({"seq": 3, "time": 30, "sender": "bob", "action": "grant", "grantee": "carol", "token": 1, "expires": 500, "fee_paid": true})" +
           "\n" + R"({"seq": 4, "time": 400, "action": "check", "grantee": "carol", "token": 1})" +
           "\n" +
           R"({"seq": 5, "time": 600, "action": "check", "grantee": "carol", "token": 1})" + "\n" +
           R"({"seq": 6, "time": 700, "sender": "alice", "action": "transfer", "from": "alice", "to": "alice", "token": 1, "expect": "revert:Only the owner can transfer"})" +
           "\n";
}

}  // namespace

TEST_SUITE_BEGIN("runner");

TEST_CASE("config defaults apply without a file") {
    run::Config config = run::load_config(std::nullopt);
    CHECK(config.genesis_seed == "aero-genesis");
    CHECK(config.clock_mode == "scripted");
    CHECK(config.epsilon == 1.0);
}

TEST_CASE("the config path falls back to the environment variable") {
    TempFile cfg("aero_cfg_env.json", R"({"genesis_seed": "from-env"})");
    setenv("AEROLEDGER_CONFIG", cfg.path.string().c_str(), 1);
    run::Config config = run::load_config(std::nullopt);
    CHECK(config.genesis_seed == "from-env");
    unsetenv("AEROLEDGER_CONFIG");
    CHECK(run::load_config(std::nullopt).genesis_seed == "aero-genesis");
}

TEST_CASE("config files override defaults and reject unknown keys") {
    TempFile good("aero_cfg1.json",
                  R"({"genesis_seed": "s1", "clock_mode": "stepped",
                      "privacy": {"epsilon": 0.5}})");
    run::Config config = run::load_config(good.path);
    CHECK(config.genesis_seed == "s1");
    CHECK(config.clock_mode == "stepped");
    CHECK(config.epsilon == 0.5);
    CHECK(config.delta == 1e-5);

    TempFile bad("aero_cfg2.json", R"({"nope": 1})");
    CHECK_THROWS_AS(run::load_config(bad.path), Error);

    TempFile wrong_type("aero_cfg2b.json", R"({"genesis_seed": 5})");
    try {
        run::load_config(wrong_type.path);
        FAIL("expected throw");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::parse);
    }
}

TEST_CASE("a clean script reports outcomes and the final state") {
    TempFile script("aero_script1.jsonl", basic_script());
    run::RunOutcome outcome = run::run_script(script.path, run::load_config(std::nullopt));
    CHECK(outcome.exit_code == 0);
    CHECK(outcome.report.find("seq 1 time 10 alice mint -> ok token=1") != std::string::npos);
    CHECK(outcome.report.find("seq 4 time 400 - check grantee=carol token=1 now=400 -> granted") !=
          std::string::npos);
    CHECK(outcome.report.find("now=600 -> denied") != std::string::npos);
    CHECK(outcome.report.find("revert \"Only the owner can transfer\" (expected)") !=
          std::string::npos);
    CHECK(outcome.report.find("== final state") != std::string::npos);
    CHECK(outcome.report.find("tokens: 1") != std::string::npos);
    // owner after the transfer is bob
    Principal bob = run::principal_of(run::load_config(std::nullopt), "bob");
    CHECK(outcome.report.find("token 1 owner=" + bob.hex()) != std::string::npos);
    CHECK(outcome.state.log.size() == 3);
}

TEST_CASE("identical scripts produce identical reports") {
    TempFile script("aero_script2.jsonl", basic_script());
    run::Config config = run::load_config(std::nullopt);
    run::RunOutcome a = run::run_script(script.path, config);
    run::RunOutcome b = run::run_script(script.path, config);
    CHECK(a.report == b.report);
}

TEST_CASE("the final-state section equals the replayed state summary") {
    TempFile script("aero_script3.jsonl", basic_script());
    run::RunOutcome outcome = run::run_script(script.path, run::load_config(std::nullopt));
    std::string summary = run::state_summary(ledger::replay(outcome.state.log));
    std::string marker = "== final state\n";
    auto pos = outcome.report.find(marker);
    REQUIRE(pos != std::string::npos);
    CHECK(outcome.report.substr(pos + marker.size()) == summary);
}

TEST_CASE("unexpected reverts exit 3 naming the seq") {
    TempFile script("aero_script4.jsonl",
                    std::string() +
                        R"({"seq": 1, "time": 1, "sender": "m", "action": "transfer", "from": "m", "to": "m", "token": 9})" +
                        "\n");
    run::RunOutcome outcome = run::run_script(script.path, run::load_config(std::nullopt));
    CHECK(outcome.exit_code == run::kExitUnexpectedRevert);
    CHECK(outcome.detail.find("seq 1") != std::string::npos);
}

TEST_CASE("an expected revert that succeeds exits 4") {
    TempFile script("aero_script5.jsonl",
                    std::string() + R"({"seq": 1, "time": 1, "sender": "alice", "action": "mint", "root": ")" +
                        kRootA + R"(", "mission": "M", "expect": "revert"})" + "\n");
    run::RunOutcome outcome = run::run_script(script.path, run::load_config(std::nullopt));
    CHECK(outcome.exit_code == run::kExitMissingRevert);
}

TEST_CASE("an expected revert with the wrong reason exits 3") {
    TempFile script("aero_script6.jsonl",
                    std::string() +
                        R"({"seq": 1, "time": 1, "sender": "m", "action": "transfer", "from": "m", "to": "m", "token": 9, "expect": "revert:Only the owner can transfer"})" +
                        "\n");
    run::RunOutcome outcome = run::run_script(script.path, run::load_config(std::nullopt));
    CHECK(outcome.exit_code == run::kExitUnexpectedRevert);
    CHECK(outcome.detail.find("unknown token") != std::string::npos);
}

TEST_CASE("scripted time going backwards is a parse failure") {
    TempFile script("aero_script7b.jsonl",
                    std::string() + R"({"seq": 1, "time": 9, "sender": "a", "action": "mint", "root": ")" +
                        kRootA + R"(", "mission": "M"})" + "\n" +
                        R"({"seq": 2, "time": 8, "action": "check", "grantee": "b", "token": 1})" +
                        "\n");
    run::RunOutcome outcome = run::run_script(script.path, run::load_config(std::nullopt));
    CHECK(outcome.exit_code == run::kExitParse);
    CHECK(outcome.detail.find("non-decreasing") != std::string::npos);
}

TEST_CASE("script seq gaps are parse failures") {
    TempFile script("aero_script7.jsonl",
                    std::string() + R"({"seq": 2, "time": 1, "sender": "a", "action": "mint", "root": ")" +
                        kRootA + R"(", "mission": "M"})" + "\n");
    run::RunOutcome outcome = run::run_script(script.path, run::load_config(std::nullopt));
    CHECK(outcome.exit_code == run::kExitParse);
}

TEST_CASE("stepped clock mode assigns times 1..n") {
    TempFile config_file("aero_cfg3.json", R"({"clock_mode": "stepped"})");
    TempFile script("aero_script8.jsonl",
                    std::string() + R"({"seq": 1, "sender": "a", "action": "mint", "root": ")" +
                        kRootA + R"(", "mission": "M"})" + "\n" +
                        R"({"seq": 2, "sender": "a", "action": "grant", "grantee": "b", "token": 1, "expires": 100, "fee_paid": true})" +
                        "\n");
    run::RunOutcome outcome = run::run_script(script.path, run::load_config(config_file.path));
    CHECK(outcome.exit_code == 0);
    REQUIRE(outcome.state.log.size() == 2);
    CHECK(outcome.state.log[0].logical_time == 1);
    CHECK(outcome.state.log[1].logical_time == 2);
}

TEST_CASE("fleet scenarios trace assignments and conserve statuses") {
    TempFile scenario(
        "aero_fleet1.jsonl",
        std::string() +
            R"({"time": 1, "op": "register_uav", "owner": "alice", "location": [0,0,0], "capacity": 5.0})" +
            "\n" +
            R"({"time": 2, "op": "register_uav", "owner": "bob", "location": [100,0,0], "capacity": 2.0})" +
            "\n" +
            R"({"time": 3, "op": "submit_task", "task": 1, "location": [10,0,0], "payload": 3.0})" +
            "\n" + R"({"time": 4, "op": "complete_task", "sender": "alice", "task": 1})" + "\n" +
            R"({"time": 5, "op": "transfer_uav", "sender": "alice", "uav": 1, "new_owner": "bob"})" +
            "\n" +
            R"({"time": 6, "op": "submit_task", "task": 2, "location": [0,0,0], "payload": 9.0})" +
            "\n");
    run::FleetOutcome outcome = run::run_fleet(scenario.path, run::load_config(std::nullopt));
    CHECK(outcome.exit_code == 0);
    CHECK(outcome.trace.find("\"op\":\"submit_task\"") != std::string::npos);
    CHECK(outcome.trace.find("\"uav\":1") != std::string::npos);
    CHECK(outcome.trace.find("\"result\":\"noop\"") != std::string::npos);  // task 2 infeasible
    CHECK(outcome.summary.find("available: 2 in_mission: 0 maintenance: 0") != std::string::npos);
    // ownership moved to bob
    Principal bob = run::principal_of(run::load_config(std::nullopt), "bob");
    CHECK(outcome.summary.find("uav 1 owner=" + bob.hex()) != std::string::npos);
}

TEST_CASE("fleet scenario parse failures exit 2") {
    TempFile scenario("aero_fleet2.jsonl", "{\"time\": 1, \"op\": \"warp\"}\n");
    run::FleetOutcome outcome = run::run_fleet(scenario.path, run::load_config(std::nullopt));
    CHECK(outcome.exit_code == run::kExitParse);
}

TEST_SUITE_END();
