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

#include <filesystem>
#include <optional>
#include <string>

#include "ledger.hpp"

namespace aero::run {

// Stable exit-code contract shared by the runners and the CLI.
inline constexpr int kExitOk = 0;
inline constexpr int kExitOther = 1;
inline constexpr int kExitParse = 2;
inline constexpr int kExitUnexpectedRevert = 3;
inline constexpr int kExitMissingRevert = 4;

struct Config {
    std::string genesis_seed = "aero-genesis";
    std::string ledger_path = "ledger.log";
    std::string clock_mode = "scripted";  // or "stepped"
    std::string proof_backend = "sigma";  // or "merkle-challenge"
    std::string proof_group = "modp-2048";
    std::uint32_t challenge_count = 4;
    double epsilon = 1.0;
    double delta = 1e-5;
    double clamp_lo = 0.0;
    double clamp_hi = 1000.0;
};

// Reads the JSON config at `path` when given, else at $AEROLEDGER_CONFIG,
// else returns defaults. Unknown keys are rejected.
Config load_config(const std::optional<std::filesystem::path>& path);

Principal principal_of(const Config& config, const std::string& label);

// Deterministic %.17g rendering used everywhere a double reaches an output.
std::string format_double(double v);

// The reproducible final-state section ("ledger replay" prints exactly this).
std::string state_summary(const ledger::State& state);

// One line per history entry for a token.
std::string history_text(const ledger::State& state, std::uint64_t token_id);

struct RunOutcome {
    int exit_code = kExitOk;
    std::string report;  // command lines + final-state summary
    std::string detail;  // failure description when exit_code != 0
    ledger::State state;
};

// Executes a JSONL script against a fresh ledger. Lines carry a contiguous
// script seq, an action and an optional expectation ("ok", "noop", "revert"
// or "revert:<exact reason>"). Clock mode "scripted" takes each line's time
// field; "stepped" advances the clock by one per line.
RunOutcome run_script(const std::filesystem::path& script, const Config& config);

struct FleetOutcome {
    int exit_code = kExitOk;
    std::string trace;    // JSONL, one line per scenario record
    std::string summary;  // fleet table + conservation counts
    std::string detail;
    ledger::State state;
};

// Fleet scenario: records restricted to register_uav / submit_task /
// complete_task / transfer_uav.
FleetOutcome run_fleet(const std::filesystem::path& scenario, const Config& config);

}  // namespace aero::run
