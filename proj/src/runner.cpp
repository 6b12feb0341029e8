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

#include "runner.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "dataset.hpp"
#include "errors.hpp"
#include "fleet.hpp"
#include "registry.hpp"

namespace aero::run {

namespace {

using nlohmann::json;

[[noreturn]] void parse_fail(std::size_t line_no, const std::string& what) {
    raise(Errc::parse, "line " + std::to_string(line_no) + ": " + what);
}

json parse_line(const std::string& line, std::size_t line_no) {
    json j = json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object()) parse_fail(line_no, "invalid JSON object");
    return j;
}

std::uint64_t get_u64(const json& j, const char* key, std::size_t line_no) {
    if (!j.contains(key) || !j[key].is_number_unsigned())
        parse_fail(line_no, std::string("missing or invalid '") + key + "'");
    return j[key].get<std::uint64_t>();
}

double get_num(const json& j, const char* key, std::size_t line_no) {
    if (!j.contains(key) || !j[key].is_number())
        parse_fail(line_no, std::string("missing or invalid '") + key + "'");
    return j[key].get<double>();
}

std::string get_str(const json& j, const char* key, std::size_t line_no) {
    if (!j.contains(key) || !j[key].is_string())
        parse_fail(line_no, std::string("missing or invalid '") + key + "'");
    return j[key].get<std::string>();
}

bool get_bool(const json& j, const char* key, bool fallback, std::size_t line_no) {
    if (!j.contains(key)) return fallback;
    if (!j[key].is_boolean())
        parse_fail(line_no, std::string("'") + key + "' must be a boolean");
    return j[key].get<bool>();
}

std::array<double, 3> get_vec3(const json& j, const char* key, std::size_t line_no) {
    if (!j.contains(key) || !j[key].is_array() || j[key].size() != 3)
        parse_fail(line_no, std::string("'") + key + "' must be an array of 3 numbers");
    std::array<double, 3> out{};
    for (std::size_t i = 0; i < 3; ++i) {
        if (!j[key][i].is_number()) parse_fail(line_no, std::string("'") + key + "' must be numeric");
        out[i] = j[key][i].get<double>();
    }
    return out;
}

UavStatus parse_status(const std::string& s, std::size_t line_no) {
    if (s == "available") return UavStatus::available;
    if (s == "maintenance") return UavStatus::maintenance;
    if (s == "in_mission") return UavStatus::in_mission;
    parse_fail(line_no, "unknown status '" + s + "'");
}

UsageClass parse_usage(const std::string& s, std::size_t line_no) {
    if (s == "view") return UsageClass::view;
    if (s == "derive") return UsageClass::derive;
    if (s == "redistribute") return UsageClass::redistribute;
    parse_fail(line_no, "unknown usage class '" + s + "'");
}

const char* usage_name(UsageClass u) {
    switch (u) {
        case UsageClass::view: return "view";
        case UsageClass::derive: return "derive";
        default: return "redistribute";
    }
}

const char* status_name(UavStatus s) {
    switch (s) {
        case UavStatus::available: return "available";
        case UavStatus::in_mission: return "in_mission";
        default: return "maintenance";
    }
}

const char* yesno(bool b) {
    return b ? "yes" : "no";
}

Task task_from_json(const json& j, std::size_t line_no) {
    Task t;
    t.task_id = get_u64(j, "task", line_no);
    t.location = get_vec3(j, "location", line_no);
    t.required_payload = get_num(j, "payload", line_no);
    if (j.contains("urgency")) {
        std::uint64_t u = get_u64(j, "urgency", line_no);
        if (u > 255) parse_fail(line_no, "urgency must fit in a byte");
        t.urgency = static_cast<std::uint8_t>(u);
    }
    if (j.contains("max_radius")) t.max_radius = get_num(j, "max_radius", line_no);
    return t;
}

struct Expectation {
    enum class Kind { ok, noop, revert } kind = Kind::ok;
    std::optional<std::string> reason;  // exact-match when set
};

Expectation parse_expect(const json& j, std::size_t line_no) {
    Expectation e;
    if (!j.contains("expect")) return e;
    if (!j["expect"].is_string()) parse_fail(line_no, "'expect' must be a string");
    std::string s = j["expect"].get<std::string>();
    if (s == "ok") return e;
    if (s == "noop") {
        e.kind = Expectation::Kind::noop;
        return e;
    }
    if (s == "revert") {
        e.kind = Expectation::Kind::revert;
        return e;
    }
    if (s.rfind("revert:", 0) == 0) {
        e.kind = Expectation::Kind::revert;
        e.reason = s.substr(7);
        return e;
    }
    parse_fail(line_no, "unknown expectation '" + s + "'");
}

std::vector<std::string> read_lines(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) raise(Errc::io, "cannot open " + path.string());
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line))
        if (!line.empty()) lines.push_back(line);
    return lines;
}

}  // namespace

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return std::string(buf);
}

Config load_config(const std::optional<std::filesystem::path>& path) {
    std::optional<std::filesystem::path> chosen = path;
    if (!chosen) {
        if (const char* env = std::getenv("AEROLEDGER_CONFIG"); env && *env)
            chosen = std::filesystem::path(env);
    }
    Config config;
    if (!chosen) return config;

    std::ifstream in(*chosen, std::ios::binary);
    if (!in) raise(Errc::io, "cannot open config: " + chosen->string());
    json j = json::parse(in, nullptr, false);
    if (j.is_discarded() || !j.is_object()) raise(Errc::parse, "config: invalid JSON");

    try {
        for (const auto& [key, value] : j.items()) {
            if (key == "genesis_seed") config.genesis_seed = value.get<std::string>();
            else if (key == "ledger_path") config.ledger_path = value.get<std::string>();
            else if (key == "clock_mode") config.clock_mode = value.get<std::string>();
            else if (key == "proof_backend") config.proof_backend = value.get<std::string>();
            else if (key == "proof_group") config.proof_group = value.get<std::string>();
            else if (key == "challenge_count") config.challenge_count = value.get<std::uint32_t>();
            else if (key == "privacy") {
                for (const auto& [pk, pv] : value.items()) {
                    if (pk == "epsilon") config.epsilon = pv.get<double>();
                    else if (pk == "delta") config.delta = pv.get<double>();
                    else if (pk == "clamp_lo") config.clamp_lo = pv.get<double>();
                    else if (pk == "clamp_hi") config.clamp_hi = pv.get<double>();
                    else raise(Errc::parse, "config: unknown privacy key '" + pk + "'");
                }
            } else {
                raise(Errc::parse, "config: unknown key '" + key + "'");
            }
        }
    } catch (const json::exception& e) {
        raise(Errc::parse, std::string("config: ") + e.what());
    }
    if (config.genesis_seed.empty()) raise(Errc::parse, "config: genesis_seed must be non-empty");
    if (config.clock_mode != "scripted" && config.clock_mode != "stepped")
        raise(Errc::parse, "config: clock_mode must be 'scripted' or 'stepped'");
    return config;
}

Principal principal_of(const Config& config, const std::string& label) {
    return Principal::derive(as_view(to_bytes(config.genesis_seed)), label);
}

std::string state_summary(const ledger::State& st) {
    std::ostringstream out;
    out << "head: " << st.head.hex() << '\n';
    out << "transactions: " << st.log.size() << '\n';
    out << "tokens: " << st.tokens.size() << '\n';
    for (const auto& [id, token] : st.tokens) {
        out << "token " << id << " owner=" << st.owners.at(id).hex()
            << " root=" << token.data_root.hex() << " mission=" << token.metadata.mission_id
            << " blocks=" << token.metadata.block_count << '\n';
    }
    out << "grants: " << st.grants.size() << '\n';
    for (const auto& [key, g] : st.grants) {
        out << "grant grantee=" << g.grantee.hex() << " token=" << g.token_id
            << " expires=" << g.expiration << " revoked=" << yesno(g.revoked)
            << " conditions=fee:" << yesno(g.conditions.fee_paid)
            << ",region:" << yesno(g.conditions.region_ok)
            << ",usage:" << usage_name(g.conditions.usage_class) << '\n';
    }
    out << "uavs: " << st.uavs.size() << '\n';
    for (const auto& [id, uav] : st.uavs) {
        out << "uav " << id << " owner=" << uav.owner.hex() << " status=" << status_name(uav.status)
            << " capacity=" << format_double(uav.payload_capacity) << " location=("
            << format_double(uav.location[0]) << "," << format_double(uav.location[1]) << ","
            << format_double(uav.location[2]) << ") token=" << uav.token_id << '\n';
    }
    out << "tasks: " << st.tasks.size() << '\n';
    for (const auto& [id, rec] : st.tasks) {
        out << "task " << id << " uav=" << rec.uav_id << " active=" << yesno(rec.active)
            << " urgency=" << static_cast<unsigned>(rec.task.urgency) << '\n';
    }
    return out.str();
}

std::string history_text(const ledger::State& st, std::uint64_t token_id) {
    std::ostringstream out;
    for (const ledger::Transaction& tx : ledger::history(st, token_id)) {
        out << "seq " << tx.seq << " time " << tx.logical_time << " sender=" << tx.sender.hex()
            << " action=" << ledger::action_name(tx.action);
        if (const auto* tr = std::get_if<ledger::TransferToken>(&tx.action))
            out << " to=" << tr->to.hex();
        if (const auto* tu = std::get_if<ledger::TransferUav>(&tx.action))
            out << " to=" << tu->new_owner.hex();
        if (const auto* an = std::get_if<ledger::AnchorProof>(&tx.action))
            out << " proof=" << an->proof_digest.hex();
        out << '\n';
    }
    return out.str();
}

namespace {

struct ScriptContext {
    const Config* config;
    ledger::State state;
    std::ostringstream report;
};

// Executes a single script command; returns the receipt, or nullopt for pure
// queries (check), which never touch the ledger.
std::optional<ledger::Receipt> exec_command(ScriptContext& ctx, const json& j,
                                            const std::string& action, std::uint64_t time,
                                            std::size_t line_no) {
    auto principal_field = [&](const char* key) {
        return principal_of(*ctx.config, get_str(j, key, line_no));
    };

    if (action == "check") {
        Principal grantee = principal_field("grantee");
        std::uint64_t token = get_u64(j, "token", line_no);
        std::uint64_t now = j.contains("now") ? get_u64(j, "now", line_no) : time;
        bool allowed = registry::check_access(ctx.state, grantee, token, now);
        ctx.report << " grantee=" << get_str(j, "grantee", line_no) << " token=" << token
                   << " now=" << now << " -> " << (allowed ? "granted" : "denied");
        return std::nullopt;
    }

    const Principal sender = principal_field("sender");
    if (action == "mint") {
        crypto::Digest root;
        NftMetadata meta;
        if (j.contains("dataset")) {
            std::uint64_t chunk = j.contains("chunk_size") ? get_u64(j, "chunk_size", line_no) : 1;
            data::FlightDataset ds = data::load_dataset(get_str(j, "dataset", line_no), chunk);
            root = merkle::Tree::build(ds.blocks).root();
            meta.start_time_us = ds.records.front().timestamp_us;
            meta.end_time_us = ds.records.back().timestamp_us;
            meta.block_count = ds.blocks.size();
        } else {
            root = crypto::Digest::from_hex(get_str(j, "root", line_no));
            meta.start_time_us = j.contains("start") ? get_u64(j, "start", line_no) : 0;
            meta.end_time_us = j.contains("end") ? get_u64(j, "end", line_no) : meta.start_time_us;
            meta.block_count = j.contains("blocks") ? get_u64(j, "blocks", line_no) : 1;
        }
        meta.mission_id = get_str(j, "mission", line_no);
        if (j.contains("uav")) meta.uav_id = get_str(j, "uav", line_no);
        if (j.contains("region")) meta.declared_region = get_str(j, "region", line_no);
        return registry::mint(ctx.state, sender, time, root, meta);
    }
    if (action == "transfer") {
        return registry::transfer_token(ctx.state, sender, time, principal_field("from"),
                                        principal_field("to"), get_u64(j, "token", line_no));
    }
    if (action == "grant") {
        LicenseConditions c;
        c.fee_paid = get_bool(j, "fee_paid", false, line_no);
        c.region_ok = get_bool(j, "region_ok", true, line_no);
        if (j.contains("usage")) c.usage_class = parse_usage(get_str(j, "usage", line_no), line_no);
        return registry::grant_access(ctx.state, sender, time, principal_field("grantee"),
                                      get_u64(j, "token", line_no), get_u64(j, "expires", line_no),
                                      c);
    }
    if (action == "revoke") {
        return registry::revoke_access(ctx.state, sender, time, principal_field("grantee"),
                                       get_u64(j, "token", line_no));
    }
    if (action == "register_uav") {
        UavStatus status = j.contains("status")
                               ? parse_status(get_str(j, "status", line_no), line_no)
                               : UavStatus::available;
        return fleet::register_uav(ctx.state, sender, time, get_vec3(j, "location", line_no),
                                   get_num(j, "capacity", line_no), status);
    }
    if (action == "assign_task" || action == "submit_task") {
        return fleet::assign_task(ctx.state, sender, time, task_from_json(j, line_no));
    }
    if (action == "complete_task") {
        return fleet::complete_task(ctx.state, sender, time, get_u64(j, "task", line_no));
    }
    if (action == "transfer_uav") {
        return fleet::transfer_uav(ctx.state, sender, time, get_u64(j, "uav", line_no),
                                   principal_field("new_owner"));
    }
    if (action == "anchor") {
        return registry::anchor_proof(ctx.state, sender, time, get_u64(j, "token", line_no),
                                      crypto::Digest::from_hex(get_str(j, "proof_digest", line_no)));
    }
    parse_fail(line_no, "unknown action '" + action + "'");
}

void describe_receipt(std::ostringstream& out, const ledger::Receipt& r) {
    switch (r.status) {
        case ledger::Receipt::Status::applied:
            out << " -> ok";
            if (r.token_id) out << " token=" << *r.token_id;
            if (r.uav_id) out << " uav=" << *r.uav_id;
            if (r.assignment && r.assignment->selected)
                out << " task=" << r.assignment->task_id << " uav=" << *r.assignment->selected
                    << " distance=" << format_double(r.assignment->distance);
            break;
        case ledger::Receipt::Status::noop:
            out << " -> noop";
            if (r.assignment) out << " task=" << r.assignment->task_id << " unassigned";
            break;
        case ledger::Receipt::Status::reverted:
            out << " -> revert \"" << r.reason << "\"";
            break;
    }
}

}  // namespace

RunOutcome run_script(const std::filesystem::path& script, const Config& config) {
    RunOutcome outcome;
    ScriptContext ctx{&config, ledger::genesis(), {}};
    ctx.report << "== script\n";
    ctx.report << "file: " << script.filename().string() << '\n';

    std::vector<std::string> lines;
    try {
        lines = read_lines(script);
    } catch (const Error& e) {
        outcome.exit_code = kExitParse;
        outcome.detail = e.what();
        return outcome;
    }
    ctx.report << "commands: " << lines.size() << '\n';

    std::uint64_t clock = 0;
    for (std::size_t i = 0; i < lines.size(); ++i) {
        std::size_t line_no = i + 1;
        std::optional<ledger::Receipt> receipt;
        Expectation expect;
        try {
            json j = parse_line(lines[i], line_no);
            std::uint64_t seq = get_u64(j, "seq", line_no);
            if (seq != line_no) parse_fail(line_no, "script seq must be contiguous from 1");
            std::uint64_t time;
            if (config.clock_mode == "stepped") {
                time = ++clock;
            } else {
                time = get_u64(j, "time", line_no);
                if (time < clock) parse_fail(line_no, "time must be non-decreasing");
                clock = time;
            }
            expect = parse_expect(j, line_no);
            std::string action = get_str(j, "action", line_no);
            std::string sender_label = j.contains("sender") ? get_str(j, "sender", line_no) : "-";
            ctx.report << "seq " << seq << " time " << time << ' ' << sender_label << ' '
                       << action;
            receipt = exec_command(ctx, j, action, time, line_no);
        } catch (const Error& e) {
            outcome.exit_code = kExitParse;
            outcome.detail = e.what();
            outcome.report = ctx.report.str();
            return outcome;
        }

        if (!receipt) {  // pure query
            ctx.report << '\n';
            continue;
        }
        describe_receipt(ctx.report, *receipt);

        bool is_revert = (receipt->status == ledger::Receipt::Status::reverted);
        bool expected_revert = (expect.kind == Expectation::Kind::revert);
        if (is_revert && expected_revert &&
            (!expect.reason || *expect.reason == receipt->reason)) {
            ctx.report << " (expected)\n";
            continue;
        }
        if (is_revert) {
            ctx.report << '\n';
            outcome.exit_code = kExitUnexpectedRevert;
            outcome.detail = "seq " + std::to_string(line_no) + ": unexpected revert: " +
                             receipt->reason;
            outcome.report = ctx.report.str();
            outcome.state = std::move(ctx.state);
            return outcome;
        }
        if (expected_revert) {
            ctx.report << '\n';
            outcome.exit_code = kExitMissingRevert;
            outcome.detail =
                "seq " + std::to_string(line_no) + ": expected a revert but the action succeeded";
            outcome.report = ctx.report.str();
            outcome.state = std::move(ctx.state);
            return outcome;
        }
        if (expect.kind == Expectation::Kind::noop &&
            receipt->status != ledger::Receipt::Status::noop) {
            ctx.report << '\n';
            outcome.exit_code = kExitMissingRevert;
            outcome.detail = "seq " + std::to_string(line_no) + ": expected a noop";
            outcome.report = ctx.report.str();
            outcome.state = std::move(ctx.state);
            return outcome;
        }
        ctx.report << '\n';
    }

    ctx.report << "== final state\n" << state_summary(ctx.state);
    outcome.report = ctx.report.str();
    outcome.state = std::move(ctx.state);
    return outcome;
}

FleetOutcome run_fleet(const std::filesystem::path& scenario, const Config& config) {
    FleetOutcome outcome;
    ledger::State state = ledger::genesis();
    std::ostringstream trace;

    std::vector<std::string> lines;
    try {
        lines = read_lines(scenario);
    } catch (const Error& e) {
        outcome.exit_code = kExitParse;
        outcome.detail = e.what();
        return outcome;
    }

    std::uint64_t clock = 0;
    for (std::size_t i = 0; i < lines.size(); ++i) {
        std::size_t line_no = i + 1;
        try {
            json j = parse_line(lines[i], line_no);
            std::string op = get_str(j, "op", line_no);
            std::uint64_t time = j.contains("time") ? get_u64(j, "time", line_no) : clock + 1;
            if (time < clock) parse_fail(line_no, "time must be non-decreasing");
            clock = time;

            json t;
            t["seq"] = line_no;
            t["time"] = time;
            t["op"] = op;
            ledger::Receipt r;
            if (op == "register_uav") {
                UavStatus status = j.contains("status")
                                       ? parse_status(get_str(j, "status", line_no), line_no)
                                       : UavStatus::available;
                r = fleet::register_uav(state, principal_of(config, get_str(j, "owner", line_no)),
                                        time, get_vec3(j, "location", line_no),
                                        get_num(j, "capacity", line_no), status);
                if (r.uav_id) t["uav"] = *r.uav_id;
                if (r.token_id) t["token"] = *r.token_id;
            } else if (op == "submit_task") {
                r = fleet::assign_task(state, principal_of(config, "dispatcher"), time,
                                       task_from_json(j, line_no));
                if (r.assignment) {
                    t["task"] = r.assignment->task_id;
                    if (r.assignment->selected) {
                        t["uav"] = *r.assignment->selected;
                        t["distance"] = r.assignment->distance;
                    }
                }
            } else if (op == "complete_task") {
                r = fleet::complete_task(state, principal_of(config, get_str(j, "sender", line_no)),
                                         time, get_u64(j, "task", line_no));
                t["task"] = get_u64(j, "task", line_no);
            } else if (op == "transfer_uav") {
                r = fleet::transfer_uav(state, principal_of(config, get_str(j, "sender", line_no)),
                                        time, get_u64(j, "uav", line_no),
                                        principal_of(config, get_str(j, "new_owner", line_no)));
                t["uav"] = get_u64(j, "uav", line_no);
            } else {
                parse_fail(line_no, "unknown op '" + op + "'");
            }

            switch (r.status) {
                case ledger::Receipt::Status::applied: t["result"] = "ok"; break;
                case ledger::Receipt::Status::noop: t["result"] = "noop"; break;
                case ledger::Receipt::Status::reverted:
                    t["result"] = "revert";
                    t["reason"] = r.reason;
                    break;
            }
            trace << t.dump() << '\n';
        } catch (const Error& e) {
            outcome.exit_code = kExitParse;
            outcome.detail = e.what();
            outcome.trace = trace.str();
            return outcome;
        }
    }

    std::size_t available = 0, busy = 0, maintenance = 0;
    for (const auto& [id, uav] : state.uavs) {
        if (uav.status == UavStatus::available) ++available;
        else if (uav.status == UavStatus::in_mission) ++busy;
        else ++maintenance;
    }
    std::ostringstream summary;
    summary << "== fleet\n";
    summary << "records: " << lines.size() << '\n';
    summary << "available: " << available << " in_mission: " << busy
            << " maintenance: " << maintenance << '\n';
    summary << "== final state\n" << state_summary(state);

    outcome.trace = trace.str();
    outcome.summary = summary.str();
    outcome.state = std::move(state);
    return outcome;
}

}  // namespace aero::run
