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

#include "aeroledger/aeroledger.h"

#include <cstring>
#include <fstream>
#include <string>

#include "dataset.hpp"
#include "errors.hpp"
#include "fleet.hpp"
#include "ledger.hpp"
#include "possession.hpp"
#include "privacy.hpp"
#include "registry.hpp"
#include "runner.hpp"

using namespace aero;

// Opaque handle definitions. Plain wrappers; all behavior lives in the core.
struct aero_dataset {
    data::FlightDataset ds;
};

struct aero_ledger {
    ledger::State state;
};

struct aero_proof_params {
    possession::Params params;
};

namespace {

thread_local std::string t_last_error = "no error";

aero_status fail(aero_status code, const std::string& message) {
    t_last_error = message;
    return code;
}

aero_status from_error(const Error& e) {
    switch (e.code()) {
        case Errc::invalid_argument: return fail(AERO_ERR_INVALID, e.what());
        case Errc::parse: return fail(AERO_ERR_PARSE, e.what());
        case Errc::not_found: return fail(AERO_ERR_NOT_FOUND, e.what());
        case Errc::auth: return fail(AERO_ERR_AUTH, e.what());
        case Errc::io: return fail(AERO_ERR_IO, e.what());
        default: return fail(AERO_ERR, e.what());
    }
}

// Every API body runs under this wrapper so exceptions never cross the ABI.
template <typename Fn>
aero_status guarded(Fn&& fn) {
    try {
        return fn();
    } catch (const Error& e) {
        return from_error(e);
    } catch (const std::exception& e) {
        return fail(AERO_ERR, e.what());
    } catch (...) {
        return fail(AERO_ERR, "unknown failure");
    }
}

aero_status receipt_status(const ledger::Receipt& r) {
    if (r.status == ledger::Receipt::Status::reverted) return fail(AERO_ERR_REVERT, r.reason);
    return AERO_OK;
}

Principal principal_from(const uint8_t address[AERO_ADDRESS_SIZE]) {
    Principal p;
    std::memcpy(p.address.data(), address, AERO_ADDRESS_SIZE);
    return p;
}

crypto::Digest digest_from(const uint8_t bytes[AERO_DIGEST_SIZE]) {
    crypto::Digest d;
    std::memcpy(d.bytes.data(), bytes, AERO_DIGEST_SIZE);
    return d;
}

char* dup_string(const std::string& s) {
    char* out = new char[s.size() + 1];
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

aero_status require(bool cond, const char* what) {
    if (cond) return AERO_OK;
    return fail(AERO_ERR_INVALID, std::string("invalid argument: ") + what);
}

run::Config config_from(const char* config_path) {
    std::optional<std::filesystem::path> p;
    if (config_path && *config_path) p = std::filesystem::path(config_path);
    return run::load_config(p);
}

void write_file(const char* path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) raise(Errc::io, std::string("cannot open for writing: ") + path);
    out << content;
    if (!out) raise(Errc::io, std::string("write failed: ") + path);
}

}  // namespace

extern "C" {

const char* aero_version(void) {
    return AERO_VERSION_STRING;
}

const char* aero_last_error(void) {
    return t_last_error.c_str();
}

void aero_string_free(char* s) {
    delete[] s;
}

aero_status aero_principal_derive(const uint8_t* seed, size_t seed_len, const char* label,
                                  uint8_t out_address[AERO_ADDRESS_SIZE]) {
    return guarded([&]() -> aero_status {
        if (auto rc = require(seed && seed_len > 0, "seed"); rc != AERO_OK) return rc;
        if (auto rc = require(label && out_address, "label/out"); rc != AERO_OK) return rc;
        Principal p = Principal::derive(BytesView{seed, seed_len}, label);
        std::memcpy(out_address, p.address.data(), AERO_ADDRESS_SIZE);
        return AERO_OK;
    });
}

aero_status aero_principal_from_label(const char* config_path, const char* label,
                                      uint8_t out_address[AERO_ADDRESS_SIZE]) {
    return guarded([&]() -> aero_status {
        if (auto rc = require(label && out_address, "label/out"); rc != AERO_OK) return rc;
        run::Config config = config_from(config_path);
        Principal p = run::principal_of(config, label);
        std::memcpy(out_address, p.address.data(), AERO_ADDRESS_SIZE);
        return AERO_OK;
    });
}

aero_status aero_config_load(const char* config_path, aero_run_config* out) {
    return guarded([&]() -> aero_status {
        if (auto rc = require(out != nullptr, "out"); rc != AERO_OK) return rc;
        run::Config config = config_from(config_path);
        auto put = [&](char* dst, std::size_t cap, const std::string& value, const char* what) {
            if (value.size() + 1 > cap)
                raise(Errc::invalid_argument, std::string("config value too long: ") + what);
            std::memcpy(dst, value.c_str(), value.size() + 1);
        };
        put(out->genesis_seed, sizeof(out->genesis_seed), config.genesis_seed, "genesis_seed");
        put(out->ledger_path, sizeof(out->ledger_path), config.ledger_path, "ledger_path");
        put(out->clock_mode, sizeof(out->clock_mode), config.clock_mode, "clock_mode");
        put(out->proof_backend, sizeof(out->proof_backend), config.proof_backend, "proof_backend");
        put(out->proof_group, sizeof(out->proof_group), config.proof_group, "proof_group");
        out->challenge_count = config.challenge_count;
        out->epsilon = config.epsilon;
        out->delta = config.delta;
        out->clamp_lo = config.clamp_lo;
        out->clamp_hi = config.clamp_hi;
        return AERO_OK;
    });
}

/* ---- datasets ---- */

aero_status aero_dataset_load(const char* jsonl_path, uint64_t chunk_size, aero_dataset** out) {
    return guarded([&]() -> aero_status {
        if (auto rc = require(jsonl_path && out, "path/out"); rc != AERO_OK) return rc;
        auto handle = std::make_unique<aero_dataset>();
        handle->ds = data::load_dataset(jsonl_path, chunk_size);
        *out = handle.release();
        return AERO_OK;
    });
}

void aero_dataset_free(aero_dataset* ds) {
    delete ds;
}

uint64_t aero_dataset_record_count(const aero_dataset* ds) {
    return ds ? ds->ds.records.size() : 0;
}

uint64_t aero_dataset_block_count(const aero_dataset* ds) {
    return ds ? ds->ds.blocks.size() : 0;
}

aero_status aero_dataset_time_range(const aero_dataset* ds, uint64_t* out_start_us,
                                    uint64_t* out_end_us) {
    return guarded([&]() -> aero_status {
        if (auto rc = require(ds && out_start_us && out_end_us, "ds/out"); rc != AERO_OK) return rc;
        *out_start_us = ds->ds.records.front().timestamp_us;
        *out_end_us = ds->ds.records.back().timestamp_us;
        return AERO_OK;
    });
}

aero_status aero_dataset_root(const aero_dataset* ds, uint8_t out_digest[AERO_DIGEST_SIZE]) {
    return guarded([&]() -> aero_status {
        if (auto rc = require(ds && out_digest, "ds/out"); rc != AERO_OK) return rc;
        crypto::Digest root = merkle::Tree::build(ds->ds.blocks).root();
        std::memcpy(out_digest, root.bytes.data(), AERO_DIGEST_SIZE);
        return AERO_OK;
    });
}

/* ---- ledger ---- */

aero_status aero_ledger_create(aero_ledger** out) {
    return guarded([&]() -> aero_status {
        if (auto rc = require(out != nullptr, "out"); rc != AERO_OK) return rc;
        *out = new aero_ledger{ledger::genesis()};
        return AERO_OK;
    });
}

aero_status aero_ledger_open(const char* log_path, aero_ledger** out) {
    return guarded([&]() -> aero_status {
        if (auto rc = require(log_path && out, "path/out"); rc != AERO_OK) return rc;
        auto handle = std::make_unique<aero_ledger>();
        handle->state = ledger::load_log(log_path);
        *out = handle.release();
        return AERO_OK;
    });
}

aero_status aero_ledger_save(const aero_ledger* ledger_handle, const char* log_path) {
    return guarded([&]() -> aero_status {
        if (auto rc = require(ledger_handle && log_path, "ledger/path"); rc != AERO_OK) return rc;
        ledger::save_log(ledger_handle->state, log_path);
        return AERO_OK;
    });
}

void aero_ledger_free(aero_ledger* ledger_handle) {
    delete ledger_handle;
}

aero_status aero_ledger_verify_chain(const char* log_path, uint64_t* out_transactions,
                                     uint8_t out_head[AERO_DIGEST_SIZE]) {
    return guarded([&]() -> aero_status {
        if (auto rc = require(log_path != nullptr, "path"); rc != AERO_OK) return rc;
        ledger::ChainInfo info = ledger::verify_chain_file(log_path);
        if (out_transactions) *out_transactions = info.transactions;
        if (out_head) std::memcpy(out_head, info.head.bytes.data(), AERO_DIGEST_SIZE);
        return AERO_OK;
    });
}

uint64_t aero_ledger_tx_count(const aero_ledger* ledger_handle) {
    return ledger_handle ? ledger_handle->state.log.size() : 0;
}

uint64_t aero_ledger_last_time(const aero_ledger* ledger_handle) {
    return ledger_handle ? ledger_handle->state.last_time : 0;
}

aero_status aero_ledger_head(const aero_ledger* ledger_handle,
                             uint8_t out_digest[AERO_DIGEST_SIZE]) {
    return guarded([&]() -> aero_status {
        if (auto rc = require(ledger_handle && out_digest, "ledger/out"); rc != AERO_OK) return rc;
        std::memcpy(out_digest, ledger_handle->state.head.bytes.data(), AERO_DIGEST_SIZE);
        return AERO_OK;
    });
}

aero_status aero_ledger_state_summary(const aero_ledger* ledger_handle, char** out_text) {
    return guarded([&]() -> aero_status {
        if (auto rc = require(ledger_handle && out_text, "ledger/out"); rc != AERO_OK) return rc;
        *out_text = dup_string(run::state_summary(ledger_handle->state));
        return AERO_OK;
    });
}

/* ---- registry ---- */

aero_status aero_ledger_mint(aero_ledger* ledger_handle, const uint8_t sender[AERO_ADDRESS_SIZE],
                             uint64_t logical_time, const uint8_t data_root[AERO_DIGEST_SIZE],
                             const aero_nft_metadata* metadata, uint64_t* out_token_id) {
    return guarded([&]() -> aero_status {
        if (auto rc = require(ledger_handle && sender && data_root && metadata, "args");
            rc != AERO_OK)
            return rc;
        if (auto rc = require(metadata->mission_id != nullptr, "metadata.mission_id");
            rc != AERO_OK)
            return rc;
        NftMetadata meta;
        meta.mission_id = metadata->mission_id;
        meta.uav_id = metadata->uav_id ? metadata->uav_id : "";
        meta.declared_region = metadata->declared_region ? metadata->declared_region : "";
        meta.start_time_us = metadata->start_time_us;
        meta.end_time_us = metadata->end_time_us;
        meta.block_count = metadata->block_count;
        ledger::Receipt r = registry::mint(ledger_handle->state, principal_from(sender),
                                           logical_time, digest_from(data_root), meta);
        if (auto rc = receipt_status(r); rc != AERO_OK) return rc;
        if (out_token_id) *out_token_id = *r.token_id;
        return AERO_OK;
    });
}

aero_status aero_ledger_transfer(aero_ledger* ledger_handle,
                                 const uint8_t sender[AERO_ADDRESS_SIZE], uint64_t logical_time,
                                 const uint8_t from[AERO_ADDRESS_SIZE],
                                 const uint8_t to[AERO_ADDRESS_SIZE], uint64_t token_id) {
    return guarded([&]() -> aero_status {
        if (auto rc = require(ledger_handle && sender && from && to, "args"); rc != AERO_OK)
            return rc;
        return receipt_status(registry::transfer_token(ledger_handle->state,
                                                       principal_from(sender), logical_time,
                                                       principal_from(from), principal_from(to),
                                                       token_id));
    });
}

aero_status aero_ledger_grant(aero_ledger* ledger_handle, const uint8_t sender[AERO_ADDRESS_SIZE],
                              uint64_t logical_time, const uint8_t grantee[AERO_ADDRESS_SIZE],
                              uint64_t token_id, uint64_t expiration, int fee_paid, int region_ok,
                              aero_usage_class usage) {
    return guarded([&]() -> aero_status {
        if (auto rc = require(ledger_handle && sender && grantee, "args"); rc != AERO_OK) return rc;
        if (auto rc = require(usage <= AERO_USAGE_REDISTRIBUTE, "usage"); rc != AERO_OK) return rc;
        LicenseConditions conditions{fee_paid != 0, region_ok != 0,
                                     static_cast<UsageClass>(usage)};
        return receipt_status(registry::grant_access(ledger_handle->state, principal_from(sender),
                                                     logical_time, principal_from(grantee),
                                                     token_id, expiration, conditions));
    });
}

aero_status aero_ledger_revoke(aero_ledger* ledger_handle, const uint8_t sender[AERO_ADDRESS_SIZE],
                               uint64_t logical_time, const uint8_t grantee[AERO_ADDRESS_SIZE],
                               uint64_t token_id) {
    return guarded([&]() -> aero_status {
        if (auto rc = require(ledger_handle && sender && grantee, "args"); rc != AERO_OK) return rc;
        return receipt_status(registry::revoke_access(ledger_handle->state, principal_from(sender),
                                                      logical_time, principal_from(grantee),
                                                      token_id));
    });
}

aero_status aero_ledger_check_access(const aero_ledger* ledger_handle,
                                     const uint8_t grantee[AERO_ADDRESS_SIZE], uint64_t token_id,
                                     uint64_t t_now, int* out_allowed) {
    return guarded([&]() -> aero_status {
        if (auto rc = require(ledger_handle && grantee && out_allowed, "args"); rc != AERO_OK)
            return rc;
        *out_allowed =
            registry::check_access(ledger_handle->state, principal_from(grantee), token_id, t_now)
                ? 1
                : 0;
        return AERO_OK;
    });
}

aero_status aero_ledger_owner_of(const aero_ledger* ledger_handle, uint64_t token_id,
                                 uint8_t out_owner[AERO_ADDRESS_SIZE]) {
    return guarded([&]() -> aero_status {
        if (auto rc = require(ledger_handle && out_owner, "args"); rc != AERO_OK) return rc;
        const Principal& owner = registry::owner_of(ledger_handle->state, token_id);
        std::memcpy(out_owner, owner.address.data(), AERO_ADDRESS_SIZE);
        return AERO_OK;
    });
}

aero_status aero_ledger_token_root(const aero_ledger* ledger_handle, uint64_t token_id,
                                   uint8_t out_digest[AERO_DIGEST_SIZE]) {
    return guarded([&]() -> aero_status {
        if (auto rc = require(ledger_handle && out_digest, "args"); rc != AERO_OK) return rc;
        const NftToken& token = registry::token_of(ledger_handle->state, token_id);
        std::memcpy(out_digest, token.data_root.bytes.data(), AERO_DIGEST_SIZE);
        return AERO_OK;
    });
}

aero_status aero_ledger_token_block_count(const aero_ledger* ledger_handle, uint64_t token_id,
                                          uint64_t* out_blocks) {
    return guarded([&]() -> aero_status {
        if (auto rc = require(ledger_handle && out_blocks, "args"); rc != AERO_OK) return rc;
        *out_blocks = registry::token_of(ledger_handle->state, token_id).metadata.block_count;
        return AERO_OK;
    });
}

aero_status aero_ledger_history(const aero_ledger* ledger_handle, uint64_t token_id,
                                char** out_text) {
    return guarded([&]() -> aero_status {
        if (auto rc = require(ledger_handle && out_text, "args"); rc != AERO_OK) return rc;
        *out_text = dup_string(run::history_text(ledger_handle->state, token_id));
        return AERO_OK;
    });
}

/* ---- fleet ---- */

aero_status aero_ledger_register_uav(aero_ledger* ledger_handle,
                                     const uint8_t sender[AERO_ADDRESS_SIZE],
                                     uint64_t logical_time, const double location[3],
                                     double payload_capacity, aero_uav_status status,
                                     uint64_t* out_uav_id, uint64_t* out_token_id) {
    return guarded([&]() -> aero_status {
        if (auto rc = require(ledger_handle && sender && location, "args"); rc != AERO_OK)
            return rc;
        if (auto rc = require(status <= AERO_UAV_MAINTENANCE, "status"); rc != AERO_OK) return rc;
        ledger::Receipt r = fleet::register_uav(
            ledger_handle->state, principal_from(sender), logical_time,
            {location[0], location[1], location[2]}, payload_capacity,
            static_cast<UavStatus>(status));
        if (auto rc = receipt_status(r); rc != AERO_OK) return rc;
        if (out_uav_id) *out_uav_id = *r.uav_id;
        if (out_token_id) *out_token_id = *r.token_id;
        return AERO_OK;
    });
}

aero_status aero_ledger_assign_task(aero_ledger* ledger_handle,
                                    const uint8_t sender[AERO_ADDRESS_SIZE], uint64_t logical_time,
                                    const aero_task* task, aero_assignment* out) {
    return guarded([&]() -> aero_status {
        if (auto rc = require(ledger_handle && sender && task, "args"); rc != AERO_OK) return rc;
        Task t;
        t.task_id = task->task_id;
        t.location = {task->location[0], task->location[1], task->location[2]};
        t.required_payload = task->required_payload;
        t.urgency = task->urgency;
        if (task->has_max_radius) t.max_radius = task->max_radius;
        ledger::Receipt r =
            fleet::assign_task(ledger_handle->state, principal_from(sender), logical_time, t);
        if (auto rc = receipt_status(r); rc != AERO_OK) return rc;
        if (out) {
            out->selected = r.assignment && r.assignment->selected ? 1 : 0;
            out->uav_id = out->selected ? *r.assignment->selected : 0;
            out->distance = out->selected ? r.assignment->distance : 0.0;
        }
        return AERO_OK;
    });
}

aero_status aero_ledger_complete_task(aero_ledger* ledger_handle,
                                      const uint8_t sender[AERO_ADDRESS_SIZE],
                                      uint64_t logical_time, uint64_t task_id) {
    return guarded([&]() -> aero_status {
        if (auto rc = require(ledger_handle && sender, "args"); rc != AERO_OK) return rc;
        return receipt_status(fleet::complete_task(ledger_handle->state, principal_from(sender),
                                                   logical_time, task_id));
    });
}

aero_status aero_ledger_transfer_uav(aero_ledger* ledger_handle,
                                     const uint8_t sender[AERO_ADDRESS_SIZE],
                                     uint64_t logical_time, uint64_t uav_id,
                                     const uint8_t new_owner[AERO_ADDRESS_SIZE]) {
    return guarded([&]() -> aero_status {
        if (auto rc = require(ledger_handle && sender && new_owner, "args"); rc != AERO_OK)
            return rc;
        return receipt_status(fleet::transfer_uav(ledger_handle->state, principal_from(sender),
                                                  logical_time, uav_id,
                                                  principal_from(new_owner)));
    });
}

aero_status aero_ledger_uav_owner(const aero_ledger* ledger_handle, uint64_t uav_id,
                                  uint8_t out_owner[AERO_ADDRESS_SIZE]) {
    return guarded([&]() -> aero_status {
        if (auto rc = require(ledger_handle && out_owner, "args"); rc != AERO_OK) return rc;
        auto it = ledger_handle->state.uavs.find(uav_id);
        if (it == ledger_handle->state.uavs.end())
            return fail(AERO_ERR_NOT_FOUND, "unknown uav " + std::to_string(uav_id));
        std::memcpy(out_owner, it->second.owner.address.data(), AERO_ADDRESS_SIZE);
        return AERO_OK;
    });
}

aero_status aero_ledger_uav_token(const aero_ledger* ledger_handle, uint64_t uav_id,
                                  uint64_t* out_token_id) {
    return guarded([&]() -> aero_status {
        if (auto rc = require(ledger_handle && out_token_id, "args"); rc != AERO_OK) return rc;
        auto it = ledger_handle->state.uavs.find(uav_id);
        if (it == ledger_handle->state.uavs.end())
            return fail(AERO_ERR_NOT_FOUND, "unknown uav " + std::to_string(uav_id));
        *out_token_id = it->second.token_id;
        return AERO_OK;
    });
}

aero_status aero_ledger_uav_status(const aero_ledger* ledger_handle, uint64_t uav_id,
                                   aero_uav_status* out_status) {
    return guarded([&]() -> aero_status {
        if (auto rc = require(ledger_handle && out_status, "args"); rc != AERO_OK) return rc;
        auto it = ledger_handle->state.uavs.find(uav_id);
        if (it == ledger_handle->state.uavs.end())
            return fail(AERO_ERR_NOT_FOUND, "unknown uav " + std::to_string(uav_id));
        *out_status = static_cast<aero_uav_status>(it->second.status);
        return AERO_OK;
    });
}

/* ---- possession proofs ---- */

aero_status aero_proof_setup(const char* backend, const char* group_name, uint32_t challenge_count,
                             const char* domain, aero_proof_params** out) {
    return guarded([&]() -> aero_status {
        if (auto rc = require(backend && out, "backend/out"); rc != AERO_OK) return rc;
        possession::SetupConfig config;
        std::string b = backend;
        if (b == "sigma") {
            config.backend = possession::Backend::sigma_commit;
            if (group_name && *group_name) config.group_name = group_name;
        } else if (b == "merkle-challenge") {
            config.backend = possession::Backend::merkle_challenge;
            config.challenge_count = challenge_count;
        } else {
            return fail(AERO_ERR_INVALID, "unknown backend '" + b + "'");
        }
        if (domain && *domain) config.domain = domain;
        auto handle = std::make_unique<aero_proof_params>();
        handle->params = possession::setup(config);
        *out = handle.release();
        return AERO_OK;
    });
}

void aero_proof_params_free(aero_proof_params* params) {
    delete params;
}

aero_status aero_proof_params_save(const aero_proof_params* params, const char* path) {
    return guarded([&]() -> aero_status {
        if (auto rc = require(params && path, "params/path"); rc != AERO_OK) return rc;
        Bytes wire = possession::serialize_params(params->params);
        write_file(path, std::string(wire.begin(), wire.end()));
        return AERO_OK;
    });
}

aero_status aero_proof_params_load(const char* path, aero_proof_params** out) {
    return guarded([&]() -> aero_status {
        if (auto rc = require(path && out, "path/out"); rc != AERO_OK) return rc;
        std::ifstream in(path, std::ios::binary);
        if (!in) return fail(AERO_ERR_IO, std::string("cannot open: ") + path);
        Bytes wire((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
        auto handle = std::make_unique<aero_proof_params>();
        handle->params = possession::parse_params(as_view(wire));
        *out = handle.release();
        return AERO_OK;
    });
}

aero_status aero_proof_prove(const aero_proof_params* params, const aero_dataset* dataset,
                             const uint8_t committed_digest[AERO_DIGEST_SIZE],
                             const uint8_t* randomness_seed, size_t seed_len,
                             const char* out_path) {
    return guarded([&]() -> aero_status {
        if (auto rc = require(params && dataset && committed_digest && out_path, "args");
            rc != AERO_OK)
            return rc;
        possession::Statement statement;
        statement.committed_digest = digest_from(committed_digest);
        // sigma statements are digest-only; the leaf count matters solely for
        // challenge sampling
        statement.leaf_count = (params->params.backend == possession::Backend::sigma_commit)
                                   ? 0
                                   : dataset->ds.blocks.size();
        BytesView seed{randomness_seed, randomness_seed ? seed_len : 0};
        possession::Proof proof =
            possession::prove(dataset->ds.blocks, statement, params->params, seed);
        Bytes wire = possession::serialize_proof(proof);
        write_file(out_path, std::string(wire.begin(), wire.end()));
        return AERO_OK;
    });
}

aero_status aero_proof_verify(const aero_proof_params* params, const char* proof_path,
                              const uint8_t committed_digest[AERO_DIGEST_SIZE],
                              uint64_t leaf_count, int* out_valid) {
    return guarded([&]() -> aero_status {
        if (auto rc = require(params && proof_path && committed_digest && out_valid, "args");
            rc != AERO_OK)
            return rc;
        std::ifstream in(proof_path, std::ios::binary);
        if (!in) return fail(AERO_ERR_IO, std::string("cannot open: ") + proof_path);
        Bytes wire((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
        possession::Statement statement;
        statement.committed_digest = digest_from(committed_digest);
        statement.leaf_count =
            (params->params.backend == possession::Backend::sigma_commit) ? 0 : leaf_count;
        *out_valid = 0;
        try {
            possession::Proof proof = possession::parse_proof(as_view(wire));
            if (possession::verify(proof, statement, params->params)) *out_valid = 1;
        } catch (const Error&) {
            // malformed proof bytes: invalid, not an API error
        }
        return AERO_OK;
    });
}

aero_status aero_proof_file_digest(const char* proof_path, uint8_t out_digest[AERO_DIGEST_SIZE]) {
    return guarded([&]() -> aero_status {
        if (auto rc = require(proof_path && out_digest, "args"); rc != AERO_OK) return rc;
        std::ifstream in(proof_path, std::ios::binary);
        if (!in) return fail(AERO_ERR_IO, std::string("cannot open: ") + proof_path);
        Bytes wire((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
        crypto::Digest d = crypto::sha256(as_view(wire));
        std::memcpy(out_digest, d.bytes.data(), AERO_DIGEST_SIZE);
        return AERO_OK;
    });
}

aero_status aero_ledger_anchor_proof(aero_ledger* ledger_handle,
                                     const uint8_t sender[AERO_ADDRESS_SIZE],
                                     uint64_t logical_time, uint64_t token_id,
                                     const uint8_t proof_digest[AERO_DIGEST_SIZE]) {
    return guarded([&]() -> aero_status {
        if (auto rc = require(ledger_handle && sender && proof_digest, "args"); rc != AERO_OK)
            return rc;
        return receipt_status(registry::anchor_proof(ledger_handle->state, principal_from(sender),
                                                     logical_time, token_id,
                                                     digest_from(proof_digest)));
    });
}

/* ---- privacy ---- */

aero_status aero_privacy_calibrate_sigma(double epsilon, double delta, double sensitivity,
                                         double* out_sigma) {
    return guarded([&]() -> aero_status {
        if (auto rc = require(out_sigma != nullptr, "out"); rc != AERO_OK) return rc;
        *out_sigma = privacy::calibrate_sigma(privacy::Budget{epsilon, delta, sensitivity});
        return AERO_OK;
    });
}

aero_status aero_privacy_export(const char* in_jsonl, const char* out_path, const char* field,
                                double epsilon, double delta, double clamp_lo, double clamp_hi,
                                uint64_t rng_seed, const char* encrypt_seed, double* out_sigma,
                                uint64_t* out_records) {
    return guarded([&]() -> aero_status {
        if (auto rc = require(in_jsonl && out_path && field, "args"); rc != AERO_OK) return rc;
        std::optional<std::string> seed;
        if (encrypt_seed && *encrypt_seed) seed = encrypt_seed;
        data::ExportResult result = data::export_noised(in_jsonl, out_path, field, epsilon, delta,
                                                        clamp_lo, clamp_hi, rng_seed, seed);
        if (out_sigma) *out_sigma = result.sigma;
        if (out_records) *out_records = result.records;
        return AERO_OK;
    });
}

/* ---- runners ---- */

aero_status aero_script_run(const char* script_path, const char* config_path,
                            const char* report_path, const char* ledger_out, char** out_report,
                            int* out_exit) {
    return guarded([&]() -> aero_status {
        if (auto rc = require(script_path && out_exit, "script/out_exit"); rc != AERO_OK) return rc;
        run::Config config = config_from(config_path);
        run::RunOutcome outcome = run::run_script(script_path, config);
        *out_exit = outcome.exit_code;
        if (outcome.exit_code != run::kExitOk && !outcome.detail.empty())
            t_last_error = outcome.detail;
        if (report_path) write_file(report_path, outcome.report);
        if (ledger_out && outcome.exit_code == run::kExitOk)
            ledger::save_log(outcome.state, ledger_out);
        if (out_report) *out_report = dup_string(outcome.report);
        return AERO_OK;
    });
}

aero_status aero_fleet_run(const char* scenario_path, const char* config_path,
                           const char* trace_path, char** out_summary, int* out_exit) {
    return guarded([&]() -> aero_status {
        if (auto rc = require(scenario_path && out_exit, "scenario/out_exit"); rc != AERO_OK)
            return rc;
        run::Config config = config_from(config_path);
        run::FleetOutcome outcome = run::run_fleet(scenario_path, config);
        *out_exit = outcome.exit_code;
        if (outcome.exit_code != run::kExitOk && !outcome.detail.empty())
            t_last_error = outcome.detail;
        if (trace_path) write_file(trace_path, outcome.trace);
        if (out_summary) *out_summary = dup_string(outcome.summary);
        return AERO_OK;
    });
}

} /* extern "C" */
