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

// Command-line frontend. Talks to the engine exclusively through the shared
// library's C API (aeroledger/aeroledger.h).

#include <aeroledger/aeroledger.h>

#include <cinttypes>
#include <cstdio>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

namespace {

// Exit contract: 0 ok, 1 other, 2 parse, 3 unexpected revert, 4 missing
// expected revert (script runner only).
int exit_for(aero_status status) {
    switch (status) {
        case AERO_OK: return 0;
        case AERO_ERR_PARSE: return 2;
        case AERO_ERR_REVERT: return 3;
        default: return 1;
    }
}

int complain(aero_status status) {
    std::fprintf(stderr, "error: %s\n", aero_last_error());
    return exit_for(status);
}

std::string hex_of(const uint8_t* data, size_t len) {
    static const char* digits = "0123456789abcdef";
    std::string out;
    out.reserve(len * 2);
    for (size_t i = 0; i < len; ++i) {
        out.push_back(digits[data[i] >> 4]);
        out.push_back(digits[data[i] & 0x0f]);
    }
    return out;
}

bool hex_to_digest(const std::string& hex, uint8_t out[AERO_DIGEST_SIZE]) {
    if (hex.size() != AERO_DIGEST_SIZE * 2) return false;
    auto nibble = [](char c) -> int {
        if (c >= '0' && c <= '9') return c - '0';
        if (c >= 'a' && c <= 'f') return c - 'a' + 10;
        return -1;
    };
    for (size_t i = 0; i < AERO_DIGEST_SIZE; ++i) {
        int hi = nibble(hex[2 * i]);
        int lo = nibble(hex[2 * i + 1]);
        if (hi < 0 || lo < 0) return false;
        out[i] = static_cast<uint8_t>((hi << 4) | lo);
    }
    return true;
}

struct Ctx {
    std::string config;  // empty -> $AEROLEDGER_CONFIG -> defaults

    const char* config_cstr() const { return config.empty() ? nullptr : config.c_str(); }

    bool principal(const std::string& label, uint8_t out[AERO_ADDRESS_SIZE]) const {
        return aero_principal_from_label(config_cstr(), label.c_str(), out) == AERO_OK;
    }

    // run-config defaults (ledger path, proof backend, privacy budget)
    const aero_run_config& cfg() {
        if (!loaded_) {
            if (aero_config_load(config_cstr(), &cfg_) != AERO_OK)
                std::exit(complain(AERO_ERR_PARSE));
            loaded_ = true;
        }
        return cfg_;
    }

  private:
    aero_run_config cfg_{};
    bool loaded_ = false;
};

struct LedgerHandle {
    aero_ledger* ptr = nullptr;
    ~LedgerHandle() { aero_ledger_free(ptr); }
};

struct DatasetHandle {
    aero_dataset* ptr = nullptr;
    ~DatasetHandle() { aero_dataset_free(ptr); }
};

struct ParamsHandle {
    aero_proof_params* ptr = nullptr;
    ~ParamsHandle() { aero_proof_params_free(ptr); }
};

// Opens the log when it exists, otherwise starts from genesis.
aero_status open_or_create(const std::string& path, LedgerHandle& ledger) {
    std::FILE* probe = std::fopen(path.c_str(), "rb");
    if (probe) {
        std::fclose(probe);
        return aero_ledger_open(path.c_str(), &ledger.ptr);
    }
    return aero_ledger_create(&ledger.ptr);
}

uint64_t effective_time(const LedgerHandle& ledger, const std::optional<uint64_t>& at) {
    return at ? *at : aero_ledger_last_time(ledger.ptr) + 1;
}

int save_and_report_head(const LedgerHandle& ledger, const std::string& path) {
    if (aero_status rc = aero_ledger_save(ledger.ptr, path.c_str()); rc != AERO_OK)
        return complain(rc);
    uint8_t head[AERO_DIGEST_SIZE];
    aero_ledger_head(ledger.ptr, head);
    std::printf("head: %s\n", hex_of(head, AERO_DIGEST_SIZE).c_str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"aeroledger - UAV flight-data ledger"};
    app.require_subcommand(1);
    app.set_version_flag("--version", []() { return std::string(aero_version()); });
    Ctx ctx;
    app.add_option("--config", ctx.config, "run-config JSON (default: $AEROLEDGER_CONFIG)");

    // ---- ingest ----
    std::string in_path;
    uint64_t chunk_size = 1;
    auto* ingest = app.add_subcommand("ingest", "chunk a flight file and print its Merkle root");
    ingest->add_option("--input", in_path, "flight JSONL file")->required();
    ingest->add_option("--chunk-size", chunk_size, "records per block (default 1)");
    ingest->callback([&]() {
        DatasetHandle ds;
        if (aero_status rc = aero_dataset_load(in_path.c_str(), chunk_size, &ds.ptr); rc != AERO_OK)
            std::exit(complain(rc));
        uint8_t root[AERO_DIGEST_SIZE];
        aero_dataset_root(ds.ptr, root);
        std::printf("root: %s\n", hex_of(root, AERO_DIGEST_SIZE).c_str());
        std::printf("blocks: %" PRIu64 "\n", aero_dataset_block_count(ds.ptr));
        std::printf("records: %" PRIu64 "\n", aero_dataset_record_count(ds.ptr));
    });

    // ---- ledger ----
    auto* ledger_cmd = app.add_subcommand("ledger", "log inspection");
    ledger_cmd->require_subcommand(1);
    std::string log_path;
    auto* replay = ledger_cmd->add_subcommand("replay", "replay a log and print the state summary");
    replay->add_option("file", log_path, "ledger log")->required();
    replay->callback([&]() {
        LedgerHandle ledger;
        if (aero_status rc = aero_ledger_open(log_path.c_str(), &ledger.ptr); rc != AERO_OK)
            std::exit(complain(rc));
        char* text = nullptr;
        aero_ledger_state_summary(ledger.ptr, &text);
        std::fputs(text, stdout);
        aero_string_free(text);
    });
    auto* verify_chain = ledger_cmd->add_subcommand("verify-chain", "check the hash chain");
    verify_chain->add_option("file", log_path, "ledger log")->required();
    verify_chain->callback([&]() {
        uint64_t txs = 0;
        uint8_t head[AERO_DIGEST_SIZE];
        if (aero_status rc = aero_ledger_verify_chain(log_path.c_str(), &txs, head); rc != AERO_OK)
            std::exit(complain(rc));
        std::printf("chain ok: %" PRIu64 " transactions\n", txs);
        std::printf("head: %s\n", hex_of(head, AERO_DIGEST_SIZE).c_str());
    });

    // ---- registry ----
    auto* registry = app.add_subcommand("registry", "token operations");
    registry->require_subcommand(1);
    std::string reg_ledger;  // empty -> config ledger_path
    std::string owner, from, to, grantee, mission, uav_label, region, dataset_path, root_hex;
    uint64_t token_id = 0, expires = 0;
    std::optional<uint64_t> at;
    std::optional<uint64_t> now_opt;
    bool fee_paid = false, region_restricted = false;
    std::string usage = "view";

    auto ledger_path = [&]() -> std::string {
        return reg_ledger.empty() ? std::string(ctx.cfg().ledger_path) : reg_ledger;
    };
    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--ledger", reg_ledger, "ledger log path (default: config ledger_path)");
        cmd->add_option("--at", at, "logical time (default: last time + 1)");
    };

    auto* mint = registry->add_subcommand("mint", "mint a dataset token");
    add_common(mint);
    mint->add_option("--owner", owner, "minting principal label")->required();
    mint->add_option("--dataset", dataset_path, "flight JSONL to commit");
    mint->add_option("--root", root_hex, "precomputed Merkle root (hex)");
    mint->add_option("--chunk-size", chunk_size, "records per block (default 1)");
    mint->add_option("--mission", mission, "mission id")->required();
    mint->add_option("--uav", uav_label, "uav id");
    mint->add_option("--region", region, "declared region");
    mint->callback([&]() {
        LedgerHandle ledger;
        if (aero_status rc = open_or_create(ledger_path(), ledger); rc != AERO_OK)
            std::exit(complain(rc));
        uint8_t sender[AERO_ADDRESS_SIZE];
        if (!ctx.principal(owner, sender)) std::exit(complain(AERO_ERR_INVALID));

        uint8_t root[AERO_DIGEST_SIZE];
        aero_nft_metadata meta{};
        meta.mission_id = mission.c_str();
        meta.uav_id = uav_label.empty() ? nullptr : uav_label.c_str();
        meta.declared_region = region.empty() ? nullptr : region.c_str();
        meta.block_count = 1;
        if (!dataset_path.empty()) {
            DatasetHandle ds;
            if (aero_status rc = aero_dataset_load(dataset_path.c_str(), chunk_size, &ds.ptr);
                rc != AERO_OK)
                std::exit(complain(rc));
            aero_dataset_root(ds.ptr, root);
            aero_dataset_time_range(ds.ptr, &meta.start_time_us, &meta.end_time_us);
            meta.block_count = aero_dataset_block_count(ds.ptr);
        } else if (!root_hex.empty()) {
            if (!hex_to_digest(root_hex, root)) {
                std::fprintf(stderr, "error: --root must be 64 hex characters\n");
                std::exit(2);
            }
        } else {
            std::fprintf(stderr, "error: provide --dataset or --root\n");
            std::exit(2);
        }

        uint64_t new_token = 0;
        aero_status rc = aero_ledger_mint(ledger.ptr, sender, effective_time(ledger, at), root,
                                          &meta, &new_token);
        if (rc != AERO_OK) std::exit(complain(rc));
        std::printf("token: %" PRIu64 "\n", new_token);
        std::printf("owner: %s\n", owner.c_str());
        std::printf("root: %s\n", hex_of(root, AERO_DIGEST_SIZE).c_str());
        std::exit(save_and_report_head(ledger, ledger_path()));
    });

    auto* transfer = registry->add_subcommand("transfer", "transfer token ownership");
    add_common(transfer);
    transfer->add_option("--from", from, "current owner label")->required();
    transfer->add_option("--to", to, "recipient label")->required();
    transfer->add_option("--token", token_id, "token id")->required();
    transfer->add_option("--sender", owner, "sender label (default: --from)");
    transfer->callback([&]() {
        LedgerHandle ledger;
        if (aero_status rc = open_or_create(ledger_path(), ledger); rc != AERO_OK)
            std::exit(complain(rc));
        uint8_t sender[AERO_ADDRESS_SIZE], from_a[AERO_ADDRESS_SIZE], to_a[AERO_ADDRESS_SIZE];
        std::string sender_label = owner.empty() ? from : owner;
        if (!ctx.principal(sender_label, sender) || !ctx.principal(from, from_a) ||
            !ctx.principal(to, to_a))
            std::exit(complain(AERO_ERR_INVALID));
        aero_status rc = aero_ledger_transfer(ledger.ptr, sender, effective_time(ledger, at),
                                              from_a, to_a, token_id);
        if (rc != AERO_OK) std::exit(complain(rc));
        std::printf("token: %" PRIu64 "\n", token_id);
        std::printf("new_owner: %s\n", to.c_str());
        std::exit(save_and_report_head(ledger, ledger_path()));
    });

    auto* grant = registry->add_subcommand("grant", "grant time-limited access");
    add_common(grant);
    grant->add_option("--owner", owner, "granting owner label")->required();
    grant->add_option("--grantee", grantee, "grantee label")->required();
    grant->add_option("--token", token_id, "token id")->required();
    grant->add_option("--expires", expires, "expiration logical time")->required();
    grant->add_flag("--fee-paid", fee_paid, "licensing fee settled");
    grant->add_flag("--region-restricted", region_restricted,
                    "grantee is outside the permitted region");
    grant->add_option("--usage", usage, "usage class: view|derive|redistribute");
    grant->callback([&]() {
        LedgerHandle ledger;
        if (aero_status rc = open_or_create(ledger_path(), ledger); rc != AERO_OK)
            std::exit(complain(rc));
        uint8_t sender[AERO_ADDRESS_SIZE], grantee_a[AERO_ADDRESS_SIZE];
        if (!ctx.principal(owner, sender) || !ctx.principal(grantee, grantee_a))
            std::exit(complain(AERO_ERR_INVALID));
        aero_usage_class uc = AERO_USAGE_VIEW;
        if (usage == "derive") uc = AERO_USAGE_DERIVE;
        else if (usage == "redistribute") uc = AERO_USAGE_REDISTRIBUTE;
        else if (usage != "view") {
            std::fprintf(stderr, "error: unknown usage class '%s'\n", usage.c_str());
            std::exit(2);
        }
        aero_status rc =
            aero_ledger_grant(ledger.ptr, sender, effective_time(ledger, at), grantee_a, token_id,
                              expires, fee_paid ? 1 : 0, region_restricted ? 0 : 1, uc);
        if (rc != AERO_OK) std::exit(complain(rc));
        std::printf("granted: token=%" PRIu64 " grantee=%s expires=%" PRIu64 "\n", token_id,
                    grantee.c_str(), expires);
        std::exit(save_and_report_head(ledger, ledger_path()));
    });

    auto* revoke = registry->add_subcommand("revoke", "revoke an active grant");
    add_common(revoke);
    revoke->add_option("--owner", owner, "owner label")->required();
    revoke->add_option("--grantee", grantee, "grantee label")->required();
    revoke->add_option("--token", token_id, "token id")->required();
    revoke->callback([&]() {
        LedgerHandle ledger;
        if (aero_status rc = open_or_create(ledger_path(), ledger); rc != AERO_OK)
            std::exit(complain(rc));
        uint8_t sender[AERO_ADDRESS_SIZE], grantee_a[AERO_ADDRESS_SIZE];
        if (!ctx.principal(owner, sender) || !ctx.principal(grantee, grantee_a))
            std::exit(complain(AERO_ERR_INVALID));
        aero_status rc =
            aero_ledger_revoke(ledger.ptr, sender, effective_time(ledger, at), grantee_a, token_id);
        if (rc != AERO_OK) std::exit(complain(rc));
        std::printf("revoked: token=%" PRIu64 " grantee=%s\n", token_id, grantee.c_str());
        std::exit(save_and_report_head(ledger, ledger_path()));
    });

    auto* check = registry->add_subcommand("check", "evaluate access at a given time");
    check->add_option("--ledger", reg_ledger, "ledger log path");
    check->add_option("--grantee", grantee, "grantee label")->required();
    check->add_option("--token", token_id, "token id")->required();
    check->add_option("--now", now_opt, "logical time of the check")->required();
    check->callback([&]() {
        LedgerHandle ledger;
        if (aero_status rc = aero_ledger_open(ledger_path().c_str(), &ledger.ptr); rc != AERO_OK)
            std::exit(complain(rc));
        uint8_t grantee_a[AERO_ADDRESS_SIZE];
        if (!ctx.principal(grantee, grantee_a)) std::exit(complain(AERO_ERR_INVALID));
        int allowed = 0;
        aero_status rc = aero_ledger_check_access(ledger.ptr, grantee_a, token_id, *now_opt,
                                                  &allowed);
        if (rc != AERO_OK) std::exit(complain(rc));
        std::printf("access: %s\n", allowed ? "granted" : "denied");
    });

    auto* history = registry->add_subcommand("history", "print a token's transaction history");
    history->add_option("--ledger", reg_ledger, "ledger log path");
    history->add_option("--token", token_id, "token id")->required();
    history->callback([&]() {
        LedgerHandle ledger;
        if (aero_status rc = aero_ledger_open(ledger_path().c_str(), &ledger.ptr); rc != AERO_OK)
            std::exit(complain(rc));
        char* text = nullptr;
        if (aero_status rc = aero_ledger_history(ledger.ptr, token_id, &text); rc != AERO_OK)
            std::exit(complain(rc));
        std::fputs(text, stdout);
        aero_string_free(text);
    });

    // ---- proof ----
    auto* proof = app.add_subcommand("proof", "possession proofs");
    proof->require_subcommand(1);
    std::string backend, group, domain, params_path, proof_path = "proof.bin";
    std::optional<uint32_t> challenge_count;
    uint64_t seed_u64 = 0;

    // --params loads a saved file; otherwise parameters are rebuilt from
    // --backend/--group/--challenges with config defaults filling the gaps
    auto resolve_params = [&](ParamsHandle& params) {
        if (!params_path.empty()) {
            if (aero_status rc = aero_proof_params_load(params_path.c_str(), &params.ptr);
                rc != AERO_OK)
                std::exit(complain(rc));
            return;
        }
        const aero_run_config& cfg = ctx.cfg();
        std::string b = backend.empty() ? cfg.proof_backend : backend;
        std::string g = group.empty() ? cfg.proof_group : group;
        uint32_t c = challenge_count.value_or(cfg.challenge_count);
        aero_status rc = aero_proof_setup(b.c_str(), g.c_str(), c,
                                          domain.empty() ? nullptr : domain.c_str(), &params.ptr);
        if (rc != AERO_OK) std::exit(complain(rc));
    };
    auto add_params_options = [&](CLI::App* cmd) {
        cmd->add_option("--params", params_path, "params file from 'proof setup'");
        cmd->add_option("--backend", backend, "sigma | merkle-challenge (default: config)");
        cmd->add_option("--group", group, "sigma group: modp-2048 | test-256");
        cmd->add_option("--challenges", challenge_count, "sampled leaves (merkle-challenge)");
        cmd->add_option("--domain", domain, "transcript domain label");
    };

    auto* setup = proof->add_subcommand("setup", "write public parameters");
    add_params_options(setup);
    std::string params_out = "proof.params";
    setup->add_option("--out", params_out, "params file (default proof.params)");
    setup->callback([&]() {
        ParamsHandle params;
        resolve_params(params);
        if (aero_status rc = aero_proof_params_save(params.ptr, params_out.c_str()); rc != AERO_OK)
            std::exit(complain(rc));
        std::printf("backend: %s\n",
                    backend.empty() ? ctx.cfg().proof_backend : backend.c_str());
    });

    auto* prove = proof->add_subcommand("prove", "prove possession of a dataset");
    add_params_options(prove);
    prove->add_option("--ledger", reg_ledger, "ledger log path");
    prove->add_option("--token", token_id, "token whose data_root is the statement")->required();
    prove->add_option("--dataset", dataset_path, "flight JSONL")->required();
    prove->add_option("--chunk-size", chunk_size, "records per block (default 1)");
    prove->add_option("--seed", seed_u64, "prover randomness seed");
    prove->add_option("--out", proof_path, "proof file (default proof.bin)");
    prove->callback([&]() {
        ParamsHandle params;
        resolve_params(params);
        LedgerHandle ledger;
        if (aero_status rc = aero_ledger_open(ledger_path().c_str(), &ledger.ptr); rc != AERO_OK)
            std::exit(complain(rc));
        uint8_t root[AERO_DIGEST_SIZE];
        if (aero_status rc = aero_ledger_token_root(ledger.ptr, token_id, root); rc != AERO_OK)
            std::exit(complain(rc));
        DatasetHandle ds;
        if (aero_status rc = aero_dataset_load(dataset_path.c_str(), chunk_size, &ds.ptr);
            rc != AERO_OK)
            std::exit(complain(rc));
        uint8_t seed_bytes[8];
        for (int i = 0; i < 8; ++i) seed_bytes[i] = static_cast<uint8_t>(seed_u64 >> (56 - 8 * i));
        if (aero_status rc = aero_proof_prove(params.ptr, ds.ptr, root, seed_bytes,
                                              sizeof(seed_bytes), proof_path.c_str());
            rc != AERO_OK)
            std::exit(complain(rc));
        uint8_t digest[AERO_DIGEST_SIZE];
        aero_proof_file_digest(proof_path.c_str(), digest);
        std::printf("proof digest: %s\n", hex_of(digest, AERO_DIGEST_SIZE).c_str());
    });

    auto* verify = proof->add_subcommand("verify", "verify a proof file");
    add_params_options(verify);
    verify->add_option("--ledger", reg_ledger, "ledger log path");
    verify->add_option("--token", token_id, "token whose data_root is the statement")->required();
    verify->add_option("--proof", proof_path, "proof file")->required();
    verify->callback([&]() {
        ParamsHandle params;
        resolve_params(params);
        LedgerHandle ledger;
        if (aero_status rc = aero_ledger_open(ledger_path().c_str(), &ledger.ptr); rc != AERO_OK)
            std::exit(complain(rc));
        uint8_t root[AERO_DIGEST_SIZE];
        if (aero_status rc = aero_ledger_token_root(ledger.ptr, token_id, root); rc != AERO_OK)
            std::exit(complain(rc));
        uint64_t blocks = 0;
        aero_ledger_token_block_count(ledger.ptr, token_id, &blocks);
        int valid = 0;
        if (aero_status rc = aero_proof_verify(params.ptr, proof_path.c_str(), root, blocks, &valid);
            rc != AERO_OK)
            std::exit(complain(rc));
        std::printf("proof: %s\n", valid ? "valid" : "invalid");
        if (!valid) std::exit(1);
    });

    auto* anchor = proof->add_subcommand("anchor", "log a proof digest against a token");
    anchor->add_option("--ledger", reg_ledger, "ledger log path");
    anchor->add_option("--sender", owner, "anchoring principal label")->required();
    anchor->add_option("--token", token_id, "token id")->required();
    anchor->add_option("--proof", proof_path, "proof file")->required();
    anchor->add_option("--at", at, "logical time (default: last time + 1)");
    anchor->callback([&]() {
        LedgerHandle ledger;
        if (aero_status rc = aero_ledger_open(ledger_path().c_str(), &ledger.ptr); rc != AERO_OK)
            std::exit(complain(rc));
        uint8_t sender[AERO_ADDRESS_SIZE];
        if (!ctx.principal(owner, sender)) std::exit(complain(AERO_ERR_INVALID));
        uint8_t digest[AERO_DIGEST_SIZE];
        if (aero_status rc = aero_proof_file_digest(proof_path.c_str(), digest); rc != AERO_OK)
            std::exit(complain(rc));
        aero_status rc = aero_ledger_anchor_proof(ledger.ptr, sender, effective_time(ledger, at),
                                                  token_id, digest);
        if (rc != AERO_OK) std::exit(complain(rc));
        std::printf("anchored: token=%" PRIu64 " digest=%s\n", token_id,
                    hex_of(digest, AERO_DIGEST_SIZE).c_str());
        std::exit(save_and_report_head(ledger, ledger_path()));
    });

    // ---- privacy ----
    auto* privacy = app.add_subcommand("privacy", "differentially private export");
    privacy->require_subcommand(1);
    std::string field, out_path = "export.jsonl", encrypt_seed;
    double epsilon = 0, delta = 0, clamp_lo = 0, clamp_hi = 0;
    auto* exp = privacy->add_subcommand("export", "noise one sensor field");
    exp->add_option("--dataset", dataset_path, "flight JSONL")->required();
    exp->add_option("--out", out_path, "output path (default export.jsonl)");
    exp->add_option("--field", field, "sensor field to noise")->required();
    auto* eps_opt = exp->add_option("--epsilon", epsilon, "privacy budget epsilon (default: config)");
    auto* delta_opt = exp->add_option("--delta", delta, "privacy budget delta (default: config)");
    auto* lo_opt = exp->add_option("--clamp-lo", clamp_lo, "lower clamp bound (default: config)");
    auto* hi_opt = exp->add_option("--clamp-hi", clamp_hi, "upper clamp bound (default: config)");
    exp->add_option("--seed", seed_u64, "noise stream seed")->required();
    exp->add_option("--encrypt-seed", encrypt_seed, "AEAD-encrypt the output, keyed by this seed");
    exp->callback([&]() {
        const aero_run_config& cfg = ctx.cfg();
        if (!*eps_opt) epsilon = cfg.epsilon;
        if (!*delta_opt) delta = cfg.delta;
        if (!*lo_opt) clamp_lo = cfg.clamp_lo;
        if (!*hi_opt) clamp_hi = cfg.clamp_hi;
        double sigma = 0.0;
        uint64_t records = 0;
        aero_status rc = aero_privacy_export(dataset_path.c_str(), out_path.c_str(), field.c_str(),
                                             epsilon, delta, clamp_lo, clamp_hi, seed_u64,
                                             encrypt_seed.empty() ? nullptr : encrypt_seed.c_str(),
                                             &sigma, &records);
        if (rc != AERO_OK) std::exit(complain(rc));
        std::printf("field: %s\n", field.c_str());
        std::printf("sigma: %.17g\n", sigma);
        std::printf("records: %" PRIu64 "\n", records);
        if (!encrypt_seed.empty()) std::printf("encrypted: yes\n");
    });

    // ---- fleet ----
    auto* fleet = app.add_subcommand("fleet", "fleet scenarios");
    fleet->require_subcommand(1);
    std::string scenario_path, trace_path = "trace.jsonl";
    auto* fleet_run = fleet->add_subcommand("run", "run a scenario and emit the trace");
    fleet_run->add_option("--scenario", scenario_path, "scenario JSONL")->required();
    fleet_run->add_option("--out", trace_path, "trace output (default trace.jsonl)");
    fleet_run->callback([&]() {
        char* summary = nullptr;
        int exit_code = 0;
        aero_status rc = aero_fleet_run(scenario_path.c_str(), ctx.config_cstr(),
                                        trace_path.c_str(), &summary, &exit_code);
        if (rc != AERO_OK) std::exit(complain(rc));
        if (summary) {
            std::fputs(summary, stdout);
            aero_string_free(summary);
        }
        if (exit_code != 0) {
            std::fprintf(stderr, "error: %s\n", aero_last_error());
            std::exit(exit_code);
        }
    });

    // ---- script ----
    auto* script = app.add_subcommand("script", "scripted end-to-end runs");
    script->require_subcommand(1);
    std::string script_path, report_path, ledger_out;
    auto* script_run = script->add_subcommand("run", "execute a transaction script");
    script_run->add_option("file", script_path, "script JSONL")->required();
    script_run->add_option("--report", report_path, "also write the report here");
    script_run->add_option("--ledger", ledger_out, "write the resulting log here");
    script_run->callback([&]() {
        char* report = nullptr;
        int exit_code = 0;
        aero_status rc = aero_script_run(script_path.c_str(), ctx.config_cstr(),
                                         report_path.empty() ? nullptr : report_path.c_str(),
                                         ledger_out.empty() ? nullptr : ledger_out.c_str(),
                                         &report, &exit_code);
        if (rc != AERO_OK) std::exit(complain(rc));
        if (report) {
            std::fputs(report, stdout);
            aero_string_free(report);
        }
        if (exit_code != 0) {
            std::fprintf(stderr, "error: %s\n", aero_last_error());
            std::exit(exit_code);
        }
    });

    CLI11_PARSE(app, argc, argv);
    return 0;
}
