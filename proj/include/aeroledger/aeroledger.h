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

/*
 * Aeroledger C API.
 *
 * A deterministic, single-node ledger for UAV flight datasets: Merkle
 * commitments, NFT-style ownership with time-limited access grants,
 * possession proofs, fleet task assignment and differentially private
 * export, all behind one shared library.
 *
 * Conventions:
 *   - every fallible call returns an aero_status; AERO_OK is 0
 *   - on failure, aero_last_error() describes the problem (thread-local)
 *   - objects returned through aero_*_t** out-parameters are owned by the
 *     caller and released with the matching *_free()
 *   - strings returned through char** are released with aero_string_free()
 *   - principals are 20-byte addresses; digests are 32 bytes; hex renderings
 *     are lowercase
 *   - logical_time is the scripted clock transactions carry; it must be
 *     non-decreasing per ledger
 */

#ifndef AEROLEDGER_H
#define AEROLEDGER_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define AERO_API __declspec(dllexport)
#else
#define AERO_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum aero_status {
    AERO_OK = 0,
    AERO_ERR = 1,           /* unspecified failure */
    AERO_ERR_INVALID = 2,   /* invalid argument or precondition */
    AERO_ERR_PARSE = 3,     /* file or wire data failed to parse */
    AERO_ERR_REVERT = 4,    /* transaction reverted; message carries the reason */
    AERO_ERR_NOT_FOUND = 5, /* unknown token / uav / field */
    AERO_ERR_AUTH = 6,      /* decryption or authentication failure */
    AERO_ERR_IO = 7,        /* filesystem failure */
} aero_status;

#define AERO_ADDRESS_SIZE 20
#define AERO_DIGEST_SIZE 32

/* Library version, "major.minor.patch". */
AERO_API const char* aero_version(void);

/* Message for the most recent failing call on this thread. Never NULL. */
AERO_API const char* aero_last_error(void);

AERO_API void aero_string_free(char* s);

/* --------------------------------------------------------------------- */
/* Principals                                                            */
/* --------------------------------------------------------------------- */

/* address = first 20 bytes of sha256(canonical(seed) || canonical(label)) */
AERO_API aero_status aero_principal_derive(const uint8_t* seed, size_t seed_len, const char* label,
                                           uint8_t out_address[AERO_ADDRESS_SIZE]);

/* Same derivation, keyed by the genesis seed of the resolved run config
 * (config_path, else $AEROLEDGER_CONFIG, else the built-in default). */
AERO_API aero_status aero_principal_from_label(const char* config_path, const char* label,
                                               uint8_t out_address[AERO_ADDRESS_SIZE]);

/* --------------------------------------------------------------------- */
/* Run configuration                                                     */
/* --------------------------------------------------------------------- */

/* Resolved run config; every field is populated (defaults fill the gaps).
 * Strings are NUL-terminated and truncation is an error. */
typedef struct aero_run_config {
    char genesis_seed[128];
    char ledger_path[512];
    char clock_mode[16];   /* "scripted" | "stepped" */
    char proof_backend[32];
    char proof_group[32];
    uint32_t challenge_count;
    double epsilon;
    double delta;
    double clamp_lo;
    double clamp_hi;
} aero_run_config;

/* config_path, else $AEROLEDGER_CONFIG, else built-in defaults. */
AERO_API aero_status aero_config_load(const char* config_path, aero_run_config* out);

/* --------------------------------------------------------------------- */
/* Flight datasets                                                       */
/* --------------------------------------------------------------------- */

typedef struct aero_dataset aero_dataset;

/* Loads a JSONL flight file and chunks it into blocks of at most chunk_size
 * records (chunk_size >= 1). Parse failures name the offending line. */
AERO_API aero_status aero_dataset_load(const char* jsonl_path, uint64_t chunk_size,
                                       aero_dataset** out);
AERO_API void aero_dataset_free(aero_dataset* ds);

AERO_API uint64_t aero_dataset_record_count(const aero_dataset* ds);
AERO_API uint64_t aero_dataset_block_count(const aero_dataset* ds);
AERO_API aero_status aero_dataset_time_range(const aero_dataset* ds, uint64_t* out_start_us,
                                             uint64_t* out_end_us);

/* Merkle root over the dataset's blocks. */
AERO_API aero_status aero_dataset_root(const aero_dataset* ds,
                                       uint8_t out_digest[AERO_DIGEST_SIZE]);

/* --------------------------------------------------------------------- */
/* Ledger                                                                */
/* --------------------------------------------------------------------- */

typedef struct aero_ledger aero_ledger;

AERO_API aero_status aero_ledger_create(aero_ledger** out); /* genesis state */
AERO_API aero_status aero_ledger_open(const char* log_path, aero_ledger** out); /* replay */
AERO_API aero_status aero_ledger_save(const aero_ledger* ledger, const char* log_path);
AERO_API void aero_ledger_free(aero_ledger* ledger);

/* Structural + hash-chain check of a log file without keeping the state. */
AERO_API aero_status aero_ledger_verify_chain(const char* log_path, uint64_t* out_transactions,
                                              uint8_t out_head[AERO_DIGEST_SIZE]);

AERO_API uint64_t aero_ledger_tx_count(const aero_ledger* ledger);
AERO_API uint64_t aero_ledger_last_time(const aero_ledger* ledger);
AERO_API aero_status aero_ledger_head(const aero_ledger* ledger,
                                      uint8_t out_digest[AERO_DIGEST_SIZE]);

/* Reproducible plain-text summary of the current state (the same text the
 * CLI prints for `ledger replay`). */
AERO_API aero_status aero_ledger_state_summary(const aero_ledger* ledger, char** out_text);

/* --------------------------------------------------------------------- */
/* Token registry                                                        */
/* --------------------------------------------------------------------- */

typedef struct aero_nft_metadata {
    const char* mission_id;      /* required */
    const char* uav_id;          /* optional, may be NULL */
    const char* declared_region; /* optional, may be NULL */
    uint64_t start_time_us;
    uint64_t end_time_us; /* >= start_time_us */
    uint64_t block_count; /* >= 1 */
} aero_nft_metadata;

AERO_API aero_status aero_ledger_mint(aero_ledger* ledger,
                                      const uint8_t sender[AERO_ADDRESS_SIZE],
                                      uint64_t logical_time,
                                      const uint8_t data_root[AERO_DIGEST_SIZE],
                                      const aero_nft_metadata* metadata, uint64_t* out_token_id);

AERO_API aero_status aero_ledger_transfer(aero_ledger* ledger,
                                          const uint8_t sender[AERO_ADDRESS_SIZE],
                                          uint64_t logical_time,
                                          const uint8_t from[AERO_ADDRESS_SIZE],
                                          const uint8_t to[AERO_ADDRESS_SIZE], uint64_t token_id);

typedef enum aero_usage_class {
    AERO_USAGE_VIEW = 0,
    AERO_USAGE_DERIVE = 1,
    AERO_USAGE_REDISTRIBUTE = 2,
} aero_usage_class;

AERO_API aero_status aero_ledger_grant(aero_ledger* ledger,
                                       const uint8_t sender[AERO_ADDRESS_SIZE],
                                       uint64_t logical_time,
                                       const uint8_t grantee[AERO_ADDRESS_SIZE], uint64_t token_id,
                                       uint64_t expiration, int fee_paid, int region_ok,
                                       aero_usage_class usage);

AERO_API aero_status aero_ledger_revoke(aero_ledger* ledger,
                                        const uint8_t sender[AERO_ADDRESS_SIZE],
                                        uint64_t logical_time,
                                        const uint8_t grantee[AERO_ADDRESS_SIZE],
                                        uint64_t token_id);

/* Pure query; out_allowed is 1 iff an unrevoked grant exists, t_now is
 * strictly before its expiration and the licensing conditions hold. */
AERO_API aero_status aero_ledger_check_access(const aero_ledger* ledger,
                                              const uint8_t grantee[AERO_ADDRESS_SIZE],
                                              uint64_t token_id, uint64_t t_now, int* out_allowed);

AERO_API aero_status aero_ledger_owner_of(const aero_ledger* ledger, uint64_t token_id,
                                          uint8_t out_owner[AERO_ADDRESS_SIZE]);

AERO_API aero_status aero_ledger_token_root(const aero_ledger* ledger, uint64_t token_id,
                                            uint8_t out_digest[AERO_DIGEST_SIZE]);
AERO_API aero_status aero_ledger_token_block_count(const aero_ledger* ledger, uint64_t token_id,
                                                   uint64_t* out_blocks);

/* One text line per transaction referencing the token, in seq order. */
AERO_API aero_status aero_ledger_history(const aero_ledger* ledger, uint64_t token_id,
                                         char** out_text);

/* --------------------------------------------------------------------- */
/* Fleet                                                                 */
/* --------------------------------------------------------------------- */

typedef enum aero_uav_status {
    AERO_UAV_AVAILABLE = 0,
    AERO_UAV_IN_MISSION = 1,
    AERO_UAV_MAINTENANCE = 2,
} aero_uav_status;

AERO_API aero_status aero_ledger_register_uav(aero_ledger* ledger,
                                              const uint8_t sender[AERO_ADDRESS_SIZE],
                                              uint64_t logical_time, const double location[3],
                                              double payload_capacity, aero_uav_status status,
                                              uint64_t* out_uav_id, uint64_t* out_token_id);

typedef struct aero_task {
    uint64_t task_id;
    double location[3];
    double required_payload;
    uint8_t urgency;
    int has_max_radius;
    double max_radius;
} aero_task;

typedef struct aero_assignment {
    int selected; /* 0 when no UAV qualified (state unchanged) */
    uint64_t uav_id;
    double distance;
} aero_assignment;

AERO_API aero_status aero_ledger_assign_task(aero_ledger* ledger,
                                             const uint8_t sender[AERO_ADDRESS_SIZE],
                                             uint64_t logical_time, const aero_task* task,
                                             aero_assignment* out);

AERO_API aero_status aero_ledger_complete_task(aero_ledger* ledger,
                                               const uint8_t sender[AERO_ADDRESS_SIZE],
                                               uint64_t logical_time, uint64_t task_id);

/* Success iff sender owns the UAV and it is not in mission; the asset and
 * its companion NFT move together. Failures return AERO_ERR_REVERT with the
 * reason in aero_last_error(). */
AERO_API aero_status aero_ledger_transfer_uav(aero_ledger* ledger,
                                              const uint8_t sender[AERO_ADDRESS_SIZE],
                                              uint64_t logical_time, uint64_t uav_id,
                                              const uint8_t new_owner[AERO_ADDRESS_SIZE]);

AERO_API aero_status aero_ledger_uav_owner(const aero_ledger* ledger, uint64_t uav_id,
                                           uint8_t out_owner[AERO_ADDRESS_SIZE]);
AERO_API aero_status aero_ledger_uav_token(const aero_ledger* ledger, uint64_t uav_id,
                                           uint64_t* out_token_id);
AERO_API aero_status aero_ledger_uav_status(const aero_ledger* ledger, uint64_t uav_id,
                                            aero_uav_status* out_status);

/* --------------------------------------------------------------------- */
/* Possession proofs                                                     */
/* --------------------------------------------------------------------- */

typedef struct aero_proof_params aero_proof_params;

/* backend: "sigma" or "merkle-challenge".
 * group_name (sigma only): "modp-2048" (default when NULL) or "test-256".
 * challenge_count (merkle-challenge only): number of sampled leaves, >= 1.
 * domain: transcript-hash label; NULL selects the library default. */
AERO_API aero_status aero_proof_setup(const char* backend, const char* group_name,
                                      uint32_t challenge_count, const char* domain,
                                      aero_proof_params** out);
AERO_API void aero_proof_params_free(aero_proof_params* params);

AERO_API aero_status aero_proof_params_save(const aero_proof_params* params, const char* path);
AERO_API aero_status aero_proof_params_load(const char* path, aero_proof_params** out);

/* Proves possession of the dataset against the statement
 * (committed_digest, leaf_count) and writes the proof file. The dataset's
 * Merkle root must equal the committed digest. randomness_seed re-randomizes
 * sigma transcripts (may be NULL with len 0 for the merkle backend). */
AERO_API aero_status aero_proof_prove(const aero_proof_params* params, const aero_dataset* dataset,
                                      const uint8_t committed_digest[AERO_DIGEST_SIZE],
                                      const uint8_t* randomness_seed, size_t seed_len,
                                      const char* out_path);

/* out_valid is 1 iff the proof file verifies against the statement.
 * leaf_count is the committed dataset's block count (sampled-challenge
 * space for the merkle backend; ignored for sigma). A malformed proof file
 * is simply invalid, not an error. */
AERO_API aero_status aero_proof_verify(const aero_proof_params* params, const char* proof_path,
                                       const uint8_t committed_digest[AERO_DIGEST_SIZE],
                                       uint64_t leaf_count, int* out_valid);

/* sha256 over the serialized proof file, for anchoring. */
AERO_API aero_status aero_proof_file_digest(const char* proof_path,
                                            uint8_t out_digest[AERO_DIGEST_SIZE]);

/* Logs an AnchorProof transaction binding the proof digest to a token. The
 * sender must own the token or hold access at logical_time. */
AERO_API aero_status aero_ledger_anchor_proof(aero_ledger* ledger,
                                              const uint8_t sender[AERO_ADDRESS_SIZE],
                                              uint64_t logical_time, uint64_t token_id,
                                              const uint8_t proof_digest[AERO_DIGEST_SIZE]);

/* --------------------------------------------------------------------- */
/* Privacy                                                               */
/* --------------------------------------------------------------------- */

/* sigma = sensitivity * sqrt(2 ln(1.25/delta)) / epsilon */
AERO_API aero_status aero_privacy_calibrate_sigma(double epsilon, double delta, double sensitivity,
                                                  double* out_sigma);

/* Rewrites in_jsonl with the named sensor field clamped to
 * [clamp_lo, clamp_hi] and noised with the calibrated Gaussian mechanism;
 * all other columns are preserved. encrypt_seed may be NULL; when set the
 * output is an AEAD container keyed from the seed. */
AERO_API aero_status aero_privacy_export(const char* in_jsonl, const char* out_path,
                                         const char* field, double epsilon, double delta,
                                         double clamp_lo, double clamp_hi, uint64_t rng_seed,
                                         const char* encrypt_seed, double* out_sigma,
                                         uint64_t* out_records);

/* --------------------------------------------------------------------- */
/* Runners                                                               */
/* --------------------------------------------------------------------- */

/* Runs a JSONL script against a fresh ledger. Writes the report to
 * report_path and the resulting log to ledger_out (either may be NULL).
 * out_exit carries the script exit contract: 0 ok, 2 parse failure, 3
 * unexpected revert, 4 missing expected revert. The call itself only fails
 * (non-OK return) on invalid arguments or I/O. config_path NULL falls back
 * to $AEROLEDGER_CONFIG, then defaults. */
AERO_API aero_status aero_script_run(const char* script_path, const char* config_path,
                                     const char* report_path, const char* ledger_out,
                                     char** out_report, int* out_exit);

/* Fleet scenario runner: emits the assignment trace (JSONL) and a final
 * fleet summary. */
AERO_API aero_status aero_fleet_run(const char* scenario_path, const char* config_path,
                                    const char* trace_path, char** out_summary, int* out_exit);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* AEROLEDGER_H */
