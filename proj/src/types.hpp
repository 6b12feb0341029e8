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

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>

#include "crypto.hpp"

namespace aero {

inline constexpr std::size_t kAddressSize = 20;

// An actor on the ledger. Sender authenticity is modeled as a trusted field;
// a production deployment would bind it with transaction signatures.
struct Principal {
    std::array<std::uint8_t, kAddressSize> address{};

    auto operator<=>(const Principal&) const = default;

    // First 20 bytes of sha256(canonical(seed) || canonical(label)).
    static Principal derive(BytesView seed, std::string_view label);

    std::string hex() const;
    static Principal from_hex(std::string_view hex);
};

struct NftMetadata {
    std::string mission_id;
    std::string uav_id;
    std::uint64_t start_time_us = 0;
    std::uint64_t end_time_us = 0;
    std::uint64_t block_count = 0;
    std::string declared_region;

    bool valid() const { return start_time_us <= end_time_us && block_count >= 1; }
    bool operator==(const NftMetadata&) const = default;
};

// Token id, dataset commitment and metadata are immutable after mint; only
// ownership moves.
struct NftToken {
    std::uint64_t token_id = 0;
    crypto::Digest data_root;
    NftMetadata metadata;

    bool operator==(const NftToken&) const = default;
};

enum class UsageClass : std::uint8_t { view = 0, derive = 1, redistribute = 2 };

struct LicenseConditions {
    bool fee_paid = false;
    bool region_ok = false;
    UsageClass usage_class = UsageClass::view;

    bool operator==(const LicenseConditions&) const = default;
};

// The licensing predicate: every condition the contract names must hold.
inline bool conditions_satisfied(const LicenseConditions& c) {
    return c.fee_paid && c.region_ok;
}

struct AccessGrant {
    Principal grantee;
    std::uint64_t token_id = 0;
    std::uint64_t expiration = 0;  // logical time; access requires t_now < expiration
    LicenseConditions conditions;
    bool revoked = false;

    bool operator==(const AccessGrant&) const = default;
};

enum class UavStatus : std::uint8_t { available = 0, in_mission = 1, maintenance = 2 };

struct UavAsset {
    std::uint64_t uav_id = 0;
    std::array<double, 3> location{};  // meters, flat local frame
    double payload_capacity = 0.0;     // kg
    UavStatus status = UavStatus::available;
    Principal owner;
    std::uint64_t token_id = 0;  // companion NFT

    bool operator==(const UavAsset&) const = default;
};

struct Task {
    std::uint64_t task_id = 0;
    std::array<double, 3> location{};
    double required_payload = 0.0;
    std::uint8_t urgency = 0;  // carried for reporting; selection ignores it
    std::optional<double> max_radius;

    bool operator==(const Task&) const = default;
};

struct AssignmentResult {
    std::uint64_t task_id = 0;
    std::optional<std::uint64_t> selected;
    double distance = 0.0;  // meaningful only when selected

    bool operator==(const AssignmentResult&) const = default;
};

void encode(canonical::Writer& w, const Principal& p);
void encode(canonical::Writer& w, const NftMetadata& m);
void encode(canonical::Writer& w, const NftToken& t);
void encode(canonical::Writer& w, const LicenseConditions& c);
void encode(canonical::Writer& w, const AccessGrant& g);
void encode(canonical::Writer& w, const UavAsset& u);
void encode(canonical::Writer& w, const Task& t);

}  // namespace aero
