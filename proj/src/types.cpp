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

#include "types.hpp"

#include <cstring>

#include "errors.hpp"

namespace aero {

Principal Principal::derive(BytesView seed, std::string_view label) {
    canonical::Writer w;
    w.bytes(seed);
    w.str(label);
    crypto::Digest d = crypto::sha256(as_view(w.data()));
    Principal p;
    std::memcpy(p.address.data(), d.bytes.data(), kAddressSize);
    return p;
}

std::string Principal::hex() const {
    return to_hex(BytesView{address.data(), address.size()});
}

Principal Principal::from_hex(std::string_view hex) {
    Bytes raw = aero::from_hex(hex);
    if (raw.size() != kAddressSize) raise(Errc::parse, "principal: expected 20 bytes");
    Principal p;
    std::memcpy(p.address.data(), raw.data(), kAddressSize);
    return p;
}

void encode(canonical::Writer& w, const Principal& p) {
    w.fixed(p.address);
}

void encode(canonical::Writer& w, const NftMetadata& m) {
    w.str(m.mission_id);
    w.str(m.uav_id);
    w.u64(m.start_time_us);
    w.u64(m.end_time_us);
    w.u64(m.block_count);
    w.str(m.declared_region);
}

void encode(canonical::Writer& w, const NftToken& t) {
    w.u64(t.token_id);
    w.fixed(t.data_root.bytes);
    encode(w, t.metadata);
}

void encode(canonical::Writer& w, const LicenseConditions& c) {
    w.boolean(c.fee_paid);
    w.boolean(c.region_ok);
    w.u8(static_cast<std::uint8_t>(c.usage_class));
}

void encode(canonical::Writer& w, const AccessGrant& g) {
    encode(w, g.grantee);
    w.u64(g.token_id);
    w.u64(g.expiration);
    encode(w, g.conditions);
    w.boolean(g.revoked);
}

void encode(canonical::Writer& w, const UavAsset& u) {
    w.u64(u.uav_id);
    for (double c : u.location) w.f64(c);
    w.f64(u.payload_capacity);
    w.u8(static_cast<std::uint8_t>(u.status));
    encode(w, u.owner);
    w.u64(u.token_id);
}

void encode(canonical::Writer& w, const Task& t) {
    w.u64(t.task_id);
    for (double c : t.location) w.f64(c);
    w.f64(t.required_payload);
    w.u8(t.urgency);
    w.u8(t.max_radius.has_value() ? 1 : 0);
    if (t.max_radius) w.f64(*t.max_radius);
}

}  // namespace aero
