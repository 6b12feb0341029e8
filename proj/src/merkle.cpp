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

#include "merkle.hpp"

#include "errors.hpp"

namespace aero::merkle {

void encode(canonical::Writer& w, const DataBlock& block) {
    w.u64(block.index);
    w.u64(block.timestamp_us);
    w.bytes(as_view(block.payload));
}

crypto::Digest leaf_digest(const DataBlock& block) {
    canonical::Writer w;
    w.u8(kLeafPrefix);
    encode(w, block);
    return crypto::sha256(as_view(w.data()));
}

crypto::Digest node_digest(const crypto::Digest& left, const crypto::Digest& right) {
    canonical::Writer w;
    w.u8(kNodePrefix);
    w.fixed(left.bytes);
    w.fixed(right.bytes);
    return crypto::sha256(as_view(w.data()));
}

Tree Tree::build(std::span<const DataBlock> blocks) {
    if (blocks.empty()) raise(Errc::invalid_argument, "merkle: empty block list");
    for (std::size_t i = 0; i < blocks.size(); ++i) {
        if (blocks[i].index != i)
            raise(Errc::invalid_argument, "merkle: block indices must be contiguous from 0");
    }

    Tree tree;
    std::vector<crypto::Digest> level;
    level.reserve(blocks.size());
    for (const DataBlock& b : blocks) level.push_back(leaf_digest(b));
    tree.levels_.push_back(std::move(level));

    while (tree.levels_.back().size() > 1) {
        const auto& prev = tree.levels_.back();
        std::vector<crypto::Digest> next;
        next.reserve((prev.size() + 1) / 2);
        for (std::size_t i = 0; i < prev.size(); i += 2) {
            const crypto::Digest& left = prev[i];
            // odd node: pair with a duplicate of itself
            const crypto::Digest& right = (i + 1 < prev.size()) ? prev[i + 1] : prev[i];
            next.push_back(node_digest(left, right));
        }
        tree.levels_.push_back(std::move(next));
    }
    return tree;
}

Proof Tree::inclusion_proof(std::uint64_t leaf_index) const {
    if (leaf_index >= leaf_count())
        raise(Errc::invalid_argument, "merkle: leaf index out of range");

    Proof proof;
    proof.leaf_index = leaf_index;
    proof.leaf_count = leaf_count();

    std::uint64_t pos = leaf_index;
    for (std::size_t lvl = 0; lvl + 1 < levels_.size(); ++lvl) {
        const auto& nodes = levels_[lvl];
        std::uint64_t sibling_pos = (pos % 2 == 0) ? pos + 1 : pos - 1;
        if (sibling_pos >= nodes.size()) sibling_pos = pos;  // duplicated odd node
        Side side = (pos % 2 == 0) ? Side::right : Side::left;
        proof.siblings.push_back({nodes[sibling_pos], side});
        pos /= 2;
    }
    return proof;
}

bool verify_inclusion(const crypto::Digest& root, const DataBlock& block, const Proof& proof) {
    crypto::Digest current = leaf_digest(block);
    for (const Proof::Sibling& sib : proof.siblings) {
        current = (sib.side == Side::right) ? node_digest(current, sib.digest)
                                            : node_digest(sib.digest, current);
    }
    return current == root;
}

Bytes serialize_proof(const Proof& proof) {
    if (proof.siblings.size() > 0xffff)
        raise(Errc::invalid_argument, "merkle: proof too deep to serialize");
    canonical::Writer w;
    w.u64(proof.leaf_index);
    w.u64(proof.leaf_count);
    w.u16(static_cast<std::uint16_t>(proof.siblings.size()));
    for (const Proof::Sibling& sib : proof.siblings) {
        w.u8(static_cast<std::uint8_t>(sib.side));
        w.fixed(sib.digest.bytes);
    }
    return w.take();
}

Proof parse_proof(BytesView data) {
    canonical::Reader r(data);
    Proof proof;
    proof.leaf_index = r.u64();
    proof.leaf_count = r.u64();
    std::uint16_t count = r.u16();
    proof.siblings.reserve(count);
    for (std::uint16_t i = 0; i < count; ++i) {
        std::uint8_t side = r.u8();
        if (side > 1) raise(Errc::parse, "merkle: bad side flag");
        Proof::Sibling sib;
        sib.side = static_cast<Side>(side);
        sib.digest.bytes = r.fixed<crypto::kDigestSize>();
        proof.siblings.push_back(sib);
    }
    r.expect_done();
    return proof;
}

}  // namespace aero::merkle
