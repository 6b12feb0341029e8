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

#include <cstdint>
#include <span>
#include <vector>

#include "crypto.hpp"

namespace aero::merkle {

// Leaf and internal nodes hash under distinct prefixes so a leaf digest can
// never be replayed as an internal node (and vice versa).
inline constexpr std::uint8_t kLeafPrefix = 0x00;
inline constexpr std::uint8_t kNodePrefix = 0x01;

struct DataBlock {
    std::uint64_t index = 0;         // 0-based, contiguous within a dataset
    std::uint64_t timestamp_us = 0;  // non-decreasing by index
    Bytes payload;

    bool operator==(const DataBlock&) const = default;
};

void encode(canonical::Writer& w, const DataBlock& block);

enum class Side : std::uint8_t { left = 0, right = 1 };

struct Proof {
    struct Sibling {
        crypto::Digest digest;
        Side side = Side::left;  // which side the sibling occupies in the pair
    };

    std::uint64_t leaf_index = 0;
    std::uint64_t leaf_count = 0;
    std::vector<Sibling> siblings;
};

// leaf = sha256(0x00 || canonical(block))
crypto::Digest leaf_digest(const DataBlock& block);
// node = sha256(0x01 || left || right)
crypto::Digest node_digest(const crypto::Digest& left, const crypto::Digest& right);

class Tree {
  public:
    // Level 0 holds the leaf digests; an odd node at any level pairs with a
    // duplicate of itself. Throws on an empty block list or non-contiguous
    // indices.
    static Tree build(std::span<const DataBlock> blocks);

    const crypto::Digest& root() const { return levels_.back().front(); }
    std::uint64_t leaf_count() const { return levels_.front().size(); }
    const std::vector<std::vector<crypto::Digest>>& levels() const { return levels_; }

    Proof inclusion_proof(std::uint64_t leaf_index) const;

  private:
    std::vector<std::vector<crypto::Digest>> levels_;
};

// Folds the leaf digest up the sibling path; true iff the result equals root.
// Performs exactly len(siblings)+1 hash invocations.
bool verify_inclusion(const crypto::Digest& root, const DataBlock& block, const Proof& proof);

// Wire form: leaf_index u64 BE || leaf_count u64 BE || sibling count u16 BE
// || [side byte || 32-byte digest]*
Bytes serialize_proof(const Proof& proof);
Proof parse_proof(BytesView data);

}  // namespace aero::merkle
