#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "stutter/paths.hpp"

namespace stutter {

using BlockId = std::uint32_t;

/// Partition of states 0..n-1. Block ids are dense and ordered by the
/// smallest member of each block.
class Partition {
public:
    Partition() = default;
    /// Builds the canonical partition induced by an arbitrary labelling.
    template <class Key>
    static Partition from_keys(std::span<const Key> keys);

    static Partition single_block(std::size_t n);
    static Partition discrete(std::size_t n);

    std::size_t num_states() const { return block_of_.size(); }
    std::size_t num_blocks() const { return blocks_.size(); }
    BlockId block_of(StateId s) const { return block_of_.at(s); }
    const std::vector<BlockId>& block_map() const { return block_of_; }
    const std::vector<StateId>& block(BlockId b) const { return blocks_.at(b); }
    const std::vector<std::vector<StateId>>& blocks() const { return blocks_; }
    bool same_block(StateId x, StateId y) const { return block_of(x) == block_of(y); }

    /// True when every block of *this is contained in a block of `coarser`.
    bool refines(const Partition& coarser) const;

    friend bool operator==(const Partition&, const Partition&) = default;

private:
    explicit Partition(std::vector<BlockId> block_of);

    std::vector<BlockId> block_of_;
    std::vector<std::vector<StateId>> blocks_;
};

template <class Key>
Partition Partition::from_keys(std::span<const Key> keys) {
    // Numbering keys on first sight gives ids ordered by smallest member.
    std::map<Key, BlockId> seen;
    std::vector<BlockId> ids(keys.size());
    for (std::size_t s = 0; s < keys.size(); ++s) {
        auto [it, inserted] = seen.try_emplace(keys[s], static_cast<BlockId>(seen.size()));
        ids[s] = it->second;
    }
    return Partition(std::move(ids));
}

}  // namespace stutter
