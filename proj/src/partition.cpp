#include "stutter/partition.hpp"

#include <numeric>

namespace stutter {

Partition::Partition(std::vector<BlockId> block_of) : block_of_(std::move(block_of)) {
    for (std::size_t s = 0; s < block_of_.size(); ++s) {
        if (block_of_[s] >= blocks_.size()) blocks_.resize(block_of_[s] + 1);
        blocks_[block_of_[s]].push_back(static_cast<StateId>(s));
    }
}

Partition Partition::single_block(std::size_t n) { return Partition(std::vector<BlockId>(n, 0)); }

Partition Partition::discrete(std::size_t n) {
    std::vector<BlockId> ids(n);
    std::iota(ids.begin(), ids.end(), BlockId{0});
    return Partition(std::move(ids));
}

bool Partition::refines(const Partition& coarser) const {
    if (coarser.num_states() != num_states()) return false;
    for (const auto& b : blocks_) {
        for (StateId s : b) {
            if (coarser.block_of(s) != coarser.block_of(b.front())) return false;
        }
    }
    return true;
}

}  // namespace stutter
