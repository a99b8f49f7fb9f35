#pragma once

#include <cstdint>

namespace nodesep {

using NodeID = std::uint32_t;
using EdgeID = std::uint64_t;
using NodeWeight = std::int64_t;
using EdgeWeight = std::int64_t;

inline constexpr NodeID kInvalidNode = static_cast<NodeID>(-1);

// Block assignment of a node. Separator nodes belong to neither block.
enum class Label : std::uint8_t { Block1 = 0, Block2 = 1, Separator = 2 };

inline Label other_block(Label b) {
    return b == Label::Block1 ? Label::Block2 : Label::Block1;
}

}  // namespace nodesep
