#pragma once

#include "repsim/mobility.hpp"

#include <optional>
#include <set>
#include <vector>

namespace repsim {

// adjacency[u] = sorted list of nodes within radio range of u
using Adjacency = std::vector<std::vector<int>>;

Adjacency connectivity(const std::vector<Vec2>& positions, double tx_range);

// Minimum-hop path from src to dst whose intermediate nodes avoid `excluded`
// (src and dst themselves are always allowed). Ties break toward the smallest
// node id at every step, making the choice deterministic. nullopt when no
// such path exists.
std::optional<std::vector<int>> route(const Adjacency& adj, int src, int dst,
                                      const std::set<int>& excluded);

} // namespace repsim
