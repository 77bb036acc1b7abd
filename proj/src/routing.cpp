#include "repsim/routing.hpp"

#include <limits>
#include <queue>
#include <stdexcept>

namespace repsim {

Adjacency connectivity(const std::vector<Vec2>& positions, double tx_range) {
    const int n = static_cast<int>(positions.size());
    Adjacency adj(n);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (dist(positions[u], positions[v]) <= tx_range) {
                adj[u].push_back(v);
                adj[v].push_back(u);
            }
    return adj;
}

std::optional<std::vector<int>> route(const Adjacency& adj, int src, int dst,
                                      const std::set<int>& excluded) {
    if (src == dst) throw std::invalid_argument("route endpoints coincide");
    const int n = static_cast<int>(adj.size());
    auto allowed = [&](int v) { return v == src || v == dst || !excluded.count(v); };

    // hop counts toward dst over the allowed subgraph
    constexpr int kInf = std::numeric_limits<int>::max();
    std::vector<int> hops(n, kInf);
    hops[dst] = 0;
    std::queue<int> frontier;
    frontier.push(dst);
    while (!frontier.empty()) {
        int u = frontier.front();
        frontier.pop();
        for (int v : adj[u])
            if (allowed(v) && hops[v] == kInf) {
                hops[v] = hops[u] + 1;
                frontier.push(v);
            }
    }
    if (hops[src] == kInf) return std::nullopt;

    // walk downhill, preferring the smallest-id next hop (neighbor lists are
    // sorted, so the first match wins)
    std::vector<int> path{src};
    int cur = src;
    while (cur != dst) {
        for (int v : adj[cur])
            if (allowed(v) && hops[v] == hops[cur] - 1) {
                cur = v;
                break;
            }
        path.push_back(cur);
    }
    return path;
}

} // namespace repsim
