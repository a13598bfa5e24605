#pragma once

#include "opinionshift/common.hpp"
#include "opinionshift/graph.hpp"
#include "opinionshift/rng.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace opinionshift {

// Undirected Erdos-Renyi G(n, p) with unit weights, stored as a symmetric
// digraph. Deterministic for a fixed seed; resamples until connected (at
// most 100 attempts) when require_connected is set.
inline WeightedDigraph generate_er(int n, double p, std::uint64_t seed,
                                   bool require_connected = true) {
    if (n < 1) throw ValidationError("generate_er: need at least one node");
    if (!(p > 0.0 && p <= 1.0))
        throw ValidationError("generate_er: edge probability must lie in (0, 1]");
    SplitMix64 rng = substream(seed, "er-graph");
    for (int attempt = 0; attempt < 100; ++attempt) {
        std::vector<Edge> edges;
        for (NodeId i = 0; i < n; ++i)
            for (NodeId j = i + 1; j < n; ++j)
                if (rng.next_double() < p) {
                    edges.push_back({i, j, 1.0});
                    edges.push_back({j, i, 1.0});
                }
        WeightedDigraph g = WeightedDigraph::from_edges(n, edges);
        if (!require_connected || is_strongly_connected(g)) return g;
    }
    throw ValidationError("generate_er: no connected sample after 100 attempts (n=" +
                          std::to_string(n) + ", p=" + std::to_string(p) +
                          "); raise p or drop the connectivity requirement");
}

}  // namespace opinionshift
