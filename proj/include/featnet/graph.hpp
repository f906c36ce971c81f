#pragma once
// Undirected simple graph with per-edge provenance. The FIRST_PHASE
// subgraph is the assortativity-only adjacency A'; the full edge set is A.

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "featnet/types.hpp"

namespace featnet {

enum class EdgePhase : std::uint8_t {
    Observed = 0,  // ingested data, phase unknown
    First = 1,     // similarity-driven (part of A')
    Second = 2,    // triadic closure
};

struct LabeledGraph {
    struct Edge {
        NodeId u, v;  // u < v; the edge was created at the arrival of v
        EdgePhase phase;
    };

    NodeId n = 0;
    std::vector<Edge> edges;

    void add_edge(NodeId a, NodeId b, EdgePhase phase) {
        if (a == b) throw std::invalid_argument("LabeledGraph: self-loop");
        if (a >= n || b >= n) throw std::out_of_range("LabeledGraph: node out of range");
        if (a > b) std::swap(a, b);
        edges.push_back({a, b, phase});
    }

    std::size_t edge_count() const { return edges.size(); }

    std::size_t first_phase_count() const {
        std::size_t c = 0;
        for (const auto& e : edges) c += e.phase == EdgePhase::First;
        return c;
    }

    bool has_phase_labels() const {
        return std::all_of(edges.begin(), edges.end(),
                           [](const Edge& e) { return e.phase != EdgePhase::Observed; });
    }
};

// Neighbor lists, sorted ascending. include_second = false restricts to A'.
inline std::vector<std::vector<NodeId>> adjacency(const LabeledGraph& g, bool include_second = true) {
    std::vector<std::vector<NodeId>> adj(g.n);
    for (const auto& e : g.edges) {
        if (!include_second && e.phase == EdgePhase::Second) continue;
        adj[e.u].push_back(e.v);
        adj[e.v].push_back(e.u);
    }
    for (auto& nb : adj) std::sort(nb.begin(), nb.end());
    return adj;
}

}  // namespace featnet
