#pragma once
// Network and feature statistics: global clustering, reachable pairs,
// degree CCDF, component decomposition, and the shared-feature link curves.

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "featnet/graph.hpp"
#include "featnet/similarity_index.hpp"
#include "featnet/types.hpp"

namespace featnet {

// Global clustering: closed triplets over connected triplets, where a
// triplet is a *set* of three nodes joined by two (open) or three (closed)
// edges. With t triangles and sum_v C(deg_v, 2) = paths + 3t centered
// triplets, the set counts are t and (paths + t), i.e. t / (sum - 2t).
// Not the average of local coefficients. Returns 0 when there is no
// connected triplet.
inline double clustering_coefficient(const LabeledGraph& g) {
    const auto adj = adjacency(g);
    std::uint64_t triangles3 = 0;  // per-edge triangle incidences = 3 * triangles
    for (const auto& e : g.edges) {
        const auto& a = adj[e.u];
        const auto& b = adj[e.v];
        auto ia = a.begin(), ib = b.begin();
        while (ia != a.end() && ib != b.end()) {
            if (*ia < *ib) ++ia;
            else if (*ib < *ia) ++ib;
            else { ++triangles3; ++ia; ++ib; }
        }
    }
    std::uint64_t centered = 0;  // sum_v C(deg_v, 2)
    for (const auto& nb : adj) {
        const std::uint64_t d = nb.size();
        centered += d * (d - 1) / 2;
    }
    const std::uint64_t closed = triangles3 / 3;
    const std::uint64_t connected = centered - 2 * closed;
    if (connected == 0) return 0.0;
    return static_cast<double>(closed) / static_cast<double>(connected);
}

struct ReachablePairs {
    double fraction = 0.0;  // pairs at distance <= h over all n-choose-2 pairs
    std::uint32_t h_star = 0;  // largest distance observed among those pairs
};

// BFS from every node; counts unordered pairs within distance h. Isolated
// nodes stay in the denominator.
inline ReachablePairs reachable_pairs(const LabeledGraph& g, std::uint32_t h) {
    if (h < 1) throw std::invalid_argument("reachable_pairs: h must be >= 1");
    const auto adj = adjacency(g);
    const std::size_t n = g.n;
    ReachablePairs out;
    if (n < 2) return out;

    std::uint64_t within = 0;  // ordered pairs
    std::vector<std::uint32_t> dist(n);
    std::vector<NodeId> frontier, next;
    for (NodeId src = 0; src < n; ++src) {
        std::fill(dist.begin(), dist.end(), UINT32_MAX);
        dist[src] = 0;
        frontier.assign(1, src);
        std::uint32_t d = 0;
        while (!frontier.empty() && d < h) {
            next.clear();
            ++d;
            for (NodeId u : frontier) {
                for (NodeId v : adj[u]) {
                    if (dist[v] == UINT32_MAX) {
                        dist[v] = d;
                        next.push_back(v);
                    }
                }
            }
            within += next.size();
            if (!next.empty()) out.h_star = std::max(out.h_star, d);
            frontier.swap(next);
        }
    }
    const std::uint64_t total = static_cast<std::uint64_t>(n) * (n - 1) / 2;
    out.fraction = static_cast<double>(within / 2) / static_cast<double>(total);
    return out;
}

// CCDF points at degree 0 and at every observed degree value.
inline std::vector<std::pair<std::uint32_t, double>> degree_ccdf(const LabeledGraph& g) {
    std::vector<std::uint32_t> deg(g.n, 0);
    for (const auto& e : g.edges) { ++deg[e.u]; ++deg[e.v]; }
    std::sort(deg.begin(), deg.end());
    std::vector<std::pair<std::uint32_t, double>> ccdf{{0, 1.0}};
    if (g.n == 0) return ccdf;
    const double n = static_cast<double>(g.n);
    for (std::size_t t = 0; t < deg.size();) {
        const std::uint32_t d = deg[t];
        if (d > 0) ccdf.emplace_back(d, static_cast<double>(deg.size() - t) / n);
        std::size_t u = t;
        while (u < deg.size() && deg[u] == d) ++u;
        t = u;
    }
    return ccdf;
}

struct ComponentSummary {
    std::size_t component_count = 0;
    std::size_t largest_size = 0;
    std::size_t largest_edges = 0;
    std::uint32_t largest_diameter = 0;
    std::size_t isolated_count = 0;
};

inline ComponentSummary component_summary(const LabeledGraph& g) {
    const auto adj = adjacency(g);
    const std::size_t n = g.n;
    ComponentSummary out;
    std::vector<std::int64_t> comp(n, -1);
    std::vector<NodeId> queue;
    std::vector<std::vector<NodeId>> members;
    for (NodeId src = 0; src < n; ++src) {
        if (comp[src] >= 0) continue;
        const std::int64_t id = static_cast<std::int64_t>(members.size());
        members.emplace_back();
        comp[src] = id;
        queue.assign(1, src);
        for (std::size_t head = 0; head < queue.size(); ++head) {
            const NodeId u = queue[head];
            members.back().push_back(u);
            for (NodeId v : adj[u]) {
                if (comp[v] < 0) {
                    comp[v] = id;
                    queue.push_back(v);
                }
            }
        }
    }
    out.component_count = members.size();
    for (const auto& m : members) {
        if (m.size() == 1) ++out.isolated_count;
        if (m.size() > out.largest_size) out.largest_size = m.size();
    }
    std::int64_t largest_id = -1;
    for (std::size_t c = 0; c < members.size(); ++c)
        if (members[c].size() == out.largest_size) { largest_id = static_cast<std::int64_t>(c); break; }
    for (const auto& e : g.edges)
        if (comp[e.u] == largest_id) ++out.largest_edges;

    if (largest_id >= 0 && out.largest_size > 1) {
        std::vector<std::uint32_t> dist(n);
        for (NodeId src : members[largest_id]) {
            std::fill(dist.begin(), dist.end(), UINT32_MAX);
            dist[src] = 0;
            queue.assign(1, src);
            for (std::size_t head = 0; head < queue.size(); ++head) {
                const NodeId u = queue[head];
                for (NodeId v : adj[u]) {
                    if (dist[v] == UINT32_MAX) {
                        dist[v] = dist[u] + 1;
                        out.largest_diameter = std::max(out.largest_diameter, dist[v]);
                        queue.push_back(v);
                    }
                }
            }
        }
    }
    return out;
}

// Shared-feature curves over all node pairs, binned at integer similarity x:
//   linked_given_x[x]   : fraction of linked pairs having exactly x common features
//   unlinked_given_x[x] : same for unlinked pairs
//   link_prob_given_x[x]: fraction of pairs with exactly x common features that are linked
// Raw counts are kept so plots can be regenerated and bins re-weighted.
struct SharedFeatureCurves {
    std::vector<std::uint64_t> pair_count;
    std::vector<std::uint64_t> linked_count;
    std::vector<double> linked_given_x;
    std::vector<double> unlinked_given_x;
    std::vector<double> link_prob_given_x;
};

inline SharedFeatureCurves shared_feature_distributions(const FeatureMatrix& f,
                                                        const LabeledGraph& g) {
    if (f.node_count() != g.n)
        throw std::invalid_argument("shared_feature_distributions: matrix/graph size mismatch");
    const SimilarityHistogram hist = similarity_histogram(f, &g);
    SharedFeatureCurves out;
    out.pair_count = hist.pair_count;
    out.linked_count = hist.linked_count;
    std::uint64_t linked_total = 0, total = 0;
    for (std::size_t x = 0; x < hist.pair_count.size(); ++x) {
        linked_total += hist.linked_count[x];
        total += hist.pair_count[x];
    }
    const std::uint64_t unlinked_total = total - linked_total;
    for (std::size_t x = 0; x < hist.pair_count.size(); ++x) {
        const std::uint64_t unlinked = hist.pair_count[x] - hist.linked_count[x];
        out.linked_given_x.push_back(
            linked_total ? static_cast<double>(hist.linked_count[x]) / linked_total : 0.0);
        out.unlinked_given_x.push_back(
            unlinked_total ? static_cast<double>(unlinked) / unlinked_total : 0.0);
        out.link_prob_given_x.push_back(
            hist.pair_count[x] ? static_cast<double>(hist.linked_count[x]) / hist.pair_count[x]
                               : 0.0);
    }
    return out;
}

}  // namespace featnet
