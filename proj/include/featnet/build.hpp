#pragma once
// Two-phase unipartite network construction. First phase: node i links to
// each earlier node j independently with probability Phi(S_{i,j}). Second
// phase: each common neighbor of (i, j) with j outside the first-phase set
// independently induces the link with probability p.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <tuple>
#include <vector>

#include "featnet/graph.hpp"
#include "featnet/rng.hpp"
#include "featnet/similarity_index.hpp"
#include "featnet/types.hpp"

namespace featnet {

// 1 - (1-p)^c: probability that at least one of c common neighbors fires.
inline double second_phase_link_probability(std::uint64_t c, double p) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("second_phase_link_probability: p out of [0,1]");
    if (c == 0 || p == 0.0) return 0.0;
    if (p == 1.0) return 1.0;
    return 1.0 - std::pow(1.0 - p, static_cast<double>(c));
}

// Per step i the draws are: Bernoulli(Phi(S_{i,j})) in ascending j, then for
// each non-linked j in ascending order, per-common-neighbor Bernoulli(p)
// trials that stop once the link fires. Second-phase decisions see only the
// adjacency as of step i-1 plus i's first-phase neighbors. The two phases
// draw from separate substreams, so A' depends only on (F, sp, seed), not p.
inline LabeledGraph build_network(const FeatureMatrix& f, const SigmoidParams& sp, double p,
                                  GenSeed seed) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("build_network: p out of [0,1]");
    const std::size_t n = f.node_count();
    Rng rng(seed);
    Rng rng_second(seed, /*salt=*/2);
    const SimilarityIndex idx(f);

    LabeledGraph g;
    g.n = static_cast<NodeId>(n);
    std::vector<std::vector<NodeId>> adj(n);  // adjacency before the current step's edges
    std::vector<char> in_lstar(n, 0);
    std::vector<std::uint32_t> shared(n, 0);
    std::vector<NodeId> lstar, touched;

    for (NodeId i = 1; i < n; ++i) {
        lstar.clear();
        for (NodeId j = 0; j < i; ++j) {
            if (rng.bernoulli(phi(idx.common(i, j), sp))) {
                lstar.push_back(j);
                in_lstar[j] = 1;
            }
        }

        if (p > 0.0 && !lstar.empty()) {
            touched.clear();
            for (NodeId mid : lstar) {
                for (NodeId j : adj[mid]) {
                    if (shared[j]++ == 0) touched.push_back(j);
                }
            }
            std::sort(touched.begin(), touched.end());
            for (NodeId j : touched) {
                if (!in_lstar[j]) {
                    for (std::uint32_t t = 0; t < shared[j]; ++t) {
                        if (rng_second.bernoulli(p)) {
                            g.add_edge(i, j, EdgePhase::Second);
                            adj[i].push_back(j);
                            adj[j].push_back(i);
                            break;
                        }
                    }
                }
                shared[j] = 0;
            }
        }

        for (NodeId j : lstar) {
            g.add_edge(i, j, EdgePhase::First);
            adj[i].push_back(j);
            adj[j].push_back(i);
            in_lstar[j] = 0;
        }
    }
    for (auto& nb : adj) std::sort(nb.begin(), nb.end());
    std::sort(g.edges.begin(), g.edges.end(), [](const auto& a, const auto& b) {
        return std::tie(a.v, a.u) < std::tie(b.v, b.u);
    });
    return g;
}

}  // namespace featnet
