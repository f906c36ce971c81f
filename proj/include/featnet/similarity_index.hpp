#pragma once
// Packed-bit view of the feature rows so pairwise similarities reduce to
// word AND + popcount. The O(n^2) pair loops dominate runtime at the
// simulation scale; this keeps them cheap.

#include <bit>
#include <cstdint>
#include <vector>

#include "featnet/graph.hpp"
#include "featnet/types.hpp"

namespace featnet {

class SimilarityIndex {
public:
    explicit SimilarityIndex(const FeatureMatrix& f)
        : n_(f.node_count()),
          words_((f.total_features() + 63) / 64),
          bits_(n_ * words_, 0),
          row_words_(n_) {
        for (std::size_t i = 0; i < n_; ++i) {
            std::uint64_t* w = bits_.data() + i * words_;
            for (FeatureId k : f.rows[i]) w[k >> 6] |= 1ULL << (k & 63);
            // a row never references features past L_i, so AND loops can stop there
            row_words_[i] = static_cast<std::uint32_t>((f.cum_counts[i] + 63) / 64);
        }
    }

    std::uint32_t common(NodeId i, NodeId j) const {
        const std::uint64_t* a = bits_.data() + static_cast<std::size_t>(i) * words_;
        const std::uint64_t* b = bits_.data() + static_cast<std::size_t>(j) * words_;
        const std::uint32_t limit = std::min(row_words_[i], row_words_[j]);
        std::uint32_t c = 0;
        for (std::uint32_t w = 0; w < limit; ++w) c += std::popcount(a[w] & b[w]);
        return c;
    }

    std::size_t node_count() const { return n_; }

private:
    std::size_t n_;
    std::size_t words_;
    std::vector<std::uint64_t> bits_;
    std::vector<std::uint32_t> row_words_;
};

// Histogram over all unordered node pairs: pair_count[s] = pairs with
// similarity s. When a graph is supplied, linked_count[s] additionally
// splits out the pairs linked in it (A' when first_phase_only).
struct SimilarityHistogram {
    std::vector<std::uint64_t> pair_count;
    std::vector<std::uint64_t> linked_count;

    std::uint64_t total_pairs() const {
        std::uint64_t t = 0;
        for (auto c : pair_count) t += c;
        return t;
    }
};

inline SimilarityHistogram similarity_histogram(const FeatureMatrix& f,
                                                const LabeledGraph* g = nullptr,
                                                bool first_phase_only = false) {
    const SimilarityIndex idx(f);
    const std::size_t n = f.node_count();
    SimilarityHistogram h;

    std::vector<std::vector<NodeId>> adj;
    if (g) adj = adjacency(*g, !first_phase_only);

    for (NodeId i = 1; i < n; ++i) {
        const auto* nb = g ? &adj[i] : nullptr;
        for (NodeId j = 0; j < i; ++j) {
            const std::uint32_t s = idx.common(i, j);
            if (s >= h.pair_count.size()) {
                h.pair_count.resize(s + 1, 0);
                h.linked_count.resize(s + 1, 0);
            }
            ++h.pair_count[s];
            if (nb && std::binary_search(nb->begin(), nb->end(), j)) ++h.linked_count[s];
        }
    }
    return h;
}

}  // namespace featnet
