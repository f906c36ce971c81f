#pragma once
// Core domain types: the left-ordered binary feature matrix, the model
// parameters, and the sigmoid used for first-phase link probabilities.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace featnet {

using NodeId = std::uint32_t;     // 0-based internally; 1-based in all I/O
using FeatureId = std::uint32_t;  // 0-based internally; 1-based in all I/O

// Left-ordered binary bipartite matrix. Row i holds the sorted feature
// indices exhibited by node i. Node i's new features occupy exactly the
// contiguous block [cum_counts[i-1], cum_counts[i]) and no row references
// a feature introduced by a later node.
struct FeatureMatrix {
    std::vector<std::vector<FeatureId>> rows;
    std::vector<std::uint32_t> new_counts;  // N_i
    std::vector<std::uint64_t> cum_counts;  // L_i = sum_{j<=i} N_j

    std::size_t node_count() const { return rows.size(); }
    std::uint64_t total_features() const { return cum_counts.empty() ? 0 : cum_counts.back(); }

    // Cumulative feature count before node i (L_{i-1} in 1-based terms).
    std::uint64_t features_before(std::size_t i) const {
        return i == 0 ? 0 : cum_counts[i - 1];
    }

    void validate() const {
        if (rows.size() != new_counts.size() || rows.size() != cum_counts.size())
            throw std::invalid_argument("FeatureMatrix: field sizes disagree");
        std::uint64_t prev = 0;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (cum_counts[i] != prev + new_counts[i])
                throw std::invalid_argument("FeatureMatrix: cum_counts not cumulative at node " +
                                            std::to_string(i + 1));
            const auto& r = rows[i];
            if (!std::is_sorted(r.begin(), r.end()) ||
                std::adjacent_find(r.begin(), r.end()) != r.end())
                throw std::invalid_argument("FeatureMatrix: row not strictly sorted at node " +
                                            std::to_string(i + 1));
            for (FeatureId k : r)
                if (k >= cum_counts[i])
                    throw std::invalid_argument("FeatureMatrix: node " + std::to_string(i + 1) +
                                                " references a feature introduced later");
            // the new block [prev, cum_counts[i]) must be fully present
            auto it = std::lower_bound(r.begin(), r.end(), static_cast<FeatureId>(prev));
            if (static_cast<std::uint64_t>(r.end() - it) != new_counts[i])
                throw std::invalid_argument("FeatureMatrix: new-feature block broken at node " +
                                            std::to_string(i + 1));
            prev = cum_counts[i];
        }
    }
};

struct ModelParams {
    double alpha;  // mean new-feature rate, > 0
    double beta;   // growth exponent of L_n, in [0,1]
    double delta;  // i.i.d. vs preferential-attachment mix, in [0,1]
    double p;      // per-common-neighbor triadic-closure probability, in [0,1]

    ModelParams(double a, double b, double d, double pp)
        : alpha(a), beta(b), delta(d), p(pp) {
        if (!(alpha > 0.0)) throw std::invalid_argument("ModelParams: alpha must be > 0");
        if (!(beta >= 0.0 && beta <= 1.0)) throw std::invalid_argument("ModelParams: beta out of [0,1]");
        if (!(delta >= 0.0 && delta <= 1.0)) throw std::invalid_argument("ModelParams: delta out of [0,1]");
        if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("ModelParams: p out of [0,1]");
    }
};

struct SigmoidParams {
    double k_steep;  // steepness, > 0
    double theta;    // similarity threshold

    SigmoidParams(double k, double t) : k_steep(k), theta(t) {
        if (!(k_steep > 0.0)) throw std::invalid_argument("SigmoidParams: steepness must be > 0");
    }
};

// Sigmoid link probability 1 / (1 + e^{K(theta - s)}). The exponent is
// clamped so extreme arguments saturate at 0/1 instead of overflowing.
inline double phi(double s, const SigmoidParams& sp) {
    double x = sp.k_steep * (sp.theta - s);
    x = std::clamp(x, -700.0, 700.0);
    return 1.0 / (1.0 + std::exp(x));
}

// Number of features nodes i and j share (S_{i,j}); sorted-set intersection.
inline std::uint32_t similarity(const FeatureMatrix& f, NodeId i, NodeId j) {
    if (i >= f.node_count() || j >= f.node_count())
        throw std::out_of_range("similarity: node index out of range");
    const auto& a = f.rows[i];
    const auto& b = f.rows[j];
    std::uint32_t count = 0;
    auto ia = a.begin(), ib = b.begin();
    while (ia != a.end() && ib != b.end()) {
        if (*ia < *ib) ++ia;
        else if (*ib < *ia) ++ib;
        else { ++count; ++ia; ++ib; }
    }
    return count;
}

// Probability that arriving node i adopts old feature k:
// P_i(k) = delta/2 + (1-delta) * (adopters of k among nodes 1..i-1) / i.
// Indices here are 0-based; the denominator is the 1-based arrival step.
inline double inclusion_probability(const FeatureMatrix& f, NodeId i, FeatureId k, double delta) {
    if (i == 0 || i >= f.node_count())
        throw std::out_of_range("inclusion_probability: node must be >= 2 (1-based)");
    if (k >= f.features_before(i))
        throw std::out_of_range("inclusion_probability: feature not yet introduced at this step");
    std::uint64_t adopters = 0;
    for (NodeId j = 0; j < i; ++j)
        adopters += std::binary_search(f.rows[j].begin(), f.rows[j].end(), k) ? 1 : 0;
    return delta * 0.5 + (1.0 - delta) * static_cast<double>(adopters) / static_cast<double>(i + 1);
}

// Fitted parameters plus named diagnostics (regression R^2, final
// log-likelihoods, residuals). Present estimates are range-checked.
struct EstimationReport {
    std::optional<double> alpha_hat, beta_hat, delta_hat, p_hat;
    std::optional<double> k_hat, theta_hat;
    std::map<std::string, double> diagnostics;

    void validate() const {
        if (alpha_hat && !(*alpha_hat > 0.0))
            throw std::invalid_argument("EstimationReport: alpha_hat must be > 0");
        for (auto [v, name] : {std::pair{beta_hat, "beta_hat"}, {delta_hat, "delta_hat"}, {p_hat, "p_hat"}})
            if (v && !(*v >= 0.0 && *v <= 1.0))
                throw std::invalid_argument(std::string("EstimationReport: ") + name + " out of [0,1]");
        if (k_hat && !(*k_hat > 0.0))
            throw std::invalid_argument("EstimationReport: k_hat must be > 0");
    }
};

}  // namespace featnet
