#pragma once
// Stochastic dynamics of the bipartite feature structure: each arriving
// node adopts old features with a preferential-attachment / i.i.d. mixture
// probability, then introduces Poisson-many new ones.

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "featnet/rng.hpp"
#include "featnet/types.hpp"

namespace featnet {

// Mean number of new features brought by node i (1-based): alpha / i^{1-beta}.
inline double lambda_i(double alpha, double beta, std::uint64_t i) {
    if (!(alpha > 0.0)) throw std::invalid_argument("lambda_i: alpha must be > 0");
    if (!(beta >= 0.0 && beta <= 1.0)) throw std::invalid_argument("lambda_i: beta out of [0,1]");
    if (i < 1) throw std::invalid_argument("lambda_i: node index must be >= 1");
    return alpha / std::pow(static_cast<double>(i), 1.0 - beta);
}

// Generates a feature matrix for n nodes. Draw order is fixed: at step i,
// the L_{i-1} inclusion Bernoullis in feature-index order, then the Poisson
// draw for N_i, so a (seed, stream) pair fully determines the output.
inline FeatureMatrix generate_features(std::size_t n, const ModelParams& params, GenSeed seed) {
    if (n < 1) throw std::invalid_argument("generate_features: need n >= 1");
    Rng rng(seed);
    FeatureMatrix f;
    f.rows.resize(n);
    f.new_counts.resize(n);
    f.cum_counts.resize(n);

    std::vector<std::uint32_t> adopters;  // adopters so far, per feature
    std::uint64_t total = 0;
    for (std::size_t i = 0; i < n; ++i) {
        auto& row = f.rows[i];
        const double inv_step = 1.0 / static_cast<double>(i + 1);
        for (std::uint64_t k = 0; k < total; ++k) {
            const double prob = params.delta * 0.5 +
                                (1.0 - params.delta) * adopters[k] * inv_step;
            if (rng.bernoulli(prob)) {
                row.push_back(static_cast<FeatureId>(k));
                ++adopters[k];
            }
        }
        const std::uint64_t fresh = rng.poisson(lambda_i(params.alpha, params.beta, i + 1));
        for (std::uint64_t k = 0; k < fresh; ++k) {
            row.push_back(static_cast<FeatureId>(total + k));
            adopters.push_back(1);
        }
        total += fresh;
        f.new_counts[i] = static_cast<std::uint32_t>(fresh);
        f.cum_counts[i] = total;
    }
    return f;
}

// Difference between the mean adoption fraction of the first half of the
// features and that of the second half. A feature introduced by node i can
// be adopted by nodes i..n; the introducer counts as an adopter.
inline double uniformity_measure(const FeatureMatrix& f) {
    const std::uint64_t ln = f.total_features();
    if (ln < 2) throw std::invalid_argument("uniformity_measure: need at least 2 features");
    const std::size_t n = f.node_count();

    std::vector<std::uint32_t> adopters(ln, 0);
    for (const auto& row : f.rows)
        for (FeatureId k : row) ++adopters[k];

    std::vector<std::uint32_t> introducer(ln);  // 0-based introducing node
    for (std::size_t i = 0; i < n; ++i)
        for (std::uint64_t k = f.features_before(i); k < f.cum_counts[i]; ++k)
            introducer[k] = static_cast<std::uint32_t>(i);

    const std::uint64_t half = ln / 2;
    double sum_first = 0.0, sum_second = 0.0;
    for (std::uint64_t k = 0; k < ln; ++k) {
        const double eligible = static_cast<double>(n - introducer[k]);
        const double frac = adopters[k] / eligible;
        (k < half ? sum_first : sum_second) += frac;
    }
    return sum_first / static_cast<double>(half) -
           sum_second / static_cast<double>(ln - half);
}

}  // namespace featnet
