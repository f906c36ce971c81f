#pragma once
// Monte-Carlo harnesses: per-parameter estimator MSEs and the simulation
// runner shared by the CLI and the sweep command. All randomness flows from
// one root seed; realization r always uses substream r, so results do not
// depend on the worker schedule.

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "featnet/build.hpp"
#include "featnet/dynamics.hpp"
#include "featnet/estimation.hpp"
#include "featnet/metrics.hpp"
#include "featnet/parallel.hpp"
#include "featnet/rng.hpp"
#include "featnet/types.hpp"

namespace featnet {

struct MseReport {
    double mse_alpha = 0, mse_beta = 0, mse_delta = 0;
    double mean_alpha = 0, mean_beta = 0, mean_delta = 0;
    std::size_t realizations = 0;
};

// Generates R realizations, runs the three feature estimators on each, and
// reports MSE_x = (1/R) * sum (x_hat_r - x)^2.
inline MseReport mse_harness(const ModelParams& true_params, std::size_t n,
                             std::size_t realizations, GenSeed seed = {12345, 0},
                             unsigned workers = 0) {
    if (realizations < 1) throw std::invalid_argument("mse_harness: need at least 1 realization");
    std::vector<double> a(realizations), b(realizations), d(realizations);
    parallel_for(realizations, [&](std::size_t r) {
        const FeatureMatrix f =
            generate_features(n, true_params, GenSeed{seed.seed, seed.stream + r});
        b[r] = estimate_beta(f);
        a[r] = estimate_alpha(f, b[r]);
        d[r] = estimate_delta(f);
    }, workers);
    MseReport rep;
    rep.realizations = realizations;
    for (std::size_t r = 0; r < realizations; ++r) {
        rep.mean_alpha += a[r]; rep.mean_beta += b[r]; rep.mean_delta += d[r];
        rep.mse_alpha += (a[r] - true_params.alpha) * (a[r] - true_params.alpha);
        rep.mse_beta += (b[r] - true_params.beta) * (b[r] - true_params.beta);
        rep.mse_delta += (d[r] - true_params.delta) * (d[r] - true_params.delta);
    }
    const double inv = 1.0 / static_cast<double>(realizations);
    rep.mean_alpha *= inv; rep.mean_beta *= inv; rep.mean_delta *= inv;
    rep.mse_alpha *= inv; rep.mse_beta *= inv; rep.mse_delta *= inv;
    return rep;
}

// One simulated realization: feature matrix, network, and the statistics the
// experiment tables report. theta comes either from an explicit value or
// from the expected-link calibration at the given ell.
struct SimulationCell {
    std::size_t n;
    ModelParams params;
    double k_steep;
    std::optional<double> theta;  // exactly one of theta / ell
    std::optional<double> ell;
};

struct RealizationResult {
    FeatureMatrix features;
    LabeledGraph graph;
    double theta_used = 0;
    std::uint64_t total_links = 0;
    std::uint64_t first_phase_links = 0;
    double clustering = 0;
    double rp_fraction = 0;
    std::uint32_t rp_h_star = 0;
    double uniformity = 0;
};

inline RealizationResult run_realization(const SimulationCell& cell, GenSeed seed,
                                         std::uint32_t rp_h = 20) {
    if (cell.theta.has_value() == cell.ell.has_value())
        throw std::invalid_argument("run_realization: exactly one of theta / ell must be set");
    RealizationResult out;
    // substreams: feature dynamics and link construction draw independently
    out.features = generate_features(cell.n, cell.params, GenSeed{seed.seed, 2 * seed.stream});
    out.theta_used = cell.theta ? *cell.theta
                                : calibrate_theta(out.features, cell.k_steep, *cell.ell);
    const SigmoidParams sp{cell.k_steep, out.theta_used};
    out.graph = build_network(out.features, sp, cell.params.p, GenSeed{seed.seed, 2 * seed.stream + 1});
    out.total_links = out.graph.edge_count();
    out.first_phase_links = out.graph.first_phase_count();
    out.clustering = clustering_coefficient(out.graph);
    const ReachablePairs rp = reachable_pairs(out.graph, rp_h);
    out.rp_fraction = rp.fraction;
    out.rp_h_star = rp.h_star;
    out.uniformity = out.features.total_features() >= 2 ? uniformity_measure(out.features) : 0.0;
    return out;
}

struct CellAggregate {
    double mean_links = 0;
    double mean_first_phase_links = 0;
    double mean_clustering = 0;
    double mean_rp = 0;
    std::uint32_t max_h_star = 0;
    double mean_uniformity = 0;
    double mean_total_features = 0;
    std::size_t realizations = 0;
};

inline CellAggregate aggregate_cell(const SimulationCell& cell, std::size_t realizations,
                                    GenSeed seed, std::uint32_t rp_h = 20, unsigned workers = 0) {
    std::vector<RealizationResult> results(realizations);
    parallel_for(realizations, [&](std::size_t r) {
        results[r] = run_realization(cell, GenSeed{seed.seed, seed.stream + r}, rp_h);
    }, workers);
    CellAggregate agg;
    agg.realizations = realizations;
    for (const auto& res : results) {
        agg.mean_links += static_cast<double>(res.total_links);
        agg.mean_first_phase_links += static_cast<double>(res.first_phase_links);
        agg.mean_clustering += res.clustering;
        agg.mean_rp += res.rp_fraction;
        agg.max_h_star = std::max(agg.max_h_star, res.rp_h_star);
        agg.mean_uniformity += res.uniformity;
        agg.mean_total_features += static_cast<double>(res.features.total_features());
    }
    const double inv = 1.0 / static_cast<double>(realizations);
    agg.mean_links *= inv;
    agg.mean_first_phase_links *= inv;
    agg.mean_clustering *= inv;
    agg.mean_rp *= inv;
    agg.mean_uniformity *= inv;
    agg.mean_total_features *= inv;
    return agg;
}

}  // namespace featnet
