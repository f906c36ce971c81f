#pragma once
// Parameter estimation from observed data: regression estimators for the
// growth parameters, maximum likelihood for the adoption mixture and the
// triadic-closure probability, and the two-equation selection system for
// the sigmoid parameters.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <stdexcept>
#include <vector>

#include "featnet/graph.hpp"
#include "featnet/similarity_index.hpp"
#include "featnet/types.hpp"

namespace featnet {

namespace detail {

struct Slope {
    double slope;
    double intercept;
    double r2;
};

inline Slope least_squares(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t m = x.size();
    if (m < 2) throw std::invalid_argument("least_squares: need at least 2 points");
    double mx = 0, my = 0;
    for (std::size_t t = 0; t < m; ++t) { mx += x[t]; my += y[t]; }
    mx /= m; my /= m;
    double sxx = 0, sxy = 0, syy = 0;
    for (std::size_t t = 0; t < m; ++t) {
        const double dx = x[t] - mx, dy = y[t] - my;
        sxx += dx * dx; sxy += dx * dy; syy += dy * dy;
    }
    if (sxx == 0.0) throw std::invalid_argument("least_squares: degenerate regression (all x equal)");
    const double b = sxy / sxx;
    const double r2 = syy == 0.0 ? 1.0 : (sxy * sxy) / (sxx * syy);
    return {b, my - b * mx, r2};
}

// Golden-section maximization of a unimodal objective on [lo, hi].
inline double golden_max(const std::function<double(double)>& f, double lo, double hi, double tol) {
    constexpr double inv_phi = 0.6180339887498949;
    double a = lo, b = hi;
    double x1 = b - inv_phi * (b - a);
    double x2 = a + inv_phi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    while (b - a > tol) {
        if (f1 < f2) {
            a = x1; x1 = x2; f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = f(x2);
        } else {
            b = x2; x2 = x1; f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = f(x1);
        }
    }
    const double mid = 0.5 * (a + b);
    // the maximizer may sit on the original boundary
    double best = mid, fb = f(mid);
    for (double c : {lo, hi})
        if (f(c) > fb) { best = c; fb = f(c); }
    return best;
}

}  // namespace detail

// Slope of ln(L_i) against ln(i) with L_i > 0, clamped to [0,1]. The first
// tenth of the arrival steps is discarded: the additive constant in
// E[L_i] = gamma * i^beta + c bends the log-log curve early on and would
// otherwise bias the slope upward, while the tail sits on the asymptote.
inline double estimate_beta(const FeatureMatrix& f) {
    const std::size_t first = std::max<std::size_t>(1, f.node_count() / 10);
    std::vector<double> x, y;
    for (std::size_t i = first; i < f.node_count(); ++i) {
        if (f.cum_counts[i] > 0) {
            x.push_back(std::log(static_cast<double>(i + 1)));
            y.push_back(std::log(static_cast<double>(f.cum_counts[i])));
        }
    }
    if (x.size() < 3) throw std::invalid_argument("estimate_beta: fewer than 3 usable points");
    return std::clamp(detail::least_squares(x, y).slope, 0.0, 1.0);
}

// From the asymptotics of L_n: alpha_hat = gamma_hat (slope of L_i vs ln i)
// in the logarithmic regime, otherwise beta_hat times the slope of L_i vs
// i^beta_hat. The logarithmic branch is taken for beta_hat < 0.05, since an
// exactly zero estimate never occurs under noise.
inline double estimate_alpha(const FeatureMatrix& f, double beta_hat) {
    if (!(beta_hat >= 0.0 && beta_hat <= 1.0))
        throw std::invalid_argument("estimate_alpha: beta_hat out of [0,1]");
    const std::size_t n = f.node_count();
    std::vector<double> x(n), y(n);
    const bool log_branch = beta_hat < 0.05;
    for (std::size_t i = 0; i < n; ++i) {
        const double step = static_cast<double>(i + 1);
        x[i] = log_branch ? std::log(step) : std::pow(step, beta_hat);
        y[i] = static_cast<double>(f.cum_counts[i]);
    }
    const double gamma_hat = detail::least_squares(x, y).slope;
    return log_branch ? gamma_hat : beta_hat * gamma_hat;
}

// Sufficient statistics for the delta likelihood: at step i, `adopted` of
// the `total` old features with prior adoption count m were taken. Grouping
// by (i, m) collapses the per-cell sum to one weighted term.
struct DeltaStats {
    struct Cell {
        std::uint32_t step;   // 1-based arrival step i
        std::uint32_t count;  // prior adopters m
        std::uint32_t adopted;
        std::uint32_t total;
    };
    std::vector<Cell> cells;

    double loglikelihood(double delta) const {
        double ll = 0.0;
        for (const auto& c : cells) {
            const double prob = delta * 0.5 +
                                (1.0 - delta) * static_cast<double>(c.count) / static_cast<double>(c.step);
            if (prob <= 0.0 || prob >= 1.0) {
                const bool contradiction = (prob <= 0.0 && c.adopted > 0) ||
                                           (prob >= 1.0 && c.adopted < c.total);
                if (contradiction) return -std::numeric_limits<double>::infinity();
                continue;
            }
            ll += c.adopted * std::log(prob) + (c.total - c.adopted) * std::log1p(-prob);
        }
        return ll;
    }
};

inline DeltaStats delta_stats(const FeatureMatrix& f) {
    const std::size_t n = f.node_count();
    DeltaStats stats;
    std::vector<std::uint32_t> adopters(f.total_features(), 0);
    std::vector<std::uint32_t> bucket_total, bucket_adopted;
    for (std::size_t i = 0; i < n; ++i) {
        const std::uint64_t old_count = f.features_before(i);
        if (i > 0 && old_count > 0) {
            bucket_total.assign(i + 1, 0);
            bucket_adopted.assign(i + 1, 0);
            auto it = f.rows[i].begin();
            const auto end = f.rows[i].end();
            for (std::uint64_t k = 0; k < old_count; ++k) {
                const std::uint32_t m = adopters[k];
                ++bucket_total[m];
                while (it != end && *it < k) ++it;
                if (it != end && *it == k) ++bucket_adopted[m];
            }
            for (std::uint32_t m = 1; m <= i; ++m) {
                if (bucket_total[m] > 0)
                    stats.cells.push_back({static_cast<std::uint32_t>(i + 1), m,
                                           bucket_adopted[m], bucket_total[m]});
            }
        }
        for (FeatureId k : f.rows[i]) ++adopters[k];
    }
    return stats;
}

// Full log-likelihood of the adoption indicators at the given delta.
inline double delta_loglikelihood(const FeatureMatrix& f, double delta) {
    if (!(delta >= 0.0 && delta <= 1.0))
        throw std::invalid_argument("delta_loglikelihood: delta out of [0,1]");
    return delta_stats(f).loglikelihood(delta);
}

// Maximizer of the (concave) delta log-likelihood over [0,1].
inline double estimate_delta(const FeatureMatrix& f) {
    const DeltaStats stats = delta_stats(f);
    if (stats.cells.empty())
        throw std::invalid_argument("estimate_delta: no old-feature observations");
    return detail::golden_max([&](double d) { return stats.loglikelihood(d); }, 0.0, 1.0, 1e-7);
}

// Solves Phi(theta) calibration: given K and the pair-similarity histogram,
// picks theta so the expected first-phase link count equals ell. The sum is
// strictly decreasing in theta, so plain bisection applies.
inline double calibrate_theta(const SimilarityHistogram& hist, double k_steep, double ell) {
    if (!(k_steep > 0.0)) throw std::invalid_argument("calibrate_theta: K must be > 0");
    const double total = static_cast<double>(hist.total_pairs());
    if (!(ell > 0.0 && ell < total))
        throw std::invalid_argument("calibrate_theta: ell outside (0, total pairs)");
    const double smax = static_cast<double>(hist.pair_count.size());
    double lo = -750.0 / k_steep;           // Phi ~ 1 everywhere: sum = total
    double hi = smax + 750.0 / k_steep;     // Phi ~ 0 everywhere: sum = 0
    auto expected = [&](double theta) {
        const SigmoidParams sp{k_steep, theta};
        double sum = 0.0;
        for (std::size_t s = 0; s < hist.pair_count.size(); ++s)
            if (hist.pair_count[s] > 0) sum += hist.pair_count[s] * phi(static_cast<double>(s), sp);
        return sum;
    };
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        (expected(mid) > ell ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

inline double calibrate_theta(const FeatureMatrix& f, double k_steep, double ell) {
    return calibrate_theta(similarity_histogram(f), k_steep, ell);
}

// Selection mechanism for (K, theta) -- not a proper estimator: fixes
// Phi(s*) = f* and matches the expected first-phase link count to ell.
// The first equation pins c = K(theta - s*) = ln(1/f* - 1); the second is
// root-found in K by bracket scan + bisection. Monotonicity of the link
// count in K is not assumed, so if several sign changes exist the
// smallest-K root is returned. Throws when no K in the bracket attains
// ell; with a noisy observed f* the realized ell can sit just outside the
// achievable range.
inline SigmoidParams fit_k_theta(const SimilarityHistogram& hist, double ell, double s_star,
                                 double f_star) {
    if (!(f_star > 0.0 && f_star < 1.0))
        throw std::invalid_argument("fit_k_theta: f_star must be strictly inside (0,1)");
    if (!(ell > 0.0)) throw std::invalid_argument("fit_k_theta: ell must be positive");
    const double c = std::log(1.0 / f_star - 1.0);

    auto residual = [&](double k) {
        double sum = 0.0;
        for (std::size_t s = 0; s < hist.pair_count.size(); ++s) {
            if (hist.pair_count[s] == 0) continue;
            const double x = std::clamp(c + k * (s_star - static_cast<double>(s)), -700.0, 700.0);
            sum += hist.pair_count[s] / (1.0 + std::exp(x));
        }
        return sum - ell;
    };

    constexpr double k_lo = 1e-4, k_hi = 1e3;
    constexpr int grid = 400;
    double prev_k = k_lo, prev_r = residual(k_lo);
    for (int t = 1; t <= grid; ++t) {
        const double k = k_lo * std::pow(k_hi / k_lo, static_cast<double>(t) / grid);
        const double r = residual(k);
        if (prev_r == 0.0 || (prev_r < 0.0) != (r < 0.0)) {
            double a = prev_k, b = k, ra = prev_r;
            for (int it = 0; it < 200; ++it) {
                const double mid = 0.5 * (a + b);
                const double rm = residual(mid);
                if ((rm < 0.0) == (ra < 0.0)) { a = mid; ra = rm; }
                else b = mid;
            }
            const double k_root = 0.5 * (a + b);
            if (std::abs(residual(k_root)) > 1e-6 * ell)
                throw std::runtime_error("fit_k_theta: root refinement did not converge");
            return SigmoidParams{k_root, s_star + c / k_root};
        }
        prev_k = k;
        prev_r = r;
    }
    throw std::runtime_error("fit_k_theta: ell not achievable for any K in [1e-4, 1e3]");
}

inline SigmoidParams fit_k_theta(const FeatureMatrix& f, double ell, double s_star, double f_star) {
    return fit_k_theta(similarity_histogram(f), ell, s_star, f_star);
}

// Observed f* at the chosen s*: the fraction of node pairs with exactly
// s* common features that are linked in A'.
inline double observed_f_star(const SimilarityHistogram& hist, std::uint32_t s_star) {
    if (s_star >= hist.pair_count.size() || hist.pair_count[s_star] == 0)
        throw std::invalid_argument("observed_f_star: no pairs with the requested similarity");
    return static_cast<double>(hist.linked_count[s_star]) /
           static_cast<double>(hist.pair_count[s_star]);
}

// Sufficient statistics for the p likelihood, recovered by replaying the
// arrival order: at each step the first-phase partners of i are known from
// the labels, so C_{i,j} is the count of i's first-phase neighbors adjacent
// to j in the pre-step graph.
struct TriadicStats {
    std::vector<std::uint64_t> linked_by_common;  // index c: second-phase links with C = c
    std::uint64_t unlinked_common_total = 0;      // sum of C over non-linked candidates
    std::uint64_t candidates = 0;                 // candidates with C > 0

    double loglikelihood(double p) const {
        if (p <= 0.0) {
            bool any_linked = false;
            for (auto c : linked_by_common) any_linked |= c > 0;
            return any_linked ? -std::numeric_limits<double>::infinity() : 0.0;
        }
        if (p >= 1.0)
            return unlinked_common_total > 0 ? -std::numeric_limits<double>::infinity() : 0.0;
        const double log_q = std::log1p(-p);
        double ll = static_cast<double>(unlinked_common_total) * log_q;
        for (std::size_t c = 1; c < linked_by_common.size(); ++c) {
            if (linked_by_common[c] > 0)
                ll += linked_by_common[c] * std::log(-std::expm1(c * log_q));
        }
        return ll;
    }
};

inline TriadicStats triadic_stats(const LabeledGraph& g) {
    if (!g.has_phase_labels())
        throw std::invalid_argument("triadic_stats: graph lacks first/second phase labels");
    TriadicStats stats;
    const auto adj = adjacency(g);  // sorted, so neighbors >= i can be cut off

    std::vector<std::vector<NodeId>> lstar(g.n), second(g.n);
    for (const auto& e : g.edges)
        (e.phase == EdgePhase::First ? lstar : second)[e.v].push_back(e.u);

    std::vector<std::uint32_t> shared(g.n, 0);
    std::vector<char> is_lstar(g.n, 0), is_second(g.n, 0);
    std::vector<NodeId> touched;
    for (NodeId i = 1; i < g.n; ++i) {
        if (lstar[i].empty() && second[i].empty()) continue;
        for (NodeId j : lstar[i]) is_lstar[j] = 1;
        for (NodeId j : second[i]) is_second[j] = 1;
        touched.clear();
        for (NodeId mid : lstar[i]) {
            for (NodeId j : adj[mid]) {
                if (j >= i) break;  // created at step i or later
                if (shared[j]++ == 0) touched.push_back(j);
            }
        }
        for (NodeId j : touched) {
            if (!is_lstar[j]) {
                const std::uint32_t c = shared[j];
                ++stats.candidates;
                if (is_second[j]) {
                    if (stats.linked_by_common.size() <= c) stats.linked_by_common.resize(c + 1, 0);
                    ++stats.linked_by_common[c];
                    is_second[j] = 0;
                } else {
                    stats.unlinked_common_total += c;
                }
            }
            shared[j] = 0;
        }
        for (NodeId j : second[i]) {
            if (is_second[j]) {  // a second-phase link requires a common neighbor
                throw std::invalid_argument("triadic_stats: second-phase edge with no common neighbor");
            }
        }
        for (NodeId j : lstar[i]) is_lstar[j] = 0;
    }
    return stats;
}

// ML estimate of the per-common-neighbor probability p from a phase-labeled
// graph.
inline double estimate_p(const LabeledGraph& g) {
    const TriadicStats stats = triadic_stats(g);
    if (stats.candidates == 0)
        throw std::invalid_argument("estimate_p: no candidate pair with common neighbors; p unidentifiable");
    std::uint64_t linked = 0;
    for (auto c : stats.linked_by_common) linked += c;
    if (linked == 0) return 0.0;
    if (stats.unlinked_common_total == 0) return 1.0;
    return detail::golden_max([&](double p) { return stats.loglikelihood(p); }, 0.0, 1.0, 1e-7);
}

// The feature matrix is taken for interface symmetry and a node-count
// consistency check; the likelihood depends on the graph alone.
inline double estimate_p(const FeatureMatrix& f, const LabeledGraph& g) {
    if (f.node_count() != g.n) throw std::invalid_argument("estimate_p: matrix/graph size mismatch");
    return estimate_p(g);
}

}  // namespace featnet
