#pragma once
// Deterministic random source. The engine is std::mt19937_64 (fully
// specified by the standard); all variate generation is done here rather
// than through std::*_distribution, whose output is implementation-defined.

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>

namespace featnet {

// Root seed plus a per-realization substream counter. Identical
// (seed, stream) pairs yield bit-identical draw sequences.
struct GenSeed {
    std::uint64_t seed = 0;
    std::uint64_t stream = 0;
};

namespace detail {
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}
}  // namespace detail

class Rng {
public:
    // salt separates independent draw streams within one (seed, stream) pair
    explicit Rng(GenSeed s, std::uint64_t salt = 0)
        : eng_(detail::splitmix64(s.seed) ^
               detail::splitmix64(detail::splitmix64(s.stream) + 0x632be59bd9b4e019ULL) ^
               (salt ? detail::splitmix64(salt + 0xd1b54a32d192ed03ULL) : 0)) {}

    // Uniform in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) {
        if (p <= 0.0) return false;
        if (p >= 1.0) return true;
        return uniform() < p;
    }

    // Poisson variate: sequential inversion for small means, PTRS
    // transformed rejection (Hormann) otherwise.
    std::uint64_t poisson(double lambda) {
        if (lambda < 0.0) throw std::invalid_argument("poisson: negative mean");
        if (lambda == 0.0) return 0;
        if (lambda < 10.0) return poisson_inversion(lambda);
        return poisson_ptrs(lambda);
    }

private:
    std::uint64_t poisson_inversion(double lambda) {
        const double l = std::exp(-lambda);
        std::uint64_t k = 0;
        double prod = uniform();
        while (prod > l) {
            prod *= uniform();
            ++k;
        }
        return k;
    }

    std::uint64_t poisson_ptrs(double lambda) {
        const double log_lambda = std::log(lambda);
        const double b = 0.931 + 2.53 * std::sqrt(lambda);
        const double a = -0.059 + 0.02483 * b;
        const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
        const double v_r = 0.9277 - 3.6224 / (b - 2.0);
        for (;;) {
            const double u = uniform() - 0.5;
            const double v = uniform();
            const double us = 0.5 - std::abs(u);
            const double kf = std::floor((2.0 * a / us + b) * u + lambda + 0.43);
            if (us >= 0.07 && v <= v_r) return static_cast<std::uint64_t>(kf);
            if (kf < 0.0 || (us < 0.013 && v > us)) continue;
            if (std::log(v) + std::log(inv_alpha) - std::log(a / (us * us) + b) <=
                kf * log_lambda - lambda - std::lgamma(kf + 1.0)) {
                return static_cast<std::uint64_t>(kf);
            }
        }
    }

    std::mt19937_64 eng_;
};

}  // namespace featnet
