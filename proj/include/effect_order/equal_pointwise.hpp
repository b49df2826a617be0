#pragma once

#include <concepts>
#include <cstdint>
#include <utility>

#include "effect_order/automorphisms.hpp"
#include "effect_order/sampling.hpp"

namespace effect_order {

template <typename F>
concept EffectMap = std::invocable<const F&, const Effect&> &&
                    std::convertible_to<std::invoke_result_t<const F&, const Effect&>, Effect>;

struct PointwiseComparison {
    bool equal = true;
    double max_deviation = 0.0;
    std::uint64_t worst_trial = 0;
    int trials = 0;
};

/// Compares two maps on `trials` random effects of dimension `dim`.
///
/// Samples are interior effects (eigenvalues in [0.05, 0.95]); every eighth
/// sample is a rank-one-deficient boundary effect when dim >= 2.
template <EffectMap F1, EffectMap F2>
PointwiseComparison equal_pointwise(Index dim, const F1& phi1, const F2& phi2, int trials, std::uint64_t seed,
                                    double tol) {
    SamplerConfig cfg;
    cfg.seed = seed;
    cfg.dim = dim;
    PointwiseComparison out;
    out.trials = trials;
    for (int t = 0; t < trials; ++t) {
        const auto trial = static_cast<std::uint64_t>(t);
        const Effect a = (dim >= 2 && t % 8 == 7) ? random_boundary_effect(cfg, stream_key(7, trial, 0), 1)
                                                  : random_effect(cfg, stream_key(7, trial, 0));
        const double dev = frobenius_distance(Effect(phi1(a)).matrix(), Effect(phi2(a)).matrix());
        if (dev > out.max_deviation) {
            out.max_deviation = dev;
            out.worst_trial = trial;
        }
    }
    out.equal = out.max_deviation <= tol;
    return out;
}

inline PointwiseComparison equal_pointwise(const Automorphism& phi1, const Automorphism& phi2, int trials,
                                           std::uint64_t seed, double tol) {
    if (dim(phi1) != dim(phi2)) {
        throw DimensionError("equal_pointwise: automorphisms act on different dimensions");
    }
    return equal_pointwise(
        dim(phi1), [&](const Effect& a) { return apply(phi1, a); }, [&](const Effect& a) { return apply(phi2, a); },
        trials, seed, tol);
}

}  // namespace effect_order
