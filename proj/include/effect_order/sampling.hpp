#pragma once

// Seeded random effects, ordered pairs, boundary effects and invertible
// (anti)linear operators.
//
// Every generator is a pure function of (config, stream index): the engine is
// rebuilt from both on each call, so streams can be drawn in any order or in
// parallel with identical results.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <string>

#include "effect_order/automorphisms.hpp"
#include "effect_order/errors.hpp"
#include "effect_order/hermitian.hpp"
#include "effect_order/interval_maps.hpp"
#include "effect_order/operators.hpp"

namespace effect_order {

struct SamplerConfig {
    std::uint64_t seed = 0;
    Index dim = 2;
    double cond_max = 10.0;
    double interior_margin = 0.05;
    double kind_mix = 0.0;  // probability of an antilinear operator: 0, 1/2 or 1

    void validate() const {
        if (dim < 1) throw DomainError("sampler: dim must be >= 1");
        if (!(cond_max >= 1.0) || !std::isfinite(cond_max)) throw DomainError("sampler: cond_max must be >= 1");
        if (!(interior_margin >= 0.0 && interior_margin < 0.5)) {
            throw DomainError("sampler: interior_margin must lie in [0, 1/2)");
        }
        if (kind_mix != 0.0 && kind_mix != 0.5 && kind_mix != 1.0) {
            throw DomainError("sampler: kind_mix must be 0, 0.5 or 1");
        }
    }

    [[nodiscard]] SamplerConfig with_dim(Index n) const {
        SamplerConfig c = *this;
        c.dim = n;
        return c;
    }
};

using Engine = std::mt19937_64;

/// Engine keyed by (seed, stream index).
inline Engine stream_engine(std::uint64_t seed, std::uint64_t stream_index) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream_index), static_cast<std::uint32_t>(stream_index >> 32)};
    return Engine(seq);
}

/// Stream index for slot `slot` (< 256) of trial `trial` within group `group`.
constexpr std::uint64_t stream_key(std::uint64_t group, std::uint64_t trial, std::uint64_t slot) {
    return (group << 48) ^ (trial << 8) ^ slot;
}

namespace sample {

inline double uniform(Engine& eng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(eng); }

inline ComplexMatrix gaussian(Engine& eng, Index rows, Index cols) {
    std::normal_distribution<double> normal;
    ComplexMatrix g(rows, cols);
    for (Index j = 0; j < cols; ++j) {
        for (Index i = 0; i < rows; ++i) {
            const double re = normal(eng);
            const double im = normal(eng);
            g(i, j) = Complex(re, im);
        }
    }
    return g;
}

inline ComplexVector vector(Engine& eng, Index n) { return gaussian(eng, n, 1).col(0); }

/// Haar-distributed unitary (QR of a complex Ginibre matrix with phase fix).
inline ComplexMatrix unitary(Engine& eng, Index n) {
    const ComplexMatrix g = gaussian(eng, n, n);
    Eigen::HouseholderQR<ComplexMatrix> qr(g);
    ComplexMatrix q = qr.householderQ();
    const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Index j = 0; j < n; ++j) {
        const double mag = std::abs(r(j, j));
        if (mag > 0.0) q.col(j) *= r(j, j) / mag;
    }
    return q;
}

inline HermitianMatrix with_spectrum(Engine& eng, const RealVector& spectrum) {
    const ComplexMatrix u = unitary(eng, spectrum.size());
    return HermitianMatrix(u * spectrum.asDiagonal() * u.adjoint());
}

/// U diag(sigma) V^H, sigma log-uniform on [cond_max^{-1/2}, cond_max^{1/2}].
inline BoundedOperator invertible_operator(Engine& eng, const SamplerConfig& cfg) {
    const double half_log = 0.5 * std::log(cfg.cond_max);
    RealVector sigma(cfg.dim);
    for (Index i = 0; i < cfg.dim; ++i) {
        sigma(i) = half_log == 0.0 ? 1.0 : std::exp(uniform(eng, -half_log, half_log));
    }
    const ComplexMatrix u = unitary(eng, cfg.dim);
    const ComplexMatrix v = unitary(eng, cfg.dim);
    const bool anti = std::bernoulli_distribution(cfg.kind_mix)(eng);
    return {anti ? Kind::Antilinear : Kind::Linear, u * sigma.asDiagonal() * v.adjoint()};
}

/// p = -exp(u), u uniform on [log 0.1, log 10].
inline MoebiusParam negative_p(Engine& eng) {
    return MoebiusParam(-std::exp(uniform(eng, std::log(0.1), std::log(10.0))));
}

}  // namespace sample

/// Effect with eigenvalues uniform on [margin, 1 - margin], randomly rotated.
inline Effect random_effect(const SamplerConfig& cfg, std::uint64_t stream_index) {
    cfg.validate();
    Engine eng = stream_engine(cfg.seed, stream_index);
    RealVector spectrum(cfg.dim);
    for (Index i = 0; i < cfg.dim; ++i) {
        spectrum(i) = sample::uniform(eng, cfg.interior_margin, 1.0 - cfg.interior_margin);
    }
    return Effect(sample::with_spectrum(eng, spectrum));
}

struct OrderedPair {
    Effect lower;
    Effect upper;
};

/// A <= B, with B = A + s P for a random PSD P and s keeping B <= (1 - margin) I.
inline OrderedPair random_ordered_pair(const SamplerConfig& cfg, std::uint64_t stream_index) {
    cfg.validate();
    Engine eng = stream_engine(cfg.seed, stream_index);
    RealVector spectrum(cfg.dim);
    for (Index i = 0; i < cfg.dim; ++i) {
        spectrum(i) = sample::uniform(eng, cfg.interior_margin, 1.0 - cfg.interior_margin);
    }
    const HermitianMatrix a = sample::with_spectrum(eng, spectrum);

    const ComplexMatrix g = sample::gaussian(eng, cfg.dim, cfg.dim);
    HermitianMatrix psd(g * g.adjoint());
    const double top = max_eigenvalue(psd);
    psd = (1.0 / top) * psd;

    const double headroom = std::max(0.0, 1.0 - cfg.interior_margin - spectrum.maxCoeff());
    const double s = headroom * sample::uniform(eng, 0.0, 1.0);
    return {Effect(a), Effect(a + s * psd)};
}

/// Effect with exactly `rank_deficiency` zero eigenvalues; the rest lie in [margin, 1 - margin].
inline Effect random_boundary_effect(const SamplerConfig& cfg, std::uint64_t stream_index, Index rank_deficiency) {
    cfg.validate();
    if (rank_deficiency < 1 || rank_deficiency >= cfg.dim) {
        throw DomainError("random_boundary_effect: rank_deficiency must lie in [1, dim), got " +
                          std::to_string(rank_deficiency));
    }
    Engine eng = stream_engine(cfg.seed, stream_index);
    RealVector spectrum = RealVector::Zero(cfg.dim);
    for (Index i = rank_deficiency; i < cfg.dim; ++i) {
        spectrum(i) = sample::uniform(eng, cfg.interior_margin, 1.0 - cfg.interior_margin);
    }
    return Effect(sample::with_spectrum(eng, spectrum));
}

/// U diag(sigma) V^H with sigma log-uniform on [cond_max^{-1/2}, cond_max^{1/2}];
/// antilinear with probability kind_mix.
inline BoundedOperator random_invertible_operator(const SamplerConfig& cfg, std::uint64_t stream_index) {
    cfg.validate();
    Engine eng = stream_engine(cfg.seed, stream_index);
    return sample::invertible_operator(eng, cfg);
}

/// Random Hermitian matrix with Gaussian entries.
inline HermitianMatrix random_hermitian(const SamplerConfig& cfg, std::uint64_t stream_index) {
    cfg.validate();
    Engine eng = stream_engine(cfg.seed, stream_index);
    return HermitianMatrix(sample::gaussian(eng, cfg.dim, cfg.dim));
}

inline ComplexVector random_vector(const SamplerConfig& cfg, std::uint64_t stream_index) {
    cfg.validate();
    Engine eng = stream_engine(cfg.seed, stream_index);
    return sample::vector(eng, cfg.dim);
}

inline Complex random_unit_complex(const SamplerConfig& cfg, std::uint64_t stream_index) {
    Engine eng = stream_engine(cfg.seed, stream_index);
    return std::polar(1.0, sample::uniform(eng, -std::numbers::pi, std::numbers::pi));
}

inline MoebiusParam random_negative_p(const SamplerConfig& cfg, std::uint64_t stream_index) {
    Engine eng = stream_engine(cfg.seed, stream_index);
    return sample::negative_p(eng);
}

/// Random p < 0 and invertible T drawn from one stream.
inline CanonicalParams random_canonical(const SamplerConfig& cfg, std::uint64_t stream_index) {
    cfg.validate();
    Engine eng = stream_engine(cfg.seed, stream_index);
    const MoebiusParam p = sample::negative_p(eng);
    return CanonicalParams(p, sample::invertible_operator(eng, cfg));
}

}  // namespace effect_order
