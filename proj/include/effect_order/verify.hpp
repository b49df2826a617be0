#pragma once

// Named property suites over the library, each producing a machine-readable
// VerificationReport.
//
// A suite is a list of checks. Every evaluation of a check yields an error
// value that fails when it exceeds the check's tolerance; the report's
// max_violation is the largest error / tolerance ratio, so a suite passes
// exactly when max_violation <= 1. Sign tests of biconditionals whose margin
// is too small to decide are counted as indeterminate and never fail.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <iomanip>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "effect_order/automorphisms.hpp"
#include "effect_order/equal_pointwise.hpp"
#include "effect_order/hermitian.hpp"
#include "effect_order/interval_maps.hpp"
#include "effect_order/json_io.hpp"
#include "effect_order/moebius.hpp"
#include "effect_order/operators.hpp"
#include "effect_order/sampling.hpp"

namespace effect_order::verify {

using Json = nlohmann::json;

struct DimRange {
    Index lo;
    Index hi;
};

struct VerifyConfig {
    std::uint64_t seed = 0;
    std::optional<DimRange> dims;  // per-suite default when empty
    std::optional<int> trials;     // per-cell trial count; per-suite default when empty
    std::optional<double> tol;     // replaces every numeric tolerance when set
    double cond_max = 10.0;

    void validate() const {
        if (dims && (dims->lo < 1 || dims->hi < dims->lo)) throw DomainError("verify: invalid dimension range");
        if (trials && *trials < 1) throw DomainError("verify: trials must be >= 1");
        if (tol && !(*tol > 0.0)) throw DomainError("verify: tol must be positive");
        if (!(cond_max >= 1.0)) throw DomainError("verify: cond_max must be >= 1");
    }
};

inline Json to_json(const VerifyConfig& cfg) {
    Json j{{"seed", cfg.seed}, {"cond_max", cfg.cond_max}};
    j["dim_range"] = cfg.dims ? Json::array({cfg.dims->lo, cfg.dims->hi}) : Json(nullptr);
    j["trials"] = cfg.trials ? Json(*cfg.trials) : Json(nullptr);
    j["tol"] = cfg.tol ? Json(*cfg.tol) : Json(nullptr);
    return j;
}

struct CheckStats {
    std::string name;
    double tolerance = 0.0;
    long long trials = 0;
    long long failures = 0;
    long long indeterminate = 0;
    long long rejected = 0;
    double max_error = 0.0;
};

struct VerificationReport {
    std::string suite;
    std::string statement;
    long long trials = 0;
    long long failures = 0;
    long long indeterminate = 0;
    long long rejected = 0;
    double max_violation = 0.0;  // max error / tolerance over all checks
    double tolerance = 1.0;      // the suite passes iff max_violation <= tolerance
    std::vector<CheckStats> checks;
    Json worst_witness;
    Json config;
    double wall_time_s = 0.0;

    [[nodiscard]] bool passed() const { return failures == 0; }

    [[nodiscard]] const CheckStats* find_check(const std::string& name) const {
        for (const auto& c : checks) {
            if (c.name == name) return &c;
        }
        return nullptr;
    }
};

inline Json to_json(const CheckStats& c) {
    return Json{{"name", c.name},           {"tolerance", c.tolerance}, {"trials", c.trials},
                {"failures", c.failures},   {"indeterminate", c.indeterminate},
                {"rejected", c.rejected},   {"max_error", c.max_error}};
}

inline Json to_json(const VerificationReport& r) {
    Json checks = Json::array();
    for (const auto& c : r.checks) checks.push_back(to_json(c));
    return Json{{"suite", r.suite},
                {"statement", r.statement},
                {"passed", r.passed()},
                {"trials", r.trials},
                {"failures", r.failures},
                {"indeterminate", r.indeterminate},
                {"rejected", r.rejected},
                {"max_violation", r.max_violation},
                {"tolerance", r.tolerance},
                {"checks", std::move(checks)},
                {"worst_witness", r.worst_witness},
                {"config", r.config},
                {"wall_time_s", r.wall_time_s}};
}

/// Accumulates check results for one suite.
class ReportBuilder {
public:
    ReportBuilder(std::string suite, std::string statement, const VerifyConfig& cfg)
        : cfg_(cfg), start_(std::chrono::steady_clock::now()) {
        report_.suite = std::move(suite);
        report_.statement = std::move(statement);
        report_.config = to_json(cfg);
        report_.worst_witness = nullptr;
    }

    /// Declares a numeric check; --tol overrides its tolerance.
    void numeric(const std::string& name, double tolerance) { declare(name, cfg_.tol.value_or(tolerance)); }

    /// Declares a pass/fail check (error 0 or 1, tolerance 1/2, not overridable).
    void exact(const std::string& name) { declare(name, 0.5); }

    /// Records one evaluation. `witness` is only invoked when this evaluation
    /// becomes the worst one seen so far.
    void record(const std::string& name, double error, const std::function<Json()>& witness) {
        CheckStats& c = get(name);
        ++c.trials;
        if (std::isnan(error)) error = std::numeric_limits<double>::infinity();
        c.max_error = std::max(c.max_error, error);
        if (error > c.tolerance) ++c.failures;
        const double ratio = error / c.tolerance;
        if (ratio > worst_ratio_ || report_.worst_witness.is_null()) {
            worst_ratio_ = ratio;
            Json w = witness();
            w["check"] = name;
            w["error"] = std::isfinite(error) ? Json(error) : Json("inf");
            w["tolerance"] = c.tolerance;
            w["seed"] = cfg_.seed;
            report_.worst_witness = std::move(w);
        }
    }

    void record_exact(const std::string& name, bool ok, const std::function<Json()>& witness) {
        record(name, ok ? 0.0 : 1.0, witness);
    }

    void indeterminate(const std::string& name) {
        CheckStats& c = get(name);
        ++c.trials;
        ++c.indeterminate;
    }

    void rejected(const std::string& name) { ++get(name).rejected; }

    VerificationReport finish() {
        for (const auto& c : report_.checks) {
            report_.trials += c.trials;
            report_.failures += c.failures;
            report_.indeterminate += c.indeterminate;
            report_.rejected += c.rejected;
            report_.max_violation = std::max(report_.max_violation, c.max_error / c.tolerance);
        }
        report_.wall_time_s =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
        return std::move(report_);
    }

private:
    void declare(const std::string& name, double tolerance) {
        CheckStats c;
        c.name = name;
        c.tolerance = tolerance;
        report_.checks.push_back(std::move(c));
    }

    CheckStats& get(const std::string& name) {
        for (auto& c : report_.checks) {
            if (c.name == name) return c;
        }
        throw Error("verify: undeclared check " + name);
    }

    const VerifyConfig& cfg_;
    VerificationReport report_;
    double worst_ratio_ = -1.0;
    std::chrono::steady_clock::time_point start_;
};

namespace detail {

inline DimRange dims_or(const VerifyConfig& cfg, Index lo, Index hi) { return cfg.dims.value_or(DimRange{lo, hi}); }

inline int trials_or(const VerifyConfig& cfg, int fallback) { return cfg.trials.value_or(fallback); }

inline SamplerConfig sampler(const VerifyConfig& cfg, Index dim, double kind_mix, double margin = 0.05) {
    SamplerConfig s;
    s.seed = cfg.seed;
    s.dim = dim;
    s.cond_max = cfg.cond_max;
    s.interior_margin = margin;
    s.kind_mix = kind_mix;
    return s;
}

/// max(0, -min eig(B - A)): how far A <= B is violated.
inline double order_violation(const HermitianMatrix& a, const HermitianMatrix& b) {
    return std::max(0.0, -min_eigenvalue(b - a));
}

inline Json canonical_json(const CanonicalParams& c) { return io::to_json(Automorphism(c)); }

// Suite-specific stream groups.
enum Group : std::uint64_t {
    kMoebius = 20,
    kMonotone = 21,
    kOrder = 22,
    kEquivalence = 23,
    kBoundary = 24,
    kPhase = 25,
    kAntilinear = 26,
};

inline std::uint64_t cell_trial(Index dim, std::uint64_t block, std::uint64_t trial) {
    return (static_cast<std::uint64_t>(dim) << 32) ^ (block << 20) ^ trial;
}

}  // namespace detail

/// f_p o f_q = f_{p+q-pq}, the inverse law and the isomorphism with (0, inf).
inline VerificationReport suite_moebius_group(const VerifyConfig& cfg) {
    cfg.validate();
    ReportBuilder rb("moebius-group",
                     "f_p o f_q = f_{p+q-pq}; f_p^{-1} = f_{p/(p-1)}; a -> f_{1-a} is a group isomorphism",
                     cfg);
    rb.numeric("pointwise-composition", 1e-12);
    rb.numeric("associativity", 1e-14);
    rb.numeric("inverse-law", 1e-14);
    rb.numeric("isomorphism", 1e-14);
    rb.numeric("fixed-endpoints", 1e-15);
    rb.exact("increasing-on-unit-interval");

    // Parameters at or beyond the admissible limit are rejected by construction.
    for (double bad : {1.0 - 1e-13, 1.0, 1.5}) {
        try {
            (void)MoebiusParam(bad);
            rb.record_exact("pointwise-composition", false, [&] { return Json{{"p", bad}}; });
        } catch (const DomainError&) {
            rb.rejected("pointwise-composition");
        }
    }

    const int trials = detail::trials_or(cfg, 10000);
    for (int t = 0; t < trials; ++t) {
        const std::uint64_t stream = stream_key(detail::kMoebius, static_cast<std::uint64_t>(t), 0);
        Engine eng = stream_engine(cfg.seed, stream);
        const double pv = sample::uniform(eng, -10.0, 1.0);
        const double qv = sample::uniform(eng, -10.0, 1.0);
        const double rv = sample::uniform(eng, -10.0, 1.0);
        auto witness = [&] { return Json{{"stream_index", stream}, {"p", pv}, {"q", qv}, {"r", rv}}; };
        try {
            const MoebiusParam p(pv);
            const MoebiusParam q(qv);
            const MoebiusParam r(rv);
            const MoebiusParam pq = compose(p, q);

            double worst = 0.0;
            double prev = -1.0;
            bool increasing = true;
            for (int i = 0; i <= 100; ++i) {
                const double x = i / 100.0;
                const double lhs = eval(p, eval(q, x));
                worst = std::max(worst, std::abs(lhs - eval(pq, x)));
                const double y = eval(p, x);
                increasing = increasing && y > prev;
                prev = y;
            }
            rb.record("pointwise-composition", worst, witness);
            rb.record_exact("increasing-on-unit-interval", increasing, witness);
            rb.record("fixed-endpoints", std::max(std::abs(eval(p, 0.0)), std::abs(eval(p, 1.0) - 1.0)), witness);

            const double left = compose(compose(p, q), r).value();
            const double right = compose(p, compose(q, r)).value();
            const double assoc_scale = (1.0 + std::abs(pv)) * (1.0 + std::abs(qv)) * (1.0 + std::abs(rv));
            rb.record("associativity", std::abs(left - right) / assoc_scale, witness);

            const MoebiusParam pinv = inverse(p);
            const double scale = 1.0 + std::abs(pv) + std::abs(pinv.value()) + std::abs(pv * pinv.value());
            rb.record("inverse-law", std::abs(compose(p, pinv).value()) / scale, witness);

            const double a = 1.0 - pv;
            const double b = 1.0 - qv;
            const double iso = std::abs(from_positive_real(a * b).value() -
                                        compose(from_positive_real(a), from_positive_real(b)).value());
            rb.record("isomorphism", iso / (1.0 + a * b), witness);
        } catch (const DomainError&) {
            rb.rejected("pointwise-composition");
        }
    }
    return rb.finish();
}

/// Operator monotonicity of f_p plus agreement of the spectral and resolvent routes.
inline VerificationReport suite_operator_monotone(const VerifyConfig& cfg) {
    cfg.validate();
    ReportBuilder rb("operator-monotone",
                     "A <= B implies f_p(A) <= f_p(B) for p in [0,1) on [0,inf) and p < 0 on [0, 1-1/p)", cfg);
    rb.numeric("monotone", 1e-8);
    rb.numeric("dual-route", 1e-9);
    rb.numeric("identity-p0", 1e-12);

    const DimRange dims = detail::dims_or(cfg, 2, 6);
    const int trials = detail::trials_or(cfg, 200);
    const double ps[] = {-2.0, -0.5, 0.3, 0.7};
    constexpr double kMargin = 0.05;

    for (Index n = dims.lo; n <= dims.hi; ++n) {
        const SamplerConfig scfg = detail::sampler(cfg, n, 0.0, 0.0);
        for (std::size_t pi = 0; pi < std::size(ps); ++pi) {
            const MoebiusParam p(ps[pi]);
            const double lo = kMargin;
            const double hi = p.value() < 0.0 ? std::min(p.admissible_end(kMargin), p.domain_end() - kMargin) : 5.0;
            for (int t = 0; t < trials; ++t) {
                const std::uint64_t stream =
                    stream_key(detail::kMonotone, detail::cell_trial(n, pi, static_cast<std::uint64_t>(t)), 0);
                const OrderedPair pair = random_ordered_pair(scfg, stream);
                const HermitianMatrix id = HermitianMatrix::identity(n);
                const HermitianMatrix a = lo * id + (hi - lo) * pair.lower.matrix();
                const HermitianMatrix b = lo * id + (hi - lo) * pair.upper.matrix();
                auto witness = [&] {
                    return Json{{"stream_index", stream}, {"dim", n}, {"p", p.value()},
                                {"A", io::to_json(a)},    {"B", io::to_json(b)}};
                };
                const HermitianMatrix fa = eval_matrix_spectral(p, a);
                const HermitianMatrix fb = eval_matrix_spectral(p, b);
                rb.record("monotone", detail::order_violation(fa, fb), witness);
                const double dev_a = frobenius_distance(fa, eval_matrix_resolvent(p, a)) / (1.0 + frobenius_norm(a));
                const double dev_b = frobenius_distance(fb, eval_matrix_resolvent(p, b)) / (1.0 + frobenius_norm(b));
                rb.record("dual-route", std::max(dev_a, dev_b), witness);
            }
        }
        for (int t = 0; t < std::max(1, trials / 10); ++t) {
            const std::uint64_t stream =
                stream_key(detail::kMonotone, detail::cell_trial(n, 99, static_cast<std::uint64_t>(t)), 0);
            const Effect a = random_effect(scfg, stream);
            rb.record("identity-p0", frobenius_distance(eval_matrix_spectral(MoebiusParam(0.0), a.matrix()), a.matrix()),
                      [&] { return Json{{"stream_index", stream}, {"dim", n}, {"A", io::to_json(a)}}; });
        }
    }
    return rb.finish();
}

/// Order preservation in both directions by canonical automorphisms of [0, I].
inline VerificationReport suite_automorphism_order(const VerifyConfig& cfg) {
    cfg.validate();
    ReportBuilder rb("automorphism-order",
                     "phi_{p,T} is an order automorphism of [0,I]: A <= B iff phi(A) <= phi(B); "
                     "phi maps (0,I] onto (0,I]",
                     cfg);
    rb.numeric("forward-order", 1e-8);
    rb.numeric("inverse-order", 1e-8);
    rb.numeric("inverse-roundtrip", 1e-8);
    rb.numeric("extrema", 1e-10);
    rb.exact("invertible-to-invertible");
    rb.numeric("boundary-to-boundary", 1e-9);
    rb.exact("non-ordered-stays-non-ordered");

    const DimRange dims = detail::dims_or(cfg, 2, 6);
    const int pairs = detail::trials_or(cfg, 200);
    constexpr int kAutomorphisms = 5;
    constexpr double kSignMargin = 1e-6;

    for (Index n = dims.lo; n <= dims.hi; ++n) {
        const SamplerConfig scfg = detail::sampler(cfg, n, 0.5);
        const HermitianMatrix id = HermitianMatrix::identity(n);
        for (int k = 0; k < kAutomorphisms; ++k) {
            const std::uint64_t phi_stream =
                stream_key(detail::kOrder, detail::cell_trial(n, static_cast<std::uint64_t>(k), 0), 255);
            const CanonicalParams c = random_canonical(scfg, phi_stream);
            auto phi_witness = [&] {
                return Json{{"stream_index", phi_stream}, {"dim", n}, {"automorphism", detail::canonical_json(c)}};
            };

            const double extrema =
                std::max(frobenius_norm(apply_canonical(c, Effect::zero(n)).matrix()),
                         frobenius_distance(apply_canonical(c, Effect::identity(n)).matrix(), id));
            rb.record("extrema", extrema, phi_witness);

            for (int t = 0; t < pairs; ++t) {
                const auto trial = detail::cell_trial(n, static_cast<std::uint64_t>(k), static_cast<std::uint64_t>(t) + 1);
                const std::uint64_t stream = stream_key(detail::kOrder, trial, 0);
                const OrderedPair pair = random_ordered_pair(scfg, stream);
                auto witness = [&] {
                    Json w = phi_witness();
                    w["stream_index"] = stream;
                    w["A"] = io::to_json(pair.lower);
                    w["B"] = io::to_json(pair.upper);
                    return w;
                };

                const Effect fa = apply_canonical(c, pair.lower);
                const Effect fb = apply_canonical(c, pair.upper);
                rb.record("forward-order", detail::order_violation(fa.matrix(), fb.matrix()), witness);

                const Effect ga = invert_apply(c, pair.lower);
                const Effect gb = invert_apply(c, pair.upper);
                rb.record("inverse-order", detail::order_violation(ga.matrix(), gb.matrix()), witness);
                rb.record("inverse-roundtrip",
                          frobenius_distance(apply_canonical(c, ga).matrix(), pair.lower.matrix()), witness);

                rb.record_exact("invertible-to-invertible", fa.is_invertible(tol::spectral), witness);

                const std::uint64_t bstream = stream_key(detail::kOrder, trial, 1);
                const Effect boundary = random_boundary_effect(scfg, bstream, 1);
                rb.record("boundary-to-boundary", std::abs(min_eigenvalue(apply_canonical(c, boundary).matrix())),
                          [&] {
                              Json w = phi_witness();
                              w["stream_index"] = bstream;
                              w["A"] = io::to_json(boundary);
                              return w;
                          });

                // Reverse direction: an incomparable pair must stay incomparable.
                bool decided = false;
                for (std::uint64_t attempt = 0; attempt < 8 && !decided; ++attempt) {
                    const std::uint64_t s1 = stream_key(detail::kOrder, trial, 2 + 2 * attempt);
                    const std::uint64_t s2 = stream_key(detail::kOrder, trial, 3 + 2 * attempt);
                    const Effect x = random_effect(scfg, s1);
                    const Effect y = random_effect(scfg, s2);
                    const RealVector w_in = eigenvalues(y.matrix() - x.matrix());
                    if (w_in(0) > -kSignMargin || w_in(n - 1) < kSignMargin) continue;  // resample
                    decided = true;
                    const RealVector w_out =
                        eigenvalues(apply_canonical(c, y).matrix() - apply_canonical(c, x).matrix());
                    const bool neg = w_out(0) <= -kSignMargin;
                    const bool pos = w_out(n - 1) >= kSignMargin;
                    const bool clearly_definite = w_out(0) >= kSignMargin || w_out(n - 1) <= -kSignMargin;
                    if (neg && pos) {
                        rb.record_exact("non-ordered-stays-non-ordered", true, witness);
                    } else if (clearly_definite) {
                        rb.record_exact("non-ordered-stays-non-ordered", false, [&] {
                            Json w = phi_witness();
                            w["stream_index"] = s1;
                            w["A"] = io::to_json(x);
                            w["B"] = io::to_json(y);
                            return w;
                        });
                    } else {
                        rb.indeterminate("non-ordered-stays-non-ordered");
                    }
                }
                if (!decided) rb.rejected("non-ordered-stays-non-ordered");
            }
        }
    }
    return rb.finish();
}

/// Canonical, alternative and congruence parameterizations define the same map.
inline VerificationReport suite_representation_equivalence(const VerifyConfig& cfg) {
    cfg.validate();
    ReportBuilder rb("representation-equivalence",
                     "phi_{p,T} = f_p(f_r(SS*)^{-1/2} f_r(SAS*) f_r(SS*)^{-1/2}) = (I + S(A^{-1}-I)S*)^{-1}; "
                     "the construction is independent of lambda",
                     cfg);
    rb.numeric("canonical-alt", 1e-8);
    rb.numeric("canonical-congruence", 1e-8);
    rb.numeric("alt-congruence", 1e-8);
    rb.numeric("f-half-factorization", 1e-9);
    rb.numeric("lambda-independence", 1e-8);
    rb.numeric("congruence-roundtrip", 1e-9);
    rb.exact("alt-r-half-branch");

    const DimRange dims = detail::dims_or(cfg, 2, 8);
    const int trials = detail::trials_or(cfg, 100);
    for (Index n = dims.lo; n <= dims.hi; ++n) {
        const SamplerConfig scfg = detail::sampler(cfg, n, 0.5);
        for (int t = 0; t < trials; ++t) {
            const auto trial = detail::cell_trial(n, 0, static_cast<std::uint64_t>(t));
            const std::uint64_t phi_stream = stream_key(detail::kEquivalence, trial, 0);
            const std::uint64_t a_stream = stream_key(detail::kEquivalence, trial, 1);
            const CanonicalParams c = random_canonical(scfg, phi_stream);
            const Effect a = random_effect(scfg, a_stream);
            auto witness = [&] {
                return Json{{"stream_index", phi_stream},
                            {"effect_stream_index", a_stream},
                            {"dim", n},
                            {"automorphism", detail::canonical_json(c)},
                            {"A", io::to_json(a)}};
            };

            const Effect canon = apply_canonical(c, a);
            const Effect alt = apply_alt(to_alt(c), a);
            const CongruenceParams g = to_congruence(c);
            const Effect cong = apply_congruence_form(g, a);
            rb.record("canonical-alt", frobenius_distance(canon.matrix(), alt.matrix()), witness);
            rb.record("canonical-congruence", frobenius_distance(canon.matrix(), cong.matrix()), witness);
            rb.record("alt-congruence", frobenius_distance(alt.matrix(), cong.matrix()), witness);
            rb.record("f-half-factorization",
                      frobenius_distance(canon.matrix(), apply_canonical_factored(c, a).matrix()), witness);

            // Independent congruence operator S for the lambda checks.
            const std::uint64_t s_stream = stream_key(detail::kEquivalence, trial, 2);
            const CongruenceParams gs(random_invertible_operator(scfg, s_stream));
            auto s_witness = [&] {
                Json w = witness();
                w["stream_index"] = s_stream;
                w["automorphism"] = io::to_json(Automorphism(gs));
                return w;
            };
            const double s2 = std::pow(operator_norm(gs.op()), 2);
            const Effect via_auto = apply_canonical(from_congruence(gs), a);
            double lam_dev = 0.0;
            for (double lam : {s2 + 2.0, s2 + 10.0}) {
                lam_dev = std::max(lam_dev, frobenius_distance(via_auto.matrix(),
                                                               apply_canonical(from_congruence(gs, lam), a).matrix()));
            }
            lam_dev = std::max(lam_dev, frobenius_distance(via_auto.matrix(), apply_congruence_form(gs, a).matrix()));
            rb.record("lambda-independence", lam_dev, s_witness);
            rb.record("congruence-roundtrip",
                      (to_congruence(from_congruence(gs)).op().matrix() - gs.op().matrix()).norm(), s_witness);

            // ||T|| <= 1 selects r = 1/2 and S = T.
            const BoundedOperator small = c.op().scaled(0.5 / operator_norm(c.op()));
            const AltParams half = to_alt(CanonicalParams(c.p(), small));
            rb.record_exact("alt-r-half-branch", half.r() == 0.5 && half.op().matrix() == small.matrix(), witness);
        }
    }
    return rb.finish();
}

/// phi(A_n) -> phi(A) along A_n = (1 - 1/n) A + (1/n) I for singular A.
inline VerificationReport suite_boundary_extension(const VerifyConfig& cfg) {
    cfg.validate();
    ReportBuilder rb("boundary-extension",
                     "the congruence form on (0,I] extends uniquely to [0,I] along A_n = (1-1/n)A + (1/n)I", cfg);
    rb.numeric("gap-non-increasing", 1e-12);
    rb.numeric("gap-at-k14", 1e-6);
    rb.numeric("interior-agreement", 1e-9);

    constexpr int kMaxDoublings = 14;
    const DimRange dims = detail::dims_or(cfg, 2, 6);
    const int trials = detail::trials_or(cfg, 50);
    for (Index n = std::max<Index>(dims.lo, 2); n <= dims.hi; ++n) {
        const SamplerConfig scfg = detail::sampler(cfg, n, 0.5);
        for (int t = 0; t < trials; ++t) {
            const auto trial = detail::cell_trial(n, 0, static_cast<std::uint64_t>(t));
            const std::uint64_t phi_stream = stream_key(detail::kBoundary, trial, 0);
            const std::uint64_t a_stream = stream_key(detail::kBoundary, trial, 1);
            const CanonicalParams c = random_canonical(scfg, phi_stream);
            const Index deficiency = 1 + static_cast<Index>(static_cast<std::uint64_t>(t) % static_cast<std::uint64_t>(n - 1));
            const Effect a = random_boundary_effect(scfg, a_stream, deficiency);
            const std::vector<double> gaps = boundary_gaps(c, a, kMaxDoublings);
            auto witness = [&] {
                return Json{{"stream_index", phi_stream}, {"effect_stream_index", a_stream},
                            {"dim", n},                   {"rank_deficiency", deficiency},
                            {"automorphism", detail::canonical_json(c)},
                            {"A", io::to_json(a)},        {"gaps", gaps}};
            };
            double rise = 0.0;
            for (std::size_t k = 1; k < gaps.size(); ++k) rise = std::max(rise, gaps[k] - gaps[k - 1]);
            rb.record("gap-non-increasing", rise, witness);
            rb.record("gap-at-k14", gaps.back(), witness);

            const std::uint64_t i_stream = stream_key(detail::kBoundary, trial, 2);
            const Effect interior = random_effect(scfg, i_stream);
            rb.record("interior-agreement",
                      frobenius_distance(apply_congruence_form(to_congruence(c), interior).matrix(),
                                         apply_canonical(c, interior).matrix()),
                      [&] {
                          Json w = witness();
                          w["effect_stream_index"] = i_stream;
                          w["A"] = io::to_json(interior);
                          return w;
                      });
        }
    }
    return rb.finish();
}

/// Phase invariance and the group laws of the congruence form.
inline VerificationReport suite_phase_and_group(const VerifyConfig& cfg) {
    cfg.validate();
    ReportBuilder rb("phase-and-group",
                     "phi_{p,zT} = phi_{p,T} for |z| = 1; automorphisms compose and invert through S", cfg);
    rb.numeric("phase-invariance", 1e-8);
    rb.exact("phase-class");
    rb.numeric("composition", 1e-8);
    rb.numeric("inverse-is-identity", 1e-8);
    rb.exact("antilinear-pair-is-linear");
    rb.exact("mixed-pair-is-antilinear");

    const DimRange dims = detail::dims_or(cfg, 2, 6);
    const int trials = detail::trials_or(cfg, 50);
    constexpr int kPhases = 8;
    for (Index n = dims.lo; n <= dims.hi; ++n) {
        const SamplerConfig scfg = detail::sampler(cfg, n, 0.5);
        SamplerConfig anti = scfg;
        anti.kind_mix = 1.0;
        SamplerConfig lin = scfg;
        lin.kind_mix = 0.0;
        for (int t = 0; t < trials; ++t) {
            const auto trial = detail::cell_trial(n, 0, static_cast<std::uint64_t>(t));
            const std::uint64_t phi_stream = stream_key(detail::kPhase, trial, 0);
            const CanonicalParams c = random_canonical(scfg, phi_stream);
            for (int k = 0; k < kPhases; ++k) {
                const std::uint64_t z_stream = stream_key(detail::kPhase, trial, 10 + static_cast<std::uint64_t>(k));
                const std::uint64_t a_stream = stream_key(detail::kPhase, trial, 30 + static_cast<std::uint64_t>(k));
                const Complex z = random_unit_complex(scfg, z_stream);
                const Effect a = random_effect(scfg, a_stream);
                const CanonicalParams cz(c.p(), c.op().scaled(z));
                auto witness = [&] {
                    return Json{{"stream_index", phi_stream}, {"phase_stream_index", z_stream},
                                {"effect_stream_index", a_stream}, {"dim", n},
                                {"z", Json::array({z.real(), z.imag()})},
                                {"automorphism", detail::canonical_json(c)}, {"A", io::to_json(a)}};
                };
                rb.record("phase-invariance",
                          frobenius_distance(apply_canonical(c, a).matrix(), apply_canonical(cz, a).matrix()), witness);
                rb.record_exact("phase-class", phase_equiv(cz.op(), c.op(), 1e-12), witness);
            }

            const std::uint64_t s1 = stream_key(detail::kPhase, trial, 1);
            const std::uint64_t s2 = stream_key(detail::kPhase, trial, 2);
            const std::uint64_t sa = stream_key(detail::kPhase, trial, 3);
            const CongruenceParams g1(random_invertible_operator(scfg, s1));
            const CongruenceParams g2(random_invertible_operator(scfg, s2));
            const Effect a = random_effect(scfg, sa);
            auto witness = [&] {
                return Json{{"stream_index", s1}, {"second_stream_index", s2}, {"effect_stream_index", sa},
                            {"dim", n}, {"g1", io::to_json(Automorphism(g1))}, {"g2", io::to_json(Automorphism(g2))},
                            {"A", io::to_json(a)}};
            };
            const Effect composed = apply_congruence_form(compose_automorphisms(g1, g2), a);
            const Effect chained = apply_congruence_form(g1, apply_congruence_form(g2, a));
            rb.record("composition", frobenius_distance(composed.matrix(), chained.matrix()), witness);
            const Effect round = apply_congruence_form(compose_automorphisms(g1, invert_automorphism(g1)), a);
            rb.record("inverse-is-identity", frobenius_distance(round.matrix(), a.matrix()), witness);

            const CongruenceParams h1(random_invertible_operator(anti, s1));
            const CongruenceParams h2(random_invertible_operator(anti, s2));
            rb.record_exact("antilinear-pair-is-linear", compose_automorphisms(h1, h2).op().is_linear(), witness);
            const CongruenceParams l2(random_invertible_operator(lin, s2));
            rb.record_exact("mixed-pair-is-antilinear",
                            !compose_automorphisms(h1, l2).op().is_linear() &&
                                !compose_automorphisms(l2, h1).op().is_linear(),
                            witness);
        }
    }
    return rb.finish();
}

/// Adjoint identity and congruence of conjugate-linear operators.
inline VerificationReport suite_antilinear_algebra(const VerifyConfig& cfg) {
    cfg.validate();
    ReportBuilder rb("antilinear-algebra",
                     "T(lambda x) = conj(lambda) T x; <Tx, y> = conj(<x, T*y>); T A T* from the action of T", cfg);
    rb.numeric("adjoint-identity", 1e-12);
    rb.numeric("antilinearity", 1e-12);
    rb.numeric("congruence-basis-oracle", 1e-10);
    rb.numeric("compose-associative", 1e-12);
    rb.numeric("invert-roundtrip", 1e-10);

    const DimRange dims = detail::dims_or(cfg, 2, 8);
    const int trials = detail::trials_or(cfg, 1000);
    const auto span = static_cast<int>(dims.hi - dims.lo + 1);
    for (int t = 0; t < trials; ++t) {
        const Index n = dims.lo + t % span;
        const SamplerConfig scfg = detail::sampler(cfg, n, t % 2 == 0 ? 0.0 : 1.0);
        const auto trial = static_cast<std::uint64_t>(t);
        const std::uint64_t stream = stream_key(detail::kAntilinear, trial, 0);
        const BoundedOperator op = random_invertible_operator(scfg, stream);
        const ComplexVector x = random_vector(scfg, stream_key(detail::kAntilinear, trial, 1));
        const ComplexVector y = random_vector(scfg, stream_key(detail::kAntilinear, trial, 2));
        const HermitianMatrix a = random_hermitian(scfg, stream_key(detail::kAntilinear, trial, 3));
        auto witness = [&] {
            return Json{{"stream_index", stream}, {"dim", n}, {"operator", io::to_json(op)}, {"A", io::to_json(a)}};
        };

        // <u, v> = sum u_i conj(v_i) = v^H u. The adjoint satisfies <Tx, y> = <x, T*y>
        // for linear T and <Tx, y> = conj(<x, T*y>) for conjugate-linear T.
        auto inner = [](const ComplexVector& u, const ComplexVector& v) { return v.dot(u); };
        const double scale = operator_norm(op) * x.norm() * y.norm();
        const Complex lhs = inner(effect_order::apply(op, x), y);
        const Complex paired = inner(x, effect_order::apply(adjoint(op), y));
        const Complex rhs = op.is_linear() ? paired : std::conj(paired);
        rb.record("adjoint-identity", std::abs(lhs - rhs) / scale, witness);

        const Complex lambda(0.3, -1.7);
        const ComplexVector scaled = effect_order::apply(op, lambda * x);
        const ComplexVector expected = (op.is_linear() ? lambda : std::conj(lambda)) * effect_order::apply(op, x);
        rb.record("antilinearity", (scaled - expected).norm() / (std::abs(lambda) * operator_norm(op) * x.norm()),
                  witness);

        // Column j of T A T^* is T(A(T^*(e_j))), computed from the actions alone.
        const BoundedOperator adj = adjoint(op);
        ComplexMatrix oracle(n, n);
        for (Index j = 0; j < n; ++j) {
            const ComplexVector e = ComplexVector::Unit(n, j);
            oracle.col(j) = effect_order::apply(op, ComplexVector(a.matrix() * effect_order::apply(adj, e)));
        }
        rb.record("congruence-basis-oracle", (congruence(op, a).matrix() - oracle).norm(), witness);

        const BoundedOperator op2 = random_invertible_operator(scfg, stream_key(detail::kAntilinear, trial, 4));
        const BoundedOperator op3 = random_invertible_operator(
            detail::sampler(cfg, n, 0.5), stream_key(detail::kAntilinear, trial, 5));
        const ComplexMatrix left = compose(compose(op, op2), op3).matrix();
        const ComplexMatrix right = compose(op, compose(op2, op3)).matrix();
        rb.record("compose-associative", (left - right).norm() / (1.0 + left.norm()), witness);

        rb.record("invert-roundtrip", (effect_order::apply(invert(op), effect_order::apply(op, x)) - x).norm() / x.norm(), witness);
    }
    return rb.finish();
}

using SuiteFn = VerificationReport (*)(const VerifyConfig&);

struct SuiteEntry {
    const char* name;
    SuiteFn run;
};

inline const std::vector<SuiteEntry>& suites() {
    static const std::vector<SuiteEntry> all = {
        {"moebius-group", &suite_moebius_group},
        {"operator-monotone", &suite_operator_monotone},
        {"automorphism-order", &suite_automorphism_order},
        {"representation-equivalence", &suite_representation_equivalence},
        {"boundary-extension", &suite_boundary_extension},
        {"phase-and-group", &suite_phase_and_group},
        {"antilinear-algebra", &suite_antilinear_algebra},
    };
    return all;
}

inline std::string suite_names() {
    std::string out;
    for (const auto& s : suites()) {
        if (!out.empty()) out += ", ";
        out += s.name;
    }
    return out;
}

/// Throws DomainError for unknown names.
inline VerificationReport run_suite(const std::string& name, const VerifyConfig& cfg) {
    for (const auto& s : suites()) {
        if (name == s.name) return s.run(cfg);
    }
    throw DomainError("unknown suite \"" + name + "\"; valid suites: " + suite_names());
}

struct RunSummary {
    std::vector<VerificationReport> reports;
    int exit_code = 0;  // 0 all pass, 1 any failure
};

inline RunSummary run_all(const VerifyConfig& cfg) {
    RunSummary out;
    for (const auto& s : suites()) {
        out.reports.push_back(s.run(cfg));
        if (!out.reports.back().passed()) out.exit_code = 1;
    }
    return out;
}

/// One JSON document per line.
inline void write_json_lines(std::ostream& os, const std::vector<VerificationReport>& reports) {
    for (const auto& r : reports) os << to_json(r).dump() << '\n';
}

inline void write_table(std::ostream& os, const std::vector<VerificationReport>& reports) {
    auto sci = [](double v) {
        std::ostringstream s;
        s << std::scientific << std::setprecision(2) << v;
        return s.str();
    };
    os << std::left << std::setw(28) << "suite" << std::setw(7) << "status" << std::right << std::setw(9) << "trials"
       << std::setw(9) << "fail" << std::setw(9) << "indet" << std::setw(9) << "reject" << std::setw(12)
       << "max_viol" << std::setw(10) << "time_s" << '\n';
    for (const auto& r : reports) {
        std::ostringstream time;
        time << std::fixed << std::setprecision(2) << r.wall_time_s;
        os << std::left << std::setw(28) << r.suite << std::setw(7) << (r.passed() ? "PASS" : "FAIL") << std::right
           << std::setw(9) << r.trials << std::setw(9) << r.failures << std::setw(9) << r.indeterminate
           << std::setw(9) << r.rejected << std::setw(12) << sci(r.max_violation) << std::setw(10) << time.str()
           << '\n';
        for (const auto& c : r.checks) {
            os << "    " << std::left << std::setw(32) << c.name << std::right << std::setw(9) << c.trials
               << std::setw(9) << c.failures << "  max_err " << sci(c.max_error) << "  tol " << sci(c.tolerance)
               << '\n';
        }
    }
}

}  // namespace effect_order::verify
