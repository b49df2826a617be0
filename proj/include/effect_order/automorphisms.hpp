#pragma once

// Order automorphisms of the effect algebra [0, I] in three parameterizations.
//
// Canonical (p < 0, T invertible):
//   phi(A) = f_p( K^{1/2} (I - (I + T A T^*)^{-1}) K^{1/2} ),   K = I + (T T^*)^{-1}
//
// Alternative (p < 0, 0 < r < 1, ||S|| <= 1):
//   phi(A) = f_p( f_r(S S^*)^{-1/2} f_r(S A S^*) f_r(S S^*)^{-1/2} )
//
// Congruence (S invertible), defined on (0, I] only:
//   phi(A) = (I + S (A^{-1} - I) S^*)^{-1}
//
// The congruence form is the positive-cone automorphism X -> S X S^* moved to
// (0, I] by A -> A^{-1} - I. Given lambda > max(1, ||S||^2) it converts to the
// canonical form via
//
//   R = (lambda I - S S^*)^{-1/2} S,   T = (R^*)^{-1},   q = 1 - 1/lambda,   p = q / (q - 1),
//
// and back via S = sqrt(1 - p) K^{-1/2} (T^*)^{-1}. Boundary (singular) effects
// are reached by the decreasing sequence A_n = (1 - 1/n) A + (1/n) I.

#include <cmath>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "effect_order/errors.hpp"
#include "effect_order/hermitian.hpp"
#include "effect_order/interval_maps.hpp"
#include "effect_order/moebius.hpp"
#include "effect_order/operators.hpp"
#include "effect_order/tolerances.hpp"

namespace effect_order {

class CanonicalParams {
public:
    CanonicalParams(MoebiusParam p, BoundedOperator t) : p_(p), t_(std::move(t)) {
        if (!(p_.value() < 0.0)) {
            throw DomainError("canonical form requires p < 0, got " + std::to_string(p_.value()));
        }
        require_invertible(t_, "canonical form");
    }

    [[nodiscard]] const MoebiusParam& p() const { return p_; }
    [[nodiscard]] const BoundedOperator& op() const { return t_; }
    [[nodiscard]] Index dim() const { return t_.dim(); }

private:
    MoebiusParam p_;
    BoundedOperator t_;
};

class AltParams {
public:
    AltParams(MoebiusParam p, double r, BoundedOperator s) : p_(p), r_(r), s_(std::move(s)) {
        if (!(p_.value() < 0.0)) {
            throw DomainError("alternative form requires p < 0, got " + std::to_string(p_.value()));
        }
        if (!(r_ > 0.0 && r_ < 1.0)) {
            throw DomainError("alternative form requires 0 < r < 1, got " + std::to_string(r_));
        }
        require_invertible(s_, "alternative form");
        const double norm = operator_norm(s_);
        if (norm > 1.0 + tol::psd_clamp) {
            throw DomainError("alternative form requires ||S|| <= 1, got " + std::to_string(norm));
        }
    }

    [[nodiscard]] const MoebiusParam& p() const { return p_; }
    [[nodiscard]] double r() const { return r_; }
    [[nodiscard]] const BoundedOperator& op() const { return s_; }
    [[nodiscard]] Index dim() const { return s_.dim(); }

private:
    MoebiusParam p_;
    double r_;
    BoundedOperator s_;
};

class CongruenceParams {
public:
    explicit CongruenceParams(BoundedOperator s) : s_(std::move(s)) { require_invertible(s_, "congruence form"); }

    static CongruenceParams identity(Index n) { return CongruenceParams(BoundedOperator::identity(n)); }

    [[nodiscard]] const BoundedOperator& op() const { return s_; }
    [[nodiscard]] Index dim() const { return s_.dim(); }

private:
    BoundedOperator s_;
};

using Automorphism = std::variant<CanonicalParams, AltParams, CongruenceParams>;

inline const char* form_name(const Automorphism& a) {
    switch (a.index()) {
        case 0: return "canonical";
        case 1: return "alt";
        default: return "congruence";
    }
}

inline Index dim(const Automorphism& a) {
    return std::visit([](const auto& v) { return v.dim(); }, a);
}

namespace detail {

// K = I + (T T^*)^{-1}
inline HermitianMatrix canonical_k(const BoundedOperator& t) {
    return HermitianMatrix::identity(t.dim()) + inv_hermitian(gram(t));
}

inline HermitianMatrix sandwich(const HermitianMatrix& outer, const HermitianMatrix& inner) {
    return HermitianMatrix(outer.matrix() * inner.matrix() * outer.matrix());
}

inline void require_same_dim(Index a, Index b, const char* what) {
    if (a != b) {
        throw DimensionError(std::string(what) + ": dimension mismatch " + std::to_string(a) + " vs " +
                             std::to_string(b));
    }
}

}  // namespace detail

/// The argument of f_p in the canonical formula, i.e. f_p^{-1}(phi(A)).
inline HermitianMatrix canonical_inner(const CanonicalParams& c, const Effect& a) {
    detail::require_same_dim(c.dim(), a.dim(), "apply_canonical");
    const HermitianMatrix id = HermitianMatrix::identity(a.dim());
    const HermitianMatrix k_half = sqrt_psd(detail::canonical_k(c.op()));
    const HermitianMatrix middle = id - inv_hermitian(id + congruence(c.op(), a.matrix()));
    return detail::sandwich(k_half, middle);
}

inline Effect apply_canonical(const CanonicalParams& c, const Effect& a) {
    return Effect(eval_matrix_spectral(c.p(), canonical_inner(c, a)));
}

/// The same map through I - (I + X)^{-1} = (1/2) f_{1/2}(X):
/// phi(A) = f_p( (1/2) K^{1/2} f_{1/2}(T A T^*) K^{1/2} ).
inline Effect apply_canonical_factored(const CanonicalParams& c, const Effect& a) {
    detail::require_same_dim(c.dim(), a.dim(), "apply_canonical_factored");
    const HermitianMatrix k_half = sqrt_psd(detail::canonical_k(c.op()));
    const HermitianMatrix half = eval_matrix_spectral(MoebiusParam(0.5), congruence(c.op(), a.matrix()));
    return Effect(eval_matrix_spectral(c.p(), 0.5 * detail::sandwich(k_half, half)));
}

/// (I + S (A^{-1} - I) S^*)^{-1} for A in (0, I].
inline Effect apply_congruence_form(const CongruenceParams& g, const Effect& a, double tol = tol::invertibility) {
    detail::require_same_dim(g.dim(), a.dim(), "apply_congruence_form");
    return from_cone(cone_automorphism(g.op(), to_cone(a, tol)));
}

inline double auto_lambda(const CongruenceParams& g) {
    const double n = operator_norm(g.op());
    return std::max(1.0, n * n) + 1.0;
}

/// Intermediate quantities of the congruence -> canonical construction.
struct CanonicalConstruction {
    double lambda;
    double q;
    BoundedOperator r;
    CanonicalParams canonical;
};

inline CanonicalConstruction construct_canonical(const CongruenceParams& g, std::optional<double> lambda = {}) {
    const double norm = operator_norm(g.op());
    const double lam = lambda.value_or(auto_lambda(g));
    if (!(lam > 1.0) || !(lam > norm * norm) || !std::isfinite(lam)) {
        throw DomainError("lambda must exceed max(1, ||S||^2) = " + std::to_string(std::max(1.0, norm * norm)) +
                          ", got " + std::to_string(lam));
    }
    const Index n = g.dim();
    const HermitianMatrix shifted = lam * HermitianMatrix::identity(n) - gram(g.op());
    BoundedOperator r = compose(BoundedOperator::linear(inv_sqrt_pd(shifted)), g.op());
    BoundedOperator t = invert(adjoint(r));
    const double q = 1.0 - 1.0 / lam;
    const MoebiusParam p(q / (q - 1.0));
    return {lam, q, std::move(r), CanonicalParams(p, std::move(t))};
}

/// Congruence form -> canonical form. `lambda` defaults to max(1, ||S||^2) + 1.
inline CanonicalParams from_congruence(const CongruenceParams& g, std::optional<double> lambda = {}) {
    return construct_canonical(g, lambda).canonical;
}

/// Canonical form -> congruence form: S = sqrt(1 - p) K^{-1/2} (T^*)^{-1}.
inline CongruenceParams to_congruence(const CanonicalParams& c) {
    const double lam = 1.0 - c.p().value();
    const HermitianMatrix factor = std::sqrt(lam) * inv_sqrt_pd(detail::canonical_k(c.op()));
    return CongruenceParams(compose(BoundedOperator::linear(factor), invert(adjoint(c.op()))));
}

/// Canonical form -> alternative form (S = T / ||T||, r = ||T||^2 / (1 + ||T||^2),
/// or S = T, r = 1/2 when ||T|| <= 1).
inline AltParams to_alt(const CanonicalParams& c) {
    const double norm = operator_norm(c.op());
    if (norm <= 1.0) {
        return AltParams(c.p(), 0.5, c.op());
    }
    return AltParams(c.p(), norm * norm / (1.0 + norm * norm), c.op().scaled(1.0 / norm));
}

/// Alternative form -> canonical form: T = sqrt(r / (1 - r)) S.
inline CanonicalParams from_alt(const AltParams& a) {
    return CanonicalParams(a.p(), a.op().scaled(std::sqrt(a.r() / (1.0 - a.r()))));
}

inline Effect apply_alt(const AltParams& a, const Effect& e) {
    detail::require_same_dim(a.dim(), e.dim(), "apply_alt");
    const MoebiusParam r(a.r());
    const HermitianMatrix outer = inv_sqrt_pd(eval_matrix_spectral(r, gram(a.op())));
    const HermitianMatrix inner = eval_matrix_spectral(r, congruence(a.op(), e.matrix()));
    return Effect(eval_matrix_spectral(a.p(), detail::sandwich(outer, inner)));
}

/// The unique A with apply_canonical(c, A) = B.
inline Effect invert_apply(const CanonicalParams& c, const Effect& b) {
    detail::require_same_dim(c.dim(), b.dim(), "invert_apply");
    const Index n = b.dim();
    const HermitianMatrix id = HermitianMatrix::identity(n);
    const HermitianMatrix x = eval_matrix_spectral(inverse(c.p()), b.matrix());
    const HermitianMatrix k_inv_half = inv_sqrt_pd(detail::canonical_k(c.op()));
    // (I + T A T^*)^{-1}
    const HermitianMatrix resolvent = id - detail::sandwich(k_inv_half, x);
    const HermitianMatrix tat = inv_hermitian(resolvent) - id;
    return Effect(congruence(invert(c.op()), tat));
}

/// phi_1 o phi_2 in congruence form.
inline CongruenceParams compose_automorphisms(const CongruenceParams& g1, const CongruenceParams& g2) {
    detail::require_same_dim(g1.dim(), g2.dim(), "compose_automorphisms");
    return CongruenceParams(compose(g1.op(), g2.op()));
}

inline CongruenceParams invert_automorphism(const CongruenceParams& g) { return CongruenceParams(invert(g.op())); }

// Conversions from any form.

inline CongruenceParams to_congruence(const Automorphism& a) {
    struct Visitor {
        CongruenceParams operator()(const CanonicalParams& c) const { return to_congruence(c); }
        CongruenceParams operator()(const AltParams& x) const { return to_congruence(from_alt(x)); }
        CongruenceParams operator()(const CongruenceParams& g) const { return g; }
    };
    return std::visit(Visitor{}, a);
}

inline CanonicalParams to_canonical(const Automorphism& a, std::optional<double> lambda = {}) {
    struct Visitor {
        std::optional<double> lambda;
        CanonicalParams operator()(const CanonicalParams& c) const { return c; }
        CanonicalParams operator()(const AltParams& x) const { return from_alt(x); }
        CanonicalParams operator()(const CongruenceParams& g) const { return from_congruence(g, lambda); }
    };
    return std::visit(Visitor{lambda}, a);
}

inline AltParams to_alt(const Automorphism& a, std::optional<double> lambda = {}) {
    if (const auto* alt = std::get_if<AltParams>(&a)) return *alt;
    return to_alt(to_canonical(a, lambda));
}

/// Applies any form. The congruence form is only used on (0, I]; boundary
/// effects go through the canonical formula, which is total on [0, I].
inline Effect apply(const Automorphism& phi, const Effect& a) {
    struct Visitor {
        const Effect& a;
        Effect operator()(const CanonicalParams& c) const { return apply_canonical(c, a); }
        Effect operator()(const AltParams& x) const { return apply_alt(x, a); }
        Effect operator()(const CongruenceParams& g) const {
            if (a.is_invertible(tol::invertibility)) return apply_congruence_form(g, a);
            return apply_canonical(from_congruence(g), a);
        }
    };
    return std::visit(Visitor{a}, phi);
}

inline Effect invert_apply(const Automorphism& phi, const Effect& b) { return invert_apply(to_canonical(phi), b); }

/// A_n = (1 - 1/n) A + (1/n) I.
inline Effect approximant(const Effect& a, double n) {
    const HermitianMatrix id = HermitianMatrix::identity(a.dim());
    return Effect((1.0 - 1.0 / n) * a.matrix() + (1.0 / n) * id);
}

struct LimitResult {
    Effect value;           // phi(A_n) at the final n
    long long n_final;
    std::vector<double> deltas;  // ||phi(A_{2n}) - phi(A_n)||_F along the doubling sequence
};

/// Evaluates the congruence form along A_1, A_2, A_4, ..., A_{n_max} and
/// returns the last iterate. Throws ConvergenceError when the final step
/// still moves by more than `convergence_tol`.
inline LimitResult limit_apply(const CanonicalParams& c, const Effect& a, long long n_max = 1LL << 14,
                               double convergence_tol = 1e-3) {
    if (n_max < 1) throw DomainError("limit_apply: n_max must be >= 1");
    const CongruenceParams g = to_congruence(c);
    Effect current = apply_congruence_form(g, approximant(a, 1.0));
    std::vector<double> deltas;
    long long n = 1;
    while (n * 2 <= n_max) {
        n *= 2;
        Effect next = apply_congruence_form(g, approximant(a, static_cast<double>(n)));
        deltas.push_back(frobenius_distance(next.matrix(), current.matrix()));
        current = std::move(next);
    }
    if (!deltas.empty() && deltas.back() > convergence_tol) {
        throw ConvergenceError("limit_apply: not converged at n = " + std::to_string(n) + ", last delta " +
                               std::to_string(deltas.back()));
    }
    return {std::move(current), n, std::move(deltas)};
}

/// ||phi(A_{2^k}) - phi(A)||_F for k = 0..k_max, with phi(A) from the direct formula
/// and phi(A_{2^k}) from the congruence form.
inline std::vector<double> boundary_gaps(const CanonicalParams& c, const Effect& a, int k_max) {
    const CongruenceParams g = to_congruence(c);
    const Effect direct = apply_canonical(c, a);
    std::vector<double> gaps;
    gaps.reserve(static_cast<std::size_t>(k_max) + 1);
    for (int k = 0; k <= k_max; ++k) {
        const Effect approx = apply_congruence_form(g, approximant(a, std::ldexp(1.0, k)));
        gaps.push_back(frobenius_distance(approx.matrix(), direct.matrix()));
    }
    return gaps;
}

}  // namespace effect_order
