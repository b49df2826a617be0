#pragma once

// The group of fractional-linear maps f_p(x) = x / (p x + 1 - p), p < 1.
//
// Each f_p is an increasing bijection of [0, 1]; composition and inversion
// stay inside the family:
//
//   f_p o f_q = f_{p + q - p q},      f_p^{-1} = f_{p / (p - 1)},
//
// and a -> f_{1 - a} is an isomorphism from the multiplicative positive reals.
// For 0 <= p < 1 the natural domain is [0, inf); for p < 0 it is
// [0, 1 - 1/p), with a pole at the right end.

#include <cmath>
#include <limits>
#include <string>

#include "effect_order/errors.hpp"
#include "effect_order/hermitian.hpp"
#include "effect_order/tolerances.hpp"

namespace effect_order {

class MoebiusParam {
public:
    explicit MoebiusParam(double p) : p_(p) {
        if (!std::isfinite(p) || p >= tol::moebius_p_max) {
            throw DomainError("Moebius parameter must be finite and < 1 - 1e-12, got " + std::to_string(p));
        }
    }

    static MoebiusParam identity() { return MoebiusParam(0.0); }

    [[nodiscard]] double value() const { return p_; }

    /// Right end of the (half-open) domain; infinity when p >= 0.
    [[nodiscard]] double domain_end() const {
        return p_ >= 0.0 ? std::numeric_limits<double>::infinity() : 1.0 - 1.0 / p_;
    }

    [[nodiscard]] bool in_domain(double x) const { return x >= 0.0 && x < domain_end(); }

    /// Largest spectral value accepted by the matrix routes. For p < 0 this
    /// keeps `domain_margin` of the gap between 1 and the pole free, so the
    /// whole effect interval [0, 1] is always admissible.
    [[nodiscard]] double admissible_end(double margin = tol::domain_margin) const {
        if (p_ >= 0.0) return std::numeric_limits<double>::infinity();
        return 1.0 + (1.0 - margin) * (domain_end() - 1.0);
    }

    friend bool operator==(const MoebiusParam&, const MoebiusParam&) = default;

private:
    double p_;
};

inline double eval(const MoebiusParam& p, double x) {
    if (!p.in_domain(x)) {
        throw DomainError("f_p: x = " + std::to_string(x) + " outside the domain of p = " +
                          std::to_string(p.value()));
    }
    const double pv = p.value();
    // p x + 1 - p written as 1 + p (x - 1) so that f_p(1) = 1 exactly.
    return x / (1.0 + pv * (x - 1.0));
}

/// Parameter of f_p o f_q.
inline MoebiusParam compose(const MoebiusParam& p, const MoebiusParam& q) {
    return MoebiusParam(p.value() + q.value() - p.value() * q.value());
}

/// Parameter of f_p^{-1}.
inline MoebiusParam inverse(const MoebiusParam& p) { return MoebiusParam(p.value() / (p.value() - 1.0)); }

/// The isomorphism a -> f_{1 - a} from (0, inf) under multiplication.
inline MoebiusParam from_positive_real(double a) {
    if (!(a > 0.0) || !std::isfinite(a)) {
        throw DomainError("from_positive_real: argument must be a finite positive real, got " + std::to_string(a));
    }
    return MoebiusParam(1.0 - a);
}

inline double to_positive_real(const MoebiusParam& p) { return 1.0 - p.value(); }

namespace detail {

inline void require_spectrum_admissible(const MoebiusParam& p, double lo, double hi, const char* what) {
    if (lo < -tol::psd_clamp || hi > p.admissible_end()) {
        throw DomainError(std::string(what) + ": spectrum [" + std::to_string(lo) + ", " + std::to_string(hi) +
                          "] outside the admissible domain of f_p for p = " + std::to_string(p.value()));
    }
}

}  // namespace detail

/// f_p(A) = U diag(f_p(lambda_i)) U^H. Reference route.
inline HermitianMatrix eval_matrix_spectral(const MoebiusParam& p, const HermitianMatrix& a) {
    const SpectralDecomposition sd = eigh(a);
    detail::require_spectrum_admissible(p, sd.eigenvalues(0), sd.eigenvalues(sd.dim() - 1), "eval_matrix_spectral");
    return sd.map([&](double x) { return eval(p, std::max(x, 0.0)); });
}

/// f_p(A) through a single resolvent:
///
///   0 < p < 1:  (1/p) I - ((1-p)/p^2) (A + (1/p - 1) I)^{-1}
///   p < 0:      (1/p) I + ((1-p)/p^2) ((1 - 1/p) I - A)^{-1}
inline HermitianMatrix eval_matrix_resolvent(const MoebiusParam& p, const HermitianMatrix& a) {
    const double pv = p.value();
    if (pv == 0.0) {
        throw DomainError("eval_matrix_resolvent: p = 0 has no resolvent form");
    }
    const RealVector w = eigenvalues(a);
    detail::require_spectrum_admissible(p, w(0), w(w.size() - 1), "eval_matrix_resolvent");

    const HermitianMatrix id = HermitianMatrix::identity(a.dim());
    const double coeff = (1.0 - pv) / (pv * pv);
    if (pv > 0.0) {
        return (1.0 / pv) * id - coeff * inv_hermitian(a + (1.0 / pv - 1.0) * id);
    }
    return (1.0 / pv) * id + coeff * inv_hermitian((1.0 - 1.0 / pv) * id - a);
}

}  // namespace effect_order
