#pragma once

// Effects and the interval maps used to transport automorphisms between the
// effect algebra [0, I] and the positive cone [0, inf):
//
//   to_cone    (0, I]  -> [0, inf),  A -> A^{-1} - I     (order-reversing)
//   from_cone  [0, inf) -> (0, I],   X -> (I + X)^{-1}   (its inverse)
//
// and the cone automorphism X -> S X S^*.

#include <string>

#include "effect_order/errors.hpp"
#include "effect_order/hermitian.hpp"
#include "effect_order/operators.hpp"
#include "effect_order/tolerances.hpp"

namespace effect_order {

/// A Hermitian matrix with 0 <= A <= I.
///
/// Eigenvalues within psd_clamp outside [0, 1] are clamped back onto the
/// interval; anything further out is rejected.
class Effect {
public:
    explicit Effect(const HermitianMatrix& a) : m_(validate(a)) {}

    static Effect zero(Index n) { return Effect(HermitianMatrix::zero(n)); }
    static Effect identity(Index n) { return Effect(HermitianMatrix::identity(n)); }

    [[nodiscard]] const HermitianMatrix& matrix() const { return m_; }
    [[nodiscard]] Index dim() const { return m_.dim(); }

    /// True when the effect lies in (0, I] at tolerance `tol`.
    [[nodiscard]] bool is_invertible(double tol) const { return is_strictly_positive(m_, tol); }

private:
    static HermitianMatrix validate(const HermitianMatrix& a) {
        const SpectralDecomposition sd = eigh(a);
        const double lo = sd.eigenvalues(0);
        const double hi = sd.eigenvalues(sd.dim() - 1);
        if (lo >= 0.0 && hi <= 1.0) return a;
        if (lo < -tol::psd_clamp || hi > 1.0 + tol::psd_clamp) {
            throw DomainError("not an effect: spectrum [" + std::to_string(lo) + ", " + std::to_string(hi) +
                              "] is not inside [0, 1]");
        }
        return sd.map([](double x) { return std::clamp(x, 0.0, 1.0); });
    }

    HermitianMatrix m_;
};

/// A -> A^{-1} - I on (0, I]. Boundary effects are refused, not clamped.
inline HermitianMatrix to_cone(const Effect& a, double tol) {
    const SpectralDecomposition sd = eigh(a.matrix());
    if (sd.eigenvalues(0) < tol) {
        throw SingularError("to_cone: effect is on the boundary of the effect algebra (min eigenvalue " +
                            std::to_string(sd.eigenvalues(0)) + ")");
    }
    return sd.map([](double x) { return 1.0 / x - 1.0; });
}

/// X -> (I + X)^{-1} on [0, inf).
inline Effect from_cone(const HermitianMatrix& x) {
    if (!is_psd(x, tol::psd_clamp)) {
        throw DomainError("from_cone: argument is not positive semidefinite");
    }
    return Effect(spectral_map(x, [](double v) { return 1.0 / (1.0 + std::max(v, 0.0)); }));
}

/// X -> S X S^*, an order automorphism of the positive cone.
inline HermitianMatrix cone_automorphism(const BoundedOperator& s, const HermitianMatrix& x) {
    require_invertible(s, "cone_automorphism");
    return congruence(s, x);
}

}  // namespace effect_order
