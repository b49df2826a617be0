#pragma once

// Bounded linear and conjugate-linear operators on C^n.
//
// An operator is a matrix M together with a kind. A linear operator acts as
// x -> M x, a conjugate-linear one as x -> M conj(x). With the inner product
// <u, v> = sum_i u_i conj(v_i) this fixes:
//
//   adjoint      linear: M^H          antilinear: M^T (antilinear)
//   T A T^*      linear: M A M^H      antilinear: M conj(A) M^H
//   T^{-1}       linear: M^{-1}       antilinear: conj(M^{-1}) (antilinear)

#include <cmath>
#include <string>

#include <Eigen/Dense>

#include "effect_order/errors.hpp"
#include "effect_order/hermitian.hpp"
#include "effect_order/tolerances.hpp"

namespace effect_order {

enum class Kind { Linear, Antilinear };

inline const char* to_string(Kind k) { return k == Kind::Linear ? "linear" : "antilinear"; }

class BoundedOperator {
public:
    BoundedOperator(Kind kind, ComplexMatrix matrix) : kind_(kind), m_(std::move(matrix)) {
        if (m_.rows() != m_.cols()) {
            throw DimensionError("operator matrix is not square: " + std::to_string(m_.rows()) + "x" +
                                 std::to_string(m_.cols()));
        }
        if (m_.rows() == 0) {
            throw DimensionError("operator dimension must be at least 1");
        }
    }

    static BoundedOperator linear(ComplexMatrix m) { return {Kind::Linear, std::move(m)}; }
    static BoundedOperator antilinear(ComplexMatrix m) { return {Kind::Antilinear, std::move(m)}; }
    static BoundedOperator linear(const HermitianMatrix& h) { return {Kind::Linear, h.matrix()}; }
    static BoundedOperator identity(Index n) { return linear(ComplexMatrix::Identity(n, n)); }
    /// Entrywise complex conjugation x -> conj(x).
    static BoundedOperator conjugation(Index n) { return antilinear(ComplexMatrix::Identity(n, n)); }

    [[nodiscard]] Kind kind() const { return kind_; }
    [[nodiscard]] bool is_linear() const { return kind_ == Kind::Linear; }
    [[nodiscard]] const ComplexMatrix& matrix() const { return m_; }
    [[nodiscard]] Index dim() const { return m_.rows(); }

    /// z T, for a complex scalar z (z multiplies after T acts).
    [[nodiscard]] BoundedOperator scaled(Complex z) const { return {kind_, z * m_}; }

private:
    Kind kind_;
    ComplexMatrix m_;
};

namespace detail {

inline void require_dim(Index a, Index b, const char* what) {
    if (a != b) {
        throw DimensionError(std::string(what) + ": dimension mismatch " + std::to_string(a) + " vs " +
                             std::to_string(b));
    }
}

}  // namespace detail

inline ComplexVector apply(const BoundedOperator& t, const ComplexVector& x) {
    detail::require_dim(t.dim(), x.size(), "apply");
    return t.is_linear() ? ComplexVector(t.matrix() * x) : ComplexVector(t.matrix() * x.conjugate());
}

inline BoundedOperator adjoint(const BoundedOperator& t) {
    return t.is_linear() ? BoundedOperator::linear(t.matrix().adjoint())
                         : BoundedOperator::antilinear(t.matrix().transpose());
}

/// The operator x -> first(second(x)).
inline BoundedOperator compose(const BoundedOperator& first, const BoundedOperator& second) {
    detail::require_dim(first.dim(), second.dim(), "compose");
    const Kind kind = first.kind() == second.kind() ? Kind::Linear : Kind::Antilinear;
    if (first.is_linear()) {
        return {kind, first.matrix() * second.matrix()};
    }
    return {kind, first.matrix() * second.matrix().conjugate()};
}

/// A -> T A T^*.
inline HermitianMatrix congruence(const BoundedOperator& t, const HermitianMatrix& a) {
    detail::require_dim(t.dim(), a.dim(), "congruence");
    const ComplexMatrix& m = t.matrix();
    if (t.is_linear()) {
        return HermitianMatrix(m * a.matrix() * m.adjoint());
    }
    return HermitianMatrix(m * a.matrix().conjugate() * m.adjoint());
}

/// T T^* (= M M^H for both kinds).
inline HermitianMatrix gram(const BoundedOperator& t) {
    return HermitianMatrix(t.matrix() * t.matrix().adjoint());
}

inline RealVector singular_values(const BoundedOperator& t) {
    Eigen::JacobiSVD<ComplexMatrix> svd(t.matrix());
    return svd.singularValues();
}

/// Largest singular value of M.
inline double operator_norm(const BoundedOperator& t) { return singular_values(t)(0); }

inline double smallest_singular_value(const BoundedOperator& t) {
    const RealVector s = singular_values(t);
    return s(s.size() - 1);
}

inline double condition_number(const BoundedOperator& t) {
    const RealVector s = singular_values(t);
    return s(0) / s(s.size() - 1);
}

inline void require_invertible(const BoundedOperator& t, const char* what) {
    const double smin = smallest_singular_value(t);
    if (smin < tol::invertibility) {
        throw SingularError(std::string(what) + ": operator is singular to tolerance (smallest singular value " +
                            std::to_string(smin) + ")");
    }
}

/// Inverse with the kind preserved, so that invert(T)(T x) = x.
inline BoundedOperator invert(const BoundedOperator& t) {
    require_invertible(t, "invert");
    const ComplexMatrix inv = t.matrix().partialPivLu().inverse();
    return t.is_linear() ? BoundedOperator::linear(inv) : BoundedOperator::antilinear(inv.conjugate());
}

/// True iff M1 = z M2 for some |z| = 1, up to tol * ||M2||_F.
///
/// The candidate z is read off the largest-modulus entry of M2 (first in
/// row-major order on ties) and normalized to the unit circle.
inline bool phase_equiv(const BoundedOperator& t1, const BoundedOperator& t2, double tol) {
    if (t1.kind() != t2.kind() || t1.dim() != t2.dim()) return false;
    const ComplexMatrix& m1 = t1.matrix();
    const ComplexMatrix& m2 = t2.matrix();
    Index bi = 0;
    Index bj = 0;
    double best = -1.0;
    for (Index i = 0; i < m2.rows(); ++i) {
        for (Index j = 0; j < m2.cols(); ++j) {
            if (std::abs(m2(i, j)) > best) {
                best = std::abs(m2(i, j));
                bi = i;
                bj = j;
            }
        }
    }
    if (best == 0.0) return m1.norm() == 0.0;
    Complex z = m1(bi, bj) / m2(bi, bj);
    if (std::abs(z) == 0.0) return false;
    z /= std::abs(z);
    return (m1 - z * m2).norm() <= tol * m2.norm();
}

/// An element of CGL(H)/S^1: an operator up to a unit scalar.
class PhaseClass {
public:
    explicit PhaseClass(BoundedOperator representative) : rep_(std::move(representative)) {}

    [[nodiscard]] const BoundedOperator& representative() const { return rep_; }

    [[nodiscard]] bool equivalent(const PhaseClass& other, double tol) const {
        return phase_equiv(rep_, other.rep_, tol);
    }

    [[nodiscard]] PhaseClass operator*(const PhaseClass& other) const {
        return PhaseClass(compose(rep_, other.rep_));
    }

    [[nodiscard]] PhaseClass inverse() const { return PhaseClass(invert(rep_)); }

private:
    BoundedOperator rep_;
};

}  // namespace effect_order
