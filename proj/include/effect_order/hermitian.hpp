#pragma once

// Complex Hermitian matrices, the Loewner order and spectral primitives.

#include <algorithm>
#include <cmath>
#include <complex>
#include <concepts>
#include <initializer_list>
#include <limits>
#include <span>
#include <string>

#include <Eigen/Dense>

#include "effect_order/errors.hpp"
#include "effect_order/tolerances.hpp"

namespace effect_order {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

/// Self-adjoint n x n complex matrix (n >= 1).
///
/// Every constructor symmetrizes its input as (X + X^H) / 2, so the
/// Hermitian invariant holds bit-exactly no matter how the entries were
/// produced.
class HermitianMatrix {
public:
    explicit HermitianMatrix(const ComplexMatrix& x) : m_(symmetrize(x)) {}

    static HermitianMatrix identity(Index n) { return HermitianMatrix(ComplexMatrix::Identity(n, n)); }
    static HermitianMatrix zero(Index n) { return HermitianMatrix(ComplexMatrix::Zero(n, n)); }

    static HermitianMatrix diagonal(std::span<const double> values) {
        ComplexMatrix d = ComplexMatrix::Zero(static_cast<Index>(values.size()), static_cast<Index>(values.size()));
        for (std::size_t i = 0; i < values.size(); ++i) {
            d(static_cast<Index>(i), static_cast<Index>(i)) = values[i];
        }
        return HermitianMatrix(d);
    }
    static HermitianMatrix diagonal(std::initializer_list<double> values) {
        return diagonal(std::span<const double>(values.begin(), values.size()));
    }

    [[nodiscard]] Index dim() const { return m_.rows(); }
    [[nodiscard]] const ComplexMatrix& matrix() const { return m_; }
    [[nodiscard]] Complex operator()(Index i, Index j) const { return m_(i, j); }

    friend HermitianMatrix operator+(const HermitianMatrix& a, const HermitianMatrix& b) {
        require_same_dim(a, b);
        return HermitianMatrix(a.m_ + b.m_);
    }
    friend HermitianMatrix operator-(const HermitianMatrix& a, const HermitianMatrix& b) {
        require_same_dim(a, b);
        return HermitianMatrix(a.m_ - b.m_);
    }
    friend HermitianMatrix operator-(const HermitianMatrix& a) { return HermitianMatrix(-a.m_); }
    friend HermitianMatrix operator*(double s, const HermitianMatrix& a) { return HermitianMatrix(s * a.m_); }
    friend HermitianMatrix operator*(const HermitianMatrix& a, double s) { return s * a; }

    static void require_same_dim(const HermitianMatrix& a, const HermitianMatrix& b) {
        if (a.dim() != b.dim()) {
            throw DimensionError("dimension mismatch: " + std::to_string(a.dim()) + " vs " +
                                 std::to_string(b.dim()));
        }
    }

private:
    static ComplexMatrix symmetrize(const ComplexMatrix& x) {
        if (x.rows() != x.cols()) {
            throw DimensionError("matrix is not square: " + std::to_string(x.rows()) + "x" +
                                 std::to_string(x.cols()));
        }
        if (x.rows() == 0) {
            throw DimensionError("matrix dimension must be at least 1");
        }
        return (x + x.adjoint()) * 0.5;
    }

    ComplexMatrix m_;
};

/// Returns (X + X^H) / 2.
inline HermitianMatrix hermitianize(const ComplexMatrix& x) { return HermitianMatrix(x); }

inline double frobenius_norm(const HermitianMatrix& a) { return a.matrix().norm(); }

inline double frobenius_distance(const HermitianMatrix& a, const HermitianMatrix& b) {
    HermitianMatrix::require_same_dim(a, b);
    return (a.matrix() - b.matrix()).norm();
}

/// Eigenpairs of a Hermitian matrix, eigenvalues ascending.
struct SpectralDecomposition {
    RealVector eigenvalues;
    ComplexMatrix eigenvectors;  // unitary, columns are eigenvectors

    [[nodiscard]] Index dim() const { return eigenvalues.size(); }

    /// U diag(f(lambda_i)) U^H.
    template <typename F>
        requires std::invocable<F&, double>
    [[nodiscard]] HermitianMatrix map(F&& f) const {
        RealVector mapped(eigenvalues.size());
        for (Index i = 0; i < eigenvalues.size(); ++i) {
            mapped(i) = static_cast<double>(f(eigenvalues(i)));
        }
        return HermitianMatrix(eigenvectors * mapped.asDiagonal() * eigenvectors.adjoint());
    }

    [[nodiscard]] HermitianMatrix reconstruct() const {
        return map([](double x) { return x; });
    }
};

inline SpectralDecomposition eigh(const HermitianMatrix& a) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(a.matrix());
    if (solver.info() != Eigen::Success) {
        throw ConvergenceError("Hermitian eigensolver failed to converge");
    }
    return {solver.eigenvalues(), solver.eigenvectors()};
}

inline RealVector eigenvalues(const HermitianMatrix& a) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(a.matrix(), Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        throw ConvergenceError("Hermitian eigensolver failed to converge");
    }
    return solver.eigenvalues();
}

inline double min_eigenvalue(const HermitianMatrix& a) { return eigenvalues(a)(0); }
inline double max_eigenvalue(const HermitianMatrix& a) {
    const RealVector w = eigenvalues(a);
    return w(w.size() - 1);
}

/// Functional calculus: U diag(f(lambda)) U^H.
template <typename F>
    requires std::invocable<F&, double>
HermitianMatrix spectral_map(const HermitianMatrix& a, F&& f) {
    return eigh(a).map(std::forward<F>(f));
}

/// min eigenvalue >= -tol.
inline bool is_psd(const HermitianMatrix& a, double tol) { return min_eigenvalue(a) >= -tol; }

/// A <= B iff B - A >= 0 (at tolerance).
inline bool loewner_leq(const HermitianMatrix& a, const HermitianMatrix& b, double tol) {
    return is_psd(b - a, tol);
}

/// min eigenvalue >= +tol.
inline bool is_strictly_positive(const HermitianMatrix& a, double tol) { return min_eigenvalue(a) >= tol; }

enum class Ordering { Leq, NotLeq, Indeterminate };

inline const char* to_string(Ordering o) {
    switch (o) {
        case Ordering::Leq: return "leq";
        case Ordering::NotLeq: return "not-leq";
        case Ordering::Indeterminate: return "indeterminate";
    }
    return "?";
}

/// Three-valued Loewner comparison; `margin` is min eig(B - A).
struct LoewnerComparison {
    Ordering ordering;
    double margin;
};

inline LoewnerComparison compare_loewner(const HermitianMatrix& a, const HermitianMatrix& b, double tol) {
    const double m = min_eigenvalue(b - a);
    if (m >= tol) return {Ordering::Leq, m};
    if (m <= -tol) return {Ordering::NotLeq, m};
    return {Ordering::Indeterminate, m};
}

/// Positive square root. Eigenvalues in [-psd_clamp, 0) are clamped to zero.
inline HermitianMatrix sqrt_psd(const HermitianMatrix& a) {
    const SpectralDecomposition sd = eigh(a);
    if (sd.eigenvalues(0) < -tol::psd_clamp) {
        throw DomainError("sqrt_psd: matrix is not positive semidefinite (min eigenvalue " +
                          std::to_string(sd.eigenvalues(0)) + ")");
    }
    return sd.map([](double x) { return std::sqrt(std::max(x, 0.0)); });
}

/// Inverse via the spectral decomposition; the result is re-hermitianized.
inline HermitianMatrix inv_hermitian(const HermitianMatrix& a) {
    const SpectralDecomposition sd = eigh(a);
    const double smallest = sd.eigenvalues.cwiseAbs().minCoeff();
    if (smallest < tol::invertibility) {
        throw SingularError("inv_hermitian: matrix is singular to tolerance (min |eigenvalue| " +
                            std::to_string(smallest) + ")");
    }
    return sd.map([](double x) { return 1.0 / x; });
}

/// A^{-1/2} for strictly positive A.
inline HermitianMatrix inv_sqrt_pd(const HermitianMatrix& a) {
    const SpectralDecomposition sd = eigh(a);
    if (sd.eigenvalues(0) < tol::invertibility) {
        throw SingularError("inv_sqrt_pd: matrix is not strictly positive (min eigenvalue " +
                            std::to_string(sd.eigenvalues(0)) + ")");
    }
    return sd.map([](double x) { return 1.0 / std::sqrt(x); });
}

/// Spectral condition number max|lambda| / min|lambda| (infinity when singular).
inline double condition_number(const HermitianMatrix& a) {
    const RealVector w = eigenvalues(a).cwiseAbs();
    const double lo = w.minCoeff();
    return lo == 0.0 ? std::numeric_limits<double>::infinity() : w.maxCoeff() / lo;
}

}  // namespace effect_order
