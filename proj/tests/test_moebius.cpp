#include <gtest/gtest.h>

#include "effect_order/effect_order.hpp"

using namespace effect_order;

TEST(Moebius, EvalExamples) {
    for (double p : {-5.0, -1.0, 0.0, 0.5, 0.9}) {
        EXPECT_EQ(eval(MoebiusParam(p), 0.0), 0.0);
        EXPECT_EQ(eval(MoebiusParam(p), 1.0), 1.0);
    }
    EXPECT_NEAR(eval(MoebiusParam(-1.0), 0.5), 1.0 / 3.0, 1e-16);
    EXPECT_EQ(eval(MoebiusParam(0.5), 1.0), 1.0);
}

TEST(Moebius, EvalDomain) {
    const MoebiusParam p(-1.0);
    EXPECT_EQ(p.domain_end(), 2.0);
    EXPECT_THROW(eval(p, 2.0), DomainError);
    EXPECT_THROW(eval(p, 3.0), DomainError);
    EXPECT_THROW(eval(p, -0.1), DomainError);
    EXPECT_NO_THROW(eval(MoebiusParam(0.5), 100.0));
}

TEST(Moebius, ParamRejectsOutOfRange) {
    EXPECT_THROW(MoebiusParam(1.0), DomainError);
    EXPECT_THROW(MoebiusParam(1.0 - 1e-13), DomainError);
    EXPECT_THROW(MoebiusParam(std::nan("")), DomainError);
    EXPECT_NO_THROW(MoebiusParam(1.0 - 1e-11));
}

TEST(Moebius, ComposeExamples) {
    EXPECT_EQ(compose(MoebiusParam(0.0), MoebiusParam(-0.25)).value(), -0.25);
    EXPECT_EQ(compose(MoebiusParam(-1.0), MoebiusParam(-1.0)).value(), -3.0);
    EXPECT_EQ(compose(MoebiusParam(0.5), MoebiusParam(-1.0)).value(), 0.0);
}

TEST(Moebius, InverseExamples) {
    EXPECT_EQ(inverse(MoebiusParam(0.0)).value(), 0.0);
    EXPECT_EQ(inverse(MoebiusParam(0.5)).value(), -1.0);
    EXPECT_EQ(inverse(MoebiusParam(-1.0)).value(), 0.5);
}

TEST(Moebius, PositiveRealIsomorphism) {
    EXPECT_EQ(from_positive_real(1.0).value(), 0.0);
    EXPECT_EQ(from_positive_real(0.5).value(), 0.5);
    EXPECT_EQ(compose(from_positive_real(2.0), from_positive_real(3.0)).value(), -5.0);
    EXPECT_EQ(from_positive_real(6.0).value(), -5.0);
    EXPECT_THROW(from_positive_real(0.0), DomainError);
    EXPECT_EQ(to_positive_real(MoebiusParam(-5.0)), 6.0);
}

TEST(Moebius, CompositionIsPointwise) {
    // Direct nested evaluation of the fractional-linear maps.
    auto f = [](double p, double x) { return x / (p * x + 1.0 - p); };
    for (double p : {-9.0, -2.0, -0.3, 0.2, 0.8}) {
        for (double q : {-4.0, -1.0, 0.0, 0.6}) {
            const MoebiusParam pq = compose(MoebiusParam(p), MoebiusParam(q));
            for (int i = 0; i <= 100; ++i) {
                const double x = i / 100.0;
                EXPECT_NEAR(eval(pq, x), f(p, f(q, x)), 1e-12);
            }
        }
    }
}

TEST(Moebius, MatrixExamples) {
    const MoebiusParam p(-1.0);
    EXPECT_EQ(eval_matrix_spectral(p, HermitianMatrix::zero(2)).matrix(), ComplexMatrix::Zero(2, 2));
    EXPECT_LT((eval_matrix_spectral(p, HermitianMatrix::identity(2)).matrix() - ComplexMatrix::Identity(2, 2)).norm(),
              1e-15);
    const auto a = HermitianMatrix::diagonal({0.5, 1.0});
    const auto want = HermitianMatrix::diagonal({1.0 / 3.0, 1.0});
    EXPECT_LT(frobenius_distance(eval_matrix_spectral(p, a), want), 1e-15);
    EXPECT_LT(frobenius_distance(eval_matrix_resolvent(p, a), want), 1e-15);
    for (double q : {-3.0, -0.5, 0.3, 0.7}) {
        EXPECT_LT(frobenius_distance(eval_matrix_resolvent(MoebiusParam(q), HermitianMatrix::identity(3)),
                                     HermitianMatrix::identity(3)),
                  1e-14);
    }
}

TEST(Moebius, DualRouteAgreement) {
    ComplexMatrix m(2, 2);
    m << 0.5, 0.25, 0.25, 0.5;
    const HermitianMatrix a(m);
    const MoebiusParam p(0.5);
    EXPECT_LT(frobenius_distance(eval_matrix_spectral(p, a), eval_matrix_resolvent(p, a)), 1e-10);
    // f_{1/2}(x) = 2x / (1 + x), entry by entry through the hand-computed eigenbasis.
    const double l1 = 0.25;
    const double l2 = 0.75;
    const double g1 = 2 * l1 / (1 + l1);
    const double g2 = 2 * l2 / (1 + l2);
    ComplexMatrix want(2, 2);
    want << (g1 + g2) / 2, (g2 - g1) / 2, (g2 - g1) / 2, (g1 + g2) / 2;
    EXPECT_LT((eval_matrix_spectral(p, a).matrix() - want).norm(), 1e-15);
}

TEST(Moebius, ResolventRejectsIdentityParameter) {
    EXPECT_THROW(eval_matrix_resolvent(MoebiusParam(0.0), HermitianMatrix::identity(2)), DomainError);
}

TEST(Moebius, MatrixRoutesRejectSpectraBeyondMargin) {
    const MoebiusParam p(-1.0);  // pole at 2, admissible up to 1.95
    EXPECT_NO_THROW(eval_matrix_spectral(p, HermitianMatrix::diagonal({0.0, 1.9})));
    EXPECT_THROW(eval_matrix_spectral(p, HermitianMatrix::diagonal({0.0, 1.99})), DomainError);
    EXPECT_THROW(eval_matrix_resolvent(p, HermitianMatrix::diagonal({-0.1, 1.0})), DomainError);
}

TEST(Moebius, OperatorMonotoneOnRandomPairs) {
    for (double pv : {-2.0, -0.5, 0.3, 0.7}) {
        const MoebiusParam p(pv);
        for (Index n = 2; n <= 4; ++n) {
            SamplerConfig cfg;
            cfg.dim = n;
            for (std::uint64_t s = 0; s < 20; ++s) {
                const OrderedPair ab = random_ordered_pair(cfg, s);
                const HermitianMatrix fa = eval_matrix_spectral(p, ab.lower.matrix());
                const HermitianMatrix fb = eval_matrix_spectral(p, ab.upper.matrix());
                EXPECT_GE(min_eigenvalue(fb - fa), -1e-8);
            }
        }
    }
}
