#include <gtest/gtest.h>

#include "effect_order/effect_order.hpp"

using namespace effect_order;
using namespace std::complex_literals;

TEST(Effect, ValidatesUnitInterval) {
    EXPECT_NO_THROW(Effect(HermitianMatrix::diagonal({0.0, 1.0})));
    EXPECT_THROW(Effect(HermitianMatrix::diagonal({-0.1, 0.5})), DomainError);
    EXPECT_THROW(Effect(HermitianMatrix::diagonal({0.5, 1.1})), DomainError);
    const Effect clamped(HermitianMatrix::diagonal({-1e-12, 1.0 + 1e-12}));
    EXPECT_GE(min_eigenvalue(clamped.matrix()), 0.0);
    EXPECT_LE(max_eigenvalue(clamped.matrix()), 1.0);
}

TEST(Effect, Invertibility) {
    EXPECT_TRUE(Effect::identity(2).is_invertible(1e-9));
    EXPECT_FALSE(Effect::zero(2).is_invertible(1e-9));
    EXPECT_FALSE(Effect(HermitianMatrix::diagonal({1.0, 1e-12})).is_invertible(1e-9));
}

TEST(IntervalMaps, ToConeExamples) {
    EXPECT_LT(frobenius_norm(to_cone(Effect::identity(2), 1e-10)), 1e-15);
    EXPECT_LT(frobenius_distance(to_cone(Effect(0.5 * HermitianMatrix::identity(2)), 1e-10),
                                 HermitianMatrix::identity(2)),
              1e-15);
    EXPECT_LT(frobenius_distance(to_cone(Effect(HermitianMatrix::diagonal({1.0, 1.0 / 3.0})), 1e-10),
                                 HermitianMatrix::diagonal({0.0, 2.0})),
              1e-14);
    EXPECT_THROW(to_cone(Effect(HermitianMatrix::diagonal({0.0, 1.0})), 1e-10), SingularError);
}

TEST(IntervalMaps, FromConeExamples) {
    EXPECT_LT(frobenius_distance(from_cone(HermitianMatrix::zero(2)).matrix(), HermitianMatrix::identity(2)), 1e-15);
    EXPECT_LT(frobenius_distance(from_cone(HermitianMatrix::identity(2)).matrix(),
                                 0.5 * HermitianMatrix::identity(2)),
              1e-15);
    EXPECT_LT(frobenius_distance(from_cone(HermitianMatrix::diagonal({0.0, 2.0})).matrix(),
                                 HermitianMatrix::diagonal({1.0, 1.0 / 3.0})),
              1e-15);
    EXPECT_THROW(from_cone(HermitianMatrix::diagonal({-1.0, 2.0})), DomainError);
}

TEST(IntervalMaps, RoundTrip) {
    for (Index n = 1; n <= 6; ++n) {
        SamplerConfig cfg;
        cfg.dim = n;
        for (std::uint64_t s = 0; s < 10; ++s) {
            const Effect a = random_effect(cfg, s);
            EXPECT_LT(frobenius_distance(from_cone(to_cone(a, 1e-10)).matrix(), a.matrix()), 1e-12);
        }
    }
}

TEST(IntervalMaps, ConeAutomorphismExamples) {
    const HermitianMatrix x = HermitianMatrix::diagonal({0.5, 2.0});
    EXPECT_EQ(cone_automorphism(BoundedOperator::identity(2), x).matrix(), x.matrix());
    ComplexMatrix d(2, 2);
    d << 2, 0, 0, 1;
    EXPECT_LT(frobenius_distance(cone_automorphism(BoundedOperator::linear(d), HermitianMatrix::identity(2)),
                                 HermitianMatrix::diagonal({4.0, 1.0})),
              1e-15);
    ComplexMatrix a(2, 2);
    a << 1, 1.0i, -1.0i, 1;
    ComplexMatrix want(2, 2);
    want << 1, -1.0i, 1.0i, 1;
    EXPECT_EQ(cone_automorphism(BoundedOperator::conjugation(2), HermitianMatrix(a)).matrix(), want);
    ComplexMatrix singular(2, 2);
    singular << 1, 0, 0, 0;
    EXPECT_THROW(cone_automorphism(BoundedOperator::linear(singular), x), SingularError);
}

TEST(IntervalMaps, ConeAutomorphismPreservesOrder) {
    SamplerConfig cfg;
    cfg.dim = 4;
    cfg.kind_mix = 0.5;
    for (std::uint64_t s = 0; s < 20; ++s) {
        const OrderedPair ab = random_ordered_pair(cfg, s);
        const BoundedOperator t = random_invertible_operator(cfg, 1000 + s);
        const HermitianMatrix xa = to_cone(ab.upper, 1e-10);  // upper effect maps to lower cone element
        const HermitianMatrix xb = to_cone(ab.lower, 1e-10);
        EXPECT_GE(min_eigenvalue(cone_automorphism(t, xb) - cone_automorphism(t, xa)), -1e-9);
    }
}
