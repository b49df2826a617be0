#include <gtest/gtest.h>

#include <numbers>

#include "effect_order/effect_order.hpp"
#include "oracles.hpp"

using namespace effect_order;
using namespace std::complex_literals;

namespace {

ComplexMatrix m2(Complex a, Complex b, Complex c, Complex d) {
    ComplexMatrix m(2, 2);
    m << a, b, c, d;
    return m;
}

ComplexVector v2(Complex a, Complex b) {
    ComplexVector v(2);
    v << a, b;
    return v;
}

}  // namespace

TEST(Operators, ApplyLinearAndAntilinear) {
    const ComplexVector x = v2(1.0, 1.0i);
    EXPECT_EQ(effect_order::apply(BoundedOperator::identity(2), x), x);
    EXPECT_EQ(effect_order::apply(BoundedOperator::conjugation(2), x), v2(1.0, -1.0i));
    const auto swap = BoundedOperator::antilinear(m2(0, 1, 1, 0));
    EXPECT_EQ(effect_order::apply(swap, v2(1.0i, 2.0)), v2(2.0, -1.0i));
}

TEST(Operators, AntilinearIsConjugateHomogeneous) {
    SamplerConfig cfg;
    cfg.dim = 3;
    cfg.kind_mix = 1.0;
    const BoundedOperator t = random_invertible_operator(cfg, 1);
    const ComplexVector x = random_vector(cfg, 2);
    const Complex lambda(0.3, -1.7);
    EXPECT_LT((effect_order::apply(t, lambda * x) - std::conj(lambda) * effect_order::apply(t, x)).norm(), 1e-13);
}

TEST(Operators, AdjointExamples) {
    const auto a = adjoint(BoundedOperator::linear(m2(0, 1, 0, 0)));
    EXPECT_EQ(a.kind(), Kind::Linear);
    EXPECT_EQ(a.matrix(), m2(0, 0, 1, 0));

    const auto c = adjoint(BoundedOperator::conjugation(2));
    EXPECT_EQ(c.kind(), Kind::Antilinear);
    EXPECT_EQ(c.matrix(), ComplexMatrix::Identity(2, 2));

    const auto t = BoundedOperator::antilinear(m2(0, 1.0i, 0, 0));
    const auto ta = adjoint(t);
    EXPECT_EQ(ta.kind(), Kind::Antilinear);
    EXPECT_EQ(ta.matrix(), m2(0, 0, 1.0i, 0));
}

TEST(Operators, AdjointIdentityOnBasisVectors) {
    // <Tx, y> = conj(<x, T* y>) for antilinear T; <Tx, y> = <x, T* y> for linear T.
    const auto t = BoundedOperator::antilinear(m2(0, 1.0i, 0, 0));
    const auto ta = adjoint(t);
    for (Index i = 0; i < 2; ++i) {
        for (Index j = 0; j < 2; ++j) {
            const ComplexVector x = ComplexVector::Unit(2, i);
            const ComplexVector y = ComplexVector::Unit(2, j);
            const Complex lhs = y.dot(effect_order::apply(t, x));
            const Complex rhs = std::conj(effect_order::apply(ta, y).dot(x));
            EXPECT_LT(std::abs(lhs - rhs), 1e-15);
        }
    }
    for (Kind kind : {Kind::Linear, Kind::Antilinear}) {
        for (Index n = 2; n <= 6; ++n) {
            SamplerConfig cfg;
            cfg.dim = n;
            cfg.kind_mix = kind == Kind::Antilinear ? 1.0 : 0.0;
            const BoundedOperator op = random_invertible_operator(cfg, 10);
            const ComplexVector x = random_vector(cfg, 11);
            const ComplexVector y = random_vector(cfg, 12);
            // <u, v> with the second argument conjugated: v.dot(u) = sum conj(v_i) u_i.
            const Complex lhs = y.dot(effect_order::apply(op, x));
            const Complex inner = effect_order::apply(adjoint(op), y).dot(x);
            const Complex rhs = kind == Kind::Antilinear ? std::conj(inner) : inner;
            EXPECT_LT(std::abs(lhs - rhs), 1e-12 * op.matrix().norm() * x.norm() * y.norm());
        }
    }
}

TEST(Operators, ComposeKindAlgebra) {
    const auto cc = compose(BoundedOperator::conjugation(2), BoundedOperator::conjugation(2));
    EXPECT_EQ(cc.kind(), Kind::Linear);
    EXPECT_EQ(cc.matrix(), ComplexMatrix::Identity(2, 2));

    const auto la = compose(BoundedOperator::linear(2.0 * ComplexMatrix::Identity(1, 1)),
                            BoundedOperator::conjugation(1));
    EXPECT_EQ(la.kind(), Kind::Antilinear);
    ComplexVector x(1);
    x << 1.0i;
    EXPECT_EQ(effect_order::apply(la, x)(0), Complex(0.0, -2.0));

    const auto al = compose(BoundedOperator::conjugation(1),
                            BoundedOperator::linear(1.0i * ComplexMatrix::Identity(1, 1)));
    EXPECT_EQ(al.kind(), Kind::Antilinear);
    EXPECT_EQ(al.matrix()(0, 0), Complex(0.0, -1.0));
}

TEST(Operators, ComposeMatchesPointwiseComposition) {
    for (double mix1 : {0.0, 1.0}) {
        for (double mix2 : {0.0, 1.0}) {
            SamplerConfig c1;
            c1.dim = 4;
            c1.kind_mix = mix1;
            SamplerConfig c2 = c1;
            c2.kind_mix = mix2;
            const auto t1 = random_invertible_operator(c1, 1);
            const auto t2 = random_invertible_operator(c2, 2);
            const auto t3 = random_invertible_operator(c1, 3);
            const ComplexVector x = random_vector(c1, 4);
            const ComplexVector direct = effect_order::apply(t1, effect_order::apply(t2, x));
            EXPECT_LT((effect_order::apply(compose(t1, t2), x) - direct).norm(), 1e-12);
            EXPECT_LT((compose(compose(t1, t2), t3).matrix() - compose(t1, compose(t2, t3)).matrix()).norm(),
                      1e-12);
        }
    }
}

TEST(Operators, CongruenceExamples) {
    const HermitianMatrix a(m2(1, 1.0i, -1.0i, 1));
    EXPECT_EQ(congruence(BoundedOperator::identity(2), a).matrix(), a.matrix());
    EXPECT_EQ(congruence(BoundedOperator::conjugation(2), a).matrix(), m2(1, -1.0i, 1.0i, 1));
    const auto d = BoundedOperator::linear(m2(2, 0, 0, 1));
    EXPECT_EQ(congruence(d, HermitianMatrix::identity(2)).matrix(), m2(4, 0, 0, 1));
}

TEST(Operators, CongruenceMatchesBasisOracle) {
    // T A T* assembled from the operator actions on basis vectors.
    for (double mix : {0.0, 1.0}) {
        for (Index n = 2; n <= 6; ++n) {
            SamplerConfig cfg;
            cfg.dim = n;
            cfg.kind_mix = mix;
            const BoundedOperator t = random_invertible_operator(cfg, 20);
            const HermitianMatrix a = random_hermitian(cfg, 21);
            const BoundedOperator ts = adjoint(t);
            const ComplexMatrix oracle = oracle::matrix_of(n, [&](const ComplexVector& e) {
                const ComplexVector u = effect_order::apply(ts, e);
                const ComplexVector v = a.matrix() * u;
                return effect_order::apply(t, v);
            });
            EXPECT_LT((congruence(t, a).matrix() - oracle).norm(), 1e-10);
        }
    }
}

TEST(Operators, NormAndSingularValues) {
    EXPECT_NEAR(operator_norm(BoundedOperator::identity(2)), 1.0, 1e-15);
    EXPECT_NEAR(operator_norm(BoundedOperator::linear(m2(3, 0, 0, 1))), 3.0, 1e-15);
    EXPECT_NEAR(operator_norm(BoundedOperator::antilinear(m2(0, 2, 0, 0))), 2.0, 1e-15);
    EXPECT_NEAR(condition_number(BoundedOperator::linear(m2(3, 0, 0, 1))), 3.0, 1e-14);
}

TEST(Operators, InvertExamples) {
    const auto a = invert(BoundedOperator::linear(2.0 * ComplexMatrix::Identity(2, 2)));
    EXPECT_EQ(a.kind(), Kind::Linear);
    EXPECT_LT((a.matrix() - 0.5 * ComplexMatrix::Identity(2, 2)).norm(), 1e-15);

    const auto c = invert(BoundedOperator::conjugation(2));
    EXPECT_EQ(c.kind(), Kind::Antilinear);
    EXPECT_LT((c.matrix() - ComplexMatrix::Identity(2, 2)).norm(), 1e-15);

    const auto i = invert(BoundedOperator::antilinear(1.0i * ComplexMatrix::Identity(2, 2)));
    EXPECT_EQ(i.kind(), Kind::Antilinear);
    EXPECT_LT((i.matrix() - 1.0i * ComplexMatrix::Identity(2, 2)).norm(), 1e-15);

    EXPECT_THROW(invert(BoundedOperator::linear(m2(1, 0, 0, 0))), SingularError);
}

TEST(Operators, InvertRoundTrip) {
    for (double mix : {0.0, 1.0}) {
        SamplerConfig cfg;
        cfg.dim = 5;
        cfg.kind_mix = mix;
        const BoundedOperator t = random_invertible_operator(cfg, 30);
        const ComplexVector x = random_vector(cfg, 31);
        EXPECT_LT((effect_order::apply(invert(t), effect_order::apply(t, x)) - x).norm(), 1e-10 * x.norm());
        const auto id = compose(t, invert(t));
        EXPECT_EQ(id.kind(), Kind::Linear);
        EXPECT_LT((id.matrix() - ComplexMatrix::Identity(5, 5)).norm(), 1e-10);
    }
}

TEST(Operators, PhaseEquivalence) {
    SamplerConfig cfg;
    cfg.dim = 3;
    cfg.kind_mix = 0.5;
    const BoundedOperator t = random_invertible_operator(cfg, 40);
    EXPECT_TRUE(phase_equiv(t, t, 1e-12));
    EXPECT_TRUE(phase_equiv(t, t.scaled(std::polar(1.0, std::numbers::pi / 3)), 1e-12));
    EXPECT_FALSE(phase_equiv(t, t.scaled(2.0), 1e-12));
    const BoundedOperator other(t.is_linear() ? Kind::Antilinear : Kind::Linear, t.matrix());
    EXPECT_FALSE(phase_equiv(t, other, 1e-12));
}

TEST(Operators, PhaseClassGroup) {
    SamplerConfig cfg;
    cfg.dim = 3;
    cfg.kind_mix = 0.5;
    const PhaseClass g(random_invertible_operator(cfg, 50));
    const PhaseClass z(random_invertible_operator(cfg, 50).scaled(std::polar(1.0, 0.7)));
    EXPECT_TRUE(g.equivalent(z, 1e-12));
    EXPECT_TRUE((g * g.inverse()).equivalent(PhaseClass(BoundedOperator::identity(3)), 1e-10));
}

TEST(Operators, DimensionErrors) {
    EXPECT_THROW(BoundedOperator::linear(ComplexMatrix(2, 3)), DimensionError);
    EXPECT_THROW(compose(BoundedOperator::identity(2), BoundedOperator::identity(3)), DimensionError);
    EXPECT_THROW(congruence(BoundedOperator::identity(2), HermitianMatrix::identity(3)), DimensionError);
}
