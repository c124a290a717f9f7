#include <gtest/gtest.h>

#include <random>

#include "qdilog/motivic.hpp"
#include "qdilog/skew_series.hpp"

namespace qdilog {
namespace {

ContextPtr kronecker_context(int m, int weight) {
    auto [q, st] = kronecker_quiver(m);
    return make_context(std::move(q), std::move(st), weight);
}

ContextPtr single_vertex_context(int weight) {
    QuiverData q;
    q.vertex_count = 1;
    Stability st{{0}, {1}};
    return make_context(std::move(q), std::move(st), weight);
}

QCoeff s_pow(int e) { return QCoeff::s_power(e); }

TEST(SkewMul, TwistRule) {
    for (int m : {2, 3}) {
        ContextPtr ctx = kronecker_context(m, 4);
        SkewSeries x = SkewSeries::monomial(ctx, {1, 0}, QCoeff::one());
        SkewSeries y = SkewSeries::monomial(ctx, {0, 1}, QCoeff::one());
        EXPECT_EQ((x * y).coefficient({1, 1}), QCoeff::neg_s_power(m));
        EXPECT_EQ((y * x).coefficient({1, 1}), QCoeff::neg_s_power(-m));
    }
}

TEST(SkewMul, UnitAndContextMismatch) {
    ContextPtr ctx = kronecker_context(2, 5);
    SkewSeries a = SkewSeries::monomial(ctx, {1, 1}, s_pow(3)) + SkewSeries::one(ctx);
    EXPECT_EQ(a * SkewSeries::one(ctx), a);
    EXPECT_EQ(SkewSeries::one(ctx) * a, a);

    ContextPtr other = kronecker_context(2, 6);
    EXPECT_THROW(a * SkewSeries::one(other), std::invalid_argument);
}

TEST(SkewMul, SkewCommutativityXYEqualsQmYX) {
    // x y = q^m y x, so the two products differ by q^antisym
    for (int m : {1, 2, 3}) {
        ContextPtr ctx = kronecker_context(m, 6);
        SkewSeries x = SkewSeries::monomial(ctx, {1, 0}, QCoeff::one());
        SkewSeries y = SkewSeries::monomial(ctx, {0, 1}, QCoeff::one());
        QCoeff lhs = (x * y).coefficient({1, 1});
        QCoeff rhs = (y * x).coefficient({1, 1}) * s_pow(2 * m);  // q^m
        EXPECT_EQ(lhs, rhs);
    }
}

TEST(SkewMul, TruncationDropsHeavyTerms) {
    ContextPtr ctx = kronecker_context(2, 2);
    SkewSeries a = SkewSeries::monomial(ctx, {1, 1}, QCoeff::one());
    EXPECT_TRUE((a * a).is_zero());
    EXPECT_THROW(a.coefficient({2, 2}), std::invalid_argument);
}

SkewSeries random_series(const ContextPtr& ctx, std::mt19937& rng, bool unit_constant) {
    auto vecs = vectors_up_to_weight(ctx->quiver(), ctx->stability(), ctx->weight_limit());
    std::uniform_int_distribution<size_t> pick(0, vecs.size() - 1);
    std::uniform_int_distribution<int> coeff(-3, 3);
    std::uniform_int_distribution<int> exp(-2, 2);
    SkewSeries s(ctx);
    if (unit_constant) s = SkewSeries::one(ctx);
    for (int t = 0; t < 4; ++t)
        s.add_to(vecs[pick(rng)], QCoeff::s_power(exp(rng), Rational(coeff(rng))));
    return s;
}

TEST(SkewMul, AssociativityOnRandomTriples) {
    ContextPtr ctx = kronecker_context(3, 5);
    std::mt19937 rng(42);
    for (int i = 0; i < 30; ++i) {
        SkewSeries a = random_series(ctx, rng, false);
        SkewSeries b = random_series(ctx, rng, false);
        SkewSeries c = random_series(ctx, rng, false);
        EXPECT_EQ((a * b) * c, a * (b * c));
    }
}

TEST(Inverse, OneAndGeometricSeries) {
    ContextPtr ctx = single_vertex_context(5);
    EXPECT_EQ(inverse(SkewSeries::one(ctx)), SkewSeries::one(ctx));

    // (1 + c t)^-1 = 1 - c t + c^2 t^2 - ...
    QCoeff c = s_pow(1) + QCoeff(2);
    SkewSeries a = SkewSeries::one(ctx) + SkewSeries::monomial(ctx, {1}, c);
    SkewSeries inv = inverse(a);
    QCoeff expect = QCoeff::one();
    for (int n = 1; n <= 5; ++n) {
        expect = -(expect * c);
        EXPECT_EQ(inv.coefficient({n}), expect);
    }
}

TEST(Inverse, TwoSidedOnRandomSeries) {
    ContextPtr ctx = kronecker_context(2, 4);
    std::mt19937 rng(43);
    for (int i = 0; i < 10; ++i) {
        SkewSeries a = random_series(ctx, rng, true);
        SkewSeries b = inverse(a);
        EXPECT_EQ(a * b, SkewSeries::one(ctx));
        EXPECT_EQ(b * a, SkewSeries::one(ctx));
    }
}

TEST(Inverse, RequiresUnitConstantTerm) {
    ContextPtr ctx = single_vertex_context(3);
    SkewSeries a = SkewSeries::monomial(ctx, {1}, QCoeff::one());
    EXPECT_THROW(inverse(a), std::invalid_argument);
    SkewSeries two = SkewSeries::monomial(ctx, {0}, QCoeff(2));
    EXPECT_THROW(inverse(two), std::invalid_argument);
}

ContextPtr checked(ContextPtr ctx) {
    ctx->slope_symmetry();
    return ctx;
}

TEST(LogSlope, ZeroAndTruncationEdge) {
    ContextPtr ctx = checked(single_vertex_context(5));
    EXPECT_TRUE(log_slope(SkewSeries::one(ctx), Rational(0)).is_zero());

    // weight 3 with truncation 5: the square already falls away
    SkewSeries a =
        SkewSeries::one(ctx) + SkewSeries::monomial(ctx, {3}, s_pow(2) + QCoeff(1));
    SkewSeries l = log_slope(a, Rational(0));
    EXPECT_EQ(l.coefficient({3}), s_pow(2) + QCoeff(1));
    EXPECT_EQ(l.terms().size(), 1u);
}

TEST(LogSlope, LogOfPhiMatchesClosedForm) {
    ContextPtr ctx = checked(single_vertex_context(8));
    SkewSeries phi = phi_series(ctx, DimVector{1});
    SkewSeries l = log_slope(phi, Rational(0));
    // log Phi(t) = sum_n t^n / (n (s^-n - s^n))
    for (int n = 1; n <= 8; ++n) {
        QCoeff expect = (QCoeff(n) * (s_pow(-n) - s_pow(n))).inverted();
        EXPECT_EQ(l.coefficient({n}), expect) << "n=" << n;
    }
}

TEST(LogSlope, ErrorsOnMixedSlopesAndUncheckedSymmetry) {
    ContextPtr ctx = kronecker_context(2, 4);
    SkewSeries mixed = SkewSeries::one(ctx) +
                       SkewSeries::monomial(ctx, {1, 1}, QCoeff::one()) +
                       SkewSeries::monomial(ctx, {1, 0}, QCoeff::one());
    EXPECT_THROW(log_slope(mixed, Rational(0)), std::logic_error);  // unchecked
    checked(ctx);
    EXPECT_THROW(log_slope(mixed, Rational(0)), std::invalid_argument);  // mixed slopes

    SkewSeries pure = SkewSeries::one(ctx) + SkewSeries::monomial(ctx, {1, 1}, s_pow(1));
    EXPECT_NO_THROW(log_slope(pure, Rational(0)));
}

TEST(LogSlope, ExpRoundTrip) {
    ContextPtr ctx = checked(kronecker_context(3, 6));
    std::mt19937 rng(44);
    std::uniform_int_distribution<int> coeff(-3, 3);
    for (int i = 0; i < 8; ++i) {
        // slope-pure series on the diagonal ray
        SkewSeries a = SkewSeries::one(ctx);
        for (int k = 1; k <= 3; ++k)
            a.add_to(DimVector{k, k}, QCoeff::s_power(coeff(rng), Rational(coeff(rng))));
        SkewSeries l = log_slope(a, Rational(0));
        EXPECT_EQ(detail::exp_slope(l, Rational(0)), a);
    }
}

TEST(OrderedProduct, EmptyAndSingle) {
    ContextPtr ctx = kronecker_context(1, 4);
    EXPECT_EQ(ordered_product(ctx, std::vector<SkewSeries>{}), SkewSeries::one(ctx));
    SkewSeries phi = phi_series(ctx, DimVector{1, 0});
    EXPECT_EQ(ordered_product(ctx, std::vector<SkewSeries>{phi}), phi);
}

TEST(OrderedProduct, FiveTermFactorsReproduceTheProduct) {
    ContextPtr ctx = kronecker_context(1, 8);
    std::vector<SkewSeries> rhs = {
        phi_series(ctx, DimVector{0, 1}),
        phi_series(ctx, DimVector{1, 1}),  // Phi(-q^(-1/2) x y) in the t-basis
        phi_series(ctx, DimVector{1, 0}),
    };
    SkewSeries lhs = phi_series(ctx, DimVector{1, 0}) * phi_series(ctx, DimVector{0, 1});
    EXPECT_EQ(ordered_product(ctx, rhs), lhs);
}

TEST(Coefficient, OfUnitSeries) {
    ContextPtr ctx = kronecker_context(2, 3);
    SkewSeries one = SkewSeries::one(ctx);
    EXPECT_EQ(one.coefficient({0, 0}), QCoeff::one());
    EXPECT_EQ(one.coefficient({1, 2}), QCoeff::zero());
    EXPECT_THROW(one.coefficient({4, 4}), std::invalid_argument);
}

}  // namespace
}  // namespace qdilog
