#include <gtest/gtest.h>

#include <cstdint>
#include <vector>

#include "qdilog/motivic.hpp"
#include "qdilog/wallcross.hpp"

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
    auto ctx = make_context(std::move(q), std::move(st), weight);
    ctx->slope_symmetry();
    return ctx;
}

QCoeff s_pow(int e) { return QCoeff::s_power(e); }

TEST(PhiSeries, LeadingCoefficients) {
    ContextPtr ctx = single_vertex_context(6);
    SkewSeries phi = phi_series(ctx, DimVector{1});
    EXPECT_EQ(phi.coefficient({0}), QCoeff::one());
    // n = 1: s / (1 - s^2)
    EXPECT_EQ(phi.coefficient({1}), s_pow(1) / (QCoeff(1) - s_pow(2)));
    // n = 2: s^2 / ((1-s^2)(1-s^4))
    EXPECT_EQ(phi.coefficient({2}),
              s_pow(2) / ((QCoeff(1) - s_pow(2)) * (QCoeff(1) - s_pow(4))));
    EXPECT_THROW(phi_series(ctx, DimVector{0}), std::invalid_argument);
}

// ---------------------------------------------------------------------------
// The three defining forms of Phi, compared to x-order 20.
//
// The exponential form is computed exactly in the rational-function ring.  The
// product form is checked two ways: exactly through its functional equation
// F(x) = F(q x) / (1 - s x), which pins down the infinite product uniquely,
// and directly by expanding the finite partial product as a power-series jet
// in s (the omitted factors only contribute above the jet order).
// ---------------------------------------------------------------------------

constexpr int kOrder = 20;

TEST(PhiForms, SumEqualsExponentialForm) {
    ContextPtr ctx = single_vertex_context(kOrder);
    SkewSeries expo(ctx);
    for (int n = 1; n <= kOrder; ++n) {
        // x^n / (n (s^-n - s^n))
        QCoeff c = (QCoeff(n) * (s_pow(-n) - s_pow(n))).inverted();
        expo.set(DimVector{n}, c);
    }
    EXPECT_EQ(detail::exp_slope(expo, Rational(0)), phi_series(ctx, DimVector{1}));
}

TEST(PhiForms, SumSatisfiesProductFunctionalEquation) {
    ContextPtr ctx = single_vertex_context(kOrder);
    SkewSeries phi = phi_series(ctx, DimVector{1});
    SkewSeries phi_qx(ctx);
    for (const auto& [d, c] : phi.terms()) phi_qx.set(d, c * s_pow(2 * d[0]));
    SkewSeries geometric(ctx);  // 1/(1 - s x)
    for (int n = 0; n <= kOrder; ++n) geometric.set(DimVector{n}, s_pow(n));
    EXPECT_EQ(phi, phi_qx * geometric);
}

// dense jets in s modulo s^(bound+1)
using Jet = std::vector<int64_t>;

Jet jet_mul(const Jet& a, const Jet& b, int bound) {
    Jet r(static_cast<size_t>(bound) + 1, 0);
    for (int i = 0; i <= bound; ++i) {
        if (a[static_cast<size_t>(i)] == 0) continue;
        for (int j = 0; i + j <= bound; ++j)
            r[static_cast<size_t>(i + j)] += a[static_cast<size_t>(i)] * b[static_cast<size_t>(j)];
    }
    return r;
}

TEST(PhiForms, SumMatchesExpandedFiniteProductJet) {
    constexpr int kFactors = kOrder;        // factors n = 0..20
    constexpr int kJet = 2 * kFactors + 1;  // omitted factors start at s^(2*21+1)

    // product form: coefficients of prod_{n=0..20} sum_j s^((2n+1)j) x^j
    std::vector<Jet> product(kOrder + 1, Jet(kJet + 1, 0));
    product[0][0] = 1;
    for (int n = 0; n <= kFactors; ++n) {
        std::vector<Jet> next(kOrder + 1, Jet(kJet + 1, 0));
        for (int deg = 0; deg <= kOrder; ++deg)
            for (int j = 0; deg + j <= kOrder; ++j) {
                int shift = (2 * n + 1) * j;
                if (shift > kJet) break;
                for (int t = 0; t + shift <= kJet; ++t)
                    next[static_cast<size_t>(deg + j)][static_cast<size_t>(t + shift)] +=
                        product[static_cast<size_t>(deg)][static_cast<size_t>(t)];
            }
        product = std::move(next);
    }

    // sum form: jet of s^k / prod_{i<=k} (1 - s^(2i))
    Jet geom_base(kJet + 1, 0);
    for (int k = 0; k <= kOrder; ++k) {
        Jet c(kJet + 1, 0);
        if (k <= kJet) c[static_cast<size_t>(k)] = 1;
        for (int i = 1; i <= k; ++i) {
            Jet inv(kJet + 1, 0);  // 1/(1 - s^(2i)) = sum_j s^(2ij)
            for (int j = 0; 2 * i * j <= kJet; ++j) inv[static_cast<size_t>(2 * i * j)] = 1;
            c = jet_mul(c, inv, kJet);
        }
        EXPECT_EQ(product[static_cast<size_t>(k)], c) << "x-degree " << k;
    }
}

TEST(PhiPower, TrivialExponents) {
    ContextPtr ctx = kronecker_context(2, 6);
    DimVector d{1, 1};
    EXPECT_EQ(phi_power(ctx, {d, SLaurent::monomial(0)}), phi_series(ctx, d));
    EXPECT_EQ(phi_power(ctx, {d, SLaurent()}), SkewSeries::one(ctx));
}

TEST(PhiPower, CentralFactorsOfTheTameIdentity) {
    // exponent (-s)^-1 + (-s) = -s^-1 - s encodes
    // Phi(s^-1 t)^-1 * Phi(s t)^-1 on the base ray
    ContextPtr ctx = kronecker_context(2, 8);
    DimVector d{1, 1};
    SLaurent dt(-1, {Rational(-1), Rational(0), Rational(-1)});
    SkewSeries got = phi_power(ctx, {d, dt});

    auto shifted_phi = [&](int k) {
        SkewSeries f = SkewSeries::one(ctx);
        for (int n = 1; 2 * n <= 8; ++n)
            f.set(d * n, detail::phi_coefficient(n) * s_pow(k * n));
        return f;
    };
    SkewSeries expect = inverse(shifted_phi(-1)) * inverse(shifted_phi(1));
    EXPECT_EQ(got, expect);
}

TEST(PhiPower, RejectsFractionalExponents) {
    ContextPtr ctx = kronecker_context(1, 4);
    SLaurent bad(0, {make_rational(1, 2)});
    EXPECT_THROW(phi_power(ctx, {DimVector{1, 0}, bad}), std::invalid_argument);
}

TEST(MotiveCoeff, ClosedFormValues) {
    ContextPtr ctx = kronecker_context(3, 6);
    EXPECT_EQ(motive_coeff(ctx, {0, 0}), QCoeff::one());
    // unit vector: s/(1-s^2), which is Phi's first coefficient
    EXPECT_EQ(motive_coeff(ctx, {1, 0}), s_pow(1) / (QCoeff(1) - s_pow(2)));
    EXPECT_EQ(motive_coeff(ctx, {0, 1}), s_pow(1) / (QCoeff(1) - s_pow(2)));
    // (1,1) for K_m: (-s)^(2-m) s^(2m) / (q-1)^2
    for (int m = 1; m <= 4; ++m) {
        ContextPtr c = kronecker_context(m, 4);
        QCoeff q_minus_1 = s_pow(2) - QCoeff(1);
        QCoeff expect = QCoeff::neg_s_power(2 - m) * s_pow(2 * m) / (q_minus_1 * q_minus_1);
        EXPECT_EQ(motive_coeff(c, {1, 1}), expect) << "m=" << m;
    }
}

TEST(TotalSeries, TrivialTruncation) {
    ContextPtr ctx = kronecker_context(2, 0);
    EXPECT_EQ(total_series(ctx), SkewSeries::one(ctx));
}

TEST(TotalSeries, MatchesOrderedDilogProductKronecker) {
    for (int m : {1, 2, 3}) {
        ContextPtr ctx = kronecker_context(m, 8);
        EXPECT_EQ(lhs_product(ctx), total_series(ctx)) << "m=" << m;
    }
}

TEST(TotalSeries, MatchesOrderedDilogProductPathQuiver) {
    QuiverData q;
    q.vertex_count = 3;
    q.arrows = {{2, 1}, {1, 0}};
    Stability st{{-1, 0, 1}, {1, 1, 1}};
    ContextPtr ctx = make_context(std::move(q), std::move(st), 6);
    EXPECT_EQ(lhs_product(ctx), total_series(ctx));
}

TEST(LhsProduct, SingleVertexIsPlainPhi) {
    ContextPtr ctx = single_vertex_context(7);
    EXPECT_EQ(lhs_product(ctx), phi_series(ctx, DimVector{1}));
}

TEST(LhsProduct, KroneckerIsPhiXPhiY) {
    ContextPtr ctx = kronecker_context(3, 6);
    SkewSeries expect =
        phi_series(ctx, DimVector{1, 0}) * phi_series(ctx, DimVector{0, 1});
    EXPECT_EQ(lhs_product(ctx), expect);
}

}  // namespace
}  // namespace qdilog
