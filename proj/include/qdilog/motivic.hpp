#pragma once

#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "qdilog/parallel.hpp"
#include "qdilog/qcoeff.hpp"
#include "qdilog/quiver.hpp"
#include "qdilog/skew_series.hpp"

namespace qdilog {

namespace detail {

/// Adds the cyclotomic factorization of (s^(2j) - 1) into an exponent map.
inline void add_two_j_atoms(std::map<int, int>& cyclo, int j) {
    for (int t = 1; t <= 2 * j; ++t)
        if ((2 * j) % t == 0) ++cyclo[t];
}

/// s^n / ((1-q)(1-q^2)...(1-q^n)), the n-th coefficient of the quantum
/// dilogarithm.
inline QCoeff phi_coefficient(int n) {
    std::map<int, int> cyclo;
    for (int i = 1; i <= n; ++i) add_two_j_atoms(cyclo, i);
    return QCoeff::make(Rational(n % 2 == 0 ? 1 : -1), n, ZPoly::one(), std::move(cyclo),
                        ZPoly::one());
}

/// 1 / (n * (s^-n - s^n)), the n-th coefficient of log Phi.
inline QCoeff log_phi_coefficient(int n) {
    std::map<int, int> cyclo;
    add_two_j_atoms(cyclo, n);
    return QCoeff::make(Rational(-1, n), n, ZPoly::one(), std::move(cyclo), ZPoly::one());
}

}  // namespace detail

/// Quantum dilogarithm Phi(t^d) = sum_n s^n t^(nd) / prod_{i<=n}(1 - s^(2i)),
/// truncated at the context weight; d must be nonzero.
inline SkewSeries phi_series(const ContextPtr& ctx, const DimVector& d) {
    check_sizes(ctx->quiver(), d);
    if (d.is_zero()) throw std::invalid_argument("Phi is undefined at the zero vector");
    SkewSeries r = SkewSeries::one(ctx);
    long w = ctx->weight(d);
    for (int n = 1; n * w <= ctx->weight_limit(); ++n)
        r.set(d * n, detail::phi_coefficient(n));
    return r;
}

/// A dilogarithm power Phi(t^base)^(exponent): the exponent is a Laurent
/// polynomial P = sum_k c_k (-s)^k encoding prod_k Phi(s^k t^base)^((-1)^k c_k).
/// Written on the s-coefficients p_k of P this is prod_k Phi(s^k t^base)^(p_k),
/// so all exponents must be integers.
struct DilogSpec {
    DimVector base;
    SLaurent exponent;  // value in s; exponent = 1 encodes a plain Phi(t^base)
};

inline SkewSeries phi_power(const ContextPtr& ctx, const DilogSpec& spec) {
    check_sizes(ctx->quiver(), spec.base);
    if (spec.base.is_zero())
        throw std::invalid_argument("Phi power is undefined at the zero vector");
    SkewSeries r = SkewSeries::one(ctx);
    if (spec.exponent.is_zero()) return r;
    long w = ctx->weight(spec.base);
    for (int k = spec.exponent.min_exp; k <= spec.exponent.max_exp(); ++k) {
        Rational p = spec.exponent.coeff(k);
        if (p == 0) continue;
        if (!is_integer(p))
            throw std::invalid_argument("dilogarithm exponent has non-integer coefficient " +
                                        to_string(p) + " at s^" + std::to_string(k));
        // Phi with the argument scaled by s^k
        SkewSeries factor = SkewSeries::one(ctx);
        for (int n = 1; n * w <= ctx->weight_limit(); ++n)
            factor.set(spec.base * n,
                       detail::phi_coefficient(n) * QCoeff::s_power(k * n));
        long e = p.get_num().get_si();
        if (e < 0) {
            factor = inverse(factor);
            e = -e;
        }
        for (long i = 0; i < e; ++i) r = r * factor;
    }
    return r;
}

/// Coefficient of t^d in the motivic generating series:
/// (-s)^<d,d> * [R_d] / [G_d] with [R_d] = q^(sum_{arrows i->j} d_i d_j) and
/// [G_d] = prod_i prod_{k<d_i} (q^(d_i) - q^k), as a rational function in s.
inline QCoeff motive_coeff(const ContextPtr& ctx, const DimVector& d) {
    const QuiverData& q = ctx->quiver();
    check_sizes(q, d);
    long euler_dd = euler_form(q, d, d);
    long arrow_sum = 0;
    for (const auto& [s, t] : q.arrows) arrow_sum += static_cast<long>(d[s]) * d[t];
    long shift = euler_dd + 2 * arrow_sum;
    std::map<int, int> cyclo;
    for (int i = 0; i < q.vertex_count; ++i) {
        shift -= static_cast<long>(d[i]) * (d[i] - 1);
        for (int j = 1; j <= d[i]; ++j) detail::add_two_j_atoms(cyclo, j);
    }
    bool negative = !ctx->faults().drop_motive_sign && (euler_dd % 2 != 0);
    return QCoeff::make(Rational(negative ? -1 : 1), static_cast<int>(shift), ZPoly::one(),
                        std::move(cyclo), ZPoly::one());
}

/// sum over all d with kappa(d) <= N of motive_coeff(d) t^d.
inline SkewSeries total_series(const ContextPtr& ctx) {
    auto vecs = vectors_up_to_weight(ctx->quiver(), ctx->stability(), ctx->weight_limit());
    std::vector<QCoeff> coeffs(vecs.size());
    parallel_for(vecs.size(), [&](size_t i) { coeffs[i] = motive_coeff(ctx, vecs[i]); });
    SkewSeries r = SkewSeries::one(ctx);
    for (size_t i = 0; i < vecs.size(); ++i) r.set(vecs[i], std::move(coeffs[i]));
    return r;
}

/// Phi(t_{i_1}) * ... * Phi(t_{i_n}) over the admissible vertex order.
inline SkewSeries lhs_product(const ContextPtr& ctx) {
    std::vector<SkewSeries> factors;
    for (int v : admissible_vertex_order(ctx->quiver()))
        factors.push_back(phi_series(ctx, DimVector::unit(ctx->quiver().vertex_count, v)));
    return ordered_product(ctx, factors);
}

}  // namespace qdilog
