#pragma once

#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qdilog/motivic.hpp"
#include "qdilog/qpoly.hpp"
#include "qdilog/skew_series.hpp"

namespace qdilog {

/// Raised when a value violates a structural guarantee of the factorization
/// (for example a DT invariant that fails to be a Laurent polynomial in s).
/// Carries the offending value; the engine never rounds or truncates instead.
class PropertyViolation : public std::runtime_error {
  public:
    PropertyViolation(const std::string& what, std::string value)
        : std::runtime_error(what + ": " + value), value_(std::move(value)) {}

    const std::string& offending_value() const { return value_; }

  private:
    std::string value_;
};

namespace detail {

/// Visits every e with 0 <= e <= d componentwise, e != 0 and e != d.
template <typename Fn>
void for_each_proper_subvector(const DimVector& d, Fn&& fn) {
    DimVector e = DimVector::zero(d.size());
    while (true) {
        int i = 0;
        while (i < d.size() && e.e[static_cast<size_t>(i)] == d[i]) {
            e.e[static_cast<size_t>(i)] = 0;
            ++i;
        }
        if (i == d.size()) return;
        ++e.e[static_cast<size_t>(i)];
        if (!(e == d)) fn(e);
    }
}

}  // namespace detail

/// Semistable slope series obtained by inverting the slope-ordered product:
/// for each slope a, S_a = 1 + sum_{slope(d)=a} sigma_d t^d where, by
/// induction on kappa(d),
///   sigma_d = a_d - sum over decompositions d = d^1+...+d^s (s >= 2, slopes
///             strictly decreasing) of (-s)^(sum_{k<l} antisym(d^k,d^l))
///             prod_k sigma_{d^k},
/// with a_d the motivic coefficient.  Decompositions are enumerated by their
/// first part; the tail sums are memoized per (remainder, slope bound).
inline std::map<Rational, SkewSeries> hn_semistable_series(const ContextPtr& ctx) {
    auto vecs = vectors_up_to_weight(ctx->quiver(), ctx->stability(), ctx->weight_limit());
    std::map<DimVector, QCoeff> sigma;
    std::map<DimVector, Rational> slopes;
    for (const auto& d : vecs) slopes.emplace(d, ctx->slope_of(d));

    std::map<std::pair<DimVector, Rational>, QCoeff> tail_memo;
    // sum over decompositions of v into parts of strictly decreasing slopes,
    // all below the bound, weighted by twist and sigma factors
    std::function<const QCoeff&(const DimVector&, const Rational&)> tail =
        [&](const DimVector& v, const Rational& bound) -> const QCoeff& {
        auto key = std::make_pair(v, bound);
        auto found = tail_memo.find(key);
        if (found != tail_memo.end()) return found->second;
        QCoeff acc;
        if (slopes.at(v) < bound) acc = sigma.at(v);
        detail::for_each_proper_subvector(v, [&](const DimVector& e) {
            const QCoeff& se = sigma.at(e);
            if (se.is_zero()) return;
            const Rational& be = slopes.at(e);
            if (!(be < bound)) return;
            DimVector rest = v - e;
            const QCoeff& t = tail(rest, be);
            if (t.is_zero()) return;
            acc = acc + ctx->twist(e, rest) * se * t;
        });
        return tail_memo.emplace(std::move(key), std::move(acc)).first->second;
    };

    for (const auto& d : vecs) {
        QCoeff v = motive_coeff(ctx, d);
        detail::for_each_proper_subvector(d, [&](const DimVector& e) {
            const QCoeff& se = sigma.at(e);
            if (se.is_zero()) return;
            DimVector rest = d - e;
            const QCoeff& t = tail(rest, slopes.at(e));
            if (t.is_zero()) return;
            v = v - ctx->twist(e, rest) * se * t;
        });
        sigma.emplace(d, std::move(v));
    }

    std::map<Rational, SkewSeries> out;
    for (const auto& [d, c] : sigma) {
        if (c.is_zero()) continue;
        auto [it, inserted] = out.try_emplace(slopes.at(d), SkewSeries::one(ctx));
        it->second.set(d, c);
    }
    return out;
}

/// One row of the factorization: the DT invariant of a dimension vector, its
/// normalized polynomial form when defined, and the derived flags.
struct DTRecord {
    DimVector d;
    Rational slope;
    SLaurent dt;                            // in Q[s^(+-1)]
    std::optional<QPoly> p;                 // dt = (-s)^(<d,d>-1) p(q) when set
    bool stable = false;                    // dt != 0
    std::optional<std::string> violation;   // structural check failure, if any

    friend bool operator==(const DTRecord& a, const DTRecord& b) {
        return a.d == b.d && a.slope == b.slope && a.dt == b.dt && a.p == b.p &&
               a.stable == b.stable && a.violation == b.violation;
    }
};

/// DT invariants of one slope, from the factorization
///   S_a = prod_{slope(d)=a} Phi(t^d)^(DT_d):
/// with L = log S_a,
///   DT_d = (s^-1 - s) (L_d - sum_{n>=2, n | d} adams(DT_{d/n}, n)/(n (s^-n - s^n))),
/// processed by increasing kappa.  Every DT_d must come out a Laurent
/// polynomial in s; anything else raises a PropertyViolation.
inline std::vector<DTRecord> extract_dt(const SkewSeries& s_a, const Rational& a,
                                        const ContextPtr& ctx) {
    SkewSeries logs = log_slope(s_a, a);
    const QCoeff s_inv_minus_s =
        QCoeff::from_laurent(SLaurent(-1, {Rational(1), Rational(0), Rational(-1)}));

    std::vector<DTRecord> out;
    std::map<DimVector, QCoeff> dt;
    for (const auto& d : vectors_up_to_weight(ctx->quiver(), ctx->stability(),
                                              ctx->weight_limit())) {
        if (ctx->slope_of(d) != a) continue;
        QCoeff val = logs.coefficient(d);
        int max_entry = 0;
        for (int x : d.e) max_entry = std::max(max_entry, x);
        for (int n = 2; n <= max_entry; ++n) {
            if (!d.divisible_by(n)) continue;
            DimVector base = d.divided_by(n);
            if (ctx->slope_of(base) != a)
                throw std::logic_error("divisor " + base.to_string() + " of " + d.to_string() +
                                       " left the slope class");
            auto it = dt.find(base);
            if (it == dt.end() || it->second.is_zero()) continue;
            val = val - it->second.adams(n) * detail::log_phi_coefficient(n);
        }
        QCoeff value = val * s_inv_minus_s;
        if (!value.is_laurent())
            throw PropertyViolation("DT invariant of " + d.to_string() +
                                        " is not a Laurent polynomial in s",
                                    value.to_string());
        dt.emplace(d, value);
        DTRecord rec;
        rec.d = d;
        rec.slope = a;
        rec.dt = value.to_laurent();
        rec.stable = !value.is_zero();
        out.push_back(std::move(rec));
    }
    return out;
}

struct PConversion {
    std::optional<QPoly> p;
    std::optional<std::string> violation;
};

/// Normalizes a DT invariant to the polynomial P with dt = (-s)^(<d,d>-1) P(q).
/// Null for dt = 0.  Odd powers of s, negative powers, or coefficients outside
/// the naturals are reported as a violation carrying the offending value.
inline PConversion dt_to_p(const QuiverData& q, const DimVector& d, const SLaurent& dt) {
    PConversion r;
    if (dt.is_zero()) return r;
    long e = euler_form(q, d, d);
    QCoeff value = QCoeff::neg_s_power(static_cast<int>(1 - e)) * QCoeff::from_laurent(dt);
    QPoly p;
    try {
        p = qpoly_from_qcoeff(value);
    } catch (const std::domain_error& err) {
        r.violation = err.what();
        return r;
    }
    for (int k = 0; k <= p.degree(); ++k) {
        Rational c = p.coeff(k);
        if (!is_integer(c) || c < 0) {
            r.violation = "coefficient of q^" + std::to_string(k) + " is " + to_string(c) +
                          ", not a natural number, in " + p.to_string();
            return r;
        }
    }
    r.p = std::move(p);
    return r;
}

/// Full factorization table: HN semistable series, DT extraction per slope,
/// and the P normalization; sorted by decreasing slope, then increasing kappa.
inline std::vector<DTRecord> dt_table(const ContextPtr& ctx) {
    const SlopeSymmetry& sym = ctx->slope_symmetry();
    if (!sym.symmetric)
        throw std::logic_error(
            "DT extraction requires the Euler form to be symmetric on slope classes; violated at " +
            (sym.witness ? sym.witness->first.to_string() + ", " + sym.witness->second.to_string()
                         : std::string("unknown pair")));
    auto series = hn_semistable_series(ctx);

    std::map<Rational, SkewSeries> by_slope;
    for (const auto& d :
         vectors_up_to_weight(ctx->quiver(), ctx->stability(), ctx->weight_limit()))
        by_slope.try_emplace(ctx->slope_of(d), SkewSeries::one(ctx));
    for (auto& [a, s] : series) by_slope.insert_or_assign(a, std::move(s));

    std::vector<DTRecord> out;
    for (auto it = by_slope.rbegin(); it != by_slope.rend(); ++it) {
        auto records = extract_dt(it->second, it->first, ctx);
        for (auto& rec : records) {
            PConversion conv = dt_to_p(ctx->quiver(), rec.d, rec.dt);
            rec.p = std::move(conv.p);
            rec.violation = std::move(conv.violation);
            out.push_back(std::move(rec));
        }
    }
    return out;
}

/// prod Phi(t^d)^(DT_d) over the given records in their stored order: a single
/// slope's records reproduce that slope series, a full table reproduces the
/// whole factorization side.
inline SkewSeries rebuild_factorization(const ContextPtr& ctx,
                                        const std::vector<DTRecord>& records) {
    SkewSeries r = SkewSeries::one(ctx);
    for (const auto& rec : records) {
        if (rec.dt.is_zero()) continue;
        r = r * phi_power(ctx, DilogSpec{rec.d, rec.dt});
    }
    return r;
}

struct IdentityCheck {
    bool equal = false;
    std::optional<SeriesMismatch> witness;
};

inline IdentityCheck compare_series(const SkewSeries& a, const SkewSeries& b) {
    IdentityCheck r;
    r.witness = SkewSeries::first_difference(a, b);
    r.equal = !r.witness.has_value();
    return r;
}

/// The wall-crossing identity at the context's truncation: the ordered vertex
/// product, the motivic sum, and the slope-ordered semistable product must
/// agree as series.
struct WallCrossingCheck {
    IdentityCheck product_vs_sum;   // Phi(t_1)...Phi(t_n) vs sum_d a_d t^d
    IdentityCheck sum_vs_slopes;    // sum_d a_d t^d vs slope-ordered product

    bool ok() const { return product_vs_sum.equal && sum_vs_slopes.equal; }
};

inline WallCrossingCheck wall_crossing_check(const ContextPtr& ctx) {
    SkewSeries lhs = lhs_product(ctx);
    SkewSeries total = total_series(ctx);
    auto series = hn_semistable_series(ctx);
    SkewSeries prod = SkewSeries::one(ctx);
    for (auto it = series.rbegin(); it != series.rend(); ++it) prod = prod * it->second;
    WallCrossingCheck r;
    r.product_vs_sum = compare_series(lhs, total);
    r.sum_vs_slopes = compare_series(total, prod);
    return r;
}

}  // namespace qdilog
