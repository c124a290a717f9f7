#pragma once

#include <map>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "qdilog/qcoeff.hpp"
#include "qdilog/quiver.hpp"

namespace qdilog {

/// Deliberate convention corruptions, used by the self-check suite to confirm
/// that the identity checks actually detect a wrong sign.
struct EngineFaults {
    bool drop_twist_sign = false;   // use s^antisym instead of (-s)^antisym
    bool drop_motive_sign = false;  // use s^<d,d> instead of (-s)^<d,d>

    friend bool operator==(const EngineFaults& a, const EngineFaults& b) {
        return a.drop_twist_sign == b.drop_twist_sign &&
               a.drop_motive_sign == b.drop_motive_sign;
    }
};

/// Shared ambient data of a truncated quantum affine space: the quiver, the
/// stability, and the truncation weight N (terms t^d with kappa(d) > N are
/// dropped).  Series are comparable only in equal contexts.
class SeriesContext {
  public:
    SeriesContext(QuiverData q, Stability st, int weight_limit, EngineFaults faults = {})
        : quiver_(std::move(q)), stability_(std::move(st)), weight_limit_(weight_limit),
          faults_(faults) {
        if (weight_limit_ < 0) throw std::invalid_argument("truncation weight must be >= 0");
        check_stability(quiver_, stability_);
        (void)admissible_vertex_order(quiver_);  // rejects cyclic quivers early
    }

    const QuiverData& quiver() const { return quiver_; }
    const Stability& stability() const { return stability_; }
    int weight_limit() const { return weight_limit_; }
    const EngineFaults& faults() const { return faults_; }

    long weight(const DimVector& d) const { return kappa_of(stability_, d); }
    Rational slope_of(const DimVector& d) const { return slope(stability_, d); }
    long antisym_of(const DimVector& d, const DimVector& e) const {
        return antisym(quiver_, d, e);
    }

    /// (-s)^antisym(d,e), or s^antisym(d,e) under the twist fault.
    QCoeff twist(const DimVector& d, const DimVector& e) const {
        long a = antisym_of(d, e);
        return faults_.drop_twist_sign ? QCoeff::s_power(static_cast<int>(a))
                                       : QCoeff::neg_s_power(static_cast<int>(a));
    }

    /// Runs the bounded slope-symmetry check once and caches the result.
    const SlopeSymmetry& slope_symmetry() const {
        if (!symmetry_)
            symmetry_ = check_slope_symmetry(quiver_, stability_, weight_limit_);
        return *symmetry_;
    }
    bool symmetry_checked() const { return symmetry_.has_value(); }

    friend bool operator==(const SeriesContext& a, const SeriesContext& b) {
        return a.quiver_ == b.quiver_ && a.stability_ == b.stability_ &&
               a.weight_limit_ == b.weight_limit_ && a.faults_ == b.faults_;
    }

  private:
    QuiverData quiver_;
    Stability stability_;
    int weight_limit_;
    EngineFaults faults_;
    mutable std::optional<SlopeSymmetry> symmetry_;
};

using ContextPtr = std::shared_ptr<const SeriesContext>;

inline ContextPtr make_context(QuiverData q, Stability st, int weight_limit,
                               EngineFaults faults = {}) {
    return std::make_shared<SeriesContext>(std::move(q), std::move(st), weight_limit, faults);
}

struct SeriesMismatch {
    DimVector d;
    QCoeff lhs;
    QCoeff rhs;

    std::string to_string() const {
        return "t^" + d.to_string() + ": " + lhs.to_string() + " vs " + rhs.to_string();
    }
};

/// Truncated formal series sum_d c_d t^d on the dimension-vector lattice with
/// the twisted product t^d t^e = (-s)^(<d,e>-<e,d>) t^(d+e).  Immutable value
/// semantics; zero coefficients are never stored.
class SkewSeries {
  public:
    explicit SkewSeries(ContextPtr ctx) : ctx_(std::move(ctx)) {}

    static SkewSeries one(ContextPtr ctx) {
        SkewSeries s(std::move(ctx));
        s.set(DimVector::zero(s.ctx_->quiver().vertex_count), QCoeff::one());
        return s;
    }

    static SkewSeries monomial(ContextPtr ctx, const DimVector& d, QCoeff c) {
        SkewSeries s(std::move(ctx));
        check_sizes(s.ctx_->quiver(), d);
        if (s.ctx_->weight(d) > s.ctx_->weight_limit())
            throw std::invalid_argument("monomial weight exceeds the truncation");
        s.set(d, std::move(c));
        return s;
    }

    const ContextPtr& context() const { return ctx_; }
    const std::map<DimVector, QCoeff>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    /// Stored coefficient of t^d, or 0; undefined beyond the truncation.
    QCoeff coefficient(const DimVector& d) const {
        check_sizes(ctx_->quiver(), d);
        if (ctx_->weight(d) > ctx_->weight_limit())
            throw std::invalid_argument("coefficient of " + d.to_string() +
                                        " lies beyond truncation weight " +
                                        std::to_string(ctx_->weight_limit()));
        auto it = terms_.find(d);
        return it == terms_.end() ? QCoeff::zero() : it->second;
    }

    QCoeff constant_term() const {
        auto it = terms_.find(DimVector::zero(ctx_->quiver().vertex_count));
        return it == terms_.end() ? QCoeff::zero() : it->second;
    }

    void set(const DimVector& d, QCoeff c) {
        if (c.is_zero())
            terms_.erase(d);
        else
            terms_[d] = std::move(c);
    }

    void add_to(const DimVector& d, const QCoeff& c) {
        if (c.is_zero()) return;
        auto [it, inserted] = terms_.emplace(d, c);
        if (!inserted) {
            it->second = it->second + c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    friend SkewSeries operator+(const SkewSeries& a, const SkewSeries& b) {
        a.require_same_context(b);
        SkewSeries r = a;
        for (const auto& [d, c] : b.terms_) r.add_to(d, c);
        return r;
    }

    friend SkewSeries operator-(const SkewSeries& a, const SkewSeries& b) {
        a.require_same_context(b);
        SkewSeries r = a;
        for (const auto& [d, c] : b.terms_) r.add_to(d, -c);
        return r;
    }

    SkewSeries operator*(const QCoeff& c) const {
        SkewSeries r(ctx_);
        if (c.is_zero()) return r;
        for (const auto& [d, v] : terms_) r.terms_[d] = v * c;
        return r;
    }

    /// Twisted product; terms beyond the truncation weight are dropped.
    friend SkewSeries operator*(const SkewSeries& a, const SkewSeries& b) {
        a.require_same_context(b);
        const int limit = a.ctx_->weight_limit();
        SkewSeries r(a.ctx_);
        for (const auto& [d, cd] : a.terms_) {
            long wd = a.ctx_->weight(d);
            for (const auto& [e, ce] : b.terms_) {
                if (wd + a.ctx_->weight(e) > limit) continue;
                r.add_to(d + e, a.ctx_->twist(d, e) * cd * ce);
            }
        }
        return r;
    }

    friend bool operator==(const SkewSeries& a, const SkewSeries& b) {
        a.require_same_context(b);
        return a.terms_ == b.terms_;
    }
    friend bool operator!=(const SkewSeries& a, const SkewSeries& b) { return !(a == b); }

    /// First differing term in (weight, lex) order, if any.
    static std::optional<SeriesMismatch> first_difference(const SkewSeries& a,
                                                          const SkewSeries& b) {
        a.require_same_context(b);
        std::optional<DimVector> best;
        auto consider = [&](const DimVector& d) {
            QCoeff ca = a.coefficient(d), cb = b.coefficient(d);
            if (ca == cb) return;
            if (!best) {
                best = d;
                return;
            }
            long wd = a.ctx_->weight(d), wb = a.ctx_->weight(*best);
            if (wd < wb || (wd == wb && d < *best)) best = d;
        };
        for (const auto& [d, c] : a.terms_) consider(d);
        for (const auto& [d, c] : b.terms_) consider(d);
        if (!best) return std::nullopt;
        return SeriesMismatch{*best, a.coefficient(*best), b.coefficient(*best)};
    }

  private:
    void require_same_context(const SkewSeries& other) const {
        if (ctx_ != other.ctx_ && !(*ctx_ == *other.ctx_))
            throw std::invalid_argument("series context mismatch");
    }

    ContextPtr ctx_;
    std::map<DimVector, QCoeff> terms_;
};

/// Left-to-right product of the given factors; empty product is 1.
inline SkewSeries ordered_product(ContextPtr ctx, std::span<const SkewSeries> factors) {
    SkewSeries r = SkewSeries::one(std::move(ctx));
    for (const auto& f : factors) r = r * f;
    return r;
}

inline SkewSeries ordered_product(ContextPtr ctx, const std::vector<SkewSeries>& factors) {
    return ordered_product(std::move(ctx), std::span<const SkewSeries>(factors));
}

/// Multiplicative inverse of a series with constant term 1, by weight-graded
/// recursion; two-sided up to the truncation.
inline SkewSeries inverse(const SkewSeries& a) {
    const ContextPtr& ctx = a.context();
    if (!a.constant_term().is_one())
        throw std::invalid_argument("series inverse requires constant term 1");
    SkewSeries b = SkewSeries::one(ctx);
    auto vecs = vectors_up_to_weight(ctx->quiver(), ctx->stability(), ctx->weight_limit());
    for (const DimVector& f : vecs) {
        QCoeff acc;
        for (const auto& [d, cd] : a.terms()) {
            if (d.is_zero() || !d.leq(f) || d == f) continue;
            DimVector e = f - d;
            QCoeff be = b.coefficient(e);
            if (be.is_zero()) continue;
            acc = acc + ctx->twist(d, e) * cd * be;
        }
        QCoeff af = a.coefficient(f);
        b.set(f, -(acc + af));
    }
    return b;
}

namespace detail {

/// Requires every key of x to share one slope (so all terms commute) and a
/// zero constant term.
inline void require_slope_pure(const SkewSeries& x, const Rational& a) {
    for (const auto& [d, c] : x.terms()) {
        if (d.is_zero())
            throw std::invalid_argument("slope-pure series must have zero constant term");
        if (x.context()->slope_of(d) != a)
            throw std::invalid_argument("mixed slopes: " + d.to_string() + " has slope " +
                                        to_string(x.context()->slope_of(d)) +
                                        ", expected " + to_string(a));
    }
}

/// exp of a slope-pure series with zero constant term (test support only).
inline SkewSeries exp_slope(const SkewSeries& x, const Rational& a) {
    require_slope_pure(x, a);
    SkewSeries r = SkewSeries::one(x.context());
    SkewSeries power = SkewSeries::one(x.context());
    Rational factorial(1);
    for (int k = 1; !power.is_zero() && k <= x.context()->weight_limit() + 1; ++k) {
        power = power * x;
        factorial *= k;
        if (power.is_zero()) break;
        r = r + power * QCoeff(Rational(1) / factorial);
    }
    return r;
}

}  // namespace detail

/// Formal logarithm of a series 1 + X with X supported on a single slope a.
/// Well-defined because the slope-a component is commutative once the Euler
/// form is symmetric on slope classes; errors if that check has not passed.
inline SkewSeries log_slope(const SkewSeries& s, const Rational& a) {
    const ContextPtr& ctx = s.context();
    if (!ctx->symmetry_checked())
        throw std::logic_error("log_slope requires the slope-symmetry check to have run");
    if (!ctx->slope_symmetry().symmetric) {
        const auto& w = ctx->slope_symmetry().witness;
        throw std::logic_error("log_slope requires a symmetric Euler form on slope classes; "
                               "violated at " +
                               (w ? w->first.to_string() + ", " + w->second.to_string()
                                  : std::string("unknown pair")));
    }
    if (!s.constant_term().is_one())
        throw std::invalid_argument("log_slope requires constant term 1");
    SkewSeries x = s - SkewSeries::one(ctx);
    detail::require_slope_pure(x, a);
    SkewSeries r(ctx);
    SkewSeries power = SkewSeries::one(ctx);
    for (int k = 1; k <= ctx->weight_limit() + 1; ++k) {
        power = power * x;
        if (power.is_zero()) break;
        Rational c = Rational((k % 2 == 0) ? -1 : 1, k);
        r = r + power * QCoeff(c);
    }
    return r;
}

}  // namespace qdilog
