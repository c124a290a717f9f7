#pragma once

#include <algorithm>
#include <cassert>
#include <stdexcept>
#include <utility>
#include <vector>

#include "qdilog/rational.hpp"

namespace qdilog {

/// Dense univariate polynomial with arbitrary-precision integer coefficients,
/// indexed low to high, trailing zeros trimmed (zero polynomial = empty list).
class ZPoly {
  public:
    ZPoly() = default;
    explicit ZPoly(std::vector<Integer> coeffs) : c_(std::move(coeffs)) { trim(); }
    explicit ZPoly(long constant) {
        if (constant != 0) c_.assign(1, Integer(constant));
    }

    static ZPoly one() { return ZPoly(1); }

    /// c * x^k
    static ZPoly monomial(int k, Integer coeff = Integer(1)) {
        if (coeff == 0) return ZPoly();
        if (k < 0) throw std::invalid_argument("ZPoly::monomial: negative exponent");
        std::vector<Integer> v(static_cast<size_t>(k) + 1);
        v.back() = std::move(coeff);
        return ZPoly(std::move(v));
    }

    bool is_zero() const { return c_.empty(); }
    bool is_one() const { return c_.size() == 1 && c_[0] == 1; }
    int degree() const { return static_cast<int>(c_.size()) - 1; }

    const Integer& operator[](int k) const {
        static const Integer kZero(0);
        if (k < 0 || k >= static_cast<int>(c_.size())) return kZero;
        return c_[static_cast<size_t>(k)];
    }

    const Integer& leading() const {
        if (is_zero()) throw std::domain_error("ZPoly::leading on zero polynomial");
        return c_.back();
    }

    const std::vector<Integer>& coeffs() const { return c_; }

    /// Lowest exponent with a nonzero coefficient (0 for the zero polynomial).
    int valuation() const {
        for (size_t i = 0; i < c_.size(); ++i)
            if (c_[i] != 0) return static_cast<int>(i);
        return 0;
    }

    /// Divide by x^valuation().
    ZPoly shifted_down(int k) const {
        if (k == 0) return *this;
        assert(k > 0 && valuation() >= k);
        return ZPoly(std::vector<Integer>(c_.begin() + k, c_.end()));
    }

    friend ZPoly operator+(const ZPoly& a, const ZPoly& b) {
        std::vector<Integer> r(std::max(a.c_.size(), b.c_.size()));
        for (size_t i = 0; i < r.size(); ++i) r[i] = a[static_cast<int>(i)] + b[static_cast<int>(i)];
        return ZPoly(std::move(r));
    }

    friend ZPoly operator-(const ZPoly& a, const ZPoly& b) {
        std::vector<Integer> r(std::max(a.c_.size(), b.c_.size()));
        for (size_t i = 0; i < r.size(); ++i) r[i] = a[static_cast<int>(i)] - b[static_cast<int>(i)];
        return ZPoly(std::move(r));
    }

    ZPoly operator-() const {
        std::vector<Integer> r(c_.size());
        for (size_t i = 0; i < c_.size(); ++i) r[i] = -c_[i];
        return ZPoly(std::move(r));
    }

    friend ZPoly operator*(const ZPoly& a, const ZPoly& b) {
        if (a.is_zero() || b.is_zero()) return ZPoly();
        std::vector<Integer> r(a.c_.size() + b.c_.size() - 1);
        for (size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i] == 0) continue;
            for (size_t j = 0; j < b.c_.size(); ++j) {
                if (b.c_[j] != 0) r[i + j] += a.c_[i] * b.c_[j];
            }
        }
        return ZPoly(std::move(r));
    }

    ZPoly operator*(const Integer& k) const {
        if (k == 0) return ZPoly();
        std::vector<Integer> r(c_.size());
        for (size_t i = 0; i < c_.size(); ++i) r[i] = c_[i] * k;
        return ZPoly(std::move(r));
    }

    friend bool operator==(const ZPoly& a, const ZPoly& b) { return a.c_ == b.c_; }
    friend bool operator!=(const ZPoly& a, const ZPoly& b) { return !(a == b); }
    friend bool operator<(const ZPoly& a, const ZPoly& b) {
        if (a.c_.size() != b.c_.size()) return a.c_.size() < b.c_.size();
        for (size_t i = a.c_.size(); i-- > 0;)
            if (a.c_[i] != b.c_[i]) return a.c_[i] < b.c_[i];
        return false;
    }

    /// x -> x^n
    ZPoly stretched(int n) const {
        assert(n >= 1);
        if (is_zero() || n == 1) return *this;
        std::vector<Integer> r(static_cast<size_t>(degree()) * n + 1);
        for (size_t i = 0; i < c_.size(); ++i) r[i * n] = c_[i];
        return ZPoly(std::move(r));
    }

    Integer eval_at_one() const {
        Integer s(0);
        for (const auto& x : c_) s += x;
        return s;
    }

    /// gcd of coefficients, always nonnegative; 0 for the zero polynomial.
    Integer content() const {
        Integer g(0);
        for (const auto& x : c_) {
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
            if (g == 1) break;
        }
        return g;
    }

    /// Divide out the content and make the leading coefficient positive.
    /// Returns the (signed) factor removed, so that *this_old = factor * this_new.
    Integer make_primitive() {
        if (is_zero()) return Integer(1);
        Integer g = content();
        if (sgn(c_.back()) < 0) g = -g;
        if (g != 1)
            for (auto& x : c_) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
        return g;
    }

    /// Exact division: sets q = a / b and returns true iff b divides a over Z.
    static bool try_divide(const ZPoly& a, const ZPoly& b, ZPoly& q) {
        if (b.is_zero()) throw std::domain_error("ZPoly division by zero");
        if (a.is_zero()) {
            q = ZPoly();
            return true;
        }
        if (a.degree() < b.degree()) return false;
        std::vector<Integer> rem = a.c_;
        std::vector<Integer> quot(static_cast<size_t>(a.degree() - b.degree()) + 1);
        const Integer& lead = b.leading();
        for (int i = a.degree(); i >= b.degree(); --i) {
            Integer& top = rem[static_cast<size_t>(i)];
            if (top == 0) continue;
            if (!mpz_divisible_p(top.get_mpz_t(), lead.get_mpz_t())) return false;
            Integer f;
            mpz_divexact(f.get_mpz_t(), top.get_mpz_t(), lead.get_mpz_t());
            int off = i - b.degree();
            for (int j = 0; j <= b.degree(); ++j)
                rem[static_cast<size_t>(off + j)] -= f * b[j];
            quot[static_cast<size_t>(off)] = std::move(f);
        }
        for (const auto& x : rem)
            if (x != 0) return false;
        q = ZPoly(std::move(quot));
        return true;
    }

    /// Pseudo-remainder of a by b (b nonzero, deg a >= deg b).
    static ZPoly prem(ZPoly r, const ZPoly& b) {
        const Integer& c = b.leading();
        while (!r.is_zero() && r.degree() >= b.degree()) {
            Integer lr = r.leading();
            int off = r.degree() - b.degree();
            std::vector<Integer> next(r.c_.size());
            for (int i = 0; i < static_cast<int>(r.c_.size()); ++i) {
                next[static_cast<size_t>(i)] = c * r[i];
                if (i >= off && i - off <= b.degree())
                    next[static_cast<size_t>(i)] -= lr * b[i - off];
            }
            r = ZPoly(std::move(next));
        }
        return r;
    }

    /// Primitive polynomial gcd (primitive pseudo-remainder sequence),
    /// result primitive with positive leading coefficient.
    static ZPoly gcd(ZPoly a, ZPoly b) {
        a.make_primitive();
        b.make_primitive();
        if (a.is_zero()) return b;
        if (b.is_zero()) return a;
        if (a.degree() < b.degree()) std::swap(a, b);
        while (!b.is_zero()) {
            ZPoly r = prem(a, b);
            r.make_primitive();
            a = std::move(b);
            b = std::move(r);
        }
        return a;
    }

  private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }

    std::vector<Integer> c_;
};

namespace detail {

/// Cyclotomic polynomials, computed once by the recursion
/// x^k - 1 = prod_{d | k} Phi_d(x).
inline const ZPoly& cyclotomic(int k) {
    constexpr int kMax = 256;
    static const std::vector<ZPoly> table = [] {
        std::vector<ZPoly> t(kMax + 1);
        for (int n = 1; n <= kMax; ++n) {
            ZPoly rem = ZPoly::monomial(n) - ZPoly::one();
            for (int d = 1; d < n; ++d) {
                if (n % d != 0) continue;
                ZPoly q;
                bool ok = ZPoly::try_divide(rem, t[static_cast<size_t>(d)], q);
                assert(ok);
                (void)ok;
                rem = std::move(q);
            }
            t[static_cast<size_t>(n)] = std::move(rem);
        }
        return t;
    }();
    if (k < 1 || k > kMax) throw std::invalid_argument("cyclotomic index out of range");
    return table[static_cast<size_t>(k)];
}

constexpr int kCyclotomicMax = 256;

}  // namespace detail

}  // namespace qdilog
