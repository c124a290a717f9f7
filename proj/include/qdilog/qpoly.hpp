#pragma once

#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qdilog/qcoeff.hpp"
#include "qdilog/rational.hpp"

namespace qdilog {

/// Polynomial in q with rational coefficients, index k -> coefficient of q^k.
/// Trailing zeros trimmed; the zero polynomial is the empty list.
class QPoly {
  public:
    QPoly() = default;
    explicit QPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }
    explicit QPoly(long constant) {
        if (constant != 0) c_.assign(1, Rational(constant));
    }

    static QPoly one() { return QPoly(1); }

    bool is_zero() const { return c_.empty(); }
    bool is_one() const { return c_.size() == 1 && c_[0] == 1; }
    int degree() const { return static_cast<int>(c_.size()) - 1; }

    Rational coeff(int k) const {
        if (k < 0 || k >= static_cast<int>(c_.size())) return Rational(0);
        return c_[static_cast<size_t>(k)];
    }

    const std::vector<Rational>& coeffs() const { return c_; }

    Rational eval(const Rational& x) const {
        Rational r(0);
        for (size_t i = c_.size(); i-- > 0;) r = r * x + c_[i];
        return r;
    }

    friend QPoly operator+(const QPoly& a, const QPoly& b) {
        std::vector<Rational> r(std::max(a.c_.size(), b.c_.size()));
        for (size_t i = 0; i < r.size(); ++i)
            r[i] = a.coeff(static_cast<int>(i)) + b.coeff(static_cast<int>(i));
        return QPoly(std::move(r));
    }

    friend QPoly operator-(const QPoly& a, const QPoly& b) {
        std::vector<Rational> r(std::max(a.c_.size(), b.c_.size()));
        for (size_t i = 0; i < r.size(); ++i)
            r[i] = a.coeff(static_cast<int>(i)) - b.coeff(static_cast<int>(i));
        return QPoly(std::move(r));
    }

    friend QPoly operator*(const QPoly& a, const QPoly& b) {
        if (a.is_zero() || b.is_zero()) return QPoly();
        std::vector<Rational> r(a.c_.size() + b.c_.size() - 1);
        for (size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i] == 0) continue;
            for (size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
        }
        return QPoly(std::move(r));
    }

    /// Exact division; throws if the division leaves a remainder.
    friend QPoly operator/(const QPoly& a, const QPoly& b) {
        if (b.is_zero()) throw std::domain_error("QPoly division by zero");
        if (a.is_zero()) return QPoly();
        if (a.degree() < b.degree()) throw std::domain_error("QPoly division is not exact");
        std::vector<Rational> rem = a.c_;
        std::vector<Rational> quot(static_cast<size_t>(a.degree() - b.degree()) + 1);
        for (int i = a.degree(); i >= b.degree(); --i) {
            Rational f = rem[static_cast<size_t>(i)] / b.c_.back();
            int off = i - b.degree();
            if (f != 0)
                for (int j = 0; j <= b.degree(); ++j)
                    rem[static_cast<size_t>(off + j)] -= f * b.coeff(j);
            quot[static_cast<size_t>(off)] = std::move(f);
        }
        for (const auto& x : rem)
            if (x != 0) throw std::domain_error("QPoly division is not exact");
        return QPoly(std::move(quot));
    }

    friend bool operator==(const QPoly& a, const QPoly& b) { return a.c_ == b.c_; }
    friend bool operator!=(const QPoly& a, const QPoly& b) { return !(a == b); }

    /// Conventional high-to-low rendering, e.g. "q^2 + q + 1" prints as "q^2+q+1".
    std::string to_string() const {
        if (is_zero()) return "0";
        std::ostringstream os;
        bool first = true;
        for (int k = degree(); k >= 0; --k) {
            const Rational c = coeff(k);
            if (c == 0) continue;
            Rational a = abs(c);
            if (!first)
                os << (c < 0 ? "-" : "+");
            else if (c < 0)
                os << "-";
            first = false;
            if (a != 1 || k == 0) os << a.get_str();
            if (k != 0) {
                os << "q";
                if (k != 1) os << "^" << k;
            }
        }
        return os.str();
    }

    /// The value as a rational function in s (q = s^2).
    QCoeff to_qcoeff() const {
        std::vector<Rational> c;
        c.reserve(c_.size() * 2);
        for (size_t i = 0; i < c_.size(); ++i) {
            c.push_back(c_[i]);
            if (i + 1 < c_.size()) c.push_back(Rational(0));
        }
        return QCoeff::from_laurent(SLaurent(0, std::move(c)));
    }

  private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }

    std::vector<Rational> c_;
};

/// Checked conversion: defined only when the reduced denominator is 1 and only
/// nonnegative even powers of s occur (so the value is a polynomial in q = s^2).
inline QPoly qpoly_from_qcoeff(const QCoeff& f) {
    if (!f.is_laurent())
        throw std::domain_error("not a polynomial in q (nontrivial denominator): " +
                                f.to_string());
    SLaurent l = f.to_laurent();
    if (l.is_zero()) return QPoly();
    if (l.min_exp < 0)
        throw std::domain_error("not a polynomial in q (negative powers of s): " +
                                f.to_string());
    std::vector<Rational> c(static_cast<size_t>(l.max_exp() / 2) + 1);
    for (int e = l.min_exp; e <= l.max_exp(); ++e) {
        Rational v = l.coeff(e);
        if (v == 0) continue;
        if (e % 2 != 0)
            throw std::domain_error("not a polynomial in q (odd power of s): " + f.to_string());
        c[static_cast<size_t>(e / 2)] = std::move(v);
    }
    return QPoly(std::move(c));
}

/// Gaussian binomial coefficient [m over k]_q = prod_{i=1..k} (1-q^(m-k+i))/(1-q^i).
inline QPoly gauss_binomial(int m, int k) {
    if (m < 0 || k < 0 || k > m)
        throw std::invalid_argument("gauss_binomial requires 0 <= k <= m");
    auto one_minus_q = [](int j) {
        std::vector<Rational> c(static_cast<size_t>(j) + 1);
        c[0] = 1;
        c[static_cast<size_t>(j)] = -1;
        return QPoly(std::move(c));
    };
    QPoly r = QPoly::one();
    // the partial products are the binomials [m-k+j over j]_q, so every
    // intermediate division is exact
    for (int i = 1; i <= k; ++i) r = r * one_minus_q(m - k + i) / one_minus_q(i);
    return r;
}

/// Classical Moebius function, by trial-division factorization.
inline int moebius(long n) {
    if (n < 1) throw std::invalid_argument("moebius requires n >= 1");
    int primes = 0;
    for (long p = 2; p * p <= n; ++p) {
        if (n % p != 0) continue;
        n /= p;
        if (n % p == 0) return 0;
        ++primes;
    }
    if (n > 1) ++primes;
    return primes % 2 == 0 ? 1 : -1;
}

struct PalindromicUnimodal {
    bool palindromic = false;
    bool unimodal = false;
};

/// Palindromic: c_k = c_(d-k) for all k.  Unimodal: coefficients weakly
/// increase then weakly decrease.  Undefined for the zero polynomial.
inline PalindromicUnimodal is_palindromic_unimodal(const QPoly& p) {
    if (p.is_zero())
        throw std::invalid_argument("palindromicity of the zero polynomial is undefined");
    const int d = p.degree();
    PalindromicUnimodal r;
    r.palindromic = true;
    for (int k = 0; 2 * k <= d; ++k)
        if (p.coeff(k) != p.coeff(d - k)) {
            r.palindromic = false;
            break;
        }
    int i = 0;
    while (i < d && p.coeff(i) <= p.coeff(i + 1)) ++i;
    while (i < d && p.coeff(i) >= p.coeff(i + 1)) ++i;
    r.unimodal = (i == d);
    return r;
}

}  // namespace qdilog
