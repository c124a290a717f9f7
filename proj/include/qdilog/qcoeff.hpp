#pragma once

#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qdilog/rational.hpp"
#include "qdilog/zpoly.hpp"

namespace qdilog {

/// Laurent polynomial in s with rational coefficients:
/// value = sum_i coeffs[i] * s^(min_exp + i).  Zero is the empty list.
struct SLaurent {
    int min_exp = 0;
    std::vector<Rational> coeffs;

    SLaurent() = default;
    SLaurent(int e, std::vector<Rational> c) : min_exp(e), coeffs(std::move(c)) { normalize(); }

    static SLaurent monomial(int e, Rational c = Rational(1)) {
        return SLaurent(e, {std::move(c)});
    }

    bool is_zero() const { return coeffs.empty(); }

    Rational coeff(int e) const {
        int i = e - min_exp;
        if (i < 0 || i >= static_cast<int>(coeffs.size())) return Rational(0);
        return coeffs[static_cast<size_t>(i)];
    }

    int max_exp() const { return min_exp + static_cast<int>(coeffs.size()) - 1; }

    void normalize() {
        size_t lead = 0;
        while (lead < coeffs.size() && coeffs[lead] == 0) ++lead;
        if (lead == coeffs.size()) {
            coeffs.clear();
            min_exp = 0;
            return;
        }
        while (coeffs.back() == 0) coeffs.pop_back();
        if (lead > 0) {
            coeffs.erase(coeffs.begin(), coeffs.begin() + static_cast<long>(lead));
            min_exp += static_cast<int>(lead);
        }
    }

    Rational eval_at_one() const {
        Rational s(0);
        for (const auto& c : coeffs) s += c;
        return s;
    }

    friend bool operator==(const SLaurent& a, const SLaurent& b) {
        return a.min_exp == b.min_exp && a.coeffs == b.coeffs;
    }
    friend bool operator!=(const SLaurent& a, const SLaurent& b) { return !(a == b); }
};

/// Exact rational function in the formal variable s = q^(1/2) over Q.
///
/// Stored internally as  scale * s^shift * num(s) / (prod_k Phi_k(s)^e_k * rough(s))
/// with num primitive (positive leading coefficient, nonzero constant term),
/// the Phi_k cyclotomic, rough cyclotomic-free and coprime to num.  The
/// observable form is always the fully reduced fraction with a monic
/// denominator whose lowest exponent is 0; equality is decidable and exact.
class QCoeff {
  public:
    QCoeff() = default;
    QCoeff(long v) : QCoeff(Rational(v)) {}  // NOLINT: implicit by design
    QCoeff(Rational v) {                     // NOLINT: implicit by design
        if (v != 0) {
            scale_ = std::move(v);
            num_ = ZPoly::one();
        }
    }

    static QCoeff zero() { return QCoeff(); }
    static QCoeff one() { return QCoeff(1); }

    /// s^e (e may be negative).
    static QCoeff s_power(int e, Rational c = Rational(1)) {
        QCoeff r(std::move(c));
        if (!r.is_zero()) r.shift_ = e;
        return r;
    }

    /// (-s)^e = (-1)^e s^e.
    static QCoeff neg_s_power(int e) {
        return s_power(e, (e % 2 != 0) ? Rational(-1) : Rational(1));
    }

    static QCoeff from_laurent(const SLaurent& l) {
        if (l.is_zero()) return QCoeff();
        Integer den_lcm(1);
        for (const auto& c : l.coeffs) mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den_mpz_t());
        std::vector<Integer> zc(l.coeffs.size());
        for (size_t i = 0; i < l.coeffs.size(); ++i) {
            Rational scaled = l.coeffs[i] * den_lcm;
            zc[i] = scaled.get_num();
        }
        return make(Rational(1, den_lcm), l.min_exp, ZPoly(std::move(zc)), {}, ZPoly::one());
    }

    /// num / den as Laurent polynomials in s; den must be nonzero.
    QCoeff(const SLaurent& num, const SLaurent& den) {
        if (den.is_zero()) throw std::domain_error("QCoeff with zero denominator");
        QCoeff n = from_laurent(num);
        QCoeff d = from_laurent(den);
        *this = n / d;
    }

    bool is_zero() const { return scale_ == 0; }
    bool is_one() const {
        return scale_ == 1 && shift_ == 0 && num_.is_one() && cyclo_.empty() && rough_.is_one();
    }

    /// True when the reduced denominator is 1 (a Laurent polynomial in s).
    bool is_laurent() const { return cyclo_.empty() && rough_.is_one(); }

    SLaurent to_laurent() const {
        if (!is_laurent())
            throw std::domain_error("not a Laurent polynomial in s: " + to_string());
        if (is_zero()) return SLaurent();
        std::vector<Rational> c(num_.coeffs().size());
        for (size_t i = 0; i < c.size(); ++i) c[i] = scale_ * Rational(num_.coeffs()[i]);
        return SLaurent(shift_, std::move(c));
    }

    /// Reduced numerator, a Laurent polynomial (denominator normalized monic).
    SLaurent numerator() const {
        if (is_zero()) return SLaurent();
        Rational f = scale_ * denominator_leading();
        std::vector<Rational> c(num_.coeffs().size());
        for (size_t i = 0; i < c.size(); ++i) c[i] = f * Rational(num_.coeffs()[i]);
        return SLaurent(shift_, std::move(c));
    }

    /// Reduced denominator: monic, lowest exponent 0 (list of coefficients in s).
    std::vector<Rational> denominator() const {
        ZPoly d = denominator_poly();
        Rational inv_lead = Rational(1) / Rational(d.leading());
        std::vector<Rational> c(d.coeffs().size());
        for (size_t i = 0; i < c.size(); ++i) c[i] = Rational(d.coeffs()[i]) * inv_lead;
        return c;
    }

    friend QCoeff operator+(const QCoeff& a, const QCoeff& b) {
        if (a.is_zero()) return b;
        if (b.is_zero()) return a;
        std::map<int, int> cyclo;
        for (const auto& [k, e] : a.cyclo_) cyclo[k] = e;
        for (const auto& [k, e] : b.cyclo_) cyclo[k] = std::max(cyclo[k], e);
        ZPoly comp_a = ZPoly::one();
        ZPoly comp_b = ZPoly::one();
        for (const auto& [k, e] : cyclo) {
            int ea = lookup(a.cyclo_, k);
            int eb = lookup(b.cyclo_, k);
            for (int i = ea; i < e; ++i) comp_a = comp_a * detail::cyclotomic(k);
            for (int i = eb; i < e; ++i) comp_b = comp_b * detail::cyclotomic(k);
        }
        ZPoly rough = a.rough_;
        if (a.rough_ == b.rough_) {
            // common case, nothing to adjust
        } else {
            ZPoly g = ZPoly::gcd(a.rough_, b.rough_);
            ZPoly qa, qb;
            ZPoly::try_divide(b.rough_, g, qb);
            ZPoly::try_divide(a.rough_, g, qa);
            comp_a = comp_a * qb;
            comp_b = comp_b * qa;
            rough = a.rough_ * qb;
        }
        int shift = std::min(a.shift_, b.shift_);
        ZPoly na = a.num_ * comp_a;
        if (a.shift_ > shift) na = na * ZPoly::monomial(a.shift_ - shift);
        ZPoly nb = b.num_ * comp_b;
        if (b.shift_ > shift) nb = nb * ZPoly::monomial(b.shift_ - shift);
        // common rational scale 1/(qa*qb), numerators pa*qb, pb*qa
        const Integer &pa = a.scale_.get_num(), &qa_den = a.scale_.get_den();
        const Integer &pb = b.scale_.get_num(), &qb_den = b.scale_.get_den();
        ZPoly num = na * (pa * qb_den) + nb * (pb * qa_den);
        return make(Rational(1, qa_den * qb_den), shift, std::move(num), std::move(cyclo),
                    std::move(rough));
    }

    friend QCoeff operator-(const QCoeff& a, const QCoeff& b) { return a + (-b); }

    QCoeff operator-() const {
        QCoeff r = *this;
        r.scale_ = -r.scale_;
        return r;
    }

    friend QCoeff operator*(const QCoeff& a, const QCoeff& b) {
        if (a.is_zero() || b.is_zero()) return QCoeff();
        if (!a.rough_.is_one() || !b.rough_.is_one()) {
            // rare path: rebuild through the full normalizer
            std::map<int, int> cyclo = a.cyclo_;
            for (const auto& [k, e] : b.cyclo_) cyclo[k] += e;
            return make(a.scale_ * b.scale_, a.shift_ + b.shift_, a.num_ * b.num_,
                        std::move(cyclo), a.rough_ * b.rough_);
        }
        // cross-cancel: each factor's numerator is already coprime to its own
        // denominator, so only num(a) vs den(b) and num(b) vs den(a) can reduce
        ZPoly na = a.num_;
        std::map<int, int> db = b.cyclo_;
        reduce_against_atoms(na, db);
        ZPoly nb = b.num_;
        std::map<int, int> da = a.cyclo_;
        reduce_against_atoms(nb, da);
        for (const auto& [k, e] : db) da[k] += e;
        QCoeff r;
        r.scale_ = a.scale_ * b.scale_;
        r.shift_ = a.shift_ + b.shift_;
        r.num_ = na * nb;
        r.cyclo_ = std::move(da);
        r.rough_ = ZPoly::one();
        return r;
    }

    friend QCoeff operator/(const QCoeff& a, const QCoeff& b) {
        if (b.is_zero()) throw std::domain_error("QCoeff division by zero");
        return a * b.inverted();
    }

    QCoeff inverted() const {
        if (is_zero()) throw std::domain_error("QCoeff inverse of zero");
        return make(Rational(1) / scale_, -shift_, denominator_poly(), {}, num_);
    }

    QCoeff pow(int e) const {
        if (e == 0) return one();
        QCoeff base = e > 0 ? *this : inverted();
        int n = e > 0 ? e : -e;
        QCoeff r = one();
        while (n > 0) {
            if (n & 1) r = r * base;
            base = base * base;
            n >>= 1;
        }
        return r;
    }

    /// The ring map s -> s^n (q^(1/2) -> q^(n/2)); n >= 1.
    QCoeff adams(int n) const {
        if (n < 1) throw std::invalid_argument("adams substitution needs n >= 1");
        if (n == 1 || is_zero()) return *this;
        return make(scale_, shift_ * n, num_.stretched(n), {},
                    denominator_poly().stretched(n));
    }

    friend bool operator==(const QCoeff& a, const QCoeff& b) {
        if (a.scale_ == b.scale_ && a.shift_ == b.shift_ && a.num_ == b.num_ &&
            a.cyclo_ == b.cyclo_ && a.rough_ == b.rough_)
            return true;
        return (a - b).is_zero();
    }
    friend bool operator!=(const QCoeff& a, const QCoeff& b) { return !(a == b); }

    /// Builder from raw parts; normalizes to canonical form.
    static QCoeff make(Rational scale, int shift, ZPoly num, std::map<int, int> cyclo,
                       ZPoly rough) {
        QCoeff r;
        if (scale == 0 || num.is_zero()) return r;
        r.scale_ = std::move(scale);
        r.shift_ = shift;
        r.num_ = std::move(num);
        r.cyclo_ = std::move(cyclo);
        r.rough_ = std::move(rough);
        r.normalize();
        return r;
    }

    std::string to_string() const {
        if (is_zero()) return "0";
        std::ostringstream os;
        os << laurent_text(numerator());
        ZPoly d = denominator_poly();
        if (!d.is_one()) {
            // print the un-normalized integer denominator for readability
            Rational lead(d.leading());
            os.str("");
            SLaurent n = numerator();
            for (auto& c : n.coeffs) c *= lead;
            os << "(" << laurent_text(n) << ")/(";
            SLaurent dl(0, [&] {
                std::vector<Rational> c(d.coeffs().size());
                for (size_t i = 0; i < c.size(); ++i) c[i] = Rational(d.coeffs()[i]);
                return c;
            }());
            os << laurent_text(dl) << ")";
        }
        return os.str();
    }

  private:
    void normalize() {
        if (num_.is_zero() || scale_ == 0) {
            *this = QCoeff();
            return;
        }
        int v = num_.valuation();
        if (v > 0) {
            shift_ += v;
            num_ = num_.shifted_down(v);
        }
        scale_ *= Rational(num_.make_primitive());
        if (!rough_.is_one()) {
            int rv = rough_.valuation();
            if (rv > 0) {
                shift_ -= rv;
                rough_ = rough_.shifted_down(rv);
            }
            scale_ /= Rational(rough_.make_primitive());
            // pull cyclotomic factors out of the rough part
            for (int k = 1; k <= detail::kCyclotomicMax && !rough_.is_one(); ++k) {
                const ZPoly& phi = detail::cyclotomic(k);
                if (phi.degree() > rough_.degree()) continue;
                ZPoly q;
                while (ZPoly::try_divide(rough_, phi, q)) {
                    rough_ = q;
                    ++cyclo_[k];
                    if (phi.degree() > rough_.degree()) break;
                }
            }
            if (!rough_.is_one() && num_.degree() > 0) {
                ZPoly g = ZPoly::gcd(num_, rough_);
                if (g.degree() > 0) {
                    ZPoly q;
                    ZPoly::try_divide(num_, g, q);
                    num_ = q;
                    ZPoly::try_divide(rough_, g, q);
                    rough_ = q;
                }
            }
        }
        reduce_against_atoms(num_, cyclo_);
    }

    static int lookup(const std::map<int, int>& m, int k) {
        auto it = m.find(k);
        return it == m.end() ? 0 : it->second;
    }

    static void reduce_against_atoms(ZPoly& num, std::map<int, int>& cyclo) {
        for (auto it = cyclo.begin(); it != cyclo.end();) {
            const ZPoly& phi = detail::cyclotomic(it->first);
            ZPoly q;
            while (it->second > 0 && phi.degree() <= num.degree() &&
                   ZPoly::try_divide(num, phi, q)) {
                num = std::move(q);
                --it->second;
            }
            it = (it->second == 0) ? cyclo.erase(it) : std::next(it);
        }
    }

    ZPoly denominator_poly() const {
        ZPoly d = rough_;
        for (const auto& [k, e] : cyclo_)
            for (int i = 0; i < e; ++i) d = d * detail::cyclotomic(k);
        return d;
    }

    Rational denominator_leading() const {
        // observable denominator is monic; cyclotomics are monic so only the
        // rough part's leading coefficient matters
        return rough_.is_one() ? Rational(1) : Rational(1) / Rational(rough_.leading());
    }

    static std::string laurent_text(const SLaurent& l) {
        if (l.is_zero()) return "0";
        std::ostringstream os;
        bool first = true;
        for (size_t i = 0; i < l.coeffs.size(); ++i) {
            const Rational& c = l.coeffs[i];
            if (c == 0) continue;
            int e = l.min_exp + static_cast<int>(i);
            Rational a = abs(c);
            if (!first)
                os << (c < 0 ? " - " : " + ");
            else if (c < 0)
                os << "-";
            first = false;
            if (a != 1 || e == 0) os << a.get_str();
            if (e != 0) {
                if (a != 1) os << "*";
                os << "s";
                if (e != 1) os << "^" << e;
            }
        }
        return os.str();
    }

    Rational scale_ = Rational(0);
    int shift_ = 0;
    ZPoly num_;
    std::map<int, int> cyclo_;
    ZPoly rough_ = ZPoly::one();
};

inline QCoeff adams(const QCoeff& f, int n) { return f.adams(n); }

}  // namespace qdilog
