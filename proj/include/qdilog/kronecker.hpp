#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qdilog/qpoly.hpp"
#include "qdilog/wallcross.hpp"

namespace qdilog {

/// The reflection sigma(a,b) = (b, mb-a); together with the coordinate swap it
/// generates an infinite dihedral group.  May leave the positive quadrant.
inline std::pair<long, long> sigma(int m, std::pair<long, long> ab) {
    return {ab.second, static_cast<long>(m) * ab.second - ab.first};
}

inline std::pair<long, long> sigma_inverse(int m, std::pair<long, long> ab) {
    return {static_cast<long>(m) * ab.first - ab.second, ab.first};
}

inline long root_form(int m, long a, long b) { return a * a + b * b - static_cast<long>(m) * a * b; }

struct RealRootChains {
    std::vector<std::pair<long, long>> left;   // (0,1), sigma(0,1), sigma^2(0,1), ...
    std::vector<std::pair<long, long>> right;  // ..., sigma^-2(1,0), sigma^-1(1,0), (1,0)
};

/// Both chains of real roots (root_form = 1) with nonnegative entries and
/// a+b <= bound.  For m = 1, 2 the chains meet or stay parallel; every element
/// is checked against the defining quadratic.
inline RealRootChains real_root_chains(int m, int bound) {
    if (m < 1) throw std::invalid_argument("real_root_chains needs m >= 1");
    RealRootChains r;
    auto walk = [&](std::pair<long, long> start, bool forward) {
        std::vector<std::pair<long, long>> chain;
        for (std::pair<long, long> v = start;
             v.first >= 0 && v.second >= 0 && v.first + v.second <= bound;
             v = forward ? sigma(m, v) : sigma_inverse(m, v)) {
            if (root_form(m, v.first, v.second) != 1)
                throw std::logic_error("chain element " + std::to_string(v.first) + "," +
                                       std::to_string(v.second) + " is not a real root");
            chain.push_back(v);
        }
        return chain;
    };
    r.left = walk({0, 1}, true);
    r.right = walk({1, 0}, false);
    std::reverse(r.right.begin(), r.right.end());
    return r;
}

/// Dimension vectors with mu_- <= a/b <= mu_+, decided by the exact integer
/// test a^2 + b^2 - m a b <= 0 (mu_+- are the roots of x^2 - m x + 1).
inline bool in_imaginary_region(int m, long a, long b) {
    if (a == 0 && b == 0)
        throw std::invalid_argument("region membership of (0,0) is undefined");
    return root_form(m, a, b) <= 0;
}

/// P_(k,k)(1) by the closed divisor-sum formula; defined for m >= 3 only
/// (the formula divides by m-2).  The value can be negative; callers compare
/// absolute values and record the empirical sign separately.
inline Rational special_value_formula(int m, int k) {
    if (m < 3) throw std::invalid_argument("special value formula requires m >= 3");
    if (k < 1) throw std::invalid_argument("special value formula requires k >= 1");
    Rational sum(0);
    for (int d = 1; d <= k; ++d) {
        if (k % d != 0) continue;
        long md = static_cast<long>(m) * d;
        Integer term = binomial(
            static_cast<unsigned long>((static_cast<long>(m - 1) * (m - 1)) * d - 1),
            static_cast<unsigned long>(d));
        int sign = moebius(k / d) * ((md + 1) % 2 == 0 ? 1 : -1);
        sum += Rational(term) * sign;
    }
    return sum / Rational(static_cast<long>(m - 2) * k * k);
}

/// One factor Phi(scalar * x^a y^b)^(exponent_sign * multiplicity) of the
/// x,y-presentation of a dilogarithm power.
struct XYAtom {
    QCoeff scalar;  // +- s^e
    int exponent_sign = 1;
    long multiplicity = 1;
};

struct XYFactor {
    long a = 0;
    long b = 0;
    QPoly p;
    std::vector<XYAtom> presentation;  // ascending powers of q in p
};

/// Rewrites a factor Phi(t^(a,b))^((-s)^(<d,d>-1) P(q)) through the variable
/// identification x = t^(1,0), y = t^(0,1).  The twist rule forces
/// x^a y^b = (-q^(1/2))^(m a b) t^(a,b), so
///   Phi_(a,b)^P = prod_j Phi((-1)^(m a b) q^((a^2+b^2-2mab-1+2j)/2) x^a y^b)^(e p_j)
/// with e = (-1)^(a^2+b^2-mab-1), over the coefficients p_j of P.
inline XYFactor xy_presentation(int m, const DTRecord& rec) {
    if (rec.d.size() != 2)
        throw std::invalid_argument("x,y presentation needs a rank-two dimension vector");
    if (!rec.p)
        throw std::invalid_argument("x,y presentation needs a nonzero normalized invariant");
    XYFactor f;
    f.a = rec.d[0];
    f.b = rec.d[1];
    f.p = *rec.p;
    long mab = static_cast<long>(m) * f.a * f.b;
    long form = root_form(m, f.a, f.b);
    int exponent_sign = ((form - 1) % 2 + 2) % 2 == 0 ? 1 : -1;
    bool minus = mab % 2 != 0;
    for (int j = 0; j <= f.p.degree(); ++j) {
        Rational c = f.p.coeff(j);
        if (c == 0) continue;
        if (!is_integer(c) || c < 0)
            throw std::invalid_argument("presentation exponent " + to_string(c) +
                                        " is not a natural number");
        XYAtom atom;
        long e = form - mab - 1 + 2 * j;  // a^2+b^2-2mab-1+2j
        atom.scalar = minus ? -QCoeff::s_power(static_cast<int>(e))
                            : QCoeff::s_power(static_cast<int>(e));
        atom.exponent_sign = exponent_sign;
        atom.multiplicity = c.get_num().get_si();
        f.presentation.push_back(std::move(atom));
    }
    return f;
}

namespace detail {

inline std::string q_power_text(long e) {
    // the scalar is s^e = q^(e/2)
    if (e == 0) return "";
    if (e == 2) return "q";
    std::string exp = (e % 2 == 0) ? std::to_string(e / 2) : std::to_string(e) + "/2";
    return "q^(" + exp + ")";
}

inline std::string xy_monomial_text(long a, long b) {
    std::string s;
    if (a > 0) s += (a == 1) ? "x" : "x^" + std::to_string(a);
    if (b > 0) s += (b == 1) ? "y" : "y^" + std::to_string(b);
    return s;
}

}  // namespace detail

/// Shorthand token, e.g. "Phi_(1,1)^(q+1)" or "Phi_(2,3)".
inline std::string factor_token(const DTRecord& rec) {
    std::string t = "Phi_(" + std::to_string(rec.d[0]) + "," + std::to_string(rec.d[1]) + ")";
    if (rec.p && !rec.p->is_one()) t += "^(" + rec.p->to_string() + ")";
    return t;
}

/// Explicit x,y tokens in display order (descending powers of q within the
/// factor), e.g. "Phi(q^(-1/2)xy)^-1 Phi(q^(-3/2)xy)^-1".
inline std::vector<std::string> xy_tokens(const XYFactor& f) {
    std::vector<std::string> out;
    for (auto it = f.presentation.rbegin(); it != f.presentation.rend(); ++it) {
        SLaurent s = it->scalar.to_laurent();
        bool minus = s.coeffs.at(0) < 0;
        std::string tok = "Phi(";
        if (minus) tok += "-";
        tok += detail::q_power_text(s.min_exp);
        tok += detail::xy_monomial_text(f.a, f.b);
        tok += ")";
        long e = it->exponent_sign * it->multiplicity;
        if (e != 1) tok += "^" + std::to_string(e);
        out.push_back(std::move(tok));
    }
    return out;
}

struct PropertyResult {
    bool pass = true;
    std::vector<std::string> witnesses;

    void fail(std::string w) {
        pass = false;
        witnesses.push_back(std::move(w));
    }

    friend bool operator==(const PropertyResult& a, const PropertyResult& b) {
        return a.pass == b.pass && a.witnesses == b.witnesses;
    }
};

struct SpecialValueRow {
    int k = 0;
    Rational formula;
    Rational p_at_one;
    int empirical_sign = 1;  // (-1)^(mk+1)
    bool abs_match = false;

    friend bool operator==(const SpecialValueRow& a, const SpecialValueRow& b) {
        return a.k == b.k && a.formula == b.formula && a.p_at_one == b.p_at_one &&
               a.empirical_sign == b.empirical_sign && a.abs_match == b.abs_match;
    }
};

struct KroneckerReport {
    int m = 0;
    int weight = 0;
    std::vector<DTRecord> entries;  // every (a,b) with a+b <= weight, factorization order
    std::map<std::string, PropertyResult> properties;
    std::vector<SpecialValueRow> special_values;
    std::string convention;

    bool all_pass() const {
        for (const auto& [name, r] : properties)
            if (!r.pass) return false;
        return true;
    }

    const DTRecord* find(long a, long b) const {
        for (const auto& rec : entries)
            if (rec.d[0] == a && rec.d[1] == b) return &rec;
        return nullptr;
    }

    friend bool operator==(const KroneckerReport& a, const KroneckerReport& b) {
        return a.m == b.m && a.weight == b.weight && a.entries == b.entries &&
               a.properties == b.properties && a.special_values == b.special_values &&
               a.convention == b.convention;
    }
};

/// Expected support of the factorization over K_m: real roots always; for
/// m >= 3 the whole imaginary region; for the tame cases only what the
/// explicit identities allow (nothing extra for m = 1, the single ray point
/// (1,1) for m = 2).
inline bool expected_nonzero(int m, long a, long b) {
    long f = root_form(m, a, b);
    if (f == 1) return true;
    if (m == 1) return false;
    if (m == 2) return a == 1 && b == 1;
    return f <= 0;
}

inline const std::string kXYConvention =
    "t^(a,b) = (-q^(1/2))^(-m*a*b) * x^a * y^b with x = t^(1,0), y = t^(0,1)";

/// Runs the full K_m pipeline at truncation weight N and machine-checks the
/// structural properties of the resulting polynomials P_(a,b); failures are
/// collected with witnesses rather than thrown.
inline KroneckerReport check_properties(int m, int weight, EngineFaults faults = {}) {
    if (m < 1) throw std::invalid_argument("check_properties needs m >= 1");
    if (weight < 2) throw std::invalid_argument("check_properties needs weight >= 2");
    auto [quiver, stability] = kronecker_quiver(m);
    ContextPtr ctx = make_context(std::move(quiver), std::move(stability), weight, faults);

    KroneckerReport rep;
    rep.m = m;
    rep.weight = weight;
    rep.convention = kXYConvention;
    rep.entries = dt_table(ctx);

    std::map<std::pair<long, long>, const DTRecord*> at;
    for (const auto& rec : rep.entries) at[{rec.d[0], rec.d[1]}] = &rec;

    PropertyResult completeness, dihedral, positivity, unimodality, lowest, special;

    for (const auto& rec : rep.entries) {
        long a = rec.d[0], b = rec.d[1];
        std::string name = "(" + std::to_string(a) + "," + std::to_string(b) + ")";

        bool expect = expected_nonzero(m, a, b);
        if (rec.stable != expect)
            completeness.fail(name + (expect ? " vanishes but should not" : " is unexpectedly nonzero"));
        if (rec.violation)
            positivity.fail(name + ": " + *rec.violation);
        if (rec.stable != rec.p.has_value()) {
            if (!rec.violation)
                completeness.fail(name + ": P defined exactly when the DT invariant is nonzero");
            continue;
        }
        if (!rec.p) continue;
        const QPoly& p = *rec.p;

        // dihedral symmetry: swap and sigma
        if (const DTRecord* sw = at.count({b, a}) ? at.at({b, a}) : nullptr) {
            if (!sw->p || *sw->p != p)
                dihedral.fail(name + " vs (" + std::to_string(b) + "," + std::to_string(a) + ")");
        }
        auto [sa, sb] = sigma(m, {a, b});
        if (sa >= 0 && sb >= 0 && sa + sb <= weight && !(sa == 0 && sb == 0)) {
            const DTRecord* im = at.count({sa, sb}) ? at.at({sa, sb}) : nullptr;
            if (!im || !im->p || *im->p != p)
                dihedral.fail(name + " vs sigma image (" + std::to_string(sa) + "," +
                              std::to_string(sb) + ")");
        }

        // positivity: natural coefficients, degree, constant term
        long expected_degree = static_cast<long>(m) * a * b - a * a - b * b + 1;
        if (p.degree() != expected_degree)
            positivity.fail(name + ": degree " + std::to_string(p.degree()) + ", expected " +
                            std::to_string(expected_degree));
        if (p.coeff(0) != 1) positivity.fail(name + ": constant term " + to_string(p.coeff(0)));
        for (int k = 0; k <= p.degree(); ++k)
            if (!is_integer(p.coeff(k)) || p.coeff(k) < 0) {
                positivity.fail(name + ": coefficient " + to_string(p.coeff(k)) + " at q^" +
                                std::to_string(k));
                break;
            }

        auto pu = is_palindromic_unimodal(p);
        if (!pu.palindromic) unimodality.fail(name + ": not palindromic: " + p.to_string());
        if (!pu.unimodal) unimodality.fail(name + ": not unimodal: " + p.to_string());
    }

    for (int k = 1; k <= std::min(m, weight - 1); ++k) {
        const DTRecord* rec = at.count({1, k}) ? at.at({1, k}) : nullptr;
        QPoly expected = gauss_binomial(m, k);
        if (!rec || !rec->p || *rec->p != expected)
            lowest.fail("(1," + std::to_string(k) + ") != [" + std::to_string(m) + " over " +
                        std::to_string(k) + "]_q = " + expected.to_string());
    }

    if (m >= 3) {
        for (int k = 1; 2 * k <= weight; ++k) {
            SpecialValueRow row;
            row.k = k;
            row.formula = special_value_formula(m, k);
            row.empirical_sign = ((static_cast<long>(m) * k + 1) % 2 == 0) ? 1 : -1;
            const DTRecord* rec = at.count({k, k}) ? at.at({k, k}) : nullptr;
            if (!rec || !rec->p) {
                special.fail("(" + std::to_string(k) + "," + std::to_string(k) +
                             ") has no P value");
                rep.special_values.push_back(std::move(row));
                continue;
            }
            row.p_at_one = rec->p->eval(Rational(1));
            row.abs_match = abs(row.p_at_one) == abs(row.formula);
            if (!row.abs_match)
                special.fail("(" + std::to_string(k) + "," + std::to_string(k) + "): |P(1)| = " +
                             to_string(abs(row.p_at_one)) + " but |formula| = " +
                             to_string(abs(row.formula)));
            rep.special_values.push_back(std::move(row));
        }
    }

    rep.properties["completeness"] = std::move(completeness);
    rep.properties["dihedral"] = std::move(dihedral);
    rep.properties["positivity"] = std::move(positivity);
    rep.properties["unimodality"] = std::move(unimodality);
    rep.properties["lowest_order"] = std::move(lowest);
    if (m >= 3) rep.properties["special_value"] = std::move(special);
    return rep;
}

struct PentagonCheck {
    IdentityCheck five_term;                // Phi(x)Phi(y) vs Phi(y)Phi(t^(1,1))Phi(x)
    bool factorization_ok = false;          // full pipeline rebuild equals the product
    std::optional<std::string> failure;

    bool ok() const { return five_term.equal && factorization_ok; }
};

/// Verifies the five-term identity in the t-basis at truncation weight N,
/// both against the closed three-factor form and through the full
/// wall-crossing pipeline.
inline PentagonCheck pentagon_check(int weight, EngineFaults faults = {}) {
    if (weight < 1) throw std::invalid_argument("pentagon check needs weight >= 1");
    auto [quiver, stability] = kronecker_quiver(1);
    ContextPtr ctx = make_context(std::move(quiver), std::move(stability), weight, faults);
    SkewSeries lhs = lhs_product(ctx);  // Phi(x) Phi(y)

    std::vector<SkewSeries> rhs_factors = {
        phi_series(ctx, DimVector{0, 1}),
        phi_series(ctx, DimVector{1, 1}),
        phi_series(ctx, DimVector{1, 0}),
    };
    PentagonCheck r;
    r.five_term = compare_series(lhs, ordered_product(ctx, rhs_factors));
    if (!r.five_term.equal) r.failure = r.five_term.witness->to_string();

    try {
        auto records = dt_table(ctx);
        auto check = compare_series(lhs, rebuild_factorization(ctx, records));
        r.factorization_ok = check.equal;
        if (!check.equal && !r.failure) r.failure = check.witness->to_string();
    } catch (const PropertyViolation& v) {
        r.factorization_ok = false;
        if (!r.failure) r.failure = v.what();
    }
    return r;
}

}  // namespace qdilog
