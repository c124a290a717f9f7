#pragma once

#include <json.hpp>

#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "qdilog/kronecker.hpp"
#include "qdilog/wallcross.hpp"

namespace qdilog {

using json = nlohmann::json;

// ---------------------------------------------------------------------------
// exact number serialization: integers that fit become JSON numbers, anything
// else becomes a string, so no precision is ever lost
// ---------------------------------------------------------------------------

inline json rational_to_json(const Rational& r) {
    if (is_integer(r) && fits_int64(r.get_num())) return r.get_num().get_si();
    return to_string(r);
}

inline Rational rational_from_json(const json& j, const std::string& field) {
    if (j.is_number_integer()) return Rational(static_cast<long>(j.get<int64_t>()));
    if (j.is_string()) return rational_from_string(j.get<std::string>());
    throw std::invalid_argument("field '" + field + "' must be an integer or a rational string");
}

inline json slaurent_to_json(const SLaurent& l) {
    json coeffs = json::array();
    for (const auto& c : l.coeffs) coeffs.push_back(rational_to_json(c));
    return json{{"min_exp_s", l.min_exp}, {"coeffs", coeffs}};
}

inline SLaurent slaurent_from_json(const json& j, const std::string& field) {
    if (!j.is_object() || !j.contains("min_exp_s") || !j.contains("coeffs"))
        throw std::invalid_argument("field '" + field + "' must be {min_exp_s, coeffs}");
    std::vector<Rational> coeffs;
    for (size_t i = 0; i < j.at("coeffs").size(); ++i)
        coeffs.push_back(rational_from_json(j.at("coeffs")[i], field + ".coeffs"));
    return SLaurent(j.at("min_exp_s").get<int>(), std::move(coeffs));
}

inline json qpoly_to_json(const QPoly& p) {
    json coeffs = json::array();
    for (const auto& c : p.coeffs()) coeffs.push_back(rational_to_json(c));
    return coeffs;
}

inline QPoly qpoly_from_json(const json& j, const std::string& field) {
    if (!j.is_array()) throw std::invalid_argument("field '" + field + "' must be an array");
    std::vector<Rational> coeffs;
    for (size_t i = 0; i < j.size(); ++i) coeffs.push_back(rational_from_json(j[i], field));
    return QPoly(std::move(coeffs));
}

// ---------------------------------------------------------------------------
// DT records
// ---------------------------------------------------------------------------

inline json record_to_json(const DTRecord& rec) {
    json e;
    if (rec.d.size() == 2) {
        e["a"] = rec.d[0];
        e["b"] = rec.d[1];
    } else {
        e["d"] = rec.d.e;
    }
    e["slope"] = to_string(rec.slope);
    e["stable"] = rec.stable;
    e["dt"] = slaurent_to_json(rec.dt);
    e["P"] = rec.p ? qpoly_to_json(*rec.p) : json(nullptr);
    if (rec.violation) e["violation"] = *rec.violation;
    return e;
}

inline DTRecord record_from_json(const json& j) {
    DTRecord rec;
    if (j.contains("a")) {
        rec.d = DimVector{j.at("a").get<int>(), j.at("b").get<int>()};
    } else {
        rec.d = DimVector(j.at("d").get<std::vector<int>>());
    }
    rec.slope = rational_from_string(j.at("slope").get<std::string>());
    rec.stable = j.at("stable").get<bool>();
    rec.dt = slaurent_from_json(j.at("dt"), "dt");
    if (!j.at("P").is_null()) rec.p = qpoly_from_json(j.at("P"), "P");
    if (j.contains("violation")) rec.violation = j.at("violation").get<std::string>();
    return rec;
}

inline json properties_to_json(const std::map<std::string, PropertyResult>& props) {
    json out = json::object();
    for (const auto& [name, r] : props)
        out[name] = json{{"pass", r.pass}, {"witnesses", r.witnesses}};
    return out;
}

inline std::map<std::string, PropertyResult> properties_from_json(const json& j) {
    std::map<std::string, PropertyResult> out;
    for (auto it = j.begin(); it != j.end(); ++it) {
        PropertyResult r;
        r.pass = it.value().at("pass").get<bool>();
        r.witnesses = it.value().at("witnesses").get<std::vector<std::string>>();
        out[it.key()] = std::move(r);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Kronecker reports
// ---------------------------------------------------------------------------

inline json kronecker_report_to_json(const KroneckerReport& rep) {
    json entries = json::array();
    for (const auto& rec : rep.entries) entries.push_back(record_to_json(rec));
    json specials = json::array();
    for (const auto& row : rep.special_values)
        specials.push_back(json{{"k", row.k},
                                {"formula", rational_to_json(row.formula)},
                                {"p_at_one", rational_to_json(row.p_at_one)},
                                {"empirical_sign", row.empirical_sign},
                                {"abs_match", row.abs_match}});
    return json{{"command", "kronecker"}, {"m", rep.m},
                {"degree", rep.weight},   {"convention", rep.convention},
                {"entries", entries},     {"properties", properties_to_json(rep.properties)},
                {"special_values", specials}};
}

inline KroneckerReport kronecker_report_from_json(const json& j) {
    KroneckerReport rep;
    rep.m = j.at("m").get<int>();
    rep.weight = j.at("degree").get<int>();
    rep.convention = j.at("convention").get<std::string>();
    for (const auto& e : j.at("entries")) rep.entries.push_back(record_from_json(e));
    rep.properties = properties_from_json(j.at("properties"));
    for (const auto& s : j.at("special_values")) {
        SpecialValueRow row;
        row.k = s.at("k").get<int>();
        row.formula = rational_from_json(s.at("formula"), "formula");
        row.p_at_one = rational_from_json(s.at("p_at_one"), "p_at_one");
        row.empirical_sign = s.at("empirical_sign").get<int>();
        row.abs_match = s.at("abs_match").get<bool>();
        rep.special_values.push_back(std::move(row));
    }
    return rep;
}

inline std::string kronecker_report_to_csv(const KroneckerReport& rep) {
    std::ostringstream os;
    os << "a,b,slope,stable,dt_min_exp_s,dt_coeffs,P\n";
    for (const auto& rec : rep.entries) {
        os << rec.d[0] << "," << rec.d[1] << "," << to_string(rec.slope) << ","
           << (rec.stable ? 1 : 0) << "," << rec.dt.min_exp << ",";
        for (size_t i = 0; i < rec.dt.coeffs.size(); ++i)
            os << (i ? ";" : "") << to_string(rec.dt.coeffs[i]);
        os << ",";
        if (rec.p)
            for (size_t i = 0; i < rec.p->coeffs().size(); ++i)
                os << (i ? ";" : "") << to_string(rec.p->coeffs()[i]);
        os << "\n";
    }
    return os.str();
}

/// Shorthand factor line of the identity, decreasing slope, nonzero entries.
inline std::vector<std::string> factor_tokens(const KroneckerReport& rep) {
    std::vector<std::string> tokens;
    for (const auto& rec : rep.entries)
        if (rec.stable && rec.p) tokens.push_back(factor_token(rec));
    return tokens;
}

/// Explicit x,y factor line of the identity.
inline std::vector<std::string> xy_factor_tokens(const KroneckerReport& rep) {
    std::vector<std::string> tokens;
    for (const auto& rec : rep.entries) {
        if (!rec.stable || !rec.p) continue;
        for (auto& t : xy_tokens(xy_presentation(rep.m, rec))) tokens.push_back(std::move(t));
    }
    return tokens;
}

inline std::string join(const std::vector<std::string>& tokens) {
    std::string s;
    for (size_t i = 0; i < tokens.size(); ++i) s += (i ? " " : "") + tokens[i];
    return s;
}

inline void write_kronecker_pretty(std::ostream& os, const KroneckerReport& rep) {
    os << "Kronecker quiver with " << rep.m << " arrows, truncation weight " << rep.weight
       << "\n";
    os << "convention: " << rep.convention << "\n\n";
    os << "factorization (decreasing slope; equivalently a/b increasing):\n";
    os << "  Phi_(1,0) Phi_(0,1) =\n";
    os << "  " << join(factor_tokens(rep)) << "\n";
    os << "in x,y variables:\n";
    os << "  Phi(x) Phi(y) =\n";
    os << "  " << join(xy_factor_tokens(rep)) << "\n\n";
    os << "P-table (nonzero entries):\n";
    for (const auto& rec : rep.entries)
        if (rec.p)
            os << "  (" << rec.d[0] << "," << rec.d[1] << ")  P = " << rec.p->to_string()
               << "\n";
    os << "\nproperties:\n";
    for (const auto& [name, r] : rep.properties) {
        os << "  [" << (r.pass ? "PASS" : "FAIL") << "] " << name << "\n";
        for (const auto& w : r.witnesses) os << "      " << w << "\n";
    }
    if (!rep.special_values.empty()) {
        os << "special values P_(k,k)(1):\n";
        for (const auto& row : rep.special_values)
            os << "  k=" << row.k << ": P(1) = " << to_string(row.p_at_one)
               << ", formula = " << to_string(row.formula) << ", empirical sign "
               << (row.empirical_sign > 0 ? "+1" : "-1")
               << (row.abs_match ? "" : "  [MISMATCH]") << "\n";
    }
}

// ---------------------------------------------------------------------------
// pentagon reports
// ---------------------------------------------------------------------------

struct PentagonReport {
    int degree = 0;
    PentagonCheck check;

    friend bool operator==(const PentagonReport& a, const PentagonReport& b) {
        return a.degree == b.degree && a.check.five_term.equal == b.check.five_term.equal &&
               a.check.factorization_ok == b.check.factorization_ok &&
               a.check.failure == b.check.failure;
    }
};

inline json pentagon_report_to_json(const PentagonReport& rep) {
    return json{{"command", "pentagon"},
                {"degree", rep.degree},
                {"five_term_equal", rep.check.five_term.equal},
                {"factorization_equal", rep.check.factorization_ok},
                {"failure", rep.check.failure ? json(*rep.check.failure) : json(nullptr)}};
}

inline PentagonReport pentagon_report_from_json(const json& j) {
    PentagonReport rep;
    rep.degree = j.at("degree").get<int>();
    rep.check.five_term.equal = j.at("five_term_equal").get<bool>();
    rep.check.factorization_ok = j.at("factorization_equal").get<bool>();
    if (!j.at("failure").is_null()) rep.check.failure = j.at("failure").get<std::string>();
    return rep;
}

inline void write_pentagon_pretty(std::ostream& os, const PentagonReport& rep) {
    os << "five-term identity at truncation weight " << rep.degree << "\n";
    os << "  Phi(x) Phi(y) = Phi(y) Phi(-q^(-1/2)xy) Phi(x)\n";
    os << "exact equality in the t-basis: " << (rep.check.five_term.equal ? "yes" : "NO")
       << "\n";
    os << "factorization pipeline agrees: " << (rep.check.factorization_ok ? "yes" : "NO")
       << "\n";
    if (rep.check.failure) os << "leading discrepancy: " << *rep.check.failure << "\n";
}

// ---------------------------------------------------------------------------
// general quiver runs
// ---------------------------------------------------------------------------

/// Parses the quiver input schema
/// {"vertices": n, "arrows": [[s,t],...], "theta": [...], "kappa": [...]}
/// with 0-based vertex indices; errors name the offending field.
inline std::pair<QuiverData, Stability> parse_quiver_json(const json& j) {
    auto fail = [](const std::string& field,
                   const std::string& why) -> std::pair<QuiverData, Stability> {
        throw std::invalid_argument("field '" + field + "' " + why);
    };
    if (!j.is_object()) throw std::invalid_argument("quiver description must be a JSON object");
    if (!j.contains("vertices") || !j.at("vertices").is_number_integer() ||
        j.at("vertices").get<int64_t>() < 1)
        return fail("vertices", "must be a positive integer");
    QuiverData q;
    q.vertex_count = j.at("vertices").get<int>();
    if (!j.contains("arrows") || !j.at("arrows").is_array())
        return fail("arrows", "must be an array of [source, target] pairs");
    for (size_t i = 0; i < j.at("arrows").size(); ++i) {
        const json& a = j.at("arrows")[i];
        std::string name = "arrows[" + std::to_string(i) + "]";
        if (!a.is_array() || a.size() != 2 || !a[0].is_number_integer() ||
            !a[1].is_number_integer())
            return fail(name, "must be a pair of vertex indices");
        int s = a[0].get<int>(), t = a[1].get<int>();
        if (s < 0 || s >= q.vertex_count || t < 0 || t >= q.vertex_count)
            return fail(name,
                        "has a vertex index outside [0, " + std::to_string(q.vertex_count) + ")");
        q.arrows.emplace_back(s, t);
    }
    Stability st;
    for (const char* key : {"theta", "kappa"}) {
        if (!j.contains(key) || !j.at(key).is_array() ||
            static_cast<int>(j.at(key).size()) != q.vertex_count)
            return fail(key, "must be an integer array with one entry per vertex");
        for (size_t i = 0; i < j.at(key).size(); ++i) {
            if (!j.at(key)[i].is_number_integer())
                return fail(std::string(key) + "[" + std::to_string(i) + "]",
                            "must be an integer");
            long v = j.at(key)[i].get<long>();
            if (std::string(key) == "kappa" && v < 1)
                return fail("kappa[" + std::to_string(i) + "]", "must be >= 1");
            (std::string(key) == "theta" ? st.theta : st.kappa).push_back(v);
        }
    }
    return {std::move(q), std::move(st)};
}

struct QuiverRunReport {
    QuiverData quiver;
    Stability stability;
    int degree = 0;
    SlopeSymmetry symmetry;
    // semistable slope series, decreasing slope; computable without symmetry
    std::vector<std::pair<Rational, SkewSeries>> slope_series;
    // filled only when the symmetry check passes
    std::vector<DTRecord> entries;
    std::map<std::string, PropertyResult> properties;

    bool all_pass() const {
        for (const auto& [name, r] : properties)
            if (!r.pass) return false;
        return true;
    }
};

/// Structural checks of the factorization polynomials for a general quiver:
/// natural coefficients with the dimension-formula degree, palindromic and
/// unimodal, and trivial exactly on real roots.
inline std::map<std::string, PropertyResult> quiver_property_checks(
    const ContextPtr& ctx, const std::vector<DTRecord>& records) {
    PropertyResult positivity, unimodality, simplicity;
    for (const auto& rec : records) {
        std::string name = rec.d.to_string();
        if (rec.violation) positivity.fail(name + ": " + *rec.violation);
        if (!rec.p) continue;
        const QPoly& p = *rec.p;
        long ee = euler_form(ctx->quiver(), rec.d, rec.d);
        if (p.degree() != 1 - ee)
            positivity.fail(name + ": degree " + std::to_string(p.degree()) + ", expected " +
                            std::to_string(1 - ee));
        for (int k = 0; k <= p.degree(); ++k)
            if (!is_integer(p.coeff(k)) || p.coeff(k) < 0) {
                positivity.fail(name + ": coefficient " + to_string(p.coeff(k)) + " at q^" +
                                std::to_string(k));
                break;
            }
        auto pu = is_palindromic_unimodal(p);
        if (!pu.palindromic || !pu.unimodal)
            unimodality.fail(name + ": " + p.to_string());
        if (ee == 1 && !p.is_one()) simplicity.fail(name + ": P = " + p.to_string());
    }
    return {{"positivity", positivity}, {"unimodality", unimodality},
            {"simplicity", simplicity}};
}

inline QuiverRunReport run_quiver(QuiverData q, Stability st, int degree) {
    QuiverRunReport rep;
    rep.quiver = q;
    rep.stability = st;
    rep.degree = degree;
    ContextPtr ctx = make_context(std::move(q), std::move(st), degree);
    rep.symmetry = ctx->slope_symmetry();
    auto series = hn_semistable_series(ctx);
    for (auto it = series.rbegin(); it != series.rend(); ++it)
        rep.slope_series.emplace_back(it->first, it->second);
    if (rep.symmetry.symmetric) {
        rep.entries = dt_table(ctx);
        rep.properties = quiver_property_checks(ctx, rep.entries);
    }
    return rep;
}

inline json qcoeff_to_json(const QCoeff& c) {
    SLaurent num = c.numerator();
    json den = json::array();
    for (const auto& x : c.denominator()) den.push_back(rational_to_json(x));
    return json{{"num", slaurent_to_json(num)}, {"den", den}};
}

inline QCoeff qcoeff_from_json(const json& j) {
    SLaurent num = slaurent_from_json(j.at("num"), "num");
    std::vector<Rational> den;
    for (size_t i = 0; i < j.at("den").size(); ++i)
        den.push_back(rational_from_json(j.at("den")[i], "den"));
    return QCoeff(num, SLaurent(0, std::move(den)));
}

inline json quiver_report_to_json(const QuiverRunReport& rep) {
    json quiver{{"vertices", rep.quiver.vertex_count},
                {"arrows", json::array()},
                {"theta", rep.stability.theta},
                {"kappa", rep.stability.kappa}};
    for (const auto& [s, t] : rep.quiver.arrows) quiver["arrows"].push_back({s, t});

    json sym{{"symmetric", rep.symmetry.symmetric},
             {"criterion_proportional", rep.symmetry.criterion_proportional},
             {"criterion_ratio", rep.symmetry.criterion_ratio
                                     ? json(to_string(*rep.symmetry.criterion_ratio))
                                     : json(nullptr)},
             {"checked_weight", rep.symmetry.checked_weight}};
    if (rep.symmetry.witness)
        sym["witness"] = {rep.symmetry.witness->first.e, rep.symmetry.witness->second.e};

    json slopes = json::array();
    for (const auto& [a, s] : rep.slope_series) {
        json terms = json::array();
        for (const auto& [d, c] : s.terms()) {
            if (d.is_zero()) continue;
            terms.push_back(json{{"d", d.e}, {"coeff", qcoeff_to_json(c)}});
        }
        slopes.push_back(json{{"slope", to_string(a)}, {"terms", terms}});
    }

    json entries = json::array();
    for (const auto& rec : rep.entries) entries.push_back(record_to_json(rec));

    return json{{"command", "quiver"},
                {"degree", rep.degree},
                {"quiver", quiver},
                {"symmetry", sym},
                {"semistable_series", slopes},
                {"entries", entries},
                {"properties", properties_to_json(rep.properties)}};
}

inline QuiverRunReport quiver_report_from_json(const json& j) {
    QuiverRunReport rep;
    std::tie(rep.quiver, rep.stability) = parse_quiver_json(j.at("quiver"));
    rep.degree = j.at("degree").get<int>();

    const json& sym = j.at("symmetry");
    rep.symmetry.symmetric = sym.at("symmetric").get<bool>();
    rep.symmetry.criterion_proportional = sym.at("criterion_proportional").get<bool>();
    if (!sym.at("criterion_ratio").is_null())
        rep.symmetry.criterion_ratio =
            rational_from_string(sym.at("criterion_ratio").get<std::string>());
    rep.symmetry.checked_weight = sym.at("checked_weight").get<int>();
    if (sym.contains("witness"))
        rep.symmetry.witness =
            std::make_pair(DimVector(sym.at("witness")[0].get<std::vector<int>>()),
                           DimVector(sym.at("witness")[1].get<std::vector<int>>()));

    ContextPtr ctx = make_context(rep.quiver, rep.stability, rep.degree);
    for (const auto& slope : j.at("semistable_series")) {
        SkewSeries s = SkewSeries::one(ctx);
        for (const auto& term : slope.at("terms"))
            s.set(DimVector(term.at("d").get<std::vector<int>>()),
                  qcoeff_from_json(term.at("coeff")));
        rep.slope_series.emplace_back(
            rational_from_string(slope.at("slope").get<std::string>()), std::move(s));
    }
    for (const auto& e : j.at("entries")) rep.entries.push_back(record_from_json(e));
    rep.properties = properties_from_json(j.at("properties"));
    return rep;
}

inline bool operator==(const QuiverRunReport& a, const QuiverRunReport& b) {
    if (!(a.quiver == b.quiver) || !(a.stability == b.stability) || a.degree != b.degree)
        return false;
    if (a.symmetry.symmetric != b.symmetry.symmetric ||
        a.symmetry.witness != b.symmetry.witness ||
        a.symmetry.criterion_proportional != b.symmetry.criterion_proportional ||
        a.symmetry.criterion_ratio != b.symmetry.criterion_ratio ||
        a.symmetry.checked_weight != b.symmetry.checked_weight)
        return false;
    if (a.slope_series.size() != b.slope_series.size()) return false;
    for (size_t i = 0; i < a.slope_series.size(); ++i) {
        if (a.slope_series[i].first != b.slope_series[i].first) return false;
        if (a.slope_series[i].second.terms() != b.slope_series[i].second.terms()) return false;
    }
    return a.entries == b.entries && a.properties == b.properties;
}

inline void write_quiver_pretty(std::ostream& os, const QuiverRunReport& rep) {
    os << "quiver with " << rep.quiver.vertex_count << " vertices, "
       << rep.quiver.arrows.size() << " arrows, truncation weight " << rep.degree << "\n";
    os << "slope symmetry: " << (rep.symmetry.symmetric ? "holds" : "VIOLATED")
       << " up to weight " << rep.symmetry.checked_weight << "\n";
    if (rep.symmetry.witness)
        os << "  witness: " << rep.symmetry.witness->first.to_string() << ", "
           << rep.symmetry.witness->second.to_string() << "\n";
    os << "semistable series by slope (decreasing):\n";
    for (const auto& [a, s] : rep.slope_series) {
        os << "  slope " << to_string(a) << ":";
        int shown = 0;
        for (const auto& [d, c] : s.terms()) {
            if (d.is_zero()) continue;
            os << " " << d.to_string();
            if (++shown >= 8) {
                os << " ...";
                break;
            }
        }
        os << "\n";
    }
    if (!rep.symmetry.symmetric) {
        os << "DT extraction skipped: the Euler form is not symmetric on slope classes\n";
        return;
    }
    os << "DT table (nonzero entries, decreasing slope):\n";
    for (const auto& rec : rep.entries)
        if (rec.stable)
            os << "  " << rec.d.to_string() << "  P = "
               << (rec.p ? rec.p->to_string() : std::string("<violation>")) << "\n";
    os << "properties:\n";
    for (const auto& [name, r] : rep.properties) {
        os << "  [" << (r.pass ? "PASS" : "FAIL") << "] " << name << "\n";
        for (const auto& w : r.witnesses) os << "      " << w << "\n";
    }
}

}  // namespace qdilog
