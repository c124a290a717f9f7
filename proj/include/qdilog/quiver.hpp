#pragma once

#include <algorithm>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qdilog/rational.hpp"

namespace qdilog {

/// Dimension vector: one natural number per quiver vertex.
struct DimVector {
    std::vector<int> e;

    DimVector() = default;
    explicit DimVector(std::vector<int> entries) : e(std::move(entries)) {}
    DimVector(std::initializer_list<int> entries) : e(entries) {}

    static DimVector zero(int n) { return DimVector(std::vector<int>(static_cast<size_t>(n), 0)); }
    static DimVector unit(int n, int i) {
        DimVector d = zero(n);
        d.e[static_cast<size_t>(i)] = 1;
        return d;
    }

    int size() const { return static_cast<int>(e.size()); }
    int operator[](int i) const { return e[static_cast<size_t>(i)]; }

    bool is_zero() const {
        return std::all_of(e.begin(), e.end(), [](int x) { return x == 0; });
    }

    friend DimVector operator+(const DimVector& a, const DimVector& b) {
        DimVector r = a;
        for (size_t i = 0; i < r.e.size(); ++i) r.e[i] += b.e[i];
        return r;
    }
    friend DimVector operator-(const DimVector& a, const DimVector& b) {
        DimVector r = a;
        for (size_t i = 0; i < r.e.size(); ++i) r.e[i] -= b.e[i];
        return r;
    }
    DimVector operator*(int k) const {
        DimVector r = *this;
        for (auto& x : r.e) x *= k;
        return r;
    }

    bool leq(const DimVector& b) const {
        for (size_t i = 0; i < e.size(); ++i)
            if (e[i] > b.e[i]) return false;
        return true;
    }

    bool divisible_by(int n) const {
        for (int x : e)
            if (x % n != 0) return false;
        return true;
    }
    DimVector divided_by(int n) const {
        DimVector r = *this;
        for (auto& x : r.e) x /= n;
        return r;
    }

    friend bool operator==(const DimVector& a, const DimVector& b) { return a.e == b.e; }
    friend bool operator!=(const DimVector& a, const DimVector& b) { return !(a == b); }
    friend bool operator<(const DimVector& a, const DimVector& b) { return a.e < b.e; }

    std::string to_string() const {
        std::ostringstream os;
        os << "(";
        for (size_t i = 0; i < e.size(); ++i) os << (i ? "," : "") << e[i];
        os << ")";
        return os.str();
    }
};

/// Finite acyclic quiver: vertex count plus arrows (source, target), 0-based.
struct QuiverData {
    int vertex_count = 0;
    std::vector<std::pair<int, int>> arrows;

    friend bool operator==(const QuiverData& a, const QuiverData& b) {
        return a.vertex_count == b.vertex_count && a.arrows == b.arrows;
    }
};

/// Linear stability data: slope(d) = theta(d) / kappa(d), kappa positive.
struct Stability {
    std::vector<long> theta;
    std::vector<long> kappa;

    friend bool operator==(const Stability& a, const Stability& b) {
        return a.theta == b.theta && a.kappa == b.kappa;
    }
};

inline void check_sizes(const QuiverData& q, const DimVector& d) {
    if (d.size() != q.vertex_count)
        throw std::invalid_argument("dimension vector size " + std::to_string(d.size()) +
                                    " does not match vertex count " +
                                    std::to_string(q.vertex_count));
}

/// Euler form <d,e> = sum_i d_i e_i - sum_{arrows i->j} d_i e_j.
inline long euler_form(const QuiverData& q, const DimVector& d, const DimVector& e) {
    check_sizes(q, d);
    check_sizes(q, e);
    long r = 0;
    for (int i = 0; i < q.vertex_count; ++i) r += static_cast<long>(d[i]) * e[i];
    for (const auto& [s, t] : q.arrows) r -= static_cast<long>(d[s]) * e[t];
    return r;
}

/// Antisymmetrized Euler form <d,e> - <e,d>.
inline long antisym(const QuiverData& q, const DimVector& d, const DimVector& e) {
    return euler_form(q, d, e) - euler_form(q, e, d);
}

/// A vertex order i_1,...,i_n such that every arrow i_k -> i_l has k > l
/// (targets come first); deterministic by smallest-index-first tie-breaking.
/// Throws on a cycle, naming one.
inline std::vector<int> admissible_vertex_order(const QuiverData& q) {
    const int n = q.vertex_count;
    std::vector<int> out_degree(static_cast<size_t>(n), 0);
    for (const auto& [s, t] : q.arrows) {
        if (s < 0 || s >= n || t < 0 || t >= n)
            throw std::invalid_argument("arrow endpoint out of range");
        ++out_degree[static_cast<size_t>(s)];
    }
    std::vector<bool> placed(static_cast<size_t>(n), false);
    std::vector<int> order;
    order.reserve(static_cast<size_t>(n));
    for (int step = 0; step < n; ++step) {
        int pick = -1;
        for (int v = 0; v < n && pick < 0; ++v)
            if (!placed[static_cast<size_t>(v)] && out_degree[static_cast<size_t>(v)] == 0)
                pick = v;
        if (pick < 0) {
            // walk out-edges among the unplaced vertices until a vertex repeats
            std::vector<int> walk;
            std::vector<int> seen_at(static_cast<size_t>(n), -1);
            int v = 0;
            while (placed[static_cast<size_t>(v)]) ++v;
            while (seen_at[static_cast<size_t>(v)] < 0) {
                seen_at[static_cast<size_t>(v)] = static_cast<int>(walk.size());
                walk.push_back(v);
                for (const auto& [s, t] : q.arrows)
                    if (s == v && !placed[static_cast<size_t>(t)]) {
                        v = t;
                        break;
                    }
            }
            std::ostringstream os;
            os << "quiver is not acyclic; cycle:";
            for (size_t i = static_cast<size_t>(seen_at[static_cast<size_t>(v)]);
                 i < walk.size(); ++i)
                os << " " << walk[i];
            os << " -> " << v;
            throw std::invalid_argument(os.str());
        }
        placed[static_cast<size_t>(pick)] = true;
        order.push_back(pick);
        for (const auto& [s, t] : q.arrows)
            if (t == pick && !placed[static_cast<size_t>(s)]) --out_degree[static_cast<size_t>(s)];
    }
    return order;
}

inline long theta_of(const Stability& st, const DimVector& d) {
    long r = 0;
    for (int i = 0; i < d.size(); ++i) r += st.theta[static_cast<size_t>(i)] * d[i];
    return r;
}

inline long kappa_of(const Stability& st, const DimVector& d) {
    long r = 0;
    for (int i = 0; i < d.size(); ++i) r += st.kappa[static_cast<size_t>(i)] * d[i];
    return r;
}

inline void check_stability(const QuiverData& q, const Stability& st) {
    if (static_cast<int>(st.theta.size()) != q.vertex_count)
        throw std::invalid_argument("theta size does not match vertex count");
    if (static_cast<int>(st.kappa.size()) != q.vertex_count)
        throw std::invalid_argument("kappa size does not match vertex count");
    for (size_t i = 0; i < st.kappa.size(); ++i)
        if (st.kappa[i] < 1)
            throw std::invalid_argument("kappa[" + std::to_string(i) +
                                        "] must be >= 1 so that kappa(d) > 0 for d != 0");
}

/// Exact slope theta(d)/kappa(d); d must be nonzero.
inline Rational slope(const Stability& st, const DimVector& d) {
    if (d.is_zero()) throw std::invalid_argument("slope of the zero vector is undefined");
    return make_rational(theta_of(st, d), kappa_of(st, d));
}

/// The m-arrow Kronecker quiver (m arrows from vertex 1 to vertex 0) with
/// stability theta(d) = m*(d_1 - d_0), kappa(d) = d_0 + d_1.
inline std::pair<QuiverData, Stability> kronecker_quiver(int m) {
    if (m < 1) throw std::invalid_argument("Kronecker quiver needs m >= 1");
    QuiverData q;
    q.vertex_count = 2;
    for (int i = 0; i < m; ++i) q.arrows.emplace_back(1, 0);
    Stability st;
    st.theta = {-m, m};
    st.kappa = {1, 1};
    return {q, st};
}

/// All nonzero dimension vectors with kappa(d) <= bound, sorted by
/// (kappa, lexicographic).
inline std::vector<DimVector> vectors_up_to_weight(const QuiverData& q, const Stability& st,
                                                   int bound) {
    check_stability(q, st);
    std::vector<DimVector> out;
    DimVector cur = DimVector::zero(q.vertex_count);
    auto rec = [&](auto&& self, int i, long weight) -> void {
        if (i == q.vertex_count) {
            if (!cur.is_zero()) out.push_back(cur);
            return;
        }
        for (int v = 0; weight + v * st.kappa[static_cast<size_t>(i)] <= bound; ++v) {
            cur.e[static_cast<size_t>(i)] = v;
            self(self, i + 1, weight + v * st.kappa[static_cast<size_t>(i)]);
        }
        cur.e[static_cast<size_t>(i)] = 0;
    };
    rec(rec, 0, 0);
    std::sort(out.begin(), out.end(), [&](const DimVector& a, const DimVector& b) {
        long ka = kappa_of(st, a), kb = kappa_of(st, b);
        if (ka != kb) return ka < kb;
        return a < b;
    });
    return out;
}

struct SlopeSymmetry {
    bool symmetric = false;
    std::optional<std::pair<DimVector, DimVector>> witness;
    /// Whether antisym(d,e) is a constant multiple of kappa(d)theta(e)-kappa(e)theta(d)
    /// on all basis pairs (a sufficient criterion independent of the weight bound).
    bool criterion_proportional = false;
    std::optional<Rational> criterion_ratio;
    int checked_weight = 0;
};

/// Checks that the Euler form is symmetric on every slope class, for all
/// nonzero d, e with kappa <= bound.  A false result carries a violating pair.
inline SlopeSymmetry check_slope_symmetry(const QuiverData& q, const Stability& st, int bound) {
    check_stability(q, st);
    SlopeSymmetry r;
    r.checked_weight = bound;
    r.symmetric = true;
    auto vecs = vectors_up_to_weight(q, st, bound);
    std::vector<Rational> slopes(vecs.size());
    for (size_t i = 0; i < vecs.size(); ++i) slopes[i] = slope(st, vecs[i]);
    for (size_t i = 0; i < vecs.size() && r.symmetric; ++i)
        for (size_t j = i + 1; j < vecs.size(); ++j)
            if (slopes[i] == slopes[j] && antisym(q, vecs[i], vecs[j]) != 0) {
                r.symmetric = false;
                r.witness = std::make_pair(vecs[i], vecs[j]);
                break;
            }

    // basis-vector criterion, up to one overall proportionality constant
    const int n = q.vertex_count;
    std::optional<Rational> ratio;
    bool proportional = true;
    for (int i = 0; i < n && proportional; ++i) {
        for (int j = i + 1; j < n && proportional; ++j) {
            DimVector ei = DimVector::unit(n, i), ej = DimVector::unit(n, j);
            long a = antisym(q, ei, ej);
            long b = st.kappa[static_cast<size_t>(i)] * st.theta[static_cast<size_t>(j)] -
                     st.kappa[static_cast<size_t>(j)] * st.theta[static_cast<size_t>(i)];
            if (a == 0 && b == 0) continue;
            if (b == 0) {
                proportional = false;
                break;
            }
            Rational c = make_rational(a, b);
            if (!ratio)
                ratio = c;
            else if (*ratio != c)
                proportional = false;
        }
    }
    r.criterion_proportional = proportional;
    if (proportional) r.criterion_ratio = ratio;
    return r;
}

}  // namespace qdilog
