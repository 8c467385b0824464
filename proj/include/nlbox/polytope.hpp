#pragma once

// Membership, decomposition, and dimension for the correlation polytopes:
// the 16-vertex local polytope, the 24-vertex no-signaling polytope, and the
// full 256-vertex polytope. Membership is decided by exact LP feasibility on
// the raw 16 entries plus the weight-normalization row; every certificate is
// re-verified by substitution before it is returned.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nlbox/correlation.hpp"
#include "nlbox/relabel.hpp"
#include "nlbox/simplex.hpp"
#include "nlbox/vertices.hpp"

namespace nlbox {

struct VertexSet {
    std::string name;
    std::vector<CorrelationArray> arrays;
    std::vector<std::string> labels;  // e.g. "det:27", "pr:3"

    std::size_t size() const { return arrays.size(); }
};

// 16 local deterministic vertices in id order.
inline const VertexSet& local_vertex_set() {
    static const VertexSet set = [] {
        VertexSet s{"local-16", {}, {}};
        for (const DeterministicVertex& v : local_vertices()) {
            s.arrays.push_back(v.array());
            s.labels.push_back("det:" + std::to_string(v.id));
        }
        return s;
    }();
    return set;
}

// 16 local vertices followed by the 8 PR-box vertices (canonical orbit order).
inline const VertexSet& nosignaling_vertex_set() {
    static const VertexSet set = [] {
        VertexSet s = local_vertex_set();
        s.name = "nosignaling-24";
        std::size_t k = 0;
        for (const CorrelationArray& arr : pr_orbit()) {
            s.arrays.push_back(arr);
            s.labels.push_back("pr:" + std::to_string(k++));
        }
        return s;
    }();
    return set;
}

// All 256 deterministic vertices in id order.
inline const VertexSet& all_vertex_set() {
    static const VertexSet set = [] {
        VertexSet s{"all-256", {}, {}};
        for (const TaggedVertex& t : enumerate_vertices()) {
            s.arrays.push_back(t.vertex.array());
            s.labels.push_back("det:" + std::to_string(t.vertex.id));
        }
        return s;
    }();
    return set;
}

struct Decomposition {
    // (index into the vertex set, weight); only nonzero weights are listed.
    std::vector<std::pair<std::size_t, Rational>> weights;

    bool operator==(const Decomposition&) const = default;
};

struct SeparatingInequality {
    std::array<Rational, CorrelationArray::kEntries> coefficients{};
    Rational bound;
    Rational value_at_target;
    std::string note;  // e.g. which CHSH variant, or "farkas"
};

struct MembershipVerdict {
    bool inside = false;
    std::optional<Decomposition> decomposition;      // present iff inside
    std::optional<SeparatingInequality> inequality;  // present iff outside
};

namespace detail {

// Equality system "weighted vertices reproduce the target": 16 entry rows
// plus one normalization row.
inline void build_system(const VertexSet& set, const CorrelationArray& target, lp::Matrix& A,
                         lp::Vector& b) {
    const std::size_t n = set.size();
    A.assign(17, lp::Vector(n, Rational(0)));
    b.assign(17, Rational(0));
    for (std::size_t j = 0; j < n; ++j) {
        for (int i = 0; i < CorrelationArray::kEntries; ++i) A[static_cast<std::size_t>(i)][j] = set.arrays[j][i];
        A[16][j] = 1;
    }
    for (int i = 0; i < CorrelationArray::kEntries; ++i) b[static_cast<std::size_t>(i)] = target[i];
    b[16] = 1;
}

inline Decomposition decomposition_from_point(const lp::Vector& point) {
    Decomposition d;
    for (std::size_t j = 0; j < point.size(); ++j)
        if (point[j] != 0) d.weights.push_back({j, point[j]});
    return d;
}

inline Rational inequality_value(const SeparatingInequality& ineq, const CorrelationArray& arr) {
    Rational v = 0;
    for (int i = 0; i < CorrelationArray::kEntries; ++i)
        v += ineq.coefficients[static_cast<std::size_t>(i)] * arr[i];
    return v;
}

}  // namespace detail

// Exact reconstruction check for a decomposition certificate.
inline bool verify_decomposition(const VertexSet& set, const Decomposition& d,
                                 const CorrelationArray& target) {
    Rational total = 0;
    std::vector<std::pair<Rational, CorrelationArray>> terms;
    for (const auto& [idx, w] : d.weights) {
        if (w < 0 || idx >= set.size()) return false;
        total += w;
        terms.push_back({w, set.arrays[idx]});
    }
    if (total != 1) return false;
    return convex_mix(terms) == target;
}

// The inequality must hold on every vertex of the set and fail on the target.
inline bool verify_inequality(const VertexSet& set, const SeparatingInequality& ineq,
                              const CorrelationArray& target) {
    for (const CorrelationArray& v : set.arrays)
        if (detail::inequality_value(ineq, v) > ineq.bound) return false;
    return detail::inequality_value(ineq, target) > ineq.bound;
}

// ---------------------------------------------------------------------------
// CHSH facet checks (the 8 sign variants with an odd number of minus signs)

struct FacetCheck {
    std::string id;  // signs applied to <00>,<01>,<10>,<11>, e.g. "+++-"
    Rational value;
    bool satisfied;  // value <= 2
};

inline std::vector<FacetCheck> chsh_facet_check(const CorrelationArray& arr) {
    ChshStats s = chsh(arr);
    std::vector<FacetCheck> checks;
    for (int mask = 0; mask < 16; ++mask) {
        int minus_count = __builtin_popcount(static_cast<unsigned>(mask));
        if (minus_count % 2 == 0) continue;
        FacetCheck fc;
        Rational v = 0;
        for (int c = 0; c < 4; ++c) {
            bool minus = (mask >> (3 - c)) & 1;
            fc.id += minus ? '-' : '+';
            v += minus ? -s.expectations[static_cast<std::size_t>(c)]
                       : s.expectations[static_cast<std::size_t>(c)];
        }
        fc.value = v;
        fc.satisfied = v <= 2;
        checks.push_back(std::move(fc));
    }
    return checks;
}

// The CHSH functional of one sign variant written out over the 16 entries:
// coefficient(x,y,a,b) = sign(x,y) * (-1)^(a+b), bound 2.
inline SeparatingInequality chsh_inequality(const std::string& variant_id) {
    SeparatingInequality ineq;
    ineq.bound = 2;
    ineq.note = "chsh:" + variant_id;
    for (int c = 0; c < 4; ++c) {
        int sign = variant_id[static_cast<std::size_t>(c)] == '-' ? -1 : 1;
        int x = c / 2, y = c % 2;
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b)
                ineq.coefficients[static_cast<std::size_t>(CorrelationArray::index(x, y, a, b))] =
                    ((a ^ b) ? -sign : sign);
    }
    return ineq;
}

// ---------------------------------------------------------------------------
// Membership

namespace detail {

inline SeparatingInequality inequality_from_farkas(const lp::Vector& farkas,
                                                   const CorrelationArray& target) {
    // Farkas y over 17 rows: y·A_j <= 0 for every vertex column and y·b > 0.
    // Splitting off the normalization row: coeffs·v <= -y16 on vertices,
    // coeffs·target > -y16.
    SeparatingInequality ineq;
    for (int i = 0; i < CorrelationArray::kEntries; ++i)
        ineq.coefficients[static_cast<std::size_t>(i)] = farkas[static_cast<std::size_t>(i)];
    ineq.bound = -farkas[16];
    ineq.value_at_target = inequality_value(ineq, target);
    ineq.note = "farkas";
    return ineq;
}

inline MembershipVerdict membership(const VertexSet& set, const CorrelationArray& arr,
                                    bool prefer_chsh_certificate) {
    lp::Matrix A;
    lp::Vector b;
    build_system(set, arr, A, b);
    lp::FeasibilityResult fr = lp::feasible(A, b);
    MembershipVerdict verdict;
    if (fr.feasible) {
        verdict.inside = true;
        verdict.decomposition = decomposition_from_point(fr.point);
        if (!verify_decomposition(set, *verdict.decomposition, arr))
            throw InternalCheckFailure("membership decomposition failed re-verification");
        return verdict;
    }
    verdict.inside = false;
    if (prefer_chsh_certificate) {
        for (const FacetCheck& fc : chsh_facet_check(arr)) {
            if (fc.satisfied) continue;
            SeparatingInequality ineq = chsh_inequality(fc.id);
            ineq.value_at_target = inequality_value(ineq, arr);
            if (verify_inequality(set, ineq, arr)) {
                verdict.inequality = std::move(ineq);
                return verdict;
            }
        }
    }
    SeparatingInequality ineq = inequality_from_farkas(fr.farkas, arr);
    if (!verify_inequality(set, ineq, arr))
        throw InternalCheckFailure("Farkas inequality failed re-verification");
    verdict.inequality = std::move(ineq);
    return verdict;
}

}  // namespace detail

// Membership in the 16-vertex local polytope. Only posed for no-signaling
// arrays; outside verdicts carry a CHSH-form certificate when one of the 8
// variants separates (it always does for no-signaling inputs in practice),
// otherwise a Farkas-derived inequality.
inline MembershipVerdict membership_local(const CorrelationArray& arr) {
    if (!signaling_report(arr).no_signaling())
        throw SignalingInput("local membership is only posed for no-signaling arrays");
    return detail::membership(local_vertex_set(), arr, /*prefer_chsh_certificate=*/true);
}

// Membership in the 24-vertex no-signaling polytope, cross-checked against
// the direct marginal-equality test; the two must agree.
inline MembershipVerdict membership_nosignaling(const CorrelationArray& arr) {
    MembershipVerdict verdict =
        detail::membership(nosignaling_vertex_set(), arr, /*prefer_chsh_certificate=*/false);
    bool direct = signaling_report(arr).no_signaling();
    if (direct != verdict.inside)
        throw InternalCheckFailure("no-signaling LP and direct constraint test disagree");
    return verdict;
}

// ---------------------------------------------------------------------------
// Decompositions

// Lexicographically minimal feasible weight vector (in the set's canonical
// vertex order): minimize w_0, fix it, minimize w_1, ... The result is a
// uniquely determined basic solution, so output is deterministic.
inline Decomposition decompose(const CorrelationArray& arr, const VertexSet& set) {
    lp::Matrix A;
    lp::Vector b;
    detail::build_system(set, arr, A, b);
    const std::size_t n = set.size();
    if (!lp::feasible(A, b).feasible)
        throw OutsideHull("array is not in the hull of vertex set " + set.name);
    lp::Vector fixed(n);
    for (std::size_t i = 0; i < n; ++i) {
        lp::Vector c(n, Rational(0));
        c[i] = 1;
        auto opt = lp::minimize(A, b, c);
        if (!opt) throw InternalCheckFailure("lexmin subproblem became infeasible");
        fixed[i] = opt->value;
        lp::Vector row(n, Rational(0));
        row[i] = 1;
        A.push_back(std::move(row));
        b.push_back(fixed[i]);
    }
    Decomposition d = detail::decomposition_from_point(fixed);
    if (!verify_decomposition(set, d, arr))
        throw InternalCheckFailure("lexmin decomposition failed re-verification");
    return d;
}

struct TwoDecompositions {
    bool unique = false;
    Decomposition first;
    std::optional<Decomposition> second;  // present iff not unique
};

// Either two decompositions differing in at least one weight, or a proof of
// uniqueness: for every vertex, maximize and minimize its weight over the
// feasible set; equal optima everywhere certify uniqueness.
inline TwoDecompositions two_decompositions(const CorrelationArray& arr, const VertexSet& set) {
    lp::Matrix A;
    lp::Vector b;
    detail::build_system(set, arr, A, b);
    const std::size_t n = set.size();
    std::optional<lp::OptimizeResult> any;
    for (std::size_t i = 0; i < n; ++i) {
        lp::Vector c(n, Rational(0));
        c[i] = 1;
        auto lo = lp::minimize(A, b, c);
        if (!lo) throw OutsideHull("array is not in the hull of vertex set " + set.name);
        c[i] = -1;
        auto hi = lp::minimize(A, b, c);
        if (lo->value != -hi->value) {
            TwoDecompositions r;
            r.unique = false;
            r.first = detail::decomposition_from_point(lo->point);
            r.second = detail::decomposition_from_point(hi->point);
            if (!verify_decomposition(set, r.first, arr) ||
                !verify_decomposition(set, *r.second, arr))
                throw InternalCheckFailure("two-decomposition certificates failed re-verification");
            if (r.first == *r.second)
                throw InternalCheckFailure("two-decomposition pair is not distinct");
            return r;
        }
        any = lo;
    }
    TwoDecompositions r;
    r.unique = true;
    r.first = detail::decomposition_from_point(any->point);
    if (!verify_decomposition(set, r.first, arr))
        throw InternalCheckFailure("unique decomposition failed re-verification");
    return r;
}

// ---------------------------------------------------------------------------
// Dimension

// Affine dimension of a vertex set: exact rank of the difference vectors.
inline int affine_dimension(const VertexSet& set) {
    if (set.arrays.empty()) throw MalformedSystem("affine dimension of empty vertex set");
    std::vector<std::array<Rational, CorrelationArray::kEntries>> rows;
    for (std::size_t i = 1; i < set.arrays.size(); ++i) {
        std::array<Rational, CorrelationArray::kEntries> diff;
        for (int k = 0; k < CorrelationArray::kEntries; ++k)
            diff[static_cast<std::size_t>(k)] = set.arrays[i][k] - set.arrays[0][k];
        rows.push_back(std::move(diff));
    }
    int rank = 0;
    std::size_t pivot_row = 0;
    for (int col = 0; col < CorrelationArray::kEntries && pivot_row < rows.size(); ++col) {
        std::size_t sel = pivot_row;
        while (sel < rows.size() && rows[sel][static_cast<std::size_t>(col)] == 0) ++sel;
        if (sel == rows.size()) continue;
        std::swap(rows[sel], rows[pivot_row]);
        const Rational piv = rows[pivot_row][static_cast<std::size_t>(col)];
        for (std::size_t r = pivot_row + 1; r < rows.size(); ++r) {
            if (rows[r][static_cast<std::size_t>(col)] == 0) continue;
            Rational f = rows[r][static_cast<std::size_t>(col)] / piv;
            for (int k = col; k < CorrelationArray::kEntries; ++k)
                rows[r][static_cast<std::size_t>(k)] -= f * rows[pivot_row][static_cast<std::size_t>(k)];
        }
        ++pivot_row;
        ++rank;
    }
    return rank;
}

inline int affine_dimension(const std::vector<CorrelationArray>& arrays) {
    VertexSet s{"ad-hoc", arrays, {}};
    return affine_dimension(s);
}

}  // namespace nlbox
