#pragma once

// Exact rational linear feasibility and optimization over systems
//   A x = b,  x >= 0
// via a dense two-phase tableau simplex with Bland's rule (no cycling, so
// guaranteed termination). Problem sizes here are tiny (<= ~45 rows/columns);
// everything is mpq arithmetic and every result is verified by substitution
// before it is returned.
//
// Infeasible systems yield a Farkas vector y with y·A_j <= 0 for every column
// j and y·b > 0.

#include <optional>
#include <vector>

#include "nlbox/errors.hpp"
#include "nlbox/rational.hpp"

namespace nlbox::lp {

using Vector = std::vector<Rational>;
using Matrix = std::vector<std::vector<Rational>>;  // row-major constraint rows

struct FeasibilityResult {
    bool feasible = false;
    Vector point;   // size n, when feasible
    Vector farkas;  // size m, when infeasible
};

struct OptimizeResult {
    Rational value;
    Vector point;
};

namespace detail {

inline void check_shape(const Matrix& A, const Vector& b) {
    if (A.size() != b.size()) throw MalformedSystem("row count mismatch between A and b");
    if (A.empty()) throw MalformedSystem("empty constraint system");
    std::size_t n = A.front().size();
    if (n == 0) throw MalformedSystem("system with zero variables");
    for (const auto& row : A)
        if (row.size() != n) throw MalformedSystem("ragged constraint matrix");
}

class Tableau {
  public:
    Tableau(const Matrix& A, const Vector& b) : m_(A.size()), n_(A.front().size()) {
        // Normalize to b >= 0, remembering flipped rows for certificate
        // extraction, then append one artificial column per row.
        flipped_.assign(m_, false);
        tab_.assign(m_, Vector(n_ + m_, Rational(0)));
        rhs_.resize(m_);
        basis_.resize(m_);
        for (std::size_t i = 0; i < m_; ++i) {
            bool flip = b[i] < 0;
            flipped_[i] = flip;
            for (std::size_t j = 0; j < n_; ++j) tab_[i][j] = flip ? -A[i][j] : A[i][j];
            rhs_[i] = flip ? -b[i] : b[i];
            tab_[i][n_ + i] = 1;
            basis_[i] = n_ + i;
        }
    }

    // Minimize the sum of artificials. Returns the optimal value.
    Rational phase1() {
        // Phase-1 costs: 0 on decision columns, 1 on artificials.
        red_.assign(n_ + m_, Rational(0));
        for (std::size_t j = 0; j < n_; ++j)
            for (std::size_t i = 0; i < m_; ++i) red_[j] -= tab_[i][j];
        entering_limit_ = n_ + m_;
        run();
        Rational value = 0;
        for (std::size_t i = 0; i < m_; ++i)
            if (basis_[i] >= n_) value += rhs_[i];
        return value;
    }

    // Farkas vector for the *original* (unflipped) system, valid after an
    // infeasible phase 1: y_i = 1 - reduced_cost(artificial_i), sign-restored.
    Vector farkas() const {
        Vector y(m_);
        for (std::size_t i = 0; i < m_; ++i) {
            Rational yi = 1 - red_[n_ + i];
            y[i] = flipped_[i] ? -yi : yi;
        }
        return y;
    }

    // After a feasible phase 1: pivot artificials out of the basis (dropping
    // redundant rows) and discard the artificial columns.
    void eliminate_artificials() {
        std::vector<bool> drop(m_, false);
        for (std::size_t r = 0; r < m_; ++r) {
            if (basis_[r] < n_) continue;
            std::size_t enter = n_;
            for (std::size_t j = 0; j < n_; ++j) {
                if (tab_[r][j] != 0) {
                    enter = j;
                    break;
                }
            }
            if (enter == n_) {
                drop[r] = true;  // redundant constraint
            } else {
                pivot(r, enter);  // degenerate pivot, rhs stays 0
            }
        }
        std::size_t keep = 0;
        for (std::size_t i = 0; i < m_; ++i) {
            if (drop[i]) continue;
            if (keep != i) {
                tab_[keep] = std::move(tab_[i]);
                rhs_[keep] = std::move(rhs_[i]);
                basis_[keep] = basis_[i];
            }
            ++keep;
        }
        tab_.resize(keep);
        rhs_.resize(keep);
        basis_.resize(keep);
        m_ = keep;
        for (auto& row : tab_) row.resize(n_);
        entering_limit_ = n_;
    }

    // Minimize c over the current (feasible, artificial-free) tableau.
    Rational phase2(const Vector& c) {
        red_.assign(n_, Rational(0));
        for (std::size_t j = 0; j < n_; ++j) {
            red_[j] = c[j];
            for (std::size_t i = 0; i < m_; ++i)
                if (c[basis_[i]] != 0) red_[j] -= c[basis_[i]] * tab_[i][j];
        }
        run();
        Rational value = 0;
        for (std::size_t i = 0; i < m_; ++i) value += c[basis_[i]] * rhs_[i];
        return value;
    }

    Vector point() const {
        Vector x(n_, Rational(0));
        for (std::size_t i = 0; i < m_; ++i)
            if (basis_[i] < n_) x[basis_[i]] = rhs_[i];
        return x;
    }

  private:
    void run() {
        for (;;) {
            // Bland: smallest-index column with negative reduced cost.
            std::size_t enter = entering_limit_;
            for (std::size_t j = 0; j < entering_limit_; ++j) {
                if (red_[j] < 0) {
                    enter = j;
                    break;
                }
            }
            if (enter == entering_limit_) return;  // optimal
            // Ratio test; ties broken by smallest basic variable index.
            std::size_t leave = m_;
            Rational best;
            for (std::size_t i = 0; i < m_; ++i) {
                if (tab_[i][enter] <= 0) continue;
                Rational ratio = rhs_[i] / tab_[i][enter];
                if (leave == m_ || ratio < best ||
                    (ratio == best && basis_[i] < basis_[leave])) {
                    leave = i;
                    best = ratio;
                }
            }
            if (leave == m_) throw MalformedSystem("unbounded objective in simplex");
            pivot(leave, enter);
        }
    }

    void pivot(std::size_t r, std::size_t e) {
        Rational piv = tab_[r][e];
        for (auto& v : tab_[r]) v /= piv;
        rhs_[r] /= piv;
        for (std::size_t i = 0; i < m_; ++i) {
            if (i == r || tab_[i][e] == 0) continue;
            Rational f = tab_[i][e];
            for (std::size_t j = 0; j < tab_[i].size(); ++j) tab_[i][j] -= f * tab_[r][j];
            rhs_[i] -= f * rhs_[r];
        }
        if (!red_.empty() && red_[e] != 0) {
            Rational f = red_[e];
            for (std::size_t j = 0; j < red_.size(); ++j) red_[j] -= f * tab_[r][j];
        }
        basis_[r] = e;
    }

    std::size_t m_, n_;
    Matrix tab_;
    Vector rhs_;
    Vector red_;
    std::vector<std::size_t> basis_;
    std::vector<bool> flipped_;
    std::size_t entering_limit_ = 0;
};

inline bool verify_point(const Matrix& A, const Vector& b, const Vector& x) {
    for (const Rational& v : x)
        if (v < 0) return false;
    for (std::size_t i = 0; i < A.size(); ++i) {
        Rational dot = 0;
        for (std::size_t j = 0; j < x.size(); ++j) dot += A[i][j] * x[j];
        if (dot != b[i]) return false;
    }
    return true;
}

inline bool verify_farkas(const Matrix& A, const Vector& b, const Vector& y) {
    Rational yb = 0;
    for (std::size_t i = 0; i < b.size(); ++i) yb += y[i] * b[i];
    if (yb <= 0) return false;
    for (std::size_t j = 0; j < A.front().size(); ++j) {
        Rational dot = 0;
        for (std::size_t i = 0; i < A.size(); ++i) dot += y[i] * A[i][j];
        if (dot > 0) return false;
    }
    return true;
}

}  // namespace detail

// Decide {x >= 0 : Ax = b}. The returned point or Farkas certificate has been
// verified by exact substitution.
inline FeasibilityResult feasible(const Matrix& A, const Vector& b) {
    detail::check_shape(A, b);
    detail::Tableau t(A, b);
    FeasibilityResult res;
    if (t.phase1() == 0) {
        t.eliminate_artificials();
        res.feasible = true;
        res.point = t.point();
        if (!detail::verify_point(A, b, res.point))
            throw InternalCheckFailure("simplex returned a non-feasible point");
    } else {
        res.feasible = false;
        res.farkas = t.farkas();
        if (!detail::verify_farkas(A, b, res.farkas))
            throw InternalCheckFailure("simplex returned an invalid Farkas certificate");
    }
    return res;
}

// min c·x over {x >= 0 : Ax = b}; nullopt when infeasible. The minimizing
// point is verified feasible by substitution.
inline std::optional<OptimizeResult> minimize(const Matrix& A, const Vector& b, const Vector& c) {
    detail::check_shape(A, b);
    if (c.size() != A.front().size()) throw MalformedSystem("cost vector size mismatch");
    detail::Tableau t(A, b);
    if (t.phase1() != 0) return std::nullopt;
    t.eliminate_artificials();
    OptimizeResult res;
    res.value = t.phase2(c);
    res.point = t.point();
    if (!detail::verify_point(A, b, res.point))
        throw InternalCheckFailure("simplex optimum is not feasible");
    return res;
}

}  // namespace nlbox::lp
