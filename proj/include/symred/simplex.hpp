// Two-phase primal simplex with Bland's rule, templated on the scalar field.
// Exact over rationals; over doubles a pivot tolerance guards comparisons.
// Problems are given as equality rows over variables that are nonnegative by
// default; free variables are split internally.
#pragma once

#include <stdexcept>
#include <vector>

#include "symred/matrix.hpp"

namespace symred {

enum class LPStatus { Optimal, Infeasible, Unbounded };

template <class K>
struct LPProblem {
    Matrix<K> A;        // equality constraint rows
    std::vector<K> b;   // right-hand sides
    std::vector<K> c;   // objective coefficients
    bool maximize = true;
    std::vector<bool> nonneg;  // per-variable; empty means all nonnegative
};

template <class K>
struct LPResult {
    LPStatus status = LPStatus::Infeasible;
    K value = K(0);
    std::vector<K> x;
};

namespace detail {

template <class K>
struct SimplexTableau {
    // rows of [A | b]; basis[i] = variable of row i.
    std::vector<std::vector<K>> rows;
    std::vector<int> basis;
    int nvars;
    double tol;

    bool pos(const K& v) const {
        if constexpr (scalar_traits<K>::exact) return v > 0;
        else return v > tol;
    }
    bool neg(const K& v) const {
        if constexpr (scalar_traits<K>::exact) return v < 0;
        else return v < -tol;
    }

    void pivot(int row, int col) {
        K inv = K(1) / rows[row][col];
        for (auto& v : rows[row]) v = inv * v;
        for (size_t i = 0; i < rows.size(); ++i) {
            if ((int)i == row) continue;
            K f = rows[i][col];
            if (scalar_traits<K>::is_zero(f)) continue;
            for (size_t j = 0; j < rows[i].size(); ++j) rows[i][j] = rows[i][j] - f * rows[row][j];
        }
        basis[row] = col;
    }

    // Minimizes cost over the current feasible dictionary. Returns false on
    // unboundedness. Bland's rule prevents cycling.
    bool run(std::vector<K> cost, K& objective) {
        int m = (int)rows.size();
        // Reduced cost row: cost - sum over basic rows.
        std::vector<K> z(nvars + 1, K(0));
        for (int j = 0; j < nvars; ++j) z[j] = cost[j];
        for (int i = 0; i < m; ++i) {
            K f = cost[basis[i]];
            if (scalar_traits<K>::is_zero(f)) continue;
            for (int j = 0; j <= nvars; ++j) z[j] = z[j] - f * rows[i][j];
        }
        while (true) {
            int enter = -1;
            for (int j = 0; j < nvars; ++j)
                if (neg(z[j])) { enter = j; break; }
            if (enter < 0) break;
            int leave = -1;
            for (int i = 0; i < m; ++i) {
                if (!pos(rows[i][enter])) continue;
                if (leave < 0) { leave = i; continue; }
                // Compare ratios b_i / a_i exactly via cross-multiplication.
                K lhs = rows[i][nvars] * rows[leave][enter];
                K rhs = rows[leave][nvars] * rows[i][enter];
                if (lhs < rhs || (lhs == rhs && basis[i] < basis[leave])) leave = i;
            }
            if (leave < 0) return false;
            K f = z[enter];
            pivot(leave, enter);
            for (int j = 0; j <= nvars; ++j) z[j] = z[j] - f * rows[leave][j];
        }
        objective = K(0) - z[nvars];
        return true;
    }
};

}  // namespace detail

template <class K>
LPResult<K> simplex_solve(const LPProblem<K>& lp, double tol = 1e-9) {
    int m = lp.A.rows();
    int n = lp.A.cols();
    if ((int)lp.b.size() != m || (int)lp.c.size() != n)
        throw std::invalid_argument("LP shape mismatch");
    std::vector<bool> nonneg = lp.nonneg.empty() ? std::vector<bool>(n, true) : lp.nonneg;
    if ((int)nonneg.size() != n) throw std::invalid_argument("nonneg flag length mismatch");

    // Split free variables into positive and negative parts.
    std::vector<int> pos_col(n), neg_col(n, -1);
    int ncols = 0;
    for (int j = 0; j < n; ++j) {
        pos_col[j] = ncols++;
        if (!nonneg[j]) neg_col[j] = ncols++;
    }

    int total = ncols + m;  // plus artificials
    detail::SimplexTableau<K> tab;
    tab.nvars = total;
    tab.tol = tol;
    tab.rows.assign(m, std::vector<K>(total + 1, K(0)));
    tab.basis.resize(m);
    for (int i = 0; i < m; ++i) {
        bool flip = lp.b[i] < K(0);
        for (int j = 0; j < n; ++j) {
            K v = flip ? K(0) - lp.A(i, j) : lp.A(i, j);
            tab.rows[i][pos_col[j]] = v;
            if (neg_col[j] >= 0) tab.rows[i][neg_col[j]] = K(0) - v;
        }
        tab.rows[i][ncols + i] = K(1);
        tab.rows[i][total] = flip ? K(0) - lp.b[i] : lp.b[i];
        tab.basis[i] = ncols + i;
    }

    LPResult<K> result;
    // Phase 1: minimize the artificial sum.
    std::vector<K> phase1(total, K(0));
    for (int i = 0; i < m; ++i) phase1[ncols + i] = K(1);
    K art_sum(0);
    tab.run(phase1, art_sum);  // bounded by construction
    bool infeasible;
    if constexpr (scalar_traits<K>::exact) infeasible = art_sum > 0;
    else infeasible = symred::scalar_traits<K>::abs2(art_sum) > tol * tol;
    if (infeasible) {
        result.status = LPStatus::Infeasible;
        return result;
    }
    // Remove artificials still in the basis (degenerate rows).
    for (int i = 0; i < m; ++i) {
        if (tab.basis[i] < ncols) continue;
        int piv = -1;
        for (int j = 0; j < ncols; ++j)
            if (!scalar_traits<K>::is_zero(tab.rows[i][j]) &&
                (tab.pos(tab.rows[i][j]) || tab.neg(tab.rows[i][j]))) { piv = j; break; }
        if (piv >= 0) tab.pivot(i, piv);
        // else: redundant row; harmless to keep with artificial at zero.
    }
    // Forbid artificials from re-entering by zeroing their columns.
    for (int i = 0; i < m; ++i)
        for (int a = ncols; a < total; ++a)
            if (tab.basis[i] != a) tab.rows[i][a] = K(0);

    // Phase 2.
    std::vector<K> cost(total, K(0));
    for (int j = 0; j < n; ++j) {
        K cj = lp.maximize ? K(0) - lp.c[j] : lp.c[j];
        cost[pos_col[j]] = cj;
        if (neg_col[j] >= 0) cost[neg_col[j]] = K(0) - cj;
    }
    // Large cost on any artificial that survived in a degenerate basis row.
    K objective(0);
    if (!tab.run(cost, objective)) {
        result.status = LPStatus::Unbounded;
        return result;
    }
    result.status = LPStatus::Optimal;
    result.value = lp.maximize ? K(0) - objective : objective;
    result.x.assign(n, K(0));
    std::vector<K> raw(total, K(0));
    for (int i = 0; i < m; ++i) raw[tab.basis[i]] = tab.rows[i][total];
    for (int j = 0; j < n; ++j) {
        result.x[j] = raw[pos_col[j]];
        if (neg_col[j] >= 0) result.x[j] = result.x[j] - raw[neg_col[j]];
    }
    return result;
}

}  // namespace symred
