// The degree principle for symmetric optimization: invariant problems of
// degree d have optimizers with at most max(2, floor(d/2), deg g_i) distinct
// coordinate values, so minimization reduces to small subproblems indexed by
// partitions of n.
#pragma once

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "symred/group.hpp"
#include "symred/polynomial.hpp"

namespace symred {

inline int compute_r(const GroupRepresentation& rep, const Polynomial<Rational>& f,
                     const std::vector<Polynomial<Rational>>& g = {}) {
    if (rep.family() != GroupFamily::Symmetric)
        throw std::invalid_argument("compute_r: needs the full symmetric group");
    if (!is_invariant(rep, f)) throw std::invalid_argument("compute_r: objective not invariant");
    int r = std::max(2, f.degree() / 2);
    for (auto& gi : g) {
        if (!is_invariant(rep, gi))
            throw std::invalid_argument("compute_r: constraint not invariant");
        r = std::max(r, gi.degree());
    }
    return r;
}

// Partitions of n into at most (default) or exactly r parts, each partition
// non-increasing, listed in lexicographically decreasing order.
inline std::vector<std::vector<int>> enumerate_partitions(int n, int r, bool exactly_r = false) {
    if (r < 1 || r > n) throw std::invalid_argument("enumerate_partitions: r out of range");
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    auto rec = [&](auto&& self, int rest, int maxpart) -> void {
        if (rest == 0) {
            if (!exactly_r || (int)cur.size() == r) out.push_back(cur);
            return;
        }
        if ((int)cur.size() == r) return;
        for (int p = std::min(rest, maxpart); p >= 1; --p) {
            cur.push_back(p);
            self(self, rest - p, p);
            cur.pop_back();
        }
    };
    rec(rec, n, n);
    return out;
}

struct SubProblem {
    std::vector<int> partition;
    Polynomial<Rational> f;                // in T_1..T_k, k = partition length
    std::vector<Polynomial<Rational>> g;
};

// Substitute X-blocks by T_j with multiplicity lambda_j, exactly.
inline Polynomial<Rational> substitute_partition(const Polynomial<Rational>& f,
                                                 const std::vector<int>& lambda) {
    int n = f.vars();
    int total = 0;
    for (size_t j = 0; j < lambda.size(); ++j) {
        if (lambda[j] <= 0 || (j > 0 && lambda[j] > lambda[j - 1]))
            throw std::invalid_argument("substitute_partition: not a partition");
        total += lambda[j];
    }
    if (total != n) throw std::invalid_argument("substitute_partition: partition does not sum to n");
    int k = (int)lambda.size();
    std::vector<Polynomial<Rational>> subs;
    for (int j = 0; j < k; ++j)
        for (int c = 0; c < lambda[j]; ++c) subs.push_back(Polynomial<Rational>::variable(k, j));
    return f.compose(subs);
}

inline SubProblem make_subproblem(const Polynomial<Rational>& f,
                                  const std::vector<Polynomial<Rational>>& g,
                                  const std::vector<int>& lambda) {
    SubProblem sp;
    sp.partition = lambda;
    sp.f = substitute_partition(f, lambda);
    for (auto& gi : g) sp.g.push_back(substitute_partition(gi, lambda));
    return sp;
}

struct DegreeMinimum {
    double value = 0.0;
    std::vector<int> partition;
    std::vector<double> point;    // T values, one per part
    std::vector<double> witness;  // reconstructed n-vector
    bool bounded = true;
    bool found = false;
};

namespace detail {

inline double eval_at(const Polynomial<Rational>& p, const std::vector<double>& t) {
    double s = 0;
    for (auto& [m, c] : p.terms()) {
        double v = (double)c;
        for (int i = 0; i < p.vars(); ++i)
            for (int rpt = 0; rpt < m.e[i]; ++rpt) v *= t[i];
        s += v;
    }
    return s;
}

inline bool sub_feasible(const SubProblem& sp, const std::vector<double>& t,
                         double slack = 1e-8) {
    for (auto& gi : sp.g)
        if (eval_at(gi, t) < -slack) return false;
    return true;
}

// Grid scan plus pattern search over the box [-B, B]^k.
inline std::pair<bool, std::pair<double, std::vector<double>>> minimize_subproblem(
    const SubProblem& sp, double box, int grid, double tol) {
    int k = (int)sp.partition.size();
    bool found = false;
    double best = 0.0;
    std::vector<double> arg(k, 0.0);
    double step = grid > 1 ? 2 * box / (grid - 1) : 1.0;
    std::vector<double> t(k, 0.0);
    auto scan = [&](auto&& self, int pos) -> void {
        if (pos == k) {
            if (!sub_feasible(sp, t)) return;
            double v = eval_at(sp.f, t);
            if (!found || v < best) {
                found = true;
                best = v;
                arg = t;
            }
            return;
        }
        for (int i = 0; i < grid; ++i) {
            t[pos] = -box + i * step;
            self(self, pos + 1);
        }
    };
    scan(scan, 0);
    if (!found) return {false, {0.0, {}}};
    std::vector<std::vector<int>> dirs;
    std::vector<int> d(k, -1);
    while (true) {
        if (std::any_of(d.begin(), d.end(), [](int v) { return v != 0; })) dirs.push_back(d);
        int pos = 0;
        while (pos < k && d[pos] == 1) d[pos++] = -1;
        if (pos == k) break;
        ++d[pos];
    }
    double h = step;
    while (h > tol * 1e-3) {
        bool improved = false;
        for (auto& dir : dirs) {
            std::vector<double> cand = arg;
            bool inside = true;
            for (int i = 0; i < k; ++i) {
                cand[i] += h * dir[i];
                if (cand[i] < -box || cand[i] > box) inside = false;
            }
            if (!inside || !sub_feasible(sp, cand)) continue;
            double v = eval_at(sp.f, cand);
            if (v < best - 1e-18) {
                best = v;
                arg = cand;
                improved = true;
            }
        }
        if (!improved) h *= 0.5;
    }
    return {true, {best, arg}};
}

}  // namespace detail

inline DegreeMinimum minimize_all(const GroupRepresentation& rep, const Polynomial<Rational>& f,
                                  const std::vector<Polynomial<Rational>>& g = {},
                                  double box = 10.0, int grid = 41, double tol = 1e-6) {
    int n = rep.n_param();
    if (f.vars() != n) throw std::invalid_argument("minimize_all: variable mismatch");
    int r = compute_r(rep, f, g);
    if (std::min(r, n) > 3)
        throw std::invalid_argument("minimize_all: subproblem dimension too large for a grid");
    DegreeMinimum best;
    for (auto& lambda : enumerate_partitions(n, std::min(r, n))) {
        SubProblem sp = make_subproblem(f, g, lambda);
        auto [ok, res] = detail::minimize_subproblem(sp, box, grid, tol);
        if (!ok) continue;
        if (!best.found || res.first < best.value) {
            best.found = true;
            best.value = res.first;
            best.partition = lambda;
            best.point = res.second;
        }
    }
    if (best.found) {
        if (best.value < -1e12) best.bounded = false;
        for (size_t j = 0; j < best.partition.size(); ++j)
            for (int c = 0; c < best.partition[j]; ++c) best.witness.push_back(best.point[j]);
    }
    return best;
}

}  // namespace symred
