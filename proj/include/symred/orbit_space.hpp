// Hilbert maps, J matrices from differentials of fundamental invariants,
// orbit-space reformulation of invariant optimization problems, and the
// moment relaxation over the orbit space (export only).
#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <tuple>
#include <vector>

#include "symred/invariant_ring.hpp"
#include "symred/matrix_polynomial.hpp"
#include "symred/sdp.hpp"

namespace symred {

// ---------------------------------------------------------------------------
// Hilbert maps

struct HilbertMap {
    std::vector<Polynomial<Rational>> generators;  // pi_i in the X variables
    int n = 0;                                     // ambient variable count
    std::vector<Polynomial<Rational>> relations;   // in z_1..z_m, user-supplied

    std::vector<Rational> apply(const std::vector<Rational>& x) const {
        std::vector<Rational> z;
        for (auto& g : generators) z.push_back(g.eval(x));
        return z;
    }
};

inline HilbertMap hilbert_map(const GroupRepresentation& rep,
                              std::vector<Polynomial<Rational>> gens,
                              std::vector<Polynomial<Rational>> relations = {}) {
    if (gens.empty()) throw std::invalid_argument("hilbert_map: no generators");
    HilbertMap map;
    map.n = rep.degree();
    for (auto& g : gens) {
        if (g.vars() != map.n) throw std::invalid_argument("hilbert_map: variable mismatch");
        if (!is_invariant(rep, g))
            throw std::invalid_argument("hilbert_map: generator is not invariant");
    }
    for (auto& r : relations)
        if (r.vars() != (int)gens.size())
            throw std::invalid_argument("hilbert_map: relation variable mismatch");
    map.generators = std::move(gens);
    map.relations = std::move(relations);
    return map;
}

// ---------------------------------------------------------------------------
// The J matrix of inner products of differentials, rewritten in z.
// J(Pi(x)) equals the Gram matrix of the d pi_i at x as an exact polynomial
// identity, because the rewrite is verified by back substitution.

inline MatrixPolynomial<Rational> j_matrix(const HilbertMap& map) {
    int m = (int)map.generators.size();
    InvariantBasis basis = InvariantBasis::custom(map.generators);
    MatrixPolynomial<Rational> J(m, m);
    for (int i = 0; i < m; ++i)
        for (int j = i; j < m; ++j) {
            Polynomial<Rational> gram(map.n);
            for (int k = 0; k < map.n; ++k)
                gram = gram + map.generators[i].derivative(k) * map.generators[j].derivative(k);
            J.set(i, j, rewrite_in_invariants(gram, basis));
        }
    return J;
}

// ---------------------------------------------------------------------------
// Orbit-space reformulation of an invariant optimization problem

struct OrbitSpaceProblem {
    HilbertMap map;
    Polynomial<Rational> objective;               // p-tilde in z
    std::vector<Polynomial<Rational>> constraints;  // g-tilde_i in z
    MatrixPolynomial<Rational> J;
};

inline OrbitSpaceProblem reformulate(const HilbertMap& map, const Polynomial<Rational>& f,
                                     const std::vector<Polynomial<Rational>>& g = {}) {
    InvariantBasis basis = InvariantBasis::custom(map.generators);
    OrbitSpaceProblem prob;
    prob.map = map;
    prob.objective = rewrite_in_invariants(f, basis);
    for (auto& gi : g) prob.constraints.push_back(rewrite_in_invariants(gi, basis));
    prob.J = j_matrix(map);
    return prob;
}

// ---------------------------------------------------------------------------
// Moment relaxation Q_k over the orbit space (assembled, never solved).
// The moment matrix M_k(y), one localizing matrix per scalar constraint, and
// the block localizing matrix M_{k-m}(J * y) with m the generator count are
// emitted in SDPA sparse form, with y_0 = 1 folded into the constant matrix.

inline SdpaData moment_relaxation_qk(const OrbitSpaceProblem& prob, int k) {
    int m = (int)prob.map.generators.size();  // = number of z variables
    if (k < (prob.objective.degree() + 1) / 2)
        throw std::invalid_argument("moment_relaxation_qk: k below objective degree");
    for (auto& g : prob.constraints)
        if (k < (g.degree() + 1) / 2)
            throw std::invalid_argument("moment_relaxation_qk: k below constraint degree");
    if (k < m) throw std::invalid_argument("moment_relaxation_qk: k below generator count");

    // Moment variables y_alpha, with alpha = 0 pinned to 1.
    std::map<Monomial, int> yvar;  // nonzero alpha -> 1-based constraint index
    auto yindex = [&](const Monomial& a) -> int {
        if (a.degree() == 0) return 0;
        auto [it, fresh] = yvar.emplace(a, (int)yvar.size() + 1);
        return it->second;
    };

    SdpaData data;
    // entry sign convention: each PSD condition M(y) >= 0 is written as
    // sum_alpha y_alpha F_alpha - F_0 >= 0, so constants flip sign into F_0.
    std::vector<SdpaEntry> pending;
    int blk = 0;
    auto emit_scalar_localizer = [&](const Polynomial<Rational>& g, int degbound) {
        auto basis = monomial_basis(m, degbound);
        ++blk;
        data.block_sizes.push_back((int)basis.size());
        for (size_t i = 0; i < basis.size(); ++i)
            for (size_t j = i; j < basis.size(); ++j)
                for (auto& [gm, gc] : g.terms()) {
                    std::vector<int> e(m);
                    for (int t = 0; t < m; ++t) e[t] = basis[i].e[t] + basis[j].e[t] + gm.e[t];
                    int mat = yindex(Monomial(e));
                    double v = (double)gc;
                    pending.push_back({mat, blk, (int)i + 1, (int)j + 1, mat == 0 ? -v : v});
                }
    };
    // Moment matrix = localizer of the constant 1.
    emit_scalar_localizer(Polynomial<Rational>::constant(m, Rational(1)), k);
    for (auto& g : prob.constraints) emit_scalar_localizer(g, k - (g.degree() + 1) / 2);
    // Block localizer for J.
    {
        auto basis = monomial_basis(m, k - m);
        int d = prob.J.dim();
        ++blk;
        data.block_sizes.push_back((int)basis.size() * d);
        for (size_t i = 0; i < basis.size(); ++i)
            for (size_t j = 0; j < basis.size(); ++j)
                for (int l = 0; l < d; ++l)
                    for (int q = 0; q < d; ++q) {
                        int row = (int)i * d + l + 1, col = (int)j * d + q + 1;
                        if (col < row) continue;
                        for (auto& [gm, gc] : prob.J(l, q).terms()) {
                            std::vector<int> e(m);
                            for (int t = 0; t < m; ++t)
                                e[t] = basis[i].e[t] + basis[j].e[t] + gm.e[t];
                            int mat = yindex(Monomial(e));
                            double v = (double)gc;
                            pending.push_back({mat, blk, row, col, mat == 0 ? -v : v});
                        }
                    }
    }
    data.ncons = (int)yvar.size();
    data.b.assign(data.ncons, 0.0);
    for (auto& [a, c] : prob.objective.terms())
        if (a.degree() > 0) data.b[yvar.at(a) - 1] = (double)c;
    // Merge duplicate coordinates and order entries by matrix index.
    std::map<std::tuple<int, int, int, int>, double> merged;
    for (auto& e : pending) merged[{e.mat, e.blk, e.i, e.j}] += e.value;
    for (auto& [key, v] : merged)
        if (v != 0.0)
            data.entries.push_back(
                {std::get<0>(key), std::get<1>(key), std::get<2>(key), std::get<3>(key), v});
    return data;
}

// ---------------------------------------------------------------------------
// Grid + pattern-search minimization over the J-feasible region, a desk-scale
// independent check of the reformulation (no SDP solver involved).

struct OrbitMinimum {
    double value = 0.0;
    std::vector<double> point;
    bool found = false;
};

namespace detail {

inline double eval_double(const Polynomial<Rational>& p, const std::vector<double>& z) {
    double s = 0;
    for (auto& [mm, c] : p.terms()) {
        double t = (double)c;
        for (int i = 0; i < p.vars(); ++i)
            for (int r = 0; r < mm.e[i]; ++r) t *= z[i];
        s += t;
    }
    return s;
}

inline bool j_feasible(const OrbitSpaceProblem& prob, const std::vector<double>& z,
                       double slack = 1e-8) {
    int d = prob.J.dim();
    Matrix<double> Jd(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) Jd(i, j) = eval_double(prob.J(i, j), z);
    if (sym_eigenvalues(Jd).front() < -slack) return false;
    for (auto& g : prob.constraints)
        if (eval_double(g, z) < -slack) return false;
    return true;
}

}  // namespace detail

inline OrbitMinimum minimize_orbit_space(const OrbitSpaceProblem& prob, double box = 3.0,
                                         int grid = 41, double tol = 1e-4) {
    int m = (int)prob.map.generators.size();
    if (m > 3) throw std::invalid_argument("minimize_orbit_space: too many generators for a grid");
    OrbitMinimum best;
    std::vector<int> idx(m, 0);
    double step = 2 * box / (grid - 1);
    // Exhaustive grid pass with a feasibility filter.
    auto scan = [&](auto&& self, int pos, std::vector<double>& z) -> void {
        if (pos == m) {
            if (!detail::j_feasible(prob, z)) return;
            double v = detail::eval_double(prob.objective, z);
            if (!best.found || v < best.value) {
                best.found = true;
                best.value = v;
                best.point = z;
            }
            return;
        }
        for (int i = 0; i < grid; ++i) {
            z[pos] = -box + i * step;
            self(self, pos + 1, z);
        }
    };
    std::vector<double> z(m, 0.0);
    scan(scan, 0, z);
    if (!best.found) return best;
    // Pattern-search refinement over the full +-1 direction stencil; diagonal
    // moves let the search slide along a curved feasibility boundary.
    std::vector<std::vector<int>> dirs;
    std::vector<int> d(m, -1);
    while (true) {
        if (std::any_of(d.begin(), d.end(), [](int v) { return v != 0; })) dirs.push_back(d);
        int pos = 0;
        while (pos < m && d[pos] == 1) d[pos++] = -1;
        if (pos == m) break;
        ++d[pos];
    }
    double h = step;
    while (h > tol * 1e-4) {
        bool improved = false;
        for (auto& dir : dirs) {
            std::vector<double> cand = best.point;
            for (int i = 0; i < m; ++i) cand[i] += h * dir[i];
            if (!detail::j_feasible(prob, cand)) continue;
            double v = detail::eval_double(prob.objective, cand);
            if (v < best.value - 1e-15) {
                best.value = v;
                best.point = cand;
                improved = true;
            }
        }
        if (!improved) h *= 0.5;
    }
    return best;
}

}  // namespace symred
