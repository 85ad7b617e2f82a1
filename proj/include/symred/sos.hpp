// Sum-of-squares machinery: Newton-polytope Gram setup, feasibility search
// over affine families of PSD matrices (exact where the family is determined,
// numeric-then-rationalized otherwise), group-averaged Gram matrices, isotypic
// block certificates and the closed-form treatment of symmetric quartics.
#pragma once

#include <cmath>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "symred/group.hpp"
#include "symred/matrix.hpp"
#include "symred/matrix_polynomial.hpp"
#include "symred/polynomial.hpp"
#include "symred/simplex.hpp"

namespace symred {

enum class SosStatus { Feasible, Infeasible, Undecided };

// ---------------------------------------------------------------------------
// Affine-PSD feasibility engine
//
// Variables are the upper-triangle entries of one or more symmetric rational
// blocks, stacked row by row. A linear system A x = rhs pins the family down;
// the question is whether it meets the product of PSD cones. Infeasibility is
// only ever reported with an exact reason (inconsistent system, a diagonal
// entry forced negative, or a fully determined block failing LDL^T); numeric
// non-convergence yields Undecided.

struct AffinePsdProblem {
    std::vector<int> block_sizes;
    Matrix<Rational> A;
    std::vector<Rational> rhs;
};

struct AffinePsdResult {
    SosStatus status = SosStatus::Undecided;
    std::vector<Matrix<Rational>> blocks;  // exact PSD blocks when feasible
    std::string reason;
};

namespace detail {

struct BlockLayout {
    std::vector<int> sizes;
    std::vector<int> offset;
    int nvars = 0;

    explicit BlockLayout(std::vector<int> s) : sizes(std::move(s)) {
        for (int sz : sizes) {
            if (sz <= 0) throw std::invalid_argument("nonpositive block size");
            offset.push_back(nvars);
            nvars += sz * (sz + 1) / 2;
        }
    }
    int index(int b, int i, int j) const {  // requires i <= j
        int s = sizes[b];
        return offset[b] + i * s - i * (i - 1) / 2 + (j - i);
    }
    // When variable v sits on a diagonal, reports its block and row.
    bool diagonal_slot(int v, int& blk, int& row) const {
        blk = 0;
        while (blk + 1 < (int)sizes.size() && v >= offset[blk + 1]) ++blk;
        int local = v - offset[blk];
        int s = sizes[blk];
        for (int i = 0; i < s; ++i) {
            int start = i * s - i * (i - 1) / 2;
            if (local == start) { row = i; return true; }
            if (local < start) return false;
        }
        return false;
    }
    template <class K>
    std::vector<Matrix<K>> unpack(const std::vector<K>& x) const {
        std::vector<Matrix<K>> out;
        for (size_t b = 0; b < sizes.size(); ++b) {
            Matrix<K> m(sizes[b], sizes[b]);
            for (int i = 0; i < sizes[b]; ++i)
                for (int j = i; j < sizes[b]; ++j) m(i, j) = m(j, i) = x[index((int)b, i, j)];
            out.push_back(std::move(m));
        }
        return out;
    }
};

// Projects the packed point onto matrices with eigenvalues >= floor.
inline void psd_floor_project(const BlockLayout& lay, std::vector<double>& x, double floor) {
    for (size_t b = 0; b < lay.sizes.size(); ++b) {
        int s = lay.sizes[b];
        Matrix<double> m(s, s);
        for (int i = 0; i < s; ++i)
            for (int j = i; j < s; ++j) m(i, j) = m(j, i) = x[lay.index((int)b, i, j)];
        EigenResult eig = jacobi_eigen(m);
        Matrix<double> rebuilt(s, s);
        for (int k = 0; k < s; ++k) {
            double lam = std::max(eig.values[k], floor);
            if (lam == 0.0) continue;
            for (int i = 0; i < s; ++i)
                for (int j = 0; j < s; ++j)
                    rebuilt(i, j) += lam * eig.vectors(i, k) * eig.vectors(j, k);
        }
        for (int i = 0; i < s; ++i)
            for (int j = i; j < s; ++j) x[lay.index((int)b, i, j)] = rebuilt(i, j);
    }
}

}  // namespace detail

inline AffinePsdResult affine_psd_solve(const AffinePsdProblem& prob, int max_iter = 5000,
                                        double tol = 1e-9) {
    detail::BlockLayout lay(prob.block_sizes);
    if (prob.A.cols() != lay.nvars || (int)prob.rhs.size() != prob.A.rows())
        throw std::invalid_argument("affine_psd_solve: shape mismatch");
    AffinePsdResult res;
    AffineSolution<Rational> sol = affine_solve(prob.A, prob.rhs);
    if (!sol.consistent) {
        res.status = SosStatus::Infeasible;
        res.reason = "inconsistent linear identification";
        return res;
    }
    // A diagonal entry that every solution shares must be nonnegative.
    for (int v = 0; v < lay.nvars; ++v) {
        int blk, row;
        if (!lay.diagonal_slot(v, blk, row)) continue;
        bool forced = true;
        for (auto& nv : sol.nullspace)
            if (nv[v] != 0) { forced = false; break; }
        if (forced && sol.particular[v] < 0) {
            std::ostringstream msg;
            msg << "diagonal entry (" << row << "," << row << ") of block " << blk
                << " is forced to " << rational_str(sol.particular[v]);
            res.status = SosStatus::Infeasible;
            res.reason = msg.str();
            return res;
        }
    }
    if (sol.nullspace.empty()) {
        std::vector<Matrix<Rational>> blocks = lay.unpack(sol.particular);
        for (auto& blk : blocks)
            if (!ldlt_psd_check(blk).psd) {
                res.status = SosStatus::Infeasible;
                res.reason = "uniquely determined matrix is not positive semidefinite";
                return res;
            }
        res.status = SosStatus::Feasible;
        res.blocks = std::move(blocks);
        return res;
    }

    // Alternating projection between the affine space and the PSD product,
    // first with an eigenvalue margin so the rationalized point stays interior.
    int nv = lay.nvars;
    int dim = (int)sol.nullspace.size();
    std::vector<double> x0(nv);
    for (int v = 0; v < nv; ++v) x0[v] = to_double(sol.particular[v]);
    std::vector<std::vector<double>> onb;
    for (auto& nvec : sol.nullspace) {
        std::vector<double> col(nv);
        for (int v = 0; v < nv; ++v) col[v] = to_double(nvec[v]);
        for (auto& prev : onb) {
            double d = 0;
            for (int v = 0; v < nv; ++v) d += prev[v] * col[v];
            for (int v = 0; v < nv; ++v) col[v] -= d * prev[v];
        }
        double norm = 0;
        for (double c : col) norm += c * c;
        norm = std::sqrt(norm);
        if (norm < 1e-12) continue;
        for (double& c : col) c /= norm;
        onb.push_back(std::move(col));
    }
    auto affine_project = [&](std::vector<double>& x) {
        std::vector<double> diff(nv);
        for (int v = 0; v < nv; ++v) diff[v] = x[v] - x0[v];
        for (int v = 0; v < nv; ++v) x[v] = x0[v];
        for (auto& col : onb) {
            double d = 0;
            for (int v = 0; v < nv; ++v) d += col[v] * diff[v];
            for (int v = 0; v < nv; ++v) x[v] += d * col[v];
        }
    };
    const double floors[] = {1e-2, 1e-4, 0.0};
    int per_stage = std::max(1, max_iter / 3);
    for (double floor : floors) {
        std::vector<double> x = x0;
        bool converged = false;
        for (int it = 0; it < per_stage; ++it) {
            std::vector<double> y = x;
            detail::psd_floor_project(lay, y, floor);
            std::vector<double> xa = y;
            affine_project(xa);
            double err = 0;
            for (int v = 0; v < nv; ++v) err = std::max(err, std::abs(y[v] - xa[v]));
            x = std::move(xa);
            if (err < tol) { converged = true; break; }
        }
        if (!converged) continue;
        // Express the numeric point in the exact nullspace basis (least
        // squares), then round the coefficients so the linear identification
        // holds by construction and only PSD needs re-verification.
        Matrix<double> G(dim, dim);
        std::vector<double> c(dim, 0.0);
        for (int a = 0; a < dim; ++a) {
            for (int b = 0; b < dim; ++b) {
                double d = 0;
                for (int v = 0; v < nv; ++v)
                    d += to_double(sol.nullspace[a][v]) * to_double(sol.nullspace[b][v]);
                G(a, b) = d;
            }
            for (int v = 0; v < nv; ++v)
                c[a] += to_double(sol.nullspace[a][v]) * (x[v] - x0[v]);
        }
        AffineSolution<double> ls = affine_solve(G, c);
        if (!ls.consistent) continue;
        for (std::int64_t den : {10LL, 100LL, 10000LL, 1000000LL}) {
            std::vector<Rational> xr = sol.particular;
            for (int a = 0; a < dim; ++a) {
                Rational sa = rationalize(ls.particular[a], den);
                for (int v = 0; v < nv; ++v) xr[v] += sa * sol.nullspace[a][v];
            }
            std::vector<Matrix<Rational>> blocks = lay.unpack(xr);
            bool all_psd = true;
            for (auto& blk : blocks)
                if (!ldlt_psd_check(blk).psd) { all_psd = false; break; }
            if (all_psd) {
                res.status = SosStatus::Feasible;
                res.blocks = std::move(blocks);
                return res;
            }
        }
    }
    res.status = SosStatus::Undecided;
    res.reason = "alternating projection did not produce a verifiable certificate";
    return res;
}

// ---------------------------------------------------------------------------
// Gram-matrix method with Newton polytope filtering

struct GramProblem {
    Polynomial<Rational> f;
    std::vector<Monomial> basis;  // candidate monomials, graded lex order
};

namespace detail {

// Exact membership of 2m in the convex hull of the given exponent vectors.
inline bool in_half_polytope(const std::vector<Monomial>& pts, const Monomial& m) {
    int T = (int)pts.size();
    int n = (int)m.e.size();
    LPProblem<Rational> lp;
    lp.A = Matrix<Rational>(n + 1, T);
    lp.b.assign(n + 1, Rational(0));
    lp.c.assign(T, Rational(0));
    lp.maximize = false;
    for (int t = 0; t < T; ++t) lp.A(0, t) = 1;
    lp.b[0] = 1;
    for (int i = 0; i < n; ++i) {
        for (int t = 0; t < T; ++t) lp.A(i + 1, t) = pts[t].e[i];
        lp.b[i + 1] = 2 * m.e[i];
    }
    return simplex_solve(lp).status == LPStatus::Optimal;
}

}  // namespace detail

inline GramProblem gram_setup(const Polynomial<Rational>& f) {
    if (f.is_zero()) throw std::invalid_argument("gram_setup: zero polynomial");
    if (f.degree() % 2 != 0) throw std::invalid_argument("gram_setup: odd degree");
    int n = f.vars();
    std::vector<Monomial> pts;
    std::vector<int> cap(n, 0);
    int mindeg = f.degree();
    for (auto& [m, c] : f.terms()) {
        pts.push_back(m);
        mindeg = std::min(mindeg, m.degree());
        for (int i = 0; i < n; ++i) cap[i] = std::max(cap[i], m.e[i]);
    }
    GramProblem gp;
    gp.f = f;
    for (const Monomial& m : monomial_basis(n, f.degree() / 2)) {
        if (2 * m.degree() < mindeg) continue;
        bool boxed = true;
        for (int i = 0; i < n; ++i)
            if (2 * m.e[i] > cap[i]) { boxed = false; break; }
        if (!boxed) continue;
        if (detail::in_half_polytope(pts, m)) gp.basis.push_back(m);
    }
    return gp;
}

inline AffinePsdProblem gram_identification(const GramProblem& gp) {
    int s = (int)gp.basis.size();
    detail::BlockLayout lay({s});
    std::map<Monomial, int> row_of;
    auto row_id = [&](const Monomial& m) {
        auto [it, fresh] = row_of.emplace(m, (int)row_of.size());
        return it->second;
    };
    std::vector<std::pair<int, Rational>> entries;  // (row, coeff) per variable
    entries.resize(lay.nvars);
    for (int u = 0; u < s; ++u)
        for (int v = u; v < s; ++v)
            entries[lay.index(0, u, v)] = {row_id(gp.basis[u] * gp.basis[v]),
                                           Rational(u == v ? 1 : 2)};
    for (auto& [m, c] : gp.f.terms()) row_id(m);
    AffinePsdProblem prob;
    prob.block_sizes = {s};
    prob.A = Matrix<Rational>((int)row_of.size(), lay.nvars);
    for (int v = 0; v < lay.nvars; ++v) prob.A(entries[v].first, v) = entries[v].second;
    prob.rhs.assign(row_of.size(), Rational(0));
    for (auto& [m, r] : row_of) prob.rhs[r] = gp.f.coeff(m);
    return prob;
}

struct GramResult {
    SosStatus status = SosStatus::Undecided;
    Matrix<Rational> Q;
    std::string reason;
};

inline GramResult gram_feasibility(const GramProblem& gp) {
    GramResult out;
    if (gp.basis.empty()) {
        // Empty candidate basis: only the zero polynomial is representable.
        out.status = gp.f.is_zero() ? SosStatus::Feasible : SosStatus::Infeasible;
        if (out.status == SosStatus::Infeasible) out.reason = "no candidate monomials";
        return out;
    }
    AffinePsdResult r = affine_psd_solve(gram_identification(gp));
    out.status = r.status;
    out.reason = std::move(r.reason);
    if (r.status == SosStatus::Feasible) out.Q = std::move(r.blocks[0]);
    return out;
}

inline bool verify_gram(const Polynomial<Rational>& f, const std::vector<Monomial>& basis,
                        const Matrix<Rational>& Q) {
    int s = (int)basis.size();
    if (Q.rows() != s || Q.cols() != s || !Q.is_symmetric()) return false;
    Polynomial<Rational> acc(f.vars());
    for (int u = 0; u < s; ++u)
        for (int v = 0; v < s; ++v) acc.add_term(basis[u] * basis[v], Q(u, v));
    return acc == f && ldlt_psd_check(Q).psd;
}

// Q^G = (1/|G|) sum_g M(g)^T Q M(g); represents the same polynomial and
// commutes with the monomial representation.
inline Matrix<Rational> average_gram(const GroupRepresentation& rep, const Matrix<Rational>& Q,
                                     const std::vector<Monomial>& basis) {
    int s = (int)basis.size();
    if (Q.rows() != s || Q.cols() != s) throw std::invalid_argument("average_gram: shape mismatch");
    Matrix<Rational> acc(s, s);
    for (int g = 0; g < rep.order(); ++g) {
        Matrix<Rational> M = monomial_action_matrix<Rational>(rep, g, basis);
        acc = acc + M.transpose() * Q * M;
    }
    return Rational(1, rep.order()) * acc;
}

// ---------------------------------------------------------------------------
// Isotypic block certificates
//
// One generator family per isotypic slot: polynomials f_{j,1}..f_{j,eta_j}
// spanning a single coordinate slice of the j-th isotypic component. The
// carrier matrices B_j(u,v) = sum_g f_{j,u}^g f_{j,v}^g are exact, and an
// invariant f is SOS iff f = sum_j <A_j, B_j> for PSD A_j.

using GeneratorFamily = std::vector<std::vector<Polynomial<Rational>>>;

// Generator families for S_n from the degree-<= d (or exactly-d) monomial
// space: for every irreducible with nonzero multiplicity, a basis of the image
// of the first diagonal projection built from the integral tableau modules.
inline GeneratorFamily default_sos_generators(const GroupRepresentation& rep, int d,
                                              bool homogeneous = false) {
    if (rep.family() != GroupFamily::Symmetric)
        throw std::invalid_argument("default generators are implemented for the symmetric family");
    int n = rep.n_param();
    int order = rep.order();
    std::vector<Monomial> basis = monomial_basis(n, d, homogeneous);
    int s = (int)basis.size();
    std::vector<Matrix<Rational>> M(order);
    std::vector<Rational> fixed(order);
    for (int g = 0; g < order; ++g) {
        M[g] = monomial_action_matrix<Rational>(rep, g, basis);
        Rational tr(0);
        for (int k = 0; k < s; ++k) tr += M[g](k, k);
        fixed[g] = tr;
    }
    const auto& classes = rep.conjugacy_classes();
    GeneratorFamily out;
    for (const auto& lam : partitions_of(n)) {
        Rational eta(0);
        for (const auto& cls : classes)
            eta += Rational((long long)cls.size() * sn_character(lam, rep.cycle_type(cls[0]))) *
                   fixed[cls[0]];
        eta /= order;
        if (eta == 0) continue;
        SpechtModule mod = specht_module(lam);
        // All irreducible matrices by breadth-first closure over the adjacent
        // transpositions (one matrix product per group element).
        std::vector<Matrix<Rational>> Y(order);
        std::vector<char> seen(order, 0);
        std::vector<int> queue = {rep.id()};
        Y[rep.id()] = Matrix<Rational>::identity(mod.dimension);
        seen[rep.id()] = 1;
        for (size_t head = 0; head < queue.size(); ++head) {
            int g = queue[head];
            for (int i = 0; i + 1 < n; ++i) {
                int h = rep.mul(rep.transposition_index(i, i + 1), g);
                if (seen[h]) continue;
                seen[h] = 1;
                Y[h] = mod.generators[i] * Y[g];
                queue.push_back(h);
            }
        }
        Matrix<Rational> p11(s, s);
        for (int g = 0; g < order; ++g) {
            Rational w = Y[rep.inv(g)](0, 0);
            if (w == 0) continue;
            p11 = p11 + w * M[g];
        }
        p11 = Rational(mod.dimension, order) * p11;
        Matrix<Rational> reduced = p11;
        std::vector<int> pivots = rref(reduced);
        if ((int)pivots.size() != (int)eta.convert_to<long long>())
            throw std::logic_error("projection rank does not match the character multiplicity");
        std::vector<Polynomial<Rational>> slot;
        for (int col : pivots) {
            Polynomial<Rational> p(n);
            for (int k = 0; k < s; ++k) p.add_term(basis[k], p11(k, col));
            slot.push_back(std::move(p));
        }
        out.push_back(std::move(slot));
    }
    return out;
}

inline std::vector<MatrixPolynomial<Rational>> invariant_sos_blocks(
    const GroupRepresentation& rep, const Polynomial<Rational>& f, const GeneratorFamily& gens) {
    if (!is_invariant(rep, f)) throw std::invalid_argument("target polynomial is not invariant");
    std::vector<MatrixPolynomial<Rational>> out;
    for (const auto& slot : gens) {
        if (slot.empty()) throw std::invalid_argument("empty generator slot");
        int eta = (int)slot.size();
        MatrixPolynomial<Rational> B(eta, f.vars());
        std::vector<std::vector<Polynomial<Rational>>> orbit(eta);
        for (int u = 0; u < eta; ++u)
            for (int g = 0; g < rep.order(); ++g)
                orbit[u].push_back(act_on_polynomial(rep, g, slot[u]));
        for (int u = 0; u < eta; ++u)
            for (int v = u; v < eta; ++v) {
                Polynomial<Rational> acc(f.vars());
                for (int g = 0; g < rep.order(); ++g) acc = acc + orbit[u][g] * orbit[v][g];
                B.set(u, v, std::move(acc));
            }
        out.push_back(std::move(B));
    }
    return out;
}

struct BlockGramCertificate {
    SosStatus status = SosStatus::Undecided;
    std::vector<Matrix<Rational>> A;  // one PSD matrix per block when feasible
    std::string reason;
};

inline BlockGramCertificate block_certificate(const std::vector<MatrixPolynomial<Rational>>& B,
                                              const Polynomial<Rational>& f) {
    std::vector<int> sizes;
    for (auto& blk : B) sizes.push_back(blk.dim());
    detail::BlockLayout lay(sizes);
    std::map<Monomial, int> row_of;
    auto row_id = [&](const Monomial& m) {
        auto [it, fresh] = row_of.emplace(m, (int)row_of.size());
        return it->second;
    };
    for (auto& blk : B)
        for (int u = 0; u < blk.dim(); ++u)
            for (int v = u; v < blk.dim(); ++v)
                for (auto& [m, c] : blk(u, v).terms()) row_id(m);
    for (auto& [m, c] : f.terms()) row_id(m);
    AffinePsdProblem prob;
    prob.block_sizes = sizes;
    prob.A = Matrix<Rational>((int)row_of.size(), lay.nvars);
    prob.rhs.assign(row_of.size(), Rational(0));
    for (size_t b = 0; b < B.size(); ++b)
        for (int u = 0; u < B[b].dim(); ++u)
            for (int v = u; v < B[b].dim(); ++v) {
                Rational mult(u == v ? 1 : 2);
                int var = lay.index((int)b, u, v);
                for (auto& [m, c] : B[b](u, v).terms()) prob.A(row_of.at(m), var) += mult * c;
            }
    for (auto& [m, r] : row_of) prob.rhs[r] = f.coeff(m);
    AffinePsdResult r = affine_psd_solve(prob);
    BlockGramCertificate cert;
    cert.status = r.status;
    cert.reason = std::move(r.reason);
    if (r.status == SosStatus::Feasible) cert.A = std::move(r.blocks);
    return cert;
}

inline bool verify_certificate(const std::vector<MatrixPolynomial<Rational>>& B,
                               const std::vector<Matrix<Rational>>& A,
                               const Polynomial<Rational>& f) {
    if (A.size() != B.size()) return false;
    Polynomial<Rational> acc(f.vars());
    for (size_t b = 0; b < B.size(); ++b) {
        if (A[b].rows() != B[b].dim() || A[b].cols() != B[b].dim() || !A[b].is_symmetric())
            return false;
        if (!ldlt_psd_check(A[b]).psd) return false;
        acc = acc + B[b].frobenius_with(A[b]);
    }
    return acc == f;
}

// ---------------------------------------------------------------------------
// Negative-value search on two-value points
//
// A rational point with f < 0 rules out any sum-of-squares representation.
// For symmetric forms of degree four the minimum on the sphere is attained at
// points with at most two distinct coordinate values, so restricting to
// (1,..,1,t,..,t,0,..,0) and scanning/refining the resulting univariate
// polynomial is an effective (and for such forms essentially complete) search.

inline std::optional<std::vector<Rational>> negative_point_search(const Polynomial<Rational>& f) {
    int n = f.vars();
    auto make_point = [&](int a, int b, const Rational& t) {
        std::vector<Rational> pt(n, Rational(0));
        for (int i = 0; i < a; ++i) pt[i] = 1;
        for (int i = a; i < a + b; ++i) pt[i] = t;
        return pt;
    };
    for (int a = 0; a <= n; ++a) {
        for (int b = (a == 0 ? 1 : 0); a + b <= n; ++b) {
            if (a + b == 0) continue;
            std::vector<Polynomial<Rational>> subs;
            for (int i = 0; i < n; ++i) {
                if (i < a)
                    subs.push_back(Polynomial<Rational>::constant(1, Rational(1)));
                else if (i < a + b)
                    subs.push_back(Polynomial<Rational>::variable(1, 0));
                else
                    subs.push_back(Polynomial<Rational>(1));
            }
            Polynomial<Rational> g = f.compose(subs);
            if (b == 0) {
                if (g.coeff(Monomial::one(1)) < 0) return make_point(a, b, Rational(0));
                continue;
            }
            Polynomial<double> gd = g.map_coeffs<double>([](const Rational& q) {
                return to_double(q);
            });
            // Coarse scan for the most negative value, then Newton refinement
            // of the stationary point, then exact evaluation of rational
            // approximations of both candidates.
            double best_t = 0.0, best_v = 0.0;
            for (int k = -64; k <= 64; ++k) {
                double t = k / 8.0;
                double v = gd.eval({t});
                if (v < best_v) { best_v = v; best_t = t; }
            }
            Polynomial<double> gd1 = gd.derivative(0);
            Polynomial<double> gd2 = gd1.derivative(0);
            double t = best_t;
            for (int it = 0; it < 40; ++it) {
                double d2 = gd2.eval({t});
                if (std::abs(d2) < 1e-14) break;
                double step = gd1.eval({t}) / d2;
                if (!std::isfinite(step) || std::abs(step) > 16.0) break;
                t -= step;
            }
            for (double cand : {best_t, t}) {
                if (!std::isfinite(cand)) continue;
                for (std::int64_t den : {8LL, 64LL, 4096LL, 1000000LL}) {
                    Rational tr = rationalize(cand, den);
                    if (g.eval({tr}) < 0) return make_point(a, b, tr);
                }
            }
            // Unbounded-below tail: walk outward while doubling.
            const Monomial& lead = g.is_zero() ? Monomial::one(1) : g.lead_monomial();
            if (!g.is_zero() && g.coeff(lead) < 0) {
                Rational tr(2);
                for (int it = 0; it < 64; ++it, tr *= 2) {
                    if (g.eval({tr}) < 0) return make_point(a, b, tr);
                    if (g.eval({-tr}) < 0) return make_point(a, b, -tr);
                }
            }
        }
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Symmetric quartics in closed form
//
// A symmetric quartic form in the power means pi_j = (1/n) sum X_i^j is SOS
// exactly when it can be written as
//   a11 pi1^4 + 2 a12 pi1^2 pi2 + a22 pi2^2
//   + b11 (pi1^2 pi2 - pi1^4) + 2 b12 (pi1 pi3 - pi1^2 pi2) + b22 (pi4 - pi2^2)
//   + g (pi1^4/2 - pi1^2 pi2 + (n^2-3n+3)/(2n^2) pi2^2
//        + (2n-2)/n^2 pi1 pi3 + (1-n)/(2n^2) pi4)
// with g >= 0 and the 2x2 matrices (a_ij), (b_ij) both PSD. After the linear
// identification two degrees of freedom remain (gamma and b11); for fixed
// gamma the b11-feasibility test is an exact rational computation, and the
// feasible gamma set is an interval inside explicit rational bounds, so a
// refining grid over gamma decides feasibility with an exact certificate.

struct QuarticSosResult {
    SosStatus status = SosStatus::Undecided;
    Rational gamma;
    Matrix<Rational> alpha, beta;          // 2x2 blocks when feasible
    std::vector<Rational> negative_point;  // witness when infeasible via a point
    std::string reason;
};

inline QuarticSosResult symmetric_quartic_form(const Polynomial<Rational>& f) {
    int n = f.vars();
    if (n < 4) throw std::invalid_argument("symmetric_quartic_form: needs at least 4 variables");
    if (f.is_zero() || !f.is_homogeneous() || f.degree() != 4)
        throw std::invalid_argument("symmetric_quartic_form: not a quartic form");
    auto power_mean = [&](int j) {
        Polynomial<Rational> p(n);
        std::vector<int> e(n, 0);
        for (int i = 0; i < n; ++i) {
            e[i] = j;
            p.add_term(Monomial(e), Rational(1, n));
            e[i] = 0;
        }
        return p;
    };
    Polynomial<Rational> pi1 = power_mean(1), pi2 = power_mean(2), pi3 = power_mean(3),
                         pi4 = power_mean(4);
    std::vector<Polynomial<Rational>> span = {pi1.pow(4), pi1 * pi1 * pi2, pi2 * pi2, pi1 * pi3,
                                              pi4};
    // Identify f against the five power-mean products.
    std::map<Monomial, int> row_of;
    for (auto& p : span)
        for (auto& [m, c] : p.terms()) row_of.emplace(m, (int)row_of.size());
    for (auto& [m, c] : f.terms()) row_of.emplace(m, (int)row_of.size());
    Matrix<Rational> A((int)row_of.size(), 5);
    std::vector<Rational> rhs(row_of.size(), Rational(0));
    for (int j = 0; j < 5; ++j)
        for (auto& [m, c] : span[j].terms()) A(row_of.at(m), j) = c;
    for (auto& [m, r] : row_of) rhs[r] = f.coeff(m);
    AffineSolution<Rational> id = affine_solve(A, rhs);
    if (!id.consistent)
        throw std::invalid_argument("symmetric_quartic_form: polynomial is not symmetric");
    Rational c1 = id.particular[0], c2 = id.particular[1], c3 = id.particular[2],
             c4 = id.particular[3], c5 = id.particular[4];

    Rational n2(n * n);
    auto beta22_of = [&](const Rational& g) { return c5 + g * Rational(n - 1) / (2 * n2); };
    auto beta12_of = [&](const Rational& g) {
        return (c4 - g * Rational(2 * n - 2) / n2) / 2;
    };
    auto alpha22_of = [&](const Rational& g) {
        return c3 + beta22_of(g) - g * Rational(n * n - 3 * n + 3) / (2 * n2);
    };
    // For fixed gamma, the best b11 maximizes the concave determinant of the
    // alpha block over the rational lower bound L coming from the beta block.
    auto feasible_at = [&](const Rational& g) -> std::optional<Rational> {
        Rational b22 = beta22_of(g), b12 = beta12_of(g), a22 = alpha22_of(g);
        if (b22 < 0 || a22 < 0) return std::nullopt;
        Rational L = g / 2 - c1;
        if (L < 0) L = 0;
        if (b22 == 0) {
            if (b12 != 0) return std::nullopt;
        } else {
            Rational Lb = b12 * b12 / b22;
            if (Lb > L) L = Lb;
        }
        Rational Aoff = c1 - g / 2;               // a11 = b11 + Aoff
        Rational K = c2 + 2 * b12 + g;            // a12 = (K - b11)/2
        if (a22 == 0) {
            Rational b = K;
            if (b < L) return std::nullopt;
            return b;
        }
        auto det_at = [&](const Rational& b) {
            return (b + Aoff) * a22 - (K - b) * (K - b) / 4;
        };
        if (det_at(L) >= 0) return L;  // smallest admissible b11 preferred
        Rational b = K + 2 * a22;      // unconstrained maximizer of the determinant
        if (b < L) b = L;
        if (det_at(b) < 0) return std::nullopt;
        return b;
    };
    auto certify = [&](const Rational& g, const Rational& b11) {
        QuarticSosResult out;
        out.status = SosStatus::Feasible;
        out.gamma = g;
        Rational b22 = beta22_of(g), b12 = beta12_of(g);
        Rational a11 = c1 + b11 - g / 2;
        Rational a12 = (c2 - b11 + 2 * b12 + g) / 2;
        Rational a22 = alpha22_of(g);
        out.alpha = Matrix<Rational>(2, 2);
        out.alpha(0, 0) = a11;
        out.alpha(0, 1) = out.alpha(1, 0) = a12;
        out.alpha(1, 1) = a22;
        out.beta = Matrix<Rational>(2, 2);
        out.beta(0, 0) = b11;
        out.beta(0, 1) = out.beta(1, 0) = b12;
        out.beta(1, 1) = b22;
        return out;
    };

    // Necessary bounds on gamma from the diagonal entries b22, a22 >= 0.
    Rational lo(0);
    if (c5 < 0) lo = -2 * n2 * c5 / Rational(n - 1);
    Rational span_a = c3 + c5;
    Rational hi = 2 * n2 * span_a / Rational((n - 2) * (n - 2));
    if (hi < lo) {
        QuarticSosResult out;
        out.status = SosStatus::Infeasible;
        out.reason = "diagonal conditions on the parametrization admit no gamma >= 0";
        return out;
    }
    if (auto b = feasible_at(lo)) return certify(lo, *b);
    if (auto b = feasible_at(hi)) return certify(hi, *b);
    for (int N = 2; N <= 4096; N *= 2)
        for (int k = 1; k < N; k += 2) {
            Rational g = lo + (hi - lo) * Rational(k, N);
            if (auto b = feasible_at(g)) return certify(g, *b);
        }
    if (auto pt = negative_point_search(f)) {
        QuarticSosResult out;
        out.status = SosStatus::Infeasible;
        out.negative_point = std::move(*pt);
        out.reason = "polynomial takes a negative value";
        return out;
    }
    QuarticSosResult out;
    out.status = SosStatus::Undecided;
    out.reason = "no feasible parametrization found and no negative value located";
    return out;
}

}  // namespace symred
