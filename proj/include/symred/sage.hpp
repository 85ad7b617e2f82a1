// Signomials and AGE/SAGE certificates of nonnegativity. An AGE function has
// at most one negative term; its nonnegativity is equivalent to a relative
// entropy condition that we minimize by damped Newton. For invariant
// signomials the certificate decomposes into one AGE template per orbit of
// negative exponents, with coefficients tied under the orbit's stabilizer;
// matching the orbit sum against the target is an exact linear solve.
#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>
#include <vector>

#include "symred/group.hpp"
#include "symred/matrix.hpp"
#include "symred/simplex.hpp"

namespace symred {

using Exponent = std::vector<Rational>;

// ---------------------------------------------------------------------------
// Signomials: finite sums c_a * exp(<a, x>) with rational exponent vectors.

struct Signomial {
    std::vector<Exponent> exponents;
    std::vector<Rational> coeffs;

    int dim() const { return exponents.empty() ? 0 : (int)exponents[0].size(); }
    Rational coeff(const Exponent& a) const {
        for (size_t i = 0; i < exponents.size(); ++i)
            if (exponents[i] == a) return coeffs[i];
        return Rational(0);
    }
};

inline Signomial make_signomial(std::vector<Exponent> exps, std::vector<Rational> coeffs) {
    if (exps.size() != coeffs.size())
        throw std::invalid_argument("make_signomial: exponent/coefficient count mismatch");
    for (auto& e : exps)
        if (e.size() != exps[0].size())
            throw std::invalid_argument("make_signomial: ragged exponent vectors");
    for (size_t i = 0; i < exps.size(); ++i)
        for (size_t j = i + 1; j < exps.size(); ++j)
            if (exps[i] == exps[j])
                throw std::invalid_argument("make_signomial: duplicate exponent");
    Signomial f;
    // Drop exact zeros so that supports are honest.
    for (size_t i = 0; i < exps.size(); ++i) {
        if (coeffs[i] == Rational(0)) continue;
        f.exponents.push_back(exps[i]);
        f.coeffs.push_back(coeffs[i]);
    }
    return f;
}

inline double eval_signomial(const Signomial& f, const std::vector<double>& x) {
    if ((int)x.size() != f.dim() && !f.exponents.empty())
        throw std::invalid_argument("eval_signomial: dimension mismatch");
    double s = 0;
    for (size_t i = 0; i < f.exponents.size(); ++i) {
        double dot = 0;
        for (size_t k = 0; k < x.size(); ++k) dot += (double)f.exponents[i][k] * x[k];
        s += (double)f.coeffs[i] * std::exp(dot);
    }
    return s;
}

// ---------------------------------------------------------------------------
// AGE candidates and the relative entropy condition

struct AGECandidate {
    std::vector<Exponent> support;  // positive-term exponents
    std::vector<Rational> c;        // their coefficients, all > 0
    Exponent beta;                  // the single negative exponent
    Rational d;                     // its coefficient (any sign)
};

struct EntropyCertificate {
    std::vector<double> nu;  // over the support, nonnegative
    double entropy = 0.0;    // sum nu ln(nu / (e c))
    double kkt_residual = 0.0;
};

struct AgeResult {
    bool feasible = false;
    EntropyCertificate cert;
    double minimum = 0.0;  // minimal achievable entropy (a bound when infeasible)
};

namespace detail {

// beta must lie in conv(support): lambda >= 0, sum lambda = 1, sum lambda a = beta.
inline bool in_convex_hull(const std::vector<Exponent>& support, const Exponent& beta) {
    int m = (int)support.size(), n = (int)beta.size();
    LPProblem<Rational> lp;
    lp.A = Matrix<Rational>(n + 1, m);
    lp.b.assign(n + 1, Rational(0));
    for (int j = 0; j < m; ++j) lp.A(0, j) = Rational(1);
    lp.b[0] = Rational(1);
    for (int k = 0; k < n; ++k) {
        for (int j = 0; j < m; ++j) lp.A(k + 1, j) = support[j][k];
        lp.b[k + 1] = beta[k];
    }
    lp.c.assign(m, Rational(0));
    return simplex_solve(lp).status == LPStatus::Optimal;
}

// Strict-interior test: maximize t subject to lambda_i >= t and the hull
// constraints; beta is in the relative interior iff the optimum is positive.
// The optimal lambda doubles as a strictly interior starting point.
inline std::pair<Rational, std::vector<Rational>> interior_weights(
    const std::vector<Exponent>& support, const Exponent& beta) {
    int m = (int)support.size(), n = (int)beta.size();
    // Variables: lambda_1..lambda_m, t, slack_1..slack_m (all nonnegative).
    int nv = 2 * m + 1;
    LPProblem<Rational> lp;
    lp.A = Matrix<Rational>(n + 1 + m, nv);
    lp.b.assign(n + 1 + m, Rational(0));
    for (int j = 0; j < m; ++j) lp.A(0, j) = Rational(1);
    lp.b[0] = Rational(1);
    for (int k = 0; k < n; ++k) {
        for (int j = 0; j < m; ++j) lp.A(k + 1, j) = support[j][k];
        lp.b[k + 1] = beta[k];
    }
    for (int j = 0; j < m; ++j) {  // lambda_j - t - s_j = 0
        lp.A(n + 1 + j, j) = Rational(1);
        lp.A(n + 1 + j, m) = Rational(-1);
        lp.A(n + 1 + j, m + 1 + j) = Rational(-1);
    }
    lp.c.assign(nv, Rational(0));
    lp.c[m] = Rational(1);
    lp.maximize = true;
    auto res = simplex_solve(lp);
    if (res.status != LPStatus::Optimal) return {Rational(-1), {}};
    std::vector<Rational> lambda(res.x.begin(), res.x.begin() + m);
    return {res.value, lambda};
}

}  // namespace detail

// Decides whether sum_a c_a e^{<a,x>} + d e^{<beta,x>} is nonnegative: it is
// iff some nu >= 0 with sum nu_a a = (sum c_a) beta keeps the relative entropy
// sum nu ln(nu/(e c)) below d. The entropy is strictly convex, so a damped
// Newton iteration from a strictly interior feasible point settles it.
inline AgeResult age_feasible(const AGECandidate& cand, double tol = 1e-9) {
    int m = (int)cand.support.size();
    if (m == 0) throw std::invalid_argument("age_feasible: empty support");
    int n = (int)cand.beta.size();
    if ((int)cand.c.size() != m) throw std::invalid_argument("age_feasible: coefficient count");
    for (auto& a : cand.support) {
        if ((int)a.size() != n) throw std::invalid_argument("age_feasible: exponent dimension");
        if (a == cand.beta)
            throw std::invalid_argument("age_feasible: beta may not appear in the support");
    }
    for (auto& ci : cand.c)
        if (!(ci > 0)) throw std::invalid_argument("age_feasible: coefficients must be positive");

    if (!detail::in_convex_hull(cand.support, cand.beta))
        throw std::domain_error("age_feasible: beta outside the convex hull of the support");
    auto [t_opt, lambda] = detail::interior_weights(cand.support, cand.beta);
    if (!(t_opt >= Rational(1, 1000000000)))
        throw std::domain_error("age_feasible: beta not in the relative interior of the support");

    // Minimize F(nu) = sum nu_i (ln(nu_i / c_i) - 1) over {A nu = b, nu > 0},
    // where A stacks the support exponents columnwise and b = (sum c) beta.
    double csum = 0;
    std::vector<double> c(m);
    for (int i = 0; i < m; ++i) {
        c[i] = (double)cand.c[i];
        csum += c[i];
    }
    Matrix<double> A(n, m);
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < m; ++i) A(k, i) = (double)cand.support[i][k];
    std::vector<double> b(n);
    for (int k = 0; k < n; ++k) b[k] = csum * (double)cand.beta[k];

    std::vector<double> nu(m);
    for (int i = 0; i < m; ++i) nu[i] = csum * (double)lambda[i];

    auto value = [&](const std::vector<double>& v) {
        double s = 0;
        for (int i = 0; i < m; ++i) s += v[i] * (std::log(v[i] / c[i]) - 1.0);
        return s;
    };
    auto multiplier_residual = [&](const std::vector<double>& g) {
        // Least-squares w with A^T w ~ -g; the leftover is the dual residual.
        Matrix<double> AAt(n, n);
        std::vector<double> rhs(n, 0.0);
        for (int p = 0; p < n; ++p) {
            for (int q = 0; q < n; ++q)
                for (int i = 0; i < m; ++i) AAt(p, q) += A(p, i) * A(q, i);
            for (int i = 0; i < m; ++i) rhs[p] -= A(p, i) * g[i];
        }
        auto sol = affine_solve(AAt, rhs, 1e-12);
        std::vector<double> w = sol.consistent ? sol.particular : std::vector<double>(n, 0.0);
        double r = 0;
        for (int i = 0; i < m; ++i) {
            double ri = g[i];
            for (int p = 0; p < n; ++p) ri += A(p, i) * w[p];
            r = std::max(r, std::abs(ri));
        }
        return r;
    };

    double fval = value(nu);
    for (int it = 0; it < 200; ++it) {
        std::vector<double> g(m);
        for (int i = 0; i < m; ++i) g[i] = std::log(nu[i] / c[i]);
        // Newton step restricted to A delta = 0 via the Schur complement
        // A diag(nu) A^T w = -A diag(nu) g, delta = -nu (g + A^T w).
        Matrix<double> S(n, n);
        std::vector<double> rhs(n, 0.0);
        for (int p = 0; p < n; ++p) {
            for (int q = 0; q < n; ++q)
                for (int i = 0; i < m; ++i) S(p, q) += A(p, i) * nu[i] * A(q, i);
            for (int i = 0; i < m; ++i) rhs[p] -= A(p, i) * nu[i] * g[i];
        }
        auto sol = affine_solve(S, rhs, 1e-13);
        std::vector<double> w = sol.consistent ? sol.particular : std::vector<double>(n, 0.0);
        std::vector<double> delta(m);
        double slope = 0;
        for (int i = 0; i < m; ++i) {
            double gi = g[i];
            for (int p = 0; p < n; ++p) gi += A(p, i) * w[p];
            delta[i] = -nu[i] * gi;
            slope += g[i] * delta[i];
        }
        double dual = 0;  // stationarity residual with the current multiplier
        for (int i = 0; i < m; ++i) {
            double gi = g[i];
            for (int p = 0; p < n; ++p) gi += A(p, i) * w[p];
            dual = std::max(dual, std::abs(gi));
        }
        if (dual < 1e-12 || -slope / 2.0 < 1e-26) break;
        double step = 1.0;
        for (int i = 0; i < m; ++i)  // keep nu strictly positive
            while (nu[i] + step * delta[i] <= 0) step *= 0.5;
        std::vector<double> trial(m);
        for (int bt = 0; bt < 60; ++bt) {
            for (int i = 0; i < m; ++i) trial[i] = nu[i] + step * delta[i];
            if (value(trial) <= fval + 0.25 * step * slope) break;
            step *= 0.5;
        }
        nu = trial;
        fval = value(nu);
    }

    AgeResult out;
    out.minimum = fval;
    out.cert.nu = nu;
    out.cert.entropy = fval;
    double primal = 0;
    for (int k = 0; k < n; ++k) {
        double row = -b[k];
        for (int i = 0; i < m; ++i) row += A(k, i) * nu[i];
        primal = std::max(primal, std::abs(row));
    }
    std::vector<double> g(m);
    for (int i = 0; i < m; ++i) g[i] = std::log(nu[i] / c[i]);
    out.cert.kkt_residual = multiplier_residual(g) + primal;
    out.feasible = fval <= (double)cand.d + tol;
    return out;
}

// ---------------------------------------------------------------------------
// Orbit decomposition of invariant SAGE certificates

struct AgeTemplate {
    Exponent beta;                               // lex-smallest orbit representative
    std::vector<Exponent> orbit;                 // the full orbit of beta
    std::vector<std::vector<int>> stabilizer;    // permutations fixing beta
    std::vector<std::vector<int>> transversal;   // one permutation per orbit element
    std::vector<Exponent> support;               // shared positive support of f
    std::vector<int> coeff_class;                // stabilizer-orbit class per support entry
    int n_classes = 0;
    std::vector<Rational> c;                     // filled by identify_coefficients
    Rational d = Rational(0);                    // filled by identify_coefficients
};

namespace detail {

inline Exponent permute_exponent(const std::vector<int>& p, const Exponent& a) {
    Exponent out(a.size());
    for (size_t i = 0; i < a.size(); ++i) out[p[i]] = a[i];
    return out;
}

}  // namespace detail

// Partition the negative support of an invariant signomial into group orbits
// and attach one AGE template per orbit: the shared positive support with one
// unknown coefficient per stabilizer orbit, plus the distinguished negative
// exponent at the representative.
inline std::vector<AgeTemplate> orbit_decompose(const Signomial& f,
                                                const GroupRepresentation& rep) {
    if (!rep.is_permutation_family())
        throw std::invalid_argument("orbit_decompose: needs a permutation action on exponents");
    int n = rep.degree();
    for (auto& a : f.exponents)
        if ((int)a.size() != n)
            throw std::invalid_argument("orbit_decompose: exponent dimension mismatch");
    // Invariance: every group element must permute the terms coefficient-wise.
    for (int g = 0; g < rep.order(); ++g) {
        const auto& p = rep.perm(g);
        for (size_t i = 0; i < f.exponents.size(); ++i)
            if (f.coeff(detail::permute_exponent(p, f.exponents[i])) != f.coeffs[i])
                throw std::invalid_argument("orbit_decompose: signomial is not invariant");
    }

    std::vector<Exponent> positive, negative;
    for (size_t i = 0; i < f.exponents.size(); ++i)
        (f.coeffs[i] > 0 ? positive : negative).push_back(f.exponents[i]);
    std::sort(positive.begin(), positive.end());
    std::sort(negative.begin(), negative.end());

    std::vector<AgeTemplate> out;
    std::vector<bool> used(negative.size(), false);
    for (size_t i = 0; i < negative.size(); ++i) {
        if (used[i]) continue;
        AgeTemplate t;
        // Collect the orbit; negative is sorted, so element i is lex-smallest.
        t.beta = negative[i];
        std::map<Exponent, std::vector<int>> first_reaching;
        for (int g = 0; g < rep.order(); ++g) {
            const auto& p = rep.perm(g);
            Exponent img = detail::permute_exponent(p, t.beta);
            if (img == t.beta) t.stabilizer.push_back(p);
            if (!first_reaching.count(img)) first_reaching[img] = p;
        }
        for (auto& [img, p] : first_reaching) {
            t.orbit.push_back(img);
            t.transversal.push_back(p);
            for (size_t j = i; j < negative.size(); ++j)
                if (negative[j] == img) used[j] = true;
        }
        t.support = positive;
        // Classes = stabilizer orbits on the support.
        t.coeff_class.assign(positive.size(), -1);
        for (size_t s = 0; s < positive.size(); ++s) {
            if (t.coeff_class[s] >= 0) continue;
            int cls = t.n_classes++;
            for (auto& p : t.stabilizer) {
                Exponent img = detail::permute_exponent(p, positive[s]);
                auto it = std::lower_bound(positive.begin(), positive.end(), img);
                t.coeff_class[it - positive.begin()] = cls;
            }
        }
        out.push_back(std::move(t));
    }
    return out;
}

// Rebuild the orbit sum of solved templates, for exact verification.
inline Signomial orbit_sum(const std::vector<AgeTemplate>& templates) {
    std::map<Exponent, Rational> acc;
    for (auto& t : templates)
        for (auto& p : t.transversal) {
            for (size_t s = 0; s < t.support.size(); ++s)
                acc[detail::permute_exponent(p, t.support[s])] += t.c[s];
            acc[detail::permute_exponent(p, t.beta)] += t.d;
        }
    std::vector<Exponent> exps;
    std::vector<Rational> coeffs;
    for (auto& [e, c] : acc) {
        exps.push_back(e);
        coeffs.push_back(c);
    }
    return make_signomial(exps, coeffs);
}

struct IdentifiedDecomposition {
    std::vector<AgeTemplate> templates;
    int dof = 0;          // free directions in the matching system
    bool positive = true; // all solved template coefficients strictly positive
};

// Match the coefficients of f against the orbit sum of the templates, exactly.
// The matching within one full-group orbit of positive exponents collapses to
// a single equation, so free directions are common; they are anchored by
// pulling the coefficients of classes that the stabilizer permutes
// nontrivially toward |d|, which pins the customary identification.
inline IdentifiedDecomposition identify_coefficients(const Signomial& f,
                                                     std::vector<AgeTemplate> templates) {
    // Unknown layout: per template, its classes then its d.
    std::vector<int> base(templates.size());
    int nunk = 0;
    for (size_t t = 0; t < templates.size(); ++t) {
        base[t] = nunk;
        nunk += templates[t].n_classes + 1;
    }
    std::map<Exponent, int> row_of;
    auto row = [&](const Exponent& e) {
        auto [it, fresh] = row_of.emplace(e, (int)row_of.size());
        return it->second;
    };
    for (auto& e : f.exponents) row(e);
    std::vector<std::map<int, Rational>> rows_sparse;
    auto add = [&](const Exponent& e, int col, const Rational& v) {
        size_t r = row(e);
        if (rows_sparse.size() <= r) rows_sparse.resize(r + 1);
        rows_sparse[r][col] += v;
    };
    for (size_t t = 0; t < templates.size(); ++t) {
        auto& tpl = templates[t];
        for (auto& p : tpl.transversal) {
            for (size_t s = 0; s < tpl.support.size(); ++s)
                add(detail::permute_exponent(p, tpl.support[s]),
                    base[t] + tpl.coeff_class[s], Rational(1));
            add(detail::permute_exponent(p, tpl.beta), base[t] + tpl.n_classes, Rational(1));
        }
    }
    int nrows = (int)row_of.size();
    rows_sparse.resize(nrows);
    Matrix<Rational> A(nrows, nunk);
    std::vector<Rational> rhs(nrows, Rational(0));
    for (auto& [e, r] : row_of) rhs[r] = f.coeff(e);
    for (int r = 0; r < nrows; ++r)
        for (auto& [col, v] : rows_sparse[r]) A(r, col) = v;

    auto sol = affine_solve(A, rhs);
    if (!sol.consistent)
        throw std::runtime_error(
            "identify_coefficients: no orbit sum of the templates matches the signomial");

    IdentifiedDecomposition out;
    out.dof = (int)sol.nullspace.size();
    std::vector<Rational> x = sol.particular;
    if (out.dof > 0) {
        // Anchored completion (exact least squares along the nullspace).
        std::vector<int> anchor;
        std::vector<Rational> target;
        for (size_t t = 0; t < templates.size(); ++t) {
            auto& tpl = templates[t];
            // d is pinned: each orbit copy alone covers its negative exponent.
            Rational d = x[base[t] + tpl.n_classes];
            std::vector<int> class_size(tpl.n_classes, 0);
            for (int cc : tpl.coeff_class) ++class_size[cc];
            for (int cls = 0; cls < tpl.n_classes; ++cls)
                if (class_size[cls] > 1) {
                    anchor.push_back(base[t] + cls);
                    target.push_back(d < 0 ? Rational(0) - d : d);
                }
        }
        if (!anchor.empty()) {
            int k = out.dof, u = (int)anchor.size();
            Matrix<Rational> N(u, k);
            std::vector<Rational> r(u);
            for (int i = 0; i < u; ++i) {
                for (int j = 0; j < k; ++j) N(i, j) = sol.nullspace[j][anchor[i]];
                r[i] = target[i] - x[anchor[i]];
            }
            Matrix<Rational> G(k, k);
            std::vector<Rational> h(k, Rational(0));
            for (int a = 0; a < k; ++a) {
                for (int b2 = 0; b2 < k; ++b2)
                    for (int i = 0; i < u; ++i) G(a, b2) += N(i, a) * N(i, b2);
                for (int i = 0; i < u; ++i) h[a] += N(i, a) * r[i];
            }
            auto ls = affine_solve(G, h);  // normal equations are always consistent
            for (int j = 0; j < k; ++j)
                for (int v = 0; v < nunk; ++v) x[v] += ls.particular[j] * sol.nullspace[j][v];
        }
    }
    for (size_t t = 0; t < templates.size(); ++t) {
        auto& tpl = templates[t];
        tpl.c.resize(tpl.support.size());
        for (size_t s = 0; s < tpl.support.size(); ++s) {
            tpl.c[s] = x[base[t] + tpl.coeff_class[s]];
            if (!(tpl.c[s] > 0)) out.positive = false;
        }
        tpl.d = x[base[t] + tpl.n_classes];
    }
    out.templates = std::move(templates);
    return out;
}

inline AGECandidate to_candidate(const AgeTemplate& t) {
    AGECandidate cand;
    for (size_t s = 0; s < t.support.size(); ++s) {
        if (t.c[s] == Rational(0)) continue;  // vanished terms leave the support
        cand.support.push_back(t.support[s]);
        cand.c.push_back(t.c[s]);
    }
    cand.beta = t.beta;
    cand.d = t.d;
    return cand;
}

// ---------------------------------------------------------------------------
// SAGE feasibility and the bisection bound

struct SageCertificate {
    bool feasible = false;
    IdentifiedDecomposition decomposition;
    std::vector<AgeResult> age;  // one per template
};

inline SageCertificate sage_feasible(const Signomial& f, const GroupRepresentation& rep,
                                     double tol = 1e-9) {
    SageCertificate cert;
    auto templates = orbit_decompose(f, rep);
    if (templates.empty()) {  // no negative terms: a sum of positive monomials
        cert.feasible = true;
        return cert;
    }
    try {
        cert.decomposition = identify_coefficients(f, std::move(templates));
    } catch (const std::runtime_error&) {
        return cert;
    }
    if (!cert.decomposition.positive) return cert;
    cert.feasible = true;
    for (auto& t : cert.decomposition.templates) {
        AgeResult r;
        try {
            r = age_feasible(to_candidate(t), tol);
        } catch (const std::domain_error&) {
            r.feasible = false;
        }
        cert.feasible = cert.feasible && r.feasible;
        cert.age.push_back(std::move(r));
    }
    return cert;
}

struct SageBound {
    double value = 0.0;
    bool bounded = true;
    SageCertificate certificate;  // at the returned bound
};

namespace detail {

inline Signomial shift_constant(const Signomial& f, int n, const Rational& lambda) {
    Exponent zero(n, Rational(0));
    std::vector<Exponent> exps = f.exponents;
    std::vector<Rational> coeffs = f.coeffs;
    bool found = false;
    for (size_t i = 0; i < exps.size(); ++i)
        if (exps[i] == zero) {
            coeffs[i] -= lambda;
            found = true;
        }
    if (!found && lambda != Rational(0)) {
        exps.push_back(zero);
        coeffs.push_back(Rational(0) - lambda);
    }
    return make_signomial(exps, coeffs);
}

}  // namespace detail

// Largest lambda with f - lambda SAGE, by rational bisection. The upper
// bracket is the minimum of f over a fixed sample set (x = 0 is evaluated
// exactly, so exact optima at the origin are returned exactly).
inline SageBound sage_bound(const Signomial& f, const GroupRepresentation& rep,
                            double tol = 1e-6, double age_tol = 1e-7) {
    int n = rep.degree();
    auto feasible_at = [&](const Rational& lambda, SageCertificate* keep = nullptr) {
        auto cert = sage_feasible(detail::shift_constant(f, n, lambda), rep, age_tol);
        if (keep) *keep = cert;
        return cert.feasible;
    };

    // Upper bracket: sampled values of f (exact at the origin).
    Rational hi;
    {
        Rational at_zero(0);
        for (auto& c : f.coeffs) at_zero += c;
        hi = at_zero;
        std::vector<std::vector<double>> samples;
        for (int i = 0; i < n; ++i)
            for (double v : {1.0, -1.0, 0.5, -0.5}) {
                std::vector<double> x(n, 0.0);
                x[i] = v;
                samples.push_back(x);
            }
        samples.push_back(std::vector<double>(n, 1.0));
        samples.push_back(std::vector<double>(n, -1.0));
        double best = (double)hi;
        for (auto& x : samples) best = std::min(best, eval_signomial(f, x));
        if (best < (double)hi) hi = rationalize(best);
    }

    SageBound out;
    SageCertificate at_hi;
    if (feasible_at(hi, &at_hi)) {
        out.value = (double)hi;
        out.certificate = std::move(at_hi);
        return out;
    }
    // Lower bracket by doubling steps.
    Rational lo = hi - Rational(1);
    Rational stepsz(1);
    while (!feasible_at(lo)) {
        stepsz *= Rational(2);
        lo -= stepsz;
        if (lo < Rational(-1000000)) {
            out.bounded = false;
            out.value = -std::numeric_limits<double>::infinity();
            return out;
        }
    }
    Rational width = hi - lo;
    Rational rtol = rationalize(tol);
    while (width > rtol) {
        Rational mid = (lo + hi) / Rational(2);
        if (feasible_at(mid)) lo = mid;
        else hi = mid;
        width = hi - lo;
    }
    feasible_at(lo, &out.certificate);
    out.value = (double)lo;
    return out;
}

}  // namespace symred
