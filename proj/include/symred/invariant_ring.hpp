// Symmetric-function bases and Newton conversions, rewriting invariants in
// generating sets, Specht and higher Specht polynomials, the differential
// pairing on harmonics, and H matrices for reflection groups.
#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "symred/group.hpp"
#include "symred/matrix.hpp"
#include "symred/matrix_polynomial.hpp"
#include "symred/polynomial.hpp"

namespace symred {

// ---------------------------------------------------------------------------
// Symmetric-function bases

inline Polynomial<Rational> elementary_symmetric(int n, int k) {
    if (k < 0 || k > n) throw std::invalid_argument("elementary_symmetric: k out of range");
    Polynomial<Rational> p(n);
    std::vector<int> idx(k);
    auto rec = [&](auto&& self, int pos, int start) -> void {
        if (pos == k) {
            std::vector<int> e(n, 0);
            for (int i : idx) e[i] = 1;
            p.add_term(Monomial(std::move(e)), Rational(1));
            return;
        }
        for (int i = start; i < n; ++i) {
            idx[pos] = i;
            self(self, pos + 1, i + 1);
        }
    };
    rec(rec, 0, 0);
    return p;
}

inline Polynomial<Rational> power_sum(int n, int k) {
    if (k < 1) throw std::invalid_argument("power_sum: k < 1");
    Polynomial<Rational> p(n);
    std::vector<int> e(n, 0);
    for (int i = 0; i < n; ++i) {
        e[i] = k;
        p.add_term(Monomial(e), Rational(1));
        e[i] = 0;
    }
    return p;
}

struct InvariantBasis {
    std::vector<Polynomial<Rational>> gens;  // in the ambient X variables

    static InvariantBasis elementary(int n) {
        InvariantBasis b;
        for (int k = 1; k <= n; ++k) b.gens.push_back(elementary_symmetric(n, k));
        return b;
    }
    static InvariantBasis powersum(int n) {
        InvariantBasis b;
        for (int k = 1; k <= n; ++k) b.gens.push_back(power_sum(n, k));
        return b;
    }
    static InvariantBasis custom(std::vector<Polynomial<Rational>> g) {
        InvariantBasis b;
        b.gens = std::move(g);
        return b;
    }
};

// ---------------------------------------------------------------------------
// Newton identities: k(-1)^k e_k + sum_{i=1}^k (-1)^{i+k} p_i e_{k-i} = 0.
// Converts a polynomial expression in z_1..z_n from one basis reading of the
// z-variables to the other (z_k = e_k versus z_k = p_k).

enum class SymBasis { Elementary, PowerSum };

inline Polynomial<Rational> newton_convert(const Polynomial<Rational>& f, SymBasis from) {
    int n = f.vars();
    std::vector<Polynomial<Rational>> expand;  // expansion of z_k, 1-based at k-1
    if (from == SymBasis::Elementary) {
        // e_k = (1/k) sum_{i=1}^k (-1)^{i-1} p_i e_{k-i}, with e_0 = 1.
        std::vector<Polynomial<Rational>> e = {Polynomial<Rational>::constant(n, Rational(1))};
        for (int k = 1; k <= n; ++k) {
            Polynomial<Rational> acc(n);
            for (int i = 1; i <= k; ++i) {
                Polynomial<Rational> term =
                    Polynomial<Rational>::variable(n, i - 1) * e[k - i];
                acc = (i % 2 == 1) ? acc + term : acc - term;
            }
            e.push_back(Rational(1, k) * acc);
        }
        expand.assign(e.begin() + 1, e.end());
    } else {
        // p_k = (-1)^{k-1} k e_k - sum_{i=1}^{k-1} (-1)^{i+k} p_i e_{k-i}.
        std::vector<Polynomial<Rational>> p;
        for (int k = 1; k <= n; ++k) {
            Polynomial<Rational> acc =
                Rational((k % 2 == 1) ? k : -k) * Polynomial<Rational>::variable(n, k - 1);
            for (int i = 1; i < k; ++i) {
                Polynomial<Rational> term = p[i - 1] * Polynomial<Rational>::variable(n, k - i - 1);
                acc = ((i + k) % 2 == 0) ? acc - term : acc + term;
            }
            p.push_back(acc);
        }
        expand = std::move(p);
    }
    return f.compose(expand);
}

// ---------------------------------------------------------------------------
// Rewriting in invariants: exact linear identification against all products
// of the generators up to the target degree. Substituting the generators back
// into the result reproduces the input exactly; inputs outside the generated
// subring are rejected.

inline Polynomial<Rational> rewrite_in_invariants(const Polynomial<Rational>& f,
                                                  const InvariantBasis& basis) {
    int m = (int)basis.gens.size();
    if (m == 0) throw std::invalid_argument("rewrite_in_invariants: empty basis");
    int n = f.vars();
    Polynomial<Rational> out(m);
    if (f.is_zero()) return out;
    std::vector<int> degs;
    for (auto& g : basis.gens) {
        if (g.vars() != n) throw std::invalid_argument("generator variable-count mismatch");
        if (g.is_zero() || g.degree() < 1)
            throw std::invalid_argument("generators must be nonconstant");
        degs.push_back(g.degree());
    }
    int D = f.degree();
    // All exponent tuples a with sum a_i deg(g_i) <= D.
    std::vector<std::vector<int>> tuples;
    std::vector<int> cur(m, 0);
    auto enumerate = [&](auto&& self, int pos, int rem) -> void {
        if (pos == m) {
            tuples.push_back(cur);
            return;
        }
        for (int a = 0; a * degs[pos] <= rem; ++a) {
            cur[pos] = a;
            self(self, pos + 1, rem - a * degs[pos]);
        }
        cur[pos] = 0;
    };
    enumerate(enumerate, 0, D);
    if (tuples.size() > 200000) throw std::runtime_error("rewrite_in_invariants: ansatz too large");
    // Expand each product with per-generator power caches.
    std::vector<std::vector<Polynomial<Rational>>> pows(m);
    for (int i = 0; i < m; ++i) pows[i].push_back(Polynomial<Rational>::constant(n, Rational(1)));
    std::map<Monomial, int> row_of;
    auto row_id = [&](const Monomial& mo) {
        auto [it, fresh] = row_of.emplace(mo, (int)row_of.size());
        return it->second;
    };
    std::vector<Polynomial<Rational>> products;
    for (auto& a : tuples) {
        Polynomial<Rational> prod = Polynomial<Rational>::constant(n, Rational(1));
        for (int i = 0; i < m; ++i) {
            while ((int)pows[i].size() <= a[i]) pows[i].push_back(pows[i].back() * basis.gens[i]);
            if (a[i] > 0) prod = prod * pows[i][a[i]];
        }
        for (auto& [mo, c] : prod.terms()) row_id(mo);
        products.push_back(std::move(prod));
    }
    for (auto& [mo, c] : f.terms()) row_id(mo);
    Matrix<Rational> A((int)row_of.size(), (int)tuples.size());
    std::vector<Rational> rhs(row_of.size(), Rational(0));
    for (size_t j = 0; j < products.size(); ++j)
        for (auto& [mo, c] : products[j].terms()) A(row_of.at(mo), (int)j) = c;
    for (auto& [mo, r] : row_of) rhs[r] = f.coeff(mo);
    AffineSolution<Rational> sol = affine_solve(A, rhs);
    if (!sol.consistent)
        throw std::runtime_error("rewrite_in_invariants: not expressible in the given generators");
    for (size_t j = 0; j < tuples.size(); ++j) {
        if (sol.particular[j] == 0) continue;
        out.add_term(Monomial(tuples[j]), sol.particular[j]);
    }
    return out;
}

// Substitutes the generators back in (the round-trip check companion).
inline Polynomial<Rational> substitute_invariants(const Polynomial<Rational>& g,
                                                  const InvariantBasis& basis) {
    return g.compose(basis.gens);
}

// ---------------------------------------------------------------------------
// Specht polynomials: product of the column Vandermonde determinants.

inline Polynomial<Rational> specht_polynomial(const Tableau& T) {
    if (!T.is_valid()) throw std::invalid_argument("specht_polynomial: malformed tableau");
    int n = T.n();
    Polynomial<Rational> p = Polynomial<Rational>::constant(n, Rational(1));
    for (const auto& col : T.columns())
        for (size_t j = 0; j < col.size(); ++j)
            for (size_t l = j + 1; l < col.size(); ++l) {
                Polynomial<Rational> diff =
                    Polynomial<Rational>::variable(n, col[j] - 1) -
                    Polynomial<Rational>::variable(n, col[l] - 1);
                p = p * diff;
            }
    return p;
}

// ---------------------------------------------------------------------------
// Higher Specht polynomials

struct HigherSpecht {
    Tableau T, V;
    std::vector<int> word;    // w(T), entries 1..n
    std::vector<int> index;   // i(w(T))
    int charge = 0;           // degree of the associated monomial
    Monomial monomial;        // X_{w(V)}^{i(w(T))}
    Polynomial<Rational> poly;  // F_V^T
};

namespace detail {

// Entries of T collected bottom-to-top in consecutive columns, left to right.
inline std::vector<int> tableau_word(const Tableau& T) {
    std::vector<int> w;
    for (const auto& col : T.columns())
        for (auto it = col.rbegin(); it != col.rend(); ++it) w.push_back(*it);
    return w;
}

// The index of a permutation word: 0 where 1 sits; walking k -> k+1, the
// value stays if k+1 sits to the right and increments otherwise.
inline std::vector<int> word_index(const std::vector<int>& w) {
    int n = (int)w.size();
    std::vector<int> pos(n + 1, -1);
    for (int c = 0; c < n; ++c) pos[w[c]] = c;
    std::vector<int> idx(n, 0);
    for (int k = 1; k < n; ++k) {
        int c = pos[k], d = pos[k + 1];
        idx[d] = (d > c) ? idx[c] : idx[c] + 1;
    }
    return idx;
}

// All permutations of {0..n-1} preserving each of the given blocks of
// entries (1-based labels), as variable maps p with X_i -> X_{p[i]}.
inline std::vector<std::vector<int>> block_stabilizer(int n,
                                                      const std::vector<std::vector<int>>& blocks) {
    std::vector<std::vector<int>> perms = {std::vector<int>(n)};
    std::iota(perms[0].begin(), perms[0].end(), 0);
    for (const auto& blk : blocks) {
        std::vector<int> sorted = blk;
        std::sort(sorted.begin(), sorted.end());
        std::vector<int> image = sorted;
        std::vector<std::vector<int>> next;
        do {
            for (const auto& base : perms) {
                std::vector<int> p = base;
                for (size_t i = 0; i < sorted.size(); ++i) p[sorted[i] - 1] = image[i] - 1;
                next.push_back(std::move(p));
            }
        } while (std::next_permutation(image.begin(), image.end()));
        perms = std::move(next);
    }
    return perms;
}

inline int perm_sign(std::vector<int> p) {
    int sign = 1;
    std::vector<bool> seen(p.size(), false);
    for (size_t i = 0; i < p.size(); ++i) {
        if (seen[i]) continue;
        int len = 0;
        size_t j = i;
        while (!seen[j]) {
            seen[j] = true;
            j = p[j];
            ++len;
        }
        if (len % 2 == 0) sign = -sign;
    }
    return sign;
}

}  // namespace detail

inline HigherSpecht higher_specht(const Tableau& T, const Tableau& V) {
    if (!T.is_standard() || !V.is_standard())
        throw std::invalid_argument("higher_specht: tableaux must be standard");
    if (T.shape() != V.shape()) throw std::invalid_argument("higher_specht: shape mismatch");
    int n = T.n();
    HigherSpecht out;
    out.T = T;
    out.V = V;
    out.word = detail::tableau_word(T);
    out.index = detail::word_index(out.word);
    std::vector<int> wV = detail::tableau_word(V);
    std::vector<int> e(n, 0);
    for (int j = 0; j < n; ++j) {
        e[wV[j] - 1] += out.index[j];
        out.charge += out.index[j];
    }
    out.monomial = Monomial(e);
    // Young symmetrizer of V: sum over row then column stabilizers with the
    // column sign, tau after sigma.
    Polynomial<Rational> mono = Polynomial<Rational>::monomial(n, out.monomial, Rational(1));
    auto rows = detail::block_stabilizer(n, V.rows);
    auto cols = detail::block_stabilizer(n, V.columns());
    Polynomial<Rational> acc(n);
    for (const auto& tau : cols) {
        Rational sgn(detail::perm_sign(tau));
        for (const auto& sigma : rows) {
            std::vector<int> combined(n);
            for (int i = 0; i < n; ++i) combined[i] = tau[sigma[i]];
            acc = acc + sgn * mono.permute_vars(combined);
        }
    }
    out.poly = std::move(acc);
    return out;
}

// ---------------------------------------------------------------------------
// Differential operators and the harmonic pairing
//
// A monomial X^a acts as (1/a!) d^a, so (f(d))(g) sums binomial-weighted
// shifted terms; the pairing is evaluation at the origin.

inline Polynomial<Rational> apply_diff_operator(const Polynomial<Rational>& f,
                                                const Polynomial<Rational>& g) {
    if (f.vars() != g.vars()) throw std::invalid_argument("variable-count mismatch");
    int n = f.vars();
    Polynomial<Rational> out(n);
    for (auto& [a, ca] : f.terms())
        for (auto& [b, cb] : g.terms()) {
            Rational coeff = ca * cb;
            std::vector<int> e(n);
            bool ok = true;
            for (int i = 0; i < n; ++i) {
                if (b.e[i] < a.e[i]) { ok = false; break; }
                e[i] = b.e[i] - a.e[i];
                // binomial(b_i, a_i) from (1/a!) d^a X^b
                for (int t = 0; t < a.e[i]; ++t)
                    coeff *= Rational(b.e[i] - t, t + 1);
            }
            if (ok) out.add_term(Monomial(std::move(e)), coeff);
        }
    return out;
}

inline Rational harmonic_pairing(const Polynomial<Rational>& f, const Polynomial<Rational>& g) {
    return apply_diff_operator(f, g).coeff(Monomial::one(f.vars()));
}

// ---------------------------------------------------------------------------
// H matrices for reflection groups: entries are Reynolds averages of products
// of the supplied covariant basis polynomials, rewritten in the generators.

struct HMatrix {
    MatrixPolynomial<Rational> in_x;  // Reynolds averages in the X variables
    MatrixPolynomial<Rational> in_z;  // the same entries in generator variables
};

inline HMatrix h_matrix(const GroupRepresentation& rep,
                        const std::vector<Polynomial<Rational>>& s, const InvariantBasis& basis) {
    int eta = (int)s.size();
    if (eta == 0) throw std::invalid_argument("h_matrix: empty covariant basis");
    int n = s[0].vars();
    HMatrix out;
    out.in_x = MatrixPolynomial<Rational>(eta, n);
    out.in_z = MatrixPolynomial<Rational>(eta, (int)basis.gens.size());
    for (int u = 0; u < eta; ++u)
        for (int v = u; v < eta; ++v) {
            Polynomial<Rational> avg = reynolds(rep, s[u] * s[v]);
            Polynomial<Rational> z = rewrite_in_invariants(avg, basis);
            if (!(substitute_invariants(z, basis) == avg))
                throw std::logic_error("h_matrix: substitution check failed");
            out.in_x.set(u, v, std::move(avg));
            out.in_z.set(u, v, std::move(z));
        }
    return out;
}

}  // namespace symred
