// Finite groups with matrix actions: the built-in families C_n, D_n, S_n and
// explicit matrix groups, conjugacy classes, character tables, actions on
// polynomials and the Reynolds operator.
//
// S_n character values come from the Murnaghan-Nakayama border-strip
// recursion over beta-sets; they are cross-checked against Specht-module
// traces in the test suite.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "symred/matrix.hpp"
#include "symred/polynomial.hpp"

namespace symred {

// ---------------------------------------------------------------------------
// Partitions and Young tableaux

inline std::vector<std::vector<int>> partitions_of(int n) {
    // Descending lex: (n) first, (1,...,1) last.
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    auto rec = [&](auto&& self, int rem, int maxpart) -> void {
        if (rem == 0) {
            out.push_back(cur);
            return;
        }
        for (int p = std::min(rem, maxpart); p >= 1; --p) {
            cur.push_back(p);
            self(self, rem - p, p);
            cur.pop_back();
        }
    };
    rec(rec, n, n);
    return out;
}

struct Tableau {
    std::vector<std::vector<int>> rows;  // entries 1..n

    int n() const {
        int total = 0;
        for (auto& r : rows) total += (int)r.size();
        return total;
    }
    std::vector<int> shape() const {
        std::vector<int> s;
        for (auto& r : rows) s.push_back((int)r.size());
        return s;
    }
    bool is_valid() const {
        auto s = shape();
        for (size_t i = 1; i < s.size(); ++i)
            if (s[i] > s[i - 1] || s[i] <= 0) return false;
        std::vector<bool> seen(n() + 1, false);
        for (auto& r : rows)
            for (int v : r) {
                if (v < 1 || v > n() || seen[v]) return false;
                seen[v] = true;
            }
        return true;
    }
    bool is_standard() const {
        if (!is_valid()) return false;
        for (size_t i = 0; i < rows.size(); ++i)
            for (size_t j = 0; j < rows[i].size(); ++j) {
                if (j + 1 < rows[i].size() && rows[i][j] >= rows[i][j + 1]) return false;
                if (i + 1 < rows.size() && j < rows[i + 1].size() && rows[i][j] >= rows[i + 1][j])
                    return false;
            }
        return true;
    }
    // (row, col) of a value, 0-based.
    std::pair<int, int> find(int v) const {
        for (size_t i = 0; i < rows.size(); ++i)
            for (size_t j = 0; j < rows[i].size(); ++j)
                if (rows[i][j] == v) return {(int)i, (int)j};
        throw std::invalid_argument("value not in tableau");
    }
    std::vector<std::vector<int>> columns() const {
        std::vector<std::vector<int>> cols(rows.empty() ? 0 : rows[0].size());
        for (auto& r : rows)
            for (size_t j = 0; j < r.size(); ++j) cols[j].push_back(r[j]);
        return cols;
    }
};

inline std::vector<Tableau> standard_tableaux(const std::vector<int>& shape) {
    int n = std::accumulate(shape.begin(), shape.end(), 0);
    std::vector<Tableau> out;
    Tableau t;
    t.rows.resize(shape.size());
    auto rec = [&](auto&& self, int next) -> void {
        if (next > n) {
            out.push_back(t);
            return;
        }
        for (size_t i = 0; i < shape.size(); ++i) {
            if ((int)t.rows[i].size() >= shape[i]) continue;
            if (i > 0 && t.rows[i - 1].size() <= t.rows[i].size()) continue;
            t.rows[i].push_back(next);
            self(self, next + 1);
            t.rows[i].pop_back();
        }
    };
    rec(rec, 1);
    return out;
}

// ---------------------------------------------------------------------------
// Murnaghan-Nakayama character values

namespace detail {

inline std::vector<int> beta_set(const std::vector<int>& lambda) {
    int k = (int)lambda.size();
    std::vector<int> beta(k);
    for (int i = 0; i < k; ++i) beta[i] = lambda[i] + (k - 1 - i);
    return beta;  // strictly decreasing
}

inline std::vector<int> partition_from_beta(std::vector<int> beta) {
    std::sort(beta.rbegin(), beta.rend());
    int k = (int)beta.size();
    std::vector<int> lambda;
    for (int i = 0; i < k; ++i) {
        int part = beta[i] - (k - 1 - i);
        if (part > 0) lambda.push_back(part);
    }
    return lambda;
}

inline long long mn_rec(const std::vector<int>& lambda, const std::vector<int>& mu, size_t mu_pos,
                        std::map<std::pair<std::vector<int>, size_t>, long long>& memo) {
    if (lambda.empty()) return 1;
    auto key = std::make_pair(lambda, mu_pos);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    int t = mu[mu_pos];
    std::vector<int> beta = beta_set(lambda);
    long long total = 0;
    for (size_t i = 0; i < beta.size(); ++i) {
        int target = beta[i] - t;
        if (target < 0) continue;
        if (std::find(beta.begin(), beta.end(), target) != beta.end()) continue;
        int height = 0;
        for (int b : beta)
            if (b > target && b < beta[i]) ++height;
        std::vector<int> beta2 = beta;
        beta2[i] = target;
        long long sub = mn_rec(partition_from_beta(std::move(beta2)), mu, mu_pos + 1, memo);
        total += (height % 2 == 0 ? sub : -sub);
    }
    memo[key] = total;
    return total;
}

}  // namespace detail

// Character of the S_n irreducible labelled by lambda on the class of cycle
// type mu.
inline long long sn_character(const std::vector<int>& lambda, const std::vector<int>& mu) {
    std::map<std::pair<std::vector<int>, size_t>, long long> memo;
    return detail::mn_rec(lambda, mu, 0, memo);
}

inline long long sn_dimension(const std::vector<int>& lambda) {
    int n = std::accumulate(lambda.begin(), lambda.end(), 0);
    return sn_character(lambda, std::vector<int>(n, 1));
}

// ---------------------------------------------------------------------------
// Group representations

enum class GroupFamily { Cyclic, Dihedral, Symmetric, Explicit };

class GroupRepresentation {
public:
    static GroupRepresentation symmetric(int n) {
        if (n < 1) throw std::invalid_argument("symmetric(n) needs n >= 1");
        GroupRepresentation rep;
        rep.family_ = GroupFamily::Symmetric;
        rep.n_ = n;
        rep.degree_ = n;
        std::vector<int> p(n);
        std::iota(p.begin(), p.end(), 0);
        do {
            rep.perm_index_[p] = (int)rep.perms_.size();
            rep.perms_.push_back(p);
        } while (std::next_permutation(p.begin(), p.end()));
        return rep;
    }

    static GroupRepresentation cyclic(int n) {
        if (n < 1) throw std::invalid_argument("cyclic(n) needs n >= 1");
        GroupRepresentation rep;
        rep.family_ = GroupFamily::Cyclic;
        rep.n_ = n;
        rep.degree_ = n;
        // Element k sends index i to i - k (mod n), so the natural matrix of
        // the generator is the upward shift: (M x)_i = x_{i+1}. Its eigenvalue
        // on the Fourier vector b_j, with (b_j)_k = e^{2*pi*i*jk/n}, is the
        // character value e^{2*pi*i*j/n}.
        for (int k = 0; k < n; ++k) {
            std::vector<int> p(n);
            for (int i = 0; i < n; ++i) p[i] = ((i - k) % n + n) % n;
            rep.perm_index_[p] = k;
            rep.perms_.push_back(p);
        }
        return rep;
    }

    // Symmetries of the regular n-gon acting on the plane (order 2n); the
    // mirror is x -> -x. Element index k + n*e encodes rotation r^k times the
    // e-th power of the mirror.
    static GroupRepresentation dihedral(int n) {
        if (n < 1) throw std::invalid_argument("dihedral(n) needs n >= 1");
        GroupRepresentation rep;
        rep.family_ = GroupFamily::Dihedral;
        rep.n_ = n;
        rep.degree_ = 2;
        return rep;
    }

    // Closes the given orthogonal matrices under multiplication.
    static GroupRepresentation explicit_group(const std::vector<Matrix<double>>& generators,
                                              int closure_cap = 4000) {
        if (generators.empty()) throw std::invalid_argument("explicit group needs generators");
        GroupRepresentation rep;
        rep.family_ = GroupFamily::Explicit;
        int d = generators[0].rows();
        rep.degree_ = d;
        auto key = [d](const Matrix<double>& m) {
            std::string k;
            char buf[32];
            for (int i = 0; i < d; ++i)
                for (int j = 0; j < d; ++j) {
                    double v = std::round(m(i, j) * 1e8) / 1e8;
                    if (v == 0.0) v = 0.0;  // normalize -0
                    std::snprintf(buf, sizeof buf, "%.8f,", v);
                    k += buf;
                }
            return k;
        };
        std::map<std::string, int> index;
        auto add = [&](const Matrix<double>& m) -> int {
            std::string k = key(m);
            auto it = index.find(k);
            if (it != index.end()) return it->second;
            int id = (int)rep.mats_.size();
            index[k] = id;
            rep.mats_.push_back(m);
            return id;
        };
        add(Matrix<double>::identity(d));
        for (auto& g : generators) {
            if (g.rows() != d || g.cols() != d)
                throw std::invalid_argument("generator dimension mismatch");
            add(g);
        }
        // Breadth-first closure.
        for (size_t i = 0; i < rep.mats_.size(); ++i) {
            for (size_t j = 0; j < rep.mats_.size(); ++j) {
                if ((int)rep.mats_.size() > closure_cap)
                    throw std::runtime_error("explicit group closure exceeded cap");
                add(rep.mats_[i] * rep.mats_[j]);
            }
        }
        // Build the multiplication table.
        int m = (int)rep.mats_.size();
        rep.mul_table_.assign(m, std::vector<int>(m));
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j) {
                auto it = index.find(key(rep.mats_[i] * rep.mats_[j]));
                if (it == index.end()) throw std::runtime_error("explicit set not closed");
                rep.mul_table_[i][j] = it->second;
            }
        rep.n_ = m;
        return rep;
    }

    GroupFamily family() const { return family_; }
    int n_param() const { return n_; }
    int degree() const { return degree_; }
    int order() const {
        switch (family_) {
            case GroupFamily::Symmetric: return (int)perms_.size();
            case GroupFamily::Cyclic: return n_;
            case GroupFamily::Dihedral: return 2 * n_;
            case GroupFamily::Explicit: return (int)mats_.size();
        }
        return 0;
    }
    int id() const { return 0; }

    bool is_permutation_family() const {
        return family_ == GroupFamily::Symmetric || family_ == GroupFamily::Cyclic;
    }

    int mul(int a, int b) const {
        switch (family_) {
            case GroupFamily::Symmetric:
            case GroupFamily::Cyclic: {
                const auto& pa = perms_[a];
                const auto& pb = perms_[b];
                std::vector<int> p(pa.size());
                for (size_t i = 0; i < p.size(); ++i) p[i] = pa[pb[i]];
                return perm_index_.at(p);
            }
            case GroupFamily::Dihedral: {
                auto [k1, e1] = rot_refl(a);
                auto [k2, e2] = rot_refl(b);
                // s r^k = r^{-k} s
                int k = e1 ? ((k1 - k2) % n_ + n_) % n_ : (k1 + k2) % n_;
                return element_index(k, e1 ^ e2);
            }
            case GroupFamily::Explicit: return mul_table_[a][b];
        }
        throw std::logic_error("unreachable");
    }

    int inv(int a) const {
        for (int b = 0; b < order(); ++b)
            if (mul(a, b) == 0) return b;
        throw std::logic_error("element without inverse");
    }

    const std::vector<int>& perm(int g) const {
        if (!is_permutation_family()) throw std::logic_error("not a permutation family");
        return perms_[g];
    }

    std::pair<int, bool> rot_refl(int g) const {
        if (family_ != GroupFamily::Dihedral) throw std::logic_error("not dihedral");
        return {g % n_, g >= n_};
    }
    int element_index(int rot, bool refl) const {
        if (family_ != GroupFamily::Dihedral) throw std::logic_error("not dihedral");
        return rot + (refl ? n_ : 0);
    }

    Matrix<double> matrix(int g) const {
        switch (family_) {
            case GroupFamily::Symmetric:
            case GroupFamily::Cyclic: {
                Matrix<double> m(degree_, degree_);
                for (int i = 0; i < degree_; ++i) m(perms_[g][i], i) = 1.0;
                return m;
            }
            case GroupFamily::Dihedral: {
                auto [k, e] = rot_refl(g);
                double th = 2.0 * M_PI * k / n_;
                Matrix<double> m(2, 2);
                m(0, 0) = std::cos(th); m(0, 1) = -std::sin(th);
                m(1, 0) = std::sin(th); m(1, 1) = std::cos(th);
                if (e) {
                    // multiply by the mirror diag(-1, 1) on the right
                    m(0, 0) = -m(0, 0);
                    m(1, 0) = -m(1, 0);
                }
                return m;
            }
            case GroupFamily::Explicit: return mats_[g];
        }
        throw std::logic_error("unreachable");
    }

    Matrix<Rational> exact_matrix(int g) const {
        if (!is_permutation_family())
            throw std::logic_error("exact matrices only for permutation families");
        Matrix<Rational> m(degree_, degree_);
        for (int i = 0; i < degree_; ++i) m(perms_[g][i], i) = 1;
        return m;
    }

    std::vector<int> generators() const {
        switch (family_) {
            case GroupFamily::Symmetric: {
                std::vector<int> gens;
                for (int i = 0; i + 1 < n_; ++i) gens.push_back(transposition_index(i, i + 1));
                if (gens.empty()) gens.push_back(0);
                return gens;
            }
            case GroupFamily::Cyclic: return {n_ == 1 ? 0 : 1};
            case GroupFamily::Dihedral: return {element_index(1 % n_, false), element_index(0, true)};
            case GroupFamily::Explicit: {
                std::vector<int> gens;
                for (int g = 1; g < order(); ++g) gens.push_back(g);
                if (gens.empty()) gens.push_back(0);
                return gens;  // closure already enumerated; all elements generate
            }
        }
        throw std::logic_error("unreachable");
    }

    int transposition_index(int i, int j) const {
        if (family_ != GroupFamily::Symmetric) throw std::logic_error("not symmetric family");
        std::vector<int> p(n_);
        std::iota(p.begin(), p.end(), 0);
        std::swap(p[i], p[j]);
        return perm_index_.at(p);
    }
    int perm_to_index(const std::vector<int>& p) const { return perm_index_.at(p); }

    // Conjugacy classes as lists of element indices; class order is canonical
    // per family (S_n classes follow the partition order of partitions_of).
    const std::vector<std::vector<int>>& conjugacy_classes() const {
        if (!classes_.empty()) return classes_;
        switch (family_) {
            case GroupFamily::Symmetric: {
                auto parts = partitions_of(n_);
                std::map<std::vector<int>, int> class_of_type;
                for (size_t i = 0; i < parts.size(); ++i) class_of_type[parts[i]] = (int)i;
                classes_.resize(parts.size());
                for (int g = 0; g < order(); ++g)
                    classes_[class_of_type.at(cycle_type(g))].push_back(g);
                break;
            }
            case GroupFamily::Cyclic:
                classes_.resize(n_);
                for (int g = 0; g < n_; ++g) classes_[g] = {g};
                break;
            case GroupFamily::Dihedral: {
                classes_.push_back({0});
                for (int k = 1; 2 * k <= n_; ++k) {
                    if (2 * k == n_)
                        classes_.push_back({element_index(k, false)});
                    else
                        classes_.push_back(
                            {element_index(k, false), element_index(n_ - k, false)});
                }
                if (n_ % 2 == 1) {
                    std::vector<int> refl;
                    for (int k = 0; k < n_; ++k) refl.push_back(element_index(k, true));
                    classes_.push_back(std::move(refl));
                } else {
                    std::vector<int> even, odd;
                    for (int k = 0; k < n_; ++k)
                        (k % 2 == 0 ? even : odd).push_back(element_index(k, true));
                    classes_.push_back(std::move(even));
                    classes_.push_back(std::move(odd));
                }
                break;
            }
            case GroupFamily::Explicit: {
                int m = order();
                std::vector<int> assigned(m, -1);
                for (int g = 0; g < m; ++g) {
                    if (assigned[g] >= 0) continue;
                    int cls = (int)classes_.size();
                    classes_.emplace_back();
                    for (int h = 0; h < m; ++h) {
                        int c = mul(mul(h, g), inv(h));
                        if (assigned[c] < 0) {
                            assigned[c] = cls;
                            classes_[cls].push_back(c);
                        }
                    }
                }
                break;
            }
        }
        class_of_.assign(order(), -1);
        for (size_t c = 0; c < classes_.size(); ++c)
            for (int g : classes_[c]) class_of_[g] = (int)c;
        return classes_;
    }

    int class_of(int g) const {
        conjugacy_classes();
        return class_of_[g];
    }

    std::vector<int> cycle_type(int g) const {
        const auto& p = perm(g);
        std::vector<bool> seen(p.size(), false);
        std::vector<int> type;
        for (size_t i = 0; i < p.size(); ++i) {
            if (seen[i]) continue;
            int len = 0;
            size_t j = i;
            while (!seen[j]) {
                seen[j] = true;
                j = p[j];
                ++len;
            }
            type.push_back(len);
        }
        std::sort(type.rbegin(), type.rend());
        return type;
    }

    // Factors a permutation-family element into adjacent transpositions
    // (indices i meaning (i, i+1)); the product in word order equals g.
    std::vector<int> adjacent_word(int g) const {
        std::vector<int> v = perm(g);
        std::vector<int> word;
        bool moved = true;
        while (moved) {
            moved = false;
            for (size_t i = 0; i + 1 < v.size(); ++i)
                if (v[i] > v[i + 1]) {
                    std::swap(v[i], v[i + 1]);
                    word.push_back((int)i);
                    moved = true;
                }
        }
        std::reverse(word.begin(), word.end());
        return word;
    }

private:
    GroupFamily family_ = GroupFamily::Explicit;
    int n_ = 0;       // family parameter (or order for Explicit)
    int degree_ = 0;  // dimension of the natural action
    std::vector<std::vector<int>> perms_;
    std::map<std::vector<int>, int> perm_index_;
    std::vector<Matrix<double>> mats_;
    std::vector<std::vector<int>> mul_table_;
    mutable std::vector<std::vector<int>> classes_;
    mutable std::vector<int> class_of_;
};

// ---------------------------------------------------------------------------
// Character tables

struct CharacterTable {
    std::vector<int> class_rep;   // representative element per class
    std::vector<int> class_size;
    std::vector<std::vector<Complex>> rows;  // per irreducible, per class
    std::vector<int> dims;
    std::vector<std::string> names;
    bool exact = false;
    std::vector<std::vector<Rational>> rows_q;  // filled when exact

    int num_classes() const { return (int)class_rep.size(); }
    int num_irreps() const { return (int)rows.size(); }
    int order() const {
        int s = 0;
        for (int c : class_size) s += c;
        return s;
    }
};

inline CharacterTable character_table(const GroupRepresentation& rep) {
    CharacterTable tab;
    const auto& classes = rep.conjugacy_classes();
    for (auto& cls : classes) {
        tab.class_rep.push_back(cls.front());
        tab.class_size.push_back((int)cls.size());
    }
    switch (rep.family()) {
        case GroupFamily::Symmetric: {
            int n = rep.n_param();
            auto parts = partitions_of(n);
            tab.exact = true;
            for (auto& lambda : parts) {
                std::vector<Rational> row_q;
                std::vector<Complex> row;
                for (auto& mu : parts) {
                    long long v = sn_character(lambda, mu);
                    row_q.emplace_back(v);
                    row.emplace_back((double)v, 0.0);
                }
                tab.rows_q.push_back(std::move(row_q));
                tab.rows.push_back(std::move(row));
                tab.dims.push_back((int)sn_dimension(lambda));
                std::string name = "(";
                for (size_t i = 0; i < lambda.size(); ++i)
                    name += (i ? "," : "") + std::to_string(lambda[i]);
                tab.names.push_back(name + ")");
            }
            break;
        }
        case GroupFamily::Cyclic: {
            int n = rep.n_param();
            for (int j = 0; j < n; ++j) {
                std::vector<Complex> row;
                for (int k = 0; k < n; ++k) {
                    double th = 2.0 * M_PI * j * k / n;
                    row.emplace_back(std::cos(th), std::sin(th));
                }
                tab.rows.push_back(std::move(row));
                tab.dims.push_back(1);
                tab.names.push_back("rho_" + std::to_string(j));
            }
            break;
        }
        case GroupFamily::Dihedral: {
            int n = rep.n_param();
            int nc = tab.num_classes();
            auto value = [&](int irrep, int cls) -> Complex {
                int g = tab.class_rep[cls];
                auto [k, e] = rep.rot_refl(g);
                if (irrep == 0) return 1.0;                       // trivial
                if (irrep == 1) return e ? -1.0 : 1.0;            // determinant
                int two_dim_start = 2;
                if (n % 2 == 0) {
                    if (irrep == 2) return (k % 2 == 0) ? 1.0 : -1.0;
                    if (irrep == 3) return ((k + (e ? 1 : 0)) % 2 == 0) ? 1.0 : -1.0;
                    two_dim_start = 4;
                }
                int j = irrep - two_dim_start + 1;
                if (e) return 0.0;
                return 2.0 * std::cos(2.0 * M_PI * j * k / n);
            };
            int n_two_dim = (n % 2 == 0) ? n / 2 - 1 : (n - 1) / 2;
            int n_irreps = (n % 2 == 0 ? 4 : 2) + n_two_dim;
            for (int l = 0; l < n_irreps; ++l) {
                std::vector<Complex> row;
                for (int c = 0; c < nc; ++c) row.push_back(value(l, c));
                tab.rows.push_back(std::move(row));
                bool two_dim = l >= (n % 2 == 0 ? 4 : 2);
                tab.dims.push_back(two_dim ? 2 : 1);
                tab.names.push_back("theta_" + std::to_string(l + 1));
            }
            break;
        }
        case GroupFamily::Explicit:
            throw std::invalid_argument(
                "explicit groups need a user-supplied character table");
    }
    return tab;
}

// Validates a user-supplied table: row orthonormality and the dimension sum.
inline bool validate_character_table(const GroupRepresentation& rep, const CharacterTable& tab,
                                     double tol = 1e-9) {
    int order = rep.order();
    long long dimsq = 0;
    for (int d : tab.dims) dimsq += (long long)d * d;
    if (dimsq != order) return false;
    for (int a = 0; a < tab.num_irreps(); ++a)
        for (int b = 0; b < tab.num_irreps(); ++b) {
            Complex inner(0.0, 0.0);
            for (int c = 0; c < tab.num_classes(); ++c)
                inner += (double)tab.class_size[c] * tab.rows[a][c] * std::conj(tab.rows[b][c]);
            inner /= (double)order;
            Complex want = (a == b) ? Complex(1.0, 0.0) : Complex(0.0, 0.0);
            if (std::abs(inner - want) > tol) return false;
        }
    return true;
}

// ---------------------------------------------------------------------------
// Polynomial actions and the Reynolds operator

// f^g for permutation families, exactly: X_i -> X_{g(i)}.
template <class K>
Polynomial<K> act_on_polynomial(const GroupRepresentation& rep, int g, const Polynomial<K>& f) {
    if (rep.degree() != f.vars()) throw std::invalid_argument("action dimension mismatch");
    if (rep.is_permutation_family()) return f.permute_vars(rep.perm(g));
    Matrix<double> A = rep.matrix(rep.inv(g));
    if constexpr (scalar_traits<K>::exact) {
        // Integer matrices (signed permutations and the like) act exactly.
        for (int i = 0; i < A.rows(); ++i)
            for (int j = 0; j < A.cols(); ++j)
                if (A(i, j) != std::nearbyint(A(i, j)))
                    throw std::invalid_argument(
                        "exact polynomial action requires a permutation family or integer "
                        "matrices; use the floating overload");
    }
    std::vector<Polynomial<K>> subs;
    for (int i = 0; i < f.vars(); ++i) {
        Polynomial<K> s(f.vars());
        for (int j = 0; j < f.vars(); ++j)
            s = s + Polynomial<K>::variable(f.vars(), j, K(A(i, j)));
        subs.push_back(std::move(s));
    }
    return f.compose(subs);
}

namespace detail {

// Exact dihedral Reynolds in complex coordinates z = X1 + i X2, w = X1 - i X2.
inline Polynomial<Rational> dihedral_reynolds(const GroupRepresentation& rep,
                                              const Polynomial<Rational>& f) {
    int n = rep.n_param();
    using G = GaussianRational;
    Polynomial<G> fg = f.map_coeffs<G>([](const Rational& q) { return G(q); });
    // Substitute X1 = (z+w)/2, X2 = (z-w)/(2i) = -i(z-w)/2.
    G half(Rational(1, 2));
    G minus_i_half(Rational(0), Rational(-1, 2));
    Polynomial<G> z = Polynomial<G>::variable(2, 0);
    Polynomial<G> w = Polynomial<G>::variable(2, 1);
    Polynomial<G> x1 = half * (z + w);
    Polynomial<G> x2 = minus_i_half * (z - w);
    Polynomial<G> in_zw = fg.compose({x1, x2});
    // Rotation average keeps z^a w^b iff a = b (mod n).
    Polynomial<G> rot_avg(2);
    for (auto& [m, c] : in_zw.terms())
        if (((m.e[0] - m.e[1]) % n + n) % n == 0) rot_avg.add_term(m, c);
    // Mirror x -> -x sends z -> -w, w -> -z.
    Polynomial<G> mirrored(2);
    for (auto& [m, c] : rot_avg.terms()) {
        Monomial mm({m.e[1], m.e[0]});
        G cc = ((m.e[0] + m.e[1]) % 2 == 0) ? c : G(0) - c;
        mirrored.add_term(mm, cc);
    }
    Polynomial<G> avg = half * (rot_avg + mirrored);
    // Back substitution z = X1 + i X2, w = X1 - i X2.
    Polynomial<G> X1 = Polynomial<G>::variable(2, 0);
    Polynomial<G> X2i = Polynomial<G>::variable(2, 1, G::i());
    Polynomial<G> back = avg.compose({X1 + X2i, X1 - X2i});
    Polynomial<Rational> out(2);
    for (auto& [m, c] : back.terms()) {
        if (c.im != 0) throw std::logic_error("dihedral Reynolds produced imaginary part");
        out.add_term(m, c.re);
    }
    return out;
}

}  // namespace detail

// Group average of f; exact for permutation families and dihedral groups.
inline Polynomial<Rational> reynolds(const GroupRepresentation& rep,
                                     const Polynomial<Rational>& f) {
    if (rep.degree() != f.vars()) throw std::invalid_argument("action dimension mismatch");
    if (rep.family() == GroupFamily::Dihedral) return detail::dihedral_reynolds(rep, f);
    if (!rep.is_permutation_family())
        throw std::invalid_argument("exact Reynolds needs a permutation family or dihedral group");
    Polynomial<Rational> acc(f.vars());
    for (int g = 0; g < rep.order(); ++g) acc = acc + act_on_polynomial(rep, g, f);
    return Rational(1, rep.order()) * acc;
}

inline bool is_invariant(const GroupRepresentation& rep, const Polynomial<Rational>& f) {
    if (rep.family() == GroupFamily::Dihedral) return reynolds(rep, f) == f;
    for (int g : rep.generators())
        if (!(act_on_polynomial(rep, g, f) == f)) return false;
    return true;
}

// ---------------------------------------------------------------------------
// Action matrices on a monomial basis (the degree-d polynomial representation)

template <class K>
Matrix<K> monomial_action_matrix(const GroupRepresentation& rep, int g,
                                 const std::vector<Monomial>& basis) {
    std::map<Monomial, int> index;
    for (size_t i = 0; i < basis.size(); ++i) index[basis[i]] = (int)i;
    Matrix<K> M((int)basis.size(), (int)basis.size());
    if (rep.is_permutation_family()) {
        const auto& p = rep.perm(g);
        for (size_t j = 0; j < basis.size(); ++j) {
            std::vector<int> e(basis[j].e.size(), 0);
            for (size_t i = 0; i < e.size(); ++i) e[p[i]] += basis[j].e[i];
            auto it = index.find(Monomial(std::move(e)));
            if (it == index.end()) throw std::invalid_argument("basis not closed under action");
            M(it->second, (int)j) = K(1);
        }
        return M;
    }
    if constexpr (scalar_traits<K>::exact) {
        throw std::invalid_argument("exact action matrices require a permutation family");
    } else {
        // Column j: expansion of basis[j] composed with the linear action.
        int nv = rep.degree();
        Polynomial<K> dummy(nv);
        for (size_t j = 0; j < basis.size(); ++j) {
            Polynomial<K> mono = Polynomial<K>::monomial(nv, basis[j], K(1));
            Polynomial<K> image = act_on_polynomial(rep, g, mono);
            for (auto& [m, c] : image.terms()) {
                auto it = index.find(m);
                if (it == index.end()) throw std::invalid_argument("basis not closed under action");
                M(it->second, (int)j) = c;
            }
        }
        return M;
    }
}

// ---------------------------------------------------------------------------
// Specht modules

struct SpechtModule {
    std::vector<int> shape;
    int dimension = 0;
    std::vector<Tableau> basis;                 // standard tableaux
    std::vector<Matrix<Rational>> generators;   // action of (i, i+1), i = 0..n-2
};

namespace detail {

using TabloidKey = std::vector<int>;  // row_of[value-1]

inline void polytabloid(const Tableau& T, std::map<TabloidKey, Rational>& out) {
    int n = T.n();
    auto cols = T.columns();
    // Iterate over the column stabilizer as a product of per-column
    // permutations, tracking the sign.
    std::vector<std::vector<std::vector<int>>> col_perms(cols.size());
    for (size_t c = 0; c < cols.size(); ++c) {
        std::vector<int> idx(cols[c].size());
        std::iota(idx.begin(), idx.end(), 0);
        std::sort(idx.begin(), idx.end());
        do {
            col_perms[c].push_back(idx);
        } while (std::next_permutation(idx.begin(), idx.end()));
    }
    std::vector<size_t> choice(cols.size(), 0);
    auto perm_sign = [](const std::vector<int>& p) {
        int s = 1;
        std::vector<bool> seen(p.size(), false);
        for (size_t i = 0; i < p.size(); ++i) {
            if (seen[i]) continue;
            size_t j = i;
            int len = 0;
            while (!seen[j]) {
                seen[j] = true;
                j = p[j];
                ++len;
            }
            if (len % 2 == 0) s = -s;
        }
        return s;
    };
    auto rec = [&](auto&& self, size_t c, int sign) -> void {
        if (c == cols.size()) {
            TabloidKey key(n, -1);
            for (size_t ci = 0; ci < cols.size(); ++ci) {
                const auto& p = col_perms[ci][choice[ci]];
                for (size_t r = 0; r < cols[ci].size(); ++r) {
                    // value cols[ci][p[r]] sits in row r after permuting.
                    key[cols[ci][p[r]] - 1] = (int)r;
                }
            }
            auto [it, inserted] = out.emplace(std::move(key), Rational(sign));
            if (!inserted) it->second += sign;
            return;
        }
        for (size_t k = 0; k < col_perms[c].size(); ++k) {
            choice[c] = k;
            self(self, c + 1, sign * perm_sign(col_perms[c][k]));
        }
    };
    rec(rec, 0, 1);
}

}  // namespace detail

inline SpechtModule specht_module(const std::vector<int>& shape) {
    for (size_t i = 1; i < shape.size(); ++i)
        if (shape[i] > shape[i - 1] || shape[i] <= 0)
            throw std::invalid_argument("invalid partition");
    int n = std::accumulate(shape.begin(), shape.end(), 0);
    SpechtModule mod;
    mod.shape = shape;
    mod.basis = standard_tableaux(shape);
    int d = (int)mod.basis.size();
    mod.dimension = d;
    // Polytabloid vectors of the standard basis.
    std::vector<std::map<detail::TabloidKey, Rational>> basis_vecs(d);
    std::map<detail::TabloidKey, int> key_index;
    for (int t = 0; t < d; ++t) {
        detail::polytabloid(mod.basis[t], basis_vecs[t]);
        for (auto& [k, v] : basis_vecs[t]) key_index.emplace(k, 0);
    }
    // For each generator tau = (i, i+1): tau . e_T = e_{tau T}, expressed in
    // the standard basis by solving one linear system with d right-hand sides.
    for (int i = 0; i + 1 < n; ++i) {
        std::vector<std::map<detail::TabloidKey, Rational>> images(d);
        for (int t = 0; t < d; ++t) {
            Tableau moved = mod.basis[t];
            for (auto& row : moved.rows)
                for (auto& v : row) {
                    if (v == i + 1) v = i + 2;
                    else if (v == i + 2) v = i + 1;
                }
            detail::polytabloid(moved, images[t]);
            for (auto& [k, v] : images[t]) key_index.emplace(k, 0);
        }
        int rows_n = 0;
        for (auto& [k, idx] : key_index) idx = rows_n++;
        Matrix<Rational> aug(rows_n, d + d);
        for (int t = 0; t < d; ++t) {
            for (auto& [k, v] : basis_vecs[t]) aug(key_index[k], t) = v;
            for (auto& [k, v] : images[t]) aug(key_index[k], d + t) = v;
        }
        auto pivots = rref(aug);
        Matrix<Rational> gen(d, d);
        for (size_t r = 0; r < pivots.size(); ++r) {
            if (pivots[r] >= d) throw std::logic_error("image outside Specht span");
            for (int t = 0; t < d; ++t) gen(pivots[r], t) = aug((int)r, d + t);
        }
        mod.generators.push_back(std::move(gen));
    }
    if (n == 1) mod.generators.push_back(Matrix<Rational>::identity(d));
    return mod;
}

// Exact irreducible matrix for any S_n element from the Specht generator
// matrices via an adjacent-transposition factorization.
inline Matrix<Rational> specht_element_matrix(const GroupRepresentation& rep,
                                              const SpechtModule& mod, int g) {
    Matrix<Rational> M = Matrix<Rational>::identity(mod.dimension);
    for (int i : rep.adjacent_word(g)) M = M * mod.generators[i];
    return M;
}

// Young's orthogonal form: real orthogonal irreducible matrices for the
// adjacent transpositions, indexed by standard tableaux.
inline std::vector<Matrix<double>> young_orthogonal_generators(const std::vector<int>& shape) {
    auto tabs = standard_tableaux(shape);
    int d = (int)tabs.size();
    int n = std::accumulate(shape.begin(), shape.end(), 0);
    std::map<std::vector<std::vector<int>>, int> index;
    for (int t = 0; t < d; ++t) index[tabs[t].rows] = t;
    std::vector<Matrix<double>> gens;
    for (int i = 1; i < n; ++i) {
        Matrix<double> M(d, d);
        for (int t = 0; t < d; ++t) {
            auto [r1, c1] = tabs[t].find(i);
            auto [r2, c2] = tabs[t].find(i + 1);
            int dist = (c2 - r2) - (c1 - r1);  // axial distance
            double inv = 1.0 / dist;
            Tableau swapped = tabs[t];
            for (auto& row : swapped.rows)
                for (auto& v : row) {
                    if (v == i) v = i + 1;
                    else if (v == i + 1) v = i;
                }
            auto it = index.find(swapped.rows);
            M(t, t) = inv;
            if (it != index.end()) M(it->second, t) = std::sqrt(1.0 - inv * inv);
        }
        gens.push_back(std::move(M));
    }
    if (n == 1) gens.push_back(Matrix<double>::identity(d));
    return gens;
}

inline Matrix<double> young_orthogonal_matrix(const GroupRepresentation& rep,
                                              const std::vector<Matrix<double>>& gens, int g) {
    int d = gens.empty() ? 1 : gens[0].rows();
    Matrix<double> M = Matrix<double>::identity(d);
    for (int i : rep.adjacent_word(g)) M = M * gens[i];
    return M;
}

}  // namespace symred
