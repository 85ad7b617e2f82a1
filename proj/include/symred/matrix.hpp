// Dense matrices over any scalar field, exact linear solving, the pivoted
// exact LDL^T positive-semidefiniteness check with rational witnesses, and a
// Jacobi eigenvalue sweep for the floating pipelines.
#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "symred/scalar.hpp"

namespace symred {

template <class K>
class Matrix {
public:
    Matrix() : r_(0), c_(0) {}
    Matrix(int rows, int cols, K fill = K(0)) : r_(rows), c_(cols), a_(size_t(rows) * cols, fill) {}

    static Matrix identity(int n) {
        Matrix m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = K(1);
        return m;
    }

    int rows() const { return r_; }
    int cols() const { return c_; }
    K& operator()(int i, int j) { return a_[size_t(i) * c_ + j]; }
    const K& operator()(int i, int j) const { return a_[size_t(i) * c_ + j]; }

    friend Matrix operator+(const Matrix& a, const Matrix& b) {
        Matrix r(a.r_, a.c_);
        for (size_t i = 0; i < a.a_.size(); ++i) r.a_[i] = a.a_[i] + b.a_[i];
        return r;
    }
    friend Matrix operator-(const Matrix& a, const Matrix& b) {
        Matrix r(a.r_, a.c_);
        for (size_t i = 0; i < a.a_.size(); ++i) r.a_[i] = a.a_[i] - b.a_[i];
        return r;
    }
    friend Matrix operator*(const K& s, const Matrix& m) {
        Matrix r(m.r_, m.c_);
        for (size_t i = 0; i < m.a_.size(); ++i) r.a_[i] = s * m.a_[i];
        return r;
    }
    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        if (a.c_ != b.r_) throw std::invalid_argument("matrix product shape mismatch");
        Matrix r(a.r_, b.c_);
        for (int i = 0; i < a.r_; ++i)
            for (int k = 0; k < a.c_; ++k) {
                const K& v = a(i, k);
                if (scalar_traits<K>::is_zero(v)) continue;
                for (int j = 0; j < b.c_; ++j) r(i, j) = r(i, j) + v * b(k, j);
            }
        return r;
    }
    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.r_ == b.r_ && a.c_ == b.c_ && a.a_ == b.a_;
    }

    std::vector<K> operator*(const std::vector<K>& x) const {
        if ((int)x.size() != c_) throw std::invalid_argument("matvec shape mismatch");
        std::vector<K> y(r_, K(0));
        for (int i = 0; i < r_; ++i)
            for (int j = 0; j < c_; ++j) y[i] = y[i] + (*this)(i, j) * x[j];
        return y;
    }

    Matrix transpose() const {
        Matrix r(c_, r_);
        for (int i = 0; i < r_; ++i)
            for (int j = 0; j < c_; ++j) r(j, i) = (*this)(i, j);
        return r;
    }
    Matrix conj_transpose() const {
        Matrix r(c_, r_);
        for (int i = 0; i < r_; ++i)
            for (int j = 0; j < c_; ++j) r(j, i) = scalar_traits<K>::conj((*this)(i, j));
        return r;
    }
    bool is_symmetric() const {
        if (r_ != c_) return false;
        for (int i = 0; i < r_; ++i)
            for (int j = i + 1; j < c_; ++j)
                if (!((*this)(i, j) == (*this)(j, i))) return false;
        return true;
    }

    template <class K2, class F>
    Matrix<K2> map(F f) const {
        Matrix<K2> r(r_, c_);
        for (int i = 0; i < r_; ++i)
            for (int j = 0; j < c_; ++j) r(i, j) = f((*this)(i, j));
        return r;
    }

private:
    int r_, c_;
    std::vector<K> a_;
};

// Row-reduces m in place (Gauss-Jordan); returns pivot column indices.
// For floating scalars entries below tol are treated as zero.
template <class K>
std::vector<int> rref(Matrix<K>& m, double tol = 1e-11) {
    std::vector<int> pivots;
    int row = 0;
    for (int col = 0; col < m.cols() && row < m.rows(); ++col) {
        int piv = -1;
        double best = tol;
        for (int i = row; i < m.rows(); ++i) {
            if constexpr (scalar_traits<K>::exact) {
                if (!scalar_traits<K>::is_zero(m(i, col))) { piv = i; break; }
            } else {
                double mag = scalar_traits<K>::abs2(m(i, col));
                if (mag > best * best) { best = std::sqrt(mag); piv = i; }
            }
        }
        if (piv < 0) continue;
        if (piv != row)
            for (int j = 0; j < m.cols(); ++j) std::swap(m(piv, j), m(row, j));
        K inv = K(1) / m(row, col);
        for (int j = 0; j < m.cols(); ++j) m(row, j) = inv * m(row, j);
        for (int i = 0; i < m.rows(); ++i) {
            if (i == row || scalar_traits<K>::is_zero(m(i, col))) continue;
            K f = m(i, col);
            for (int j = 0; j < m.cols(); ++j) m(i, j) = m(i, j) - f * m(row, j);
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

template <class K>
struct AffineSolution {
    bool consistent = false;
    std::vector<K> particular;          // one solution of A x = b
    std::vector<std::vector<K>> nullspace;  // basis of A x = 0
};

// Full solution set of A x = b by exact (or tolerant) Gauss-Jordan.
template <class K>
AffineSolution<K> affine_solve(const Matrix<K>& A, const std::vector<K>& b, double tol = 1e-11) {
    Matrix<K> aug(A.rows(), A.cols() + 1);
    for (int i = 0; i < A.rows(); ++i) {
        for (int j = 0; j < A.cols(); ++j) aug(i, j) = A(i, j);
        aug(i, A.cols()) = b[i];
    }
    std::vector<int> pivots = rref(aug, tol);
    AffineSolution<K> out;
    if (!pivots.empty() && pivots.back() == A.cols()) return out;  // 0 = nonzero row
    out.consistent = true;
    std::vector<int> pivot_of_col(A.cols(), -1);
    for (size_t r = 0; r < pivots.size(); ++r) pivot_of_col[pivots[r]] = (int)r;
    out.particular.assign(A.cols(), K(0));
    for (size_t r = 0; r < pivots.size(); ++r) out.particular[pivots[r]] = aug((int)r, A.cols());
    for (int col = 0; col < A.cols(); ++col) {
        if (pivot_of_col[col] >= 0) continue;
        std::vector<K> v(A.cols(), K(0));
        v[col] = K(1);
        for (size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = K(0) - aug((int)r, col);
        out.nullspace.push_back(std::move(v));
    }
    return out;
}

template <class K>
int rank(Matrix<K> m, double tol = 1e-11) {
    return (int)rref(m, tol).size();
}

template <class K>
std::optional<Matrix<K>> inverse(const Matrix<K>& A, double tol = 1e-11) {
    if (A.rows() != A.cols()) throw std::invalid_argument("inverse of non-square matrix");
    int n = A.rows();
    Matrix<K> aug(n, 2 * n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) aug(i, j) = A(i, j);
        aug(i, n + i) = K(1);
    }
    std::vector<int> pivots = rref(aug, tol);
    if ((int)pivots.size() < n || pivots[n - 1] != n - 1) return std::nullopt;
    Matrix<K> inv(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
    return inv;
}

struct PsdCheck {
    bool psd = false;
    // When psd: A = P L D L^T P^T with P the recorded pivot order.
    std::vector<int> perm;
    Matrix<Rational> L;
    std::vector<Rational> diag;
    // When not psd: exact rational witness with w^T A w < 0.
    std::vector<Rational> witness;
};

namespace detail {

// Recursive pivoted elimination on the active index set. On failure fills
// check.witness (in original coordinates); on success appends to perm/diag and
// records the unit multipliers column by column.
inline bool ldlt_recurse(Matrix<Rational>& S, std::vector<int> active, PsdCheck& check,
                         std::vector<std::vector<std::pair<int, Rational>>>& columns) {
    if (active.empty()) return true;
    int n = (int)active.size();
    // A negative diagonal entry is an immediate witness.
    for (int t = 0; t < n; ++t) {
        if (S(t, t) < 0) {
            check.witness.assign(n, Rational(0));
            check.witness[t] = 1;
            return false;
        }
    }
    int piv = -1;
    for (int t = 0; t < n; ++t)
        if (S(t, t) > 0) { piv = t; break; }
    if (piv < 0) {
        // All diagonal entries are zero: PSD only if the block vanishes.
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (S(i, j) != 0) {
                    std::vector<Rational> w(n, Rational(0));
                    w[i] = 1;
                    w[j] = S(i, j) > 0 ? Rational(-1) : Rational(1);
                    check.witness = std::move(w);
                    return false;
                }
        for (int t = 0; t < n; ++t) {
            check.perm.push_back(active[t]);
            check.diag.push_back(0);
            columns.emplace_back();
        }
        return true;
    }
    Rational d = S(piv, piv);
    check.perm.push_back(active[piv]);
    check.diag.push_back(d);
    std::vector<std::pair<int, Rational>> col;
    std::vector<Rational> mult(n, Rational(0));
    for (int t = 0; t < n; ++t) {
        if (t == piv) continue;
        mult[t] = S(piv, t) / d;
        col.emplace_back(active[t], mult[t]);
    }
    columns.push_back(std::move(col));
    // Schur complement on the remaining indices.
    Matrix<Rational> S2(n - 1, n - 1);
    std::vector<int> act2;
    act2.reserve(n - 1);
    std::vector<int> pos;
    for (int t = 0; t < n; ++t)
        if (t != piv) { act2.push_back(active[t]); pos.push_back(t); }
    for (int i = 0; i < n - 1; ++i)
        for (int j = 0; j < n - 1; ++j)
            S2(i, j) = S(pos[i], pos[j]) - mult[pos[i]] * d * mult[pos[j]];
    if (ldlt_recurse(S2, act2, check, columns)) return true;
    // Lift the inner witness y: x_piv = -sum_j mult_j y_j, rest = y.
    std::vector<Rational> lifted(n, Rational(0));
    Rational xp(0);
    for (int i = 0; i < n - 1; ++i) {
        lifted[pos[i]] = check.witness[i];
        xp -= mult[pos[i]] * check.witness[i];
    }
    lifted[piv] = xp;
    check.witness = std::move(lifted);
    return false;
}

}  // namespace detail

// Exact PSD decision for a symmetric rational matrix. Either a pivoted LDL^T
// factorization with nonnegative diagonal, or a rational vector w with
// w^T A w < 0.
inline PsdCheck ldlt_psd_check(const Matrix<Rational>& A) {
    if (!A.is_symmetric()) throw std::invalid_argument("ldlt_psd_check: matrix not symmetric");
    int n = A.rows();
    PsdCheck check;
    Matrix<Rational> S = A;
    std::vector<int> active(n);
    for (int i = 0; i < n; ++i) active[i] = i;
    std::vector<std::vector<std::pair<int, Rational>>> columns;
    if (!detail::ldlt_recurse(S, active, check, columns)) {
        // The recursion returns witnesses in the coordinates of the current
        // active set; the outermost call's active set is the identity, and
        // lifting already mapped inner ones through pos[], so re-map once more
        // only if sizes disagree.
        if ((int)check.witness.size() != n) {
            std::vector<Rational> w(n, Rational(0));
            for (size_t t = 0; t < check.witness.size(); ++t) w[active[t]] = check.witness[t];
            check.witness = std::move(w);
        }
        check.psd = false;
        return check;
    }
    check.psd = true;
    // Assemble unit-lower-triangular L in pivot order.
    int m = (int)check.perm.size();
    std::vector<int> slot(n, -1);
    for (int k = 0; k < m; ++k) slot[check.perm[k]] = k;
    check.L = Matrix<Rational>(m, m);
    for (int k = 0; k < m; ++k) {
        check.L(k, k) = 1;
        for (auto& [orig, val] : columns[k]) check.L(slot[orig], k) = val;
    }
    return check;
}

struct EigenResult {
    std::vector<double> values;  // ascending
    Matrix<double> vectors;      // columns are eigenvectors, same order
    bool converged = false;
};

// Cyclic Jacobi sweeps; small dense symmetric matrices only.
inline EigenResult jacobi_eigen(Matrix<double> A, double tol = 1e-12, int max_sweeps = 100) {
    if (A.rows() != A.cols()) throw std::invalid_argument("jacobi_eigen: non-square");
    int n = A.rows();
    EigenResult res;
    res.vectors = Matrix<double>::identity(n);
    double scale = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) scale = std::max(scale, std::abs(A(i, j)));
    if (scale == 0.0) scale = 1.0;
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        double off = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) off += A(i, j) * A(i, j);
        if (std::sqrt(off) <= tol * scale) {
            res.converged = true;
            break;
        }
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) {
                if (std::abs(A(p, q)) <= 1e-300) continue;
                double theta = (A(q, q) - A(p, p)) / (2.0 * A(p, q));
                double t = (theta >= 0 ? 1.0 : -1.0) /
                           (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                double c = 1.0 / std::sqrt(t * t + 1.0), s = t * c;
                for (int k = 0; k < n; ++k) {
                    double akp = A(k, p), akq = A(k, q);
                    A(k, p) = c * akp - s * akq;
                    A(k, q) = s * akp + c * akq;
                }
                for (int k = 0; k < n; ++k) {
                    double apk = A(p, k), aqk = A(q, k);
                    A(p, k) = c * apk - s * aqk;
                    A(q, k) = s * apk + c * aqk;
                }
                for (int k = 0; k < n; ++k) {
                    double vkp = res.vectors(k, p), vkq = res.vectors(k, q);
                    res.vectors(k, p) = c * vkp - s * vkq;
                    res.vectors(k, q) = s * vkp + c * vkq;
                }
            }
    }
    res.values.resize(n);
    for (int i = 0; i < n; ++i) res.values[i] = A(i, i);
    // Sort ascending, carrying eigenvectors along.
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return res.values[a] < res.values[b]; });
    std::vector<double> vals(n);
    Matrix<double> vecs(n, n);
    for (int i = 0; i < n; ++i) {
        vals[i] = res.values[order[i]];
        for (int k = 0; k < n; ++k) vecs(k, i) = res.vectors(k, order[i]);
    }
    res.values = std::move(vals);
    res.vectors = std::move(vecs);
    return res;
}

inline std::vector<double> sym_eigenvalues(const Matrix<double>& A, double tol = 1e-9) {
    EigenResult r = jacobi_eigen(A, std::min(tol, 1e-12));
    if (!r.converged) throw std::runtime_error("jacobi eigenvalue sweep did not converge");
    return r.values;
}

// Eigenvalues of a Hermitian matrix via the real 2n x 2n embedding
// [[X, -Y], [Y, X]]; each eigenvalue appears twice in the embedding.
inline std::vector<double> herm_eigenvalues(const Matrix<Complex>& A, double tol = 1e-9) {
    int n = A.rows();
    Matrix<double> M(2 * n, 2 * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            M(i, j) = A(i, j).real();
            M(i, n + j) = -A(i, j).imag();
            M(n + i, j) = A(i, j).imag();
            M(n + i, n + j) = A(i, j).real();
        }
    std::vector<double> all = sym_eigenvalues(M, tol);
    std::vector<double> out;
    for (int i = 0; i < n; ++i) out.push_back((all[2 * i] + all[2 * i + 1]) / 2.0);
    return out;
}

}  // namespace symred
