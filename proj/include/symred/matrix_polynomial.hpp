// Symmetric matrices with polynomial entries (H matrices, block carriers B,
// differential Gram matrices J).
#pragma once

#include <stdexcept>
#include <vector>

#include "symred/matrix.hpp"
#include "symred/polynomial.hpp"

namespace symred {

template <class K>
class MatrixPolynomial {
public:
    MatrixPolynomial() : dim_(0), nvars_(0) {}
    MatrixPolynomial(int dim, int nvars)
        : dim_(dim), nvars_(nvars), entries_(size_t(dim) * dim, Polynomial<K>(nvars)) {}

    int dim() const { return dim_; }
    int vars() const { return nvars_; }

    const Polynomial<K>& operator()(int i, int j) const { return entries_[size_t(i) * dim_ + j]; }
    void set(int i, int j, Polynomial<K> p) {
        if (p.vars() != nvars_) throw std::invalid_argument("entry variable-count mismatch");
        entries_[size_t(i) * dim_ + j] = p;
        entries_[size_t(j) * dim_ + i] = std::move(p);
    }

    bool is_symmetric() const {
        for (int i = 0; i < dim_; ++i)
            for (int j = i + 1; j < dim_; ++j)
                if (!((*this)(i, j) == (*this)(j, i))) return false;
        return true;
    }

    int max_degree() const {
        int d = 0;
        for (auto& p : entries_) d = std::max(d, p.degree());
        return d;
    }

    Matrix<K> eval(const std::vector<K>& pt) const {
        Matrix<K> m(dim_, dim_);
        for (int i = 0; i < dim_; ++i)
            for (int j = 0; j < dim_; ++j) m(i, j) = (*this)(i, j).eval(pt);
        return m;
    }

    // Entrywise substitution of polynomials for the variables.
    MatrixPolynomial compose(const std::vector<Polynomial<K>>& subs) const {
        int out_vars = subs.empty() ? 0 : subs[0].vars();
        MatrixPolynomial r(dim_, out_vars);
        for (int i = 0; i < dim_; ++i)
            for (int j = i; j < dim_; ++j) r.set(i, j, (*this)(i, j).compose(subs));
        return r;
    }

    // <A, this> = sum_{i,j} A(i,j) * entry(i,j); the linear pairing used by
    // block certificates.
    Polynomial<K> frobenius_with(const Matrix<K>& A) const {
        Polynomial<K> acc(nvars_);
        for (int i = 0; i < dim_; ++i)
            for (int j = 0; j < dim_; ++j) acc = acc + A(i, j) * (*this)(i, j);
        return acc;
    }

private:
    int dim_, nvars_;
    std::vector<Polynomial<K>> entries_;
};

}  // namespace symred
