// Sparse multivariate polynomials with a fixed graded lexicographic term order.
// Terms are kept canonical: no zero coefficients, exponent vectors always of
// length vars(). The same template carries exact and floating pipelines.
#pragma once

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "symred/scalar.hpp"

namespace symred {

struct Monomial {
    std::vector<int> e;

    Monomial() = default;
    explicit Monomial(std::vector<int> exps) : e(std::move(exps)) {}
    static Monomial one(int nvars) { return Monomial(std::vector<int>(nvars, 0)); }

    int degree() const {
        int d = 0;
        for (int x : e) d += x;
        return d;
    }
    friend bool operator==(const Monomial& a, const Monomial& b) { return a.e == b.e; }
    // Graded lex: lower degree first, ties by lexicographic comparison with
    // X1 heaviest, so the map's last entry is the leading term.
    friend bool operator<(const Monomial& a, const Monomial& b) {
        int da = a.degree(), db = b.degree();
        if (da != db) return da < db;
        return a.e < b.e;
    }
    Monomial operator*(const Monomial& o) const {
        Monomial r = *this;
        for (size_t i = 0; i < e.size(); ++i) r.e[i] += o.e[i];
        return r;
    }
};

template <class K>
class Polynomial {
public:
    Polynomial() : nvars_(0) {}
    explicit Polynomial(int nvars) : nvars_(nvars) {}

    static Polynomial constant(int nvars, K c) {
        Polynomial p(nvars);
        p.add_term(Monomial::one(nvars), std::move(c));
        return p;
    }
    static Polynomial variable(int nvars, int i, K coeff = K(1)) {
        std::vector<int> e(nvars, 0);
        e.at(i) = 1;
        Polynomial p(nvars);
        p.add_term(Monomial(std::move(e)), std::move(coeff));
        return p;
    }
    static Polynomial monomial(int nvars, Monomial m, K coeff) {
        Polynomial p(nvars);
        p.add_term(std::move(m), std::move(coeff));
        return p;
    }

    int vars() const { return nvars_; }
    const std::map<Monomial, K>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    int degree() const {
        int d = -1;
        for (auto& [m, c] : terms_) d = std::max(d, m.degree());
        return d;
    }
    bool is_homogeneous() const {
        if (terms_.empty()) return true;
        int d = terms_.begin()->first.degree();
        for (auto& [m, c] : terms_)
            if (m.degree() != d) return false;
        return true;
    }
    const Monomial& lead_monomial() const {
        if (terms_.empty()) throw std::domain_error("lead monomial of zero polynomial");
        return terms_.rbegin()->first;
    }
    K coeff(const Monomial& m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? K(0) : it->second;
    }

    void add_term(const Monomial& m, const K& c) {
        if ((int)m.e.size() != nvars_) throw std::invalid_argument("exponent length mismatch");
        if (scalar_traits<K>::is_zero(c)) return;
        auto [it, inserted] = terms_.emplace(m, c);
        if (!inserted) {
            it->second = it->second + c;
            if (scalar_traits<K>::is_zero(it->second)) terms_.erase(it);
        }
    }

    friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
        a.check_vars(b);
        Polynomial r = a;
        for (auto& [m, c] : b.terms_) r.add_term(m, c);
        return r;
    }
    friend Polynomial operator-(const Polynomial& a, const Polynomial& b) {
        a.check_vars(b);
        Polynomial r = a;
        for (auto& [m, c] : b.terms_) r.add_term(m, K(0) - c);
        return r;
    }
    Polynomial operator-() const {
        Polynomial r(nvars_);
        for (auto& [m, c] : terms_) r.terms_.emplace(m, K(0) - c);
        return r;
    }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        a.check_vars(b);
        Polynomial r(a.nvars_);
        for (auto& [ma, ca] : a.terms_)
            for (auto& [mb, cb] : b.terms_) r.add_term(ma * mb, ca * cb);
        return r;
    }
    friend Polynomial operator*(const K& s, const Polynomial& p) {
        Polynomial r(p.nvars_);
        for (auto& [m, c] : p.terms_) r.add_term(m, s * c);
        return r;
    }
    friend bool operator==(const Polynomial& a, const Polynomial& b) {
        return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
    }

    Polynomial pow(int e) const {
        if (e < 0) throw std::invalid_argument("negative power");
        Polynomial r = constant(nvars_, K(1));
        Polynomial base = *this;
        while (e > 0) {
            if (e & 1) r = r * base;
            base = base * base;
            e >>= 1;
        }
        return r;
    }

    K eval(const std::vector<K>& pt) const {
        if ((int)pt.size() != nvars_) throw std::invalid_argument("point length mismatch");
        K total(0);
        for (auto& [m, c] : terms_) {
            K t = c;
            for (int i = 0; i < nvars_; ++i)
                for (int k = 0; k < m.e[i]; ++k) t = t * pt[i];
            total = total + t;
        }
        return total;
    }

    // Substitutes subs[i] for variable i; subs polynomials share a variable count.
    Polynomial compose(const std::vector<Polynomial>& subs) const {
        if ((int)subs.size() != nvars_) throw std::invalid_argument("substitution arity mismatch");
        int out_vars = subs.empty() ? 0 : subs[0].vars();
        // Power cache per variable, filled on demand.
        std::vector<std::vector<Polynomial>> pows(nvars_);
        for (int i = 0; i < nvars_; ++i) pows[i].push_back(constant(out_vars, K(1)));
        Polynomial r(out_vars);
        for (auto& [m, c] : terms_) {
            Polynomial t = constant(out_vars, c);
            for (int i = 0; i < nvars_; ++i) {
                while ((int)pows[i].size() <= m.e[i]) pows[i].push_back(pows[i].back() * subs[i]);
                if (m.e[i] > 0) t = t * pows[i][m.e[i]];
            }
            r = r + t;
        }
        return r;
    }

    Polynomial derivative(int var) const {
        Polynomial r(nvars_);
        for (auto& [m, c] : terms_) {
            if (m.e[var] == 0) continue;
            Monomial d = m;
            d.e[var] -= 1;
            r.add_term(d, K(m.e[var]) * c);
        }
        return r;
    }

    // Applies the variable substitution X_i -> X_{p[i]}.
    Polynomial permute_vars(const std::vector<int>& p) const {
        if ((int)p.size() != nvars_) throw std::invalid_argument("permutation length mismatch");
        Polynomial r(nvars_);
        for (auto& [m, c] : terms_) {
            std::vector<int> e(nvars_, 0);
            for (int i = 0; i < nvars_; ++i) e[p[i]] += m.e[i];
            r.add_term(Monomial(std::move(e)), c);
        }
        return r;
    }

    Polynomial homogeneous_part(int d) const {
        Polynomial r(nvars_);
        for (auto& [m, c] : terms_)
            if (m.degree() == d) r.add_term(m, c);
        return r;
    }

    template <class K2, class F>
    Polynomial<K2> map_coeffs(F f) const {
        Polynomial<K2> r(nvars_);
        for (auto& [m, c] : terms_) r.add_term(m, f(c));
        return r;
    }

    std::string str(const std::string& var_prefix = "X") const {
        if (terms_.empty()) return "0";
        std::ostringstream out;
        bool first = true;
        // Leading term first.
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
            std::string cs = coeff_str(it->second);
            bool neg = !cs.empty() && cs[0] == '-';
            if (first) {
                if (neg) out << "-";
            } else {
                out << (neg ? " - " : " + ");
            }
            if (neg) cs = cs.substr(1);
            std::string ms = monomial_str(it->first, var_prefix);
            if (ms.empty()) {
                out << cs;
            } else if (cs == "1") {
                out << ms;
            } else {
                out << cs << "*" << ms;
            }
            first = false;
        }
        return out.str();
    }

private:
    void check_vars(const Polynomial& o) const {
        if (nvars_ != o.nvars_) throw std::invalid_argument("variable-count mismatch");
    }
    static std::string monomial_str(const Monomial& m, const std::string& pre) {
        std::ostringstream out;
        bool first = true;
        for (size_t i = 0; i < m.e.size(); ++i) {
            if (m.e[i] == 0) continue;
            if (!first) out << "*";
            out << pre << (i + 1);
            if (m.e[i] > 1) out << "^" << m.e[i];
            first = false;
        }
        return out.str();
    }
    static std::string coeff_str(const Rational& c) { return rational_str(c); }
    static std::string coeff_str(double c) {
        std::ostringstream out;
        out << c;
        return out.str();
    }
    static std::string coeff_str(const Complex& c) {
        std::ostringstream out;
        out << "(" << c.real() << (c.imag() < 0 ? "" : "+") << c.imag() << "i)";
        return out.str();
    }
    static std::string coeff_str(const GaussianRational& c) {
        if (c.im == 0) return rational_str(c.re);
        return "(" + rational_str(c.re) + "+" + rational_str(c.im) + "i)";
    }

    int nvars_;
    std::map<Monomial, K> terms_;
};

// All monomials in nvars variables of degree <= maxdeg (or exactly maxdeg),
// listed in increasing graded lex order.
inline std::vector<Monomial> monomial_basis(int nvars, int maxdeg, bool homogeneous = false) {
    std::vector<Monomial> out;
    std::vector<int> e(nvars, 0);
    auto rec = [&](auto&& self, int pos, int rem) -> void {
        if (pos == nvars) {
            if (!homogeneous || rem == 0) out.emplace_back(e);
            return;
        }
        for (int k = 0; k <= rem; ++k) {
            e[pos] = k;
            self(self, pos + 1, rem - k);
        }
        e[pos] = 0;
    };
    rec(rec, 0, maxdeg);
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace symred
