// JSON interchange for the CLI: exact scalars as "num/den" strings, complex
// rationals as [re, im] pairs, polynomials as {vars, terms}, matrices as
// row-major nested arrays, signomials as {exponents, coeffs}.
#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "symred/matrix.hpp"
#include "symred/polynomial.hpp"
#include "symred/rational.hpp"
#include "symred/sage.hpp"

namespace symred {

using Json = nlohmann::json;

inline Json to_json(const Rational& q) { return rational_str(q); }

inline Rational rational_from_json(const Json& j) {
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number_integer()) return Rational(j.get<long long>());
    if (j.is_number_float()) return rationalize(j.get<double>());
    throw std::invalid_argument("json_io: expected a rational scalar");
}

inline Json to_json(const GaussianRational& z) {
    return Json::array({rational_str(z.re), rational_str(z.im)});
}

inline GaussianRational gaussian_from_json(const Json& j) {
    if (j.is_array()) {
        if (j.size() != 2) throw std::invalid_argument("json_io: complex scalar needs [re, im]");
        return {rational_from_json(j[0]), rational_from_json(j[1])};
    }
    return GaussianRational(rational_from_json(j));
}

// ---------------------------------------------------------------------------
// Polynomials: {"vars": n, "terms": [{"c": scalar, "e": [exponents]}]}

inline Json to_json(const Polynomial<Rational>& p) {
    Json terms = Json::array();
    for (auto& [m, c] : p.terms()) {
        Json t;
        t["c"] = to_json(c);
        t["e"] = m.e;
        terms.push_back(std::move(t));
    }
    return Json{{"vars", p.vars()}, {"terms", std::move(terms)}};
}

inline Polynomial<Rational> poly_from_json(const Json& j) {
    if (!j.contains("vars") || !j.contains("terms"))
        throw std::invalid_argument("json_io: polynomial needs vars and terms");
    int n = j["vars"].get<int>();
    Polynomial<Rational> p(n);
    for (auto& t : j["terms"]) {
        std::vector<int> e = t["e"].get<std::vector<int>>();
        if ((int)e.size() != n) throw std::invalid_argument("json_io: exponent length mismatch");
        p.add_term(Monomial(e), rational_from_json(t["c"]));
    }
    return p;
}

// ---------------------------------------------------------------------------
// Matrices: row-major nested arrays of the scalar encoding

inline Json to_json(const Matrix<Rational>& M) {
    Json rows = Json::array();
    for (int i = 0; i < M.rows(); ++i) {
        Json row = Json::array();
        for (int j = 0; j < M.cols(); ++j) row.push_back(to_json(M(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline Json to_json(const Matrix<double>& M) {
    Json rows = Json::array();
    for (int i = 0; i < M.rows(); ++i) {
        Json row = Json::array();
        for (int j = 0; j < M.cols(); ++j) row.push_back(M(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline Matrix<Rational> matrix_from_json(const Json& j) {
    if (!j.is_array() || j.empty() || !j[0].is_array())
        throw std::invalid_argument("json_io: matrix needs nested arrays");
    int r = (int)j.size(), c = (int)j[0].size();
    Matrix<Rational> M(r, c);
    for (int i = 0; i < r; ++i) {
        if ((int)j[i].size() != c) throw std::invalid_argument("json_io: ragged matrix rows");
        for (int k = 0; k < c; ++k) M(i, k) = rational_from_json(j[i][k]);
    }
    return M;
}

inline Matrix<double> matrix_double_from_json(const Json& j) {
    Matrix<Rational> M = matrix_from_json(j);
    Matrix<double> out(M.rows(), M.cols());
    for (int i = 0; i < M.rows(); ++i)
        for (int k = 0; k < M.cols(); ++k) out(i, k) = to_double(M(i, k));
    return out;
}

// ---------------------------------------------------------------------------
// Signomials: {"exponents": [[...]], "coeffs": [...]}

inline Json to_json(const Signomial& f) {
    Json exps = Json::array();
    for (auto& a : f.exponents) {
        Json row = Json::array();
        for (auto& q : a) row.push_back(rational_str(q));
        exps.push_back(std::move(row));
    }
    Json coeffs = Json::array();
    for (auto& c : f.coeffs) coeffs.push_back(rational_str(c));
    return Json{{"exponents", std::move(exps)}, {"coeffs", std::move(coeffs)}};
}

inline Signomial signomial_from_json(const Json& j) {
    if (!j.contains("exponents") || !j.contains("coeffs"))
        throw std::invalid_argument("json_io: signomial needs exponents and coeffs");
    std::vector<Exponent> exps;
    for (auto& row : j["exponents"]) {
        Exponent a;
        for (auto& v : row) a.push_back(rational_from_json(v));
        exps.push_back(std::move(a));
    }
    std::vector<Rational> coeffs;
    for (auto& v : j["coeffs"]) coeffs.push_back(rational_from_json(v));
    return make_signomial(std::move(exps), std::move(coeffs));
}

// ---------------------------------------------------------------------------
// Human-readable polynomial rendering (for --format text)

inline std::string poly_str(const Polynomial<Rational>& p, const std::string& var = "x") {
    if (p.is_zero()) return "0";
    std::string out;
    for (auto& [m, c] : p.terms()) {
        Rational a = c;
        if (!out.empty()) {
            out += a < 0 ? " - " : " + ";
            if (a < 0) a = -a;
        } else if (a < 0) {
            out += "-";
            a = -a;
        }
        std::string mono;
        for (int i = 0; i < p.vars(); ++i) {
            if (m.e[i] == 0) continue;
            if (!mono.empty()) mono += "*";
            mono += var + std::to_string(i + 1);
            if (m.e[i] > 1) mono += "^" + std::to_string(m.e[i]);
        }
        if (mono.empty()) out += rational_str(a);
        else if (a == 1) out += mono;
        else out += rational_str(a) + "*" + mono;
    }
    return out;
}

}  // namespace symred
