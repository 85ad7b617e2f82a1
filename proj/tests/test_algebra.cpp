// Core scalar, polynomial and matrix behavior: canonical forms, ring axioms,
// exact PSD checking against the floating eigenvalue routine.
#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "symred/matrix.hpp"
#include "symred/polynomial.hpp"

using namespace symred;

namespace {

Polynomial<Rational> X(int n, int i) { return Polynomial<Rational>::variable(n, i); }

Polynomial<Rational> motzkin() {
    // X1^4 X2^2 + X1^2 X2^4 - 3 X1^2 X2^2 + 1
    auto x1 = X(2, 0), x2 = X(2, 1);
    return x1.pow(4) * x2.pow(2) + x1.pow(2) * x2.pow(4) -
           Rational(3) * (x1.pow(2) * x2.pow(2)) + Polynomial<Rational>::constant(2, 1);
}

Polynomial<Rational> random_poly(std::mt19937& rng, int nvars, int maxdeg, int nterms) {
    std::uniform_int_distribution<int> exp_dist(0, maxdeg);
    std::uniform_int_distribution<int> coeff_dist(-5, 5);
    Polynomial<Rational> p(nvars);
    for (int t = 0; t < nterms; ++t) {
        std::vector<int> e(nvars);
        int budget = maxdeg;
        for (int i = 0; i < nvars; ++i) {
            e[i] = std::min(budget, exp_dist(rng) % (maxdeg + 1));
            budget -= e[i];
        }
        p.add_term(Monomial(e), Rational(coeff_dist(rng)));
    }
    return p;
}

}  // namespace

TEST_CASE("rational parsing and formatting") {
    CHECK(parse_rational("3/6") == Rational(1, 2));
    CHECK(parse_rational("-1.25") == Rational(-5, 4));
    CHECK(rational_str(Rational(-7, 3)) == "-7/3");
    CHECK(rationalize(0.5) == Rational(1, 2));
    CHECK(rationalize(1.0 / 3.0) == Rational(1, 3));
    CHECK(rationalize(-2.75) == Rational(-11, 4));
}

TEST_CASE("polynomial arithmetic canonical forms") {
    auto x1 = X(2, 0), x2 = X(2, 1);
    SECTION("binomial expansion") {
        auto sq = (x1 + x2) * (x1 + x2);
        auto expect = x1.pow(2) + Rational(2) * (x1 * x2) + x2.pow(2);
        CHECK(sq == expect);
    }
    SECTION("additive identity") {
        auto p = x1.pow(3) - Rational(2) * x2;
        CHECK(p + Polynomial<Rational>(2) == p);
    }
    SECTION("difference of squares") {
        CHECK((x1 - x2) * (x1 + x2) == x1.pow(2) - x2.pow(2));
    }
    SECTION("zero coefficients never stored") {
        auto p = x1 - x1;
        CHECK(p.is_zero());
        CHECK(p.terms().empty());
    }
}

TEST_CASE("polynomial evaluation") {
    auto x1 = X(2, 0), x2 = X(2, 1);
    CHECK(motzkin().eval({Rational(1), Rational(1)}) == Rational(0));
    CHECK((x1.pow(2) + x2.pow(2)).eval({Rational(3), Rational(4)}) == Rational(25));
    auto p = x1 * x2 + Polynomial<Rational>::constant(2, Rational(7));
    CHECK(p.eval({Rational(0), Rational(0)}) == Rational(7));
}

TEST_CASE("polynomial ring axioms on random triples") {
    std::mt19937 rng(42);
    for (int trial = 0; trial < 30; ++trial) {
        auto p = random_poly(rng, 3, 3, 4);
        auto q = random_poly(rng, 3, 3, 4);
        auto r = random_poly(rng, 3, 3, 4);
        CHECK((p * q) * r == p * (q * r));
        CHECK(p * (q + r) == p * q + p * r);
        CHECK(p * q == q * p);
        CHECK(p + q == q + p);
    }
}

TEST_CASE("evaluation is a ring homomorphism") {
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> val(-4, 4);
    for (int trial = 0; trial < 25; ++trial) {
        auto p = random_poly(rng, 3, 3, 4);
        auto q = random_poly(rng, 3, 3, 4);
        std::vector<Rational> pt{Rational(val(rng)), Rational(val(rng), 2), Rational(val(rng), 3)};
        CHECK((p * q).eval(pt) == p.eval(pt) * q.eval(pt));
        CHECK((p + q).eval(pt) == p.eval(pt) + q.eval(pt));
    }
}

TEST_CASE("graded lex ordering") {
    Monomial a({2, 0}), b({1, 1}), c({0, 1});
    CHECK(c < b);        // lower degree first
    CHECK(b < a);        // same degree, X1-heavier last
    auto p = X(2, 0).pow(2) + X(2, 0) * X(2, 1) + X(2, 1);
    CHECK(p.lead_monomial() == a);
}

TEST_CASE("compose and derivative") {
    auto x1 = X(2, 0), x2 = X(2, 1);
    auto p = x1.pow(2) + x2;
    auto composed = p.compose({x1 + x2, x1 * x2});
    CHECK(composed == (x1 + x2).pow(2) + x1 * x2);
    CHECK(p.derivative(0) == Rational(2) * x1);
    CHECK(p.derivative(1) == Polynomial<Rational>::constant(2, 1));
}

TEST_CASE("exact PSD check") {
    SECTION("identity is psd") {
        auto check = ldlt_psd_check(Matrix<Rational>::identity(3));
        CHECK(check.psd);
        for (auto& d : check.diag) CHECK(d >= 0);
    }
    SECTION("indefinite 2x2 with witness") {
        Matrix<Rational> m(2, 2);
        m(0, 0) = 1; m(0, 1) = 2; m(1, 0) = 2; m(1, 1) = 1;
        auto check = ldlt_psd_check(m);
        REQUIRE_FALSE(check.psd);
        // w^T m w < 0 exactly.
        Rational q(0);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) q += check.witness[i] * m(i, j) * check.witness[j];
        CHECK(q < 0);
        // The canonical witness (1,-1) also certifies.
        CHECK(m(0, 0) - m(0, 1) - m(1, 0) + m(1, 1) == Rational(-2));
    }
    SECTION("all-ones 3x3 (a=b=1 invariant Gram) is psd") {
        Matrix<Rational> m(3, 3, Rational(1));
        CHECK(ldlt_psd_check(m).psd);
    }
    SECTION("factorization reconstructs the matrix") {
        Matrix<Rational> m(3, 3);
        int vals[3][3] = {{4, 2, 0}, {2, 3, 1}, {0, 1, 5}};
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) m(i, j) = vals[i][j];
        auto check = ldlt_psd_check(m);
        REQUIRE(check.psd);
        int n = 3;
        Matrix<Rational> D(n, n);
        for (int i = 0; i < n; ++i) D(i, i) = check.diag[i];
        Matrix<Rational> rec = check.L * D * check.L.transpose();
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                CHECK(rec(i, j) == m(check.perm[i], check.perm[j]));
    }
}

TEST_CASE("jacobi eigenvalues") {
    SECTION("diagonal") {
        Matrix<double> m(3, 3);
        m(0, 0) = 3; m(1, 1) = 1; m(2, 2) = 2;
        auto vals = sym_eigenvalues(m);
        CHECK(vals[0] == Catch::Approx(1.0));
        CHECK(vals[1] == Catch::Approx(2.0));
        CHECK(vals[2] == Catch::Approx(3.0));
    }
    SECTION("rank one all-ones") {
        Matrix<double> m(3, 3, 1.0);
        auto vals = sym_eigenvalues(m);
        CHECK(vals[0] == Catch::Approx(0.0).margin(1e-10));
        CHECK(vals[1] == Catch::Approx(0.0).margin(1e-10));
        CHECK(vals[2] == Catch::Approx(3.0));
    }
}

TEST_CASE("ldlt and eigenvalues agree on random symmetric matrices") {
    std::mt19937 rng(123);
    std::uniform_int_distribution<int> val(-4, 4);
    int psd_seen = 0, indef_seen = 0;
    for (int trial = 0; trial < 200; ++trial) {
        Matrix<Rational> m(5, 5);
        // Half the trials are Gram matrices (certainly PSD), half arbitrary.
        if (trial % 2 == 0) {
            Matrix<Rational> B(5, 5);
            for (int i = 0; i < 5; ++i)
                for (int j = 0; j < 5; ++j) B(i, j) = Rational(val(rng));
            m = B * B.transpose();
        } else {
            for (int i = 0; i < 5; ++i)
                for (int j = i; j < 5; ++j) m(i, j) = m(j, i) = Rational(val(rng));
        }
        auto check = ldlt_psd_check(m);
        auto vals = sym_eigenvalues(m.map<double>([](const Rational& q) { return to_double(q); }));
        if (check.psd) {
            ++psd_seen;
            CHECK(vals.front() >= -1e-9);
        } else {
            ++indef_seen;
            CHECK(vals.front() < 1e-9);
            Rational q(0);
            for (int i = 0; i < 5; ++i)
                for (int j = 0; j < 5; ++j) q += check.witness[i] * m(i, j) * check.witness[j];
            CHECK(q < 0);
        }
    }
    CHECK(psd_seen > 0);
    CHECK(indef_seen > 0);
}

TEST_CASE("linear solving") {
    Matrix<Rational> A(2, 3);
    A(0, 0) = 1; A(0, 1) = 1; A(0, 2) = 0;
    A(1, 0) = 0; A(1, 1) = 1; A(1, 2) = 1;
    auto sol = affine_solve(A, {Rational(3), Rational(5)});
    REQUIRE(sol.consistent);
    CHECK(sol.nullspace.size() == 1);
    auto check_pt = [&](const std::vector<Rational>& x) {
        CHECK(x[0] + x[1] == Rational(3));
        CHECK(x[1] + x[2] == Rational(5));
    };
    check_pt(sol.particular);
    std::vector<Rational> shifted(3);
    for (int i = 0; i < 3; ++i) shifted[i] = sol.particular[i] + Rational(7) * sol.nullspace[0][i];
    check_pt(shifted);

    auto inv = inverse(Matrix<Rational>::identity(4));
    REQUIRE(inv.has_value());
    CHECK(*inv == Matrix<Rational>::identity(4));
}
