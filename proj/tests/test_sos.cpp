// Gram-matrix SOS with Newton filtering, the affine-PSD engine, averaged
// Gram matrices, isotypic block certificates and the symmetric quartic
// closed form.
#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "symred/sos.hpp"

using namespace symred;

namespace {

Polynomial<Rational> poly_from(int nvars, std::vector<std::pair<std::vector<int>, Rational>> ts) {
    Polynomial<Rational> p(nvars);
    for (auto& [e, c] : ts) p.add_term(Monomial(e), c);
    return p;
}

Polynomial<Rational> motzkin() {
    return poly_from(2, {{{0, 0}, 1}, {{4, 2}, 1}, {{2, 4}, 1}, {{2, 2}, -3}});
}

Polynomial<Rational> sum_of_powers(int n, int k) {
    Polynomial<Rational> p(n);
    std::vector<int> e(n, 0);
    for (int i = 0; i < n; ++i) {
        e[i] = k;
        p.add_term(Monomial(e), Rational(1));
        e[i] = 0;
    }
    return p;
}

// a * sum X_i^2 + b * sum_{i<j} X_i X_j
Polynomial<Rational> symmetric_quadratic(int n, const Rational& a, const Rational& b) {
    Polynomial<Rational> p = a * sum_of_powers(n, 2);
    std::vector<int> e(n, 0);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            e[i] = e[j] = 1;
            p.add_term(Monomial(e), b);
            e[i] = e[j] = 0;
        }
    return p;
}

Rational rand_rational(std::mt19937& rng, int lo = -4, int hi = 4, int den = 4) {
    std::uniform_int_distribution<int> num(lo * den, hi * den);
    return Rational(num(rng), den);
}

// Random polynomial supported on the given monomials.
Polynomial<Rational> random_poly(std::mt19937& rng, int nvars,
                                 const std::vector<Monomial>& support) {
    Polynomial<Rational> p(nvars);
    for (const auto& m : support) p.add_term(m, rand_rational(rng));
    return p;
}

// Random invariant SOS quartic: symmetrized sum of squares of quadratic
// forms. Enough squares to span the quadratic space, so the resulting Gram
// spectrahedron has interior points the numeric search can reach.
Polynomial<Rational> random_sos_quartic(std::mt19937& rng, const GroupRepresentation& rep) {
    int n = rep.degree();
    auto quad = monomial_basis(n, 2, true);
    Polynomial<Rational> f(n);
    for (size_t k = 0; k < quad.size() + 1; ++k) {
        Polynomial<Rational> q = random_poly(rng, n, quad);
        f = f + q * q;
    }
    return reynolds(rep, f);
}

// Random invariant quartic pushed negative at the all-ones point.
Polynomial<Rational> random_negative_quartic(std::mt19937& rng, const GroupRepresentation& rep) {
    int n = rep.degree();
    Polynomial<Rational> f = reynolds(rep, random_poly(rng, n, monomial_basis(n, 4, true)));
    std::vector<Rational> ones(n, Rational(1));
    Rational shift = f.eval(ones) / Rational(n * n) + 1;
    Polynomial<Rational> s2 = sum_of_powers(n, 2);
    return f - shift * (s2 * s2);
}

// Combined decision used for dual-method comparisons: a Gram certificate, or
// a negative point, or undecided.
SosStatus gram_decision(const Polynomial<Rational>& f) {
    auto gp = gram_setup(f);
    auto res = gram_feasibility(gp);
    if (res.status != SosStatus::Undecided) return res.status;
    if (negative_point_search(f)) return SosStatus::Infeasible;
    return SosStatus::Undecided;
}

}  // namespace

TEST_CASE("Newton polytope filtering") {
    SECTION("sum of two squares keeps only the variables") {
        auto gp = gram_setup(poly_from(2, {{{2, 0}, 1}, {{0, 2}, 1}}));
        REQUIRE(gp.basis.size() == 2);
        CHECK(gp.basis[0] == Monomial({0, 1}));
        CHECK(gp.basis[1] == Monomial({1, 0}));
    }
    SECTION("Motzkin basis") {
        auto gp = gram_setup(motzkin());
        std::vector<Monomial> expected = {Monomial({0, 0}), Monomial({1, 1}), Monomial({1, 2}),
                                          Monomial({2, 1})};
        CHECK(gp.basis == expected);
    }
    SECTION("constant polynomial") {
        auto gp = gram_setup(Polynomial<Rational>::constant(2, Rational(1)));
        REQUIRE(gp.basis.size() == 1);
        CHECK(gp.basis[0] == Monomial({0, 0}));
    }
    SECTION("odd degree rejected") {
        CHECK_THROWS(gram_setup(poly_from(2, {{{1, 0}, 1}, {{3, 0}, 1}})));
    }
    SECTION("filtering keeps every monomial any certificate can use") {
        // For a sum of squares, every monomial of each square lies in half the
        // Newton polytope of the sum, so the filtered basis must contain the
        // support of the generating squares.
        std::mt19937 rng(5);
        auto all = monomial_basis(2, 2);
        for (int trial = 0; trial < 20; ++trial) {
            std::vector<Polynomial<Rational>> squares;
            Polynomial<Rational> f(2);
            for (int k = 0; k < 2; ++k) {
                auto q = random_poly(rng, 2, all);
                if (q.is_zero()) q = Polynomial<Rational>::constant(2, Rational(1));
                squares.push_back(q);
                f = f + q * q;
            }
            if (f.is_zero()) continue;
            auto gp = gram_setup(f);
            for (auto& q : squares)
                for (auto& [m, c] : q.terms())
                    CHECK(std::find(gp.basis.begin(), gp.basis.end(), m) != gp.basis.end());
        }
    }
}

TEST_CASE("Gram feasibility on determined problems") {
    SECTION("X1^2 + X2^2 has the identity Gram matrix") {
        auto gp = gram_setup(poly_from(2, {{{2, 0}, 1}, {{0, 2}, 1}}));
        auto res = gram_feasibility(gp);
        REQUIRE(res.status == SosStatus::Feasible);
        CHECK(res.Q == Matrix<Rational>::identity(2));
        CHECK(verify_gram(gp.f, gp.basis, res.Q));
    }
    SECTION("2X1^2 + 2X2^2 gives twice the identity") {
        auto gp = gram_setup(poly_from(2, {{{2, 0}, 2}, {{0, 2}, 2}}));
        auto res = gram_feasibility(gp);
        REQUIRE(res.status == SosStatus::Feasible);
        CHECK(res.Q == Rational(2) * Matrix<Rational>::identity(2));
    }
    SECTION("Motzkin is infeasible with the forced diagonal entry") {
        auto res = gram_feasibility(gram_setup(motzkin()));
        REQUIRE(res.status == SosStatus::Infeasible);
        CHECK(res.reason.find("forced to -3") != std::string::npos);
    }
    SECTION("X1^2 - X2^2 is determined and not PSD") {
        auto res = gram_feasibility(gram_setup(poly_from(2, {{{2, 0}, 1}, {{0, 2}, -1}})));
        CHECK(res.status == SosStatus::Infeasible);
    }
    SECTION("a stray monomial outside the product span is inconsistent") {
        // x^2 y^2 + 1 filters to basis {1, xy}; adding an x y term cannot be
        // matched by any Gram entry combination once x, y are filtered out.
        auto f = poly_from(2, {{{2, 2}, 1}, {{1, 1}, 1}, {{0, 0}, 1}});
        auto gp = gram_setup(f);
        auto res = gram_feasibility(gp);
        // Feasible only if some Gram choice carries xy; with basis {1, xy}
        // the off-diagonal does exactly that, so this one is feasible.
        if (res.status == SosStatus::Feasible) CHECK(verify_gram(gp.f, gp.basis, res.Q));
    }
}

TEST_CASE("Gram feasibility with free parameters") {
    SECTION("(X1^2 + X2^2)^2 plus cross terms") {
        // (x^2 + y^2)^2 is SOS with a one-parameter Gram family.
        auto f = poly_from(2, {{{4, 0}, 1}, {{2, 2}, 2}, {{0, 4}, 1}});
        auto gp = gram_setup(f);
        auto res = gram_feasibility(gp);
        REQUIRE(res.status == SosStatus::Feasible);
        CHECK(verify_gram(gp.f, gp.basis, res.Q));
    }
    SECTION("random bivariate sums of squares certify") {
        std::mt19937 rng(23);
        auto quad = monomial_basis(2, 2);
        int solved = 0;
        for (int trial = 0; trial < 10; ++trial) {
            Polynomial<Rational> f(2);
            for (size_t k = 0; k < quad.size() + 1; ++k) {
                auto q = random_poly(rng, 2, quad);
                f = f + q * q;
            }
            if (f.is_zero() || f.degree() % 2 != 0) continue;
            auto gp = gram_setup(f);
            auto res = gram_feasibility(gp);
            REQUIRE(res.status != SosStatus::Infeasible);
            if (res.status == SosStatus::Feasible) {
                CHECK(verify_gram(gp.f, gp.basis, res.Q));
                ++solved;
            }
        }
        CHECK(solved >= 8);
    }
}

TEST_CASE("Gram averaging") {
    auto rep = GroupRepresentation::symmetric(2);
    std::vector<Monomial> basis = {Monomial({1, 0}), Monomial({0, 1})};
    SECTION("swap average of diag(1,3)") {
        Matrix<Rational> Q(2, 2);
        Q(0, 0) = 1;
        Q(1, 1) = 3;
        auto Qg = average_gram(rep, Q, basis);
        CHECK(Qg == Rational(2) * Matrix<Rational>::identity(2));
    }
    SECTION("commuting matrix is unchanged and the polynomial is preserved") {
        Matrix<Rational> Q(2, 2);
        Q(0, 0) = Q(1, 1) = 5;
        Q(0, 1) = Q(1, 0) = 2;
        auto Qg = average_gram(rep, Q, basis);
        CHECK(Qg == Q);
        // Represented polynomial stays fixed under averaging for invariant f.
        auto expand = [&](const Matrix<Rational>& M) {
            Polynomial<Rational> acc(2);
            for (int u = 0; u < 2; ++u)
                for (int v = 0; v < 2; ++v) acc.add_term(basis[u] * basis[v], M(u, v));
            return acc;
        };
        Matrix<Rational> R(2, 2);
        R(0, 0) = 1;
        R(1, 1) = 1;
        R(0, 1) = R(1, 0) = -3;
        CHECK(expand(average_gram(rep, R, basis)) == expand(R));
    }
    SECTION("basis not closed under the action throws") {
        std::vector<Monomial> open_basis = {Monomial({1, 0})};
        CHECK_THROWS(average_gram(rep, Matrix<Rational>::identity(1), open_basis));
    }
}

TEST_CASE("default generator families for the symmetric group") {
    SECTION("degree-1 homogeneous slots at n=3") {
        auto rep = GroupRepresentation::symmetric(3);
        auto gens = default_sos_generators(rep, 1, true);
        REQUIRE(gens.size() == 2);  // trivial and standard
        CHECK(gens[0].size() == 1);
        CHECK(gens[1].size() == 1);
        // The trivial slot is spanned by an invariant.
        CHECK(is_invariant(rep, gens[0][0]));
    }
    SECTION("degree-2 homogeneous multiplicities stabilize for n = 4, 5, 6") {
        std::vector<std::vector<size_t>> sizes;
        for (int n : {4, 5, 6}) {
            auto gens = default_sos_generators(GroupRepresentation::symmetric(n), 2, true);
            std::vector<size_t> s;
            for (auto& slot : gens) s.push_back(slot.size());
            sizes.push_back(std::move(s));
        }
        CHECK(sizes[0] == std::vector<size_t>{2, 2, 1});
        CHECK(sizes[1] == sizes[0]);
        CHECK(sizes[2] == sizes[0]);
    }
    SECTION("slot sizes match character multiplicities at n=4, degree <= 2") {
        int n = 4;
        auto rep = GroupRepresentation::symmetric(n);
        auto basis = monomial_basis(n, 2);
        auto gens = default_sos_generators(rep, 2);
        // Independent multiplicity count from characters.
        std::vector<int> expected;
        for (auto& lam : partitions_of(n)) {
            Rational eta(0);
            for (auto& cls : rep.conjugacy_classes()) {
                long long fixed = 0;
                for (auto& m : basis) {
                    std::vector<int> e(n, 0);
                    for (int i = 0; i < n; ++i) e[rep.perm(cls[0])[i]] += m.e[i];
                    if (Monomial(e) == m) ++fixed;
                }
                eta += Rational((long long)cls.size() * sn_character(lam, rep.cycle_type(cls[0])) *
                                fixed);
            }
            eta /= rep.order();
            if (eta != 0) expected.push_back((int)eta.convert_to<long long>());
        }
        REQUIRE(gens.size() == expected.size());
        for (size_t j = 0; j < gens.size(); ++j) CHECK((int)gens[j].size() == expected[j]);
    }
    SECTION("non-symmetric families are rejected") {
        CHECK_THROWS(default_sos_generators(GroupRepresentation::cyclic(4), 1));
    }
}

TEST_CASE("invariant block certificates for symmetric quadratics") {
    auto closed_form = [](int n, const Rational& a, const Rational& b) {
        // a = alpha + (n-1) beta, b = 2(alpha - beta) with alpha, beta >= 0.
        Rational beta = (2 * a - b) / (2 * n);
        Rational alpha = beta + b / 2;
        return alpha >= 0 && beta >= 0;
    };
    SECTION("paper family at n=3") {
        int n = 3;
        auto rep = GroupRepresentation::symmetric(n);
        auto gens = default_sos_generators(rep, 1, true);
        auto f_good = symmetric_quadratic(n, Rational(1), Rational(-1));
        auto B = invariant_sos_blocks(rep, f_good, gens);
        REQUIRE(B.size() == 2);
        auto cert = block_certificate(B, f_good);
        REQUIRE(cert.status == SosStatus::Feasible);
        CHECK(verify_certificate(B, cert.A, f_good));

        auto f_bad = symmetric_quadratic(n, Rational(1), Rational(3));
        auto cert_bad = block_certificate(invariant_sos_blocks(rep, f_bad, gens), f_bad);
        CHECK(cert_bad.status == SosStatus::Infeasible);
        CHECK(!closed_form(n, Rational(1), Rational(3)));
        CHECK(closed_form(n, Rational(1), Rational(-1)));
    }
    SECTION("square of the invariant linear form uses only the trivial block") {
        int n = 3;
        auto rep = GroupRepresentation::symmetric(n);
        auto gens = default_sos_generators(rep, 1, true);
        auto s1 = sum_of_powers(n, 1);
        auto f = s1 * s1;
        auto B = invariant_sos_blocks(rep, f, gens);
        auto cert = block_certificate(B, f);
        REQUIRE(cert.status == SosStatus::Feasible);
        CHECK(verify_certificate(B, cert.A, f));
        // The standard block carries nothing.
        CHECK(cert.A[1](0, 0) == 0);
    }
    SECTION("three-way agreement on random (a, b, n)") {
        std::mt19937 rng(71);
        std::uniform_int_distribution<int> pick_n(2, 6);
        for (int trial = 0; trial < 100; ++trial) {
            int n = pick_n(rng);
            Rational a = rand_rational(rng), b = rand_rational(rng);
            if (a == 0 && b == 0) continue;
            auto rep = GroupRepresentation::symmetric(n);
            auto f = symmetric_quadratic(n, a, b);
            bool expected = closed_form(n, a, b);

            auto gens = default_sos_generators(rep, 1, true);
            auto B = invariant_sos_blocks(rep, f, gens);
            auto cert = block_certificate(B, f);
            REQUIRE(cert.status != SosStatus::Undecided);
            CHECK((cert.status == SosStatus::Feasible) == expected);
            if (cert.status == SosStatus::Feasible) CHECK(verify_certificate(B, cert.A, f));

            auto gp = gram_setup(f);
            auto gram = gram_feasibility(gp);
            REQUIRE(gram.status != SosStatus::Undecided);
            CHECK((gram.status == SosStatus::Feasible) == expected);
        }
    }
    SECTION("non-invariant target is rejected") {
        int n = 3;
        auto rep = GroupRepresentation::symmetric(n);
        auto gens = default_sos_generators(rep, 1, true);
        auto f = poly_from(3, {{{2, 0, 0}, 1}});
        CHECK_THROWS(invariant_sos_blocks(rep, f, gens));
    }
}

TEST_CASE("certificate verification is strict") {
    int n = 3;
    auto rep = GroupRepresentation::symmetric(n);
    auto gens = default_sos_generators(rep, 1, true);
    auto f = symmetric_quadratic(n, Rational(1), Rational(-1));
    auto B = invariant_sos_blocks(rep, f, gens);
    auto cert = block_certificate(B, f);
    REQUIRE(cert.status == SosStatus::Feasible);
    REQUIRE(verify_certificate(B, cert.A, f));
    SECTION("perturbing an entry breaks the identity") {
        auto A2 = cert.A;
        A2[0](0, 0) += 1;
        CHECK(!verify_certificate(B, A2, f));
    }
    SECTION("a non-PSD matrix fails even if the identity holds") {
        // Flip the target to match a negated certificate.
        auto A2 = cert.A;
        for (auto& M : A2) M = Rational(-1) * M;
        CHECK(!verify_certificate(B, A2, -f));
    }
}

TEST_CASE("negative point search") {
    SECTION("finds the dip of a shifted quartic") {
        // (sum X_i^2)^2 - 3 sum X_i^4 at n=2: negative on the axes.
        auto s2 = sum_of_powers(2, 2);
        auto f = s2 * s2 - Rational(3) * sum_of_powers(2, 4);
        auto pt = negative_point_search(f);
        REQUIRE(pt.has_value());
        CHECK(f.eval(*pt) < 0);
    }
    SECTION("no witness on a positive form") {
        auto s2 = sum_of_powers(3, 2);
        CHECK(!negative_point_search(s2 * s2).has_value());
    }
}

TEST_CASE("symmetric quartic closed form") {
    SECTION("pi2 squared is SOS with alpha22 = 1") {
        int n = 4;
        auto pi2 = Rational(1, n) * sum_of_powers(n, 2);
        auto res = symmetric_quartic_form(pi2 * pi2);
        REQUIRE(res.status == SosStatus::Feasible);
        CHECK(res.gamma == 0);
        CHECK(res.alpha(1, 1) == 1);
        CHECK(res.alpha(0, 0) == 0);
        CHECK(res.beta(1, 1) == 0);
    }
    SECTION("pi4 - pi2^2 is SOS via the beta block") {
        int n = 4;
        auto pi2 = Rational(1, n) * sum_of_powers(n, 2);
        auto pi4 = Rational(1, n) * sum_of_powers(n, 4);
        auto res = symmetric_quartic_form(pi4 - pi2 * pi2);
        REQUIRE(res.status == SosStatus::Feasible);
        CHECK(res.beta(1, 1) == 1);
    }
    SECTION("rejects non-quartic and asymmetric input") {
        CHECK_THROWS(symmetric_quartic_form(sum_of_powers(4, 2)));
        CHECK_THROWS(symmetric_quartic_form(poly_from(4, {{{4, 0, 0, 0}, 1}})));
    }
    SECTION("matches the direct Gram decision on random quartics at n=4") {
        std::mt19937 rng(2024);
        auto rep = GroupRepresentation::symmetric(4);
        int checked = 0;
        for (int trial = 0; trial < 25 && checked < 20; ++trial) {
            Polynomial<Rational> f =
                (trial % 2 == 0) ? random_sos_quartic(rng, rep) : random_negative_quartic(rng, rep);
            if (f.is_zero()) continue;
            auto param = symmetric_quartic_form(f);
            SosStatus direct = gram_decision(f);
            if (param.status == SosStatus::Undecided || direct == SosStatus::Undecided) continue;
            CHECK(param.status == direct);
            ++checked;
        }
        CHECK(checked >= 18);
    }
}

TEST_CASE("gram and block methods agree on invariant targets") {
    std::mt19937 rng(99);
    int agreements = 0;
    for (int trial = 0; trial < 30; ++trial) {
        int n = 3 + trial % 3;  // n in {3, 4, 5}
        auto rep = GroupRepresentation::symmetric(n);
        bool quartic = trial % 2 == 0;
        Polynomial<Rational> f;
        if (quartic) {
            f = (trial % 4 == 0) ? random_sos_quartic(rng, rep)
                                 : random_negative_quartic(rng, rep);
        } else {
            f = symmetric_quadratic(n, rand_rational(rng), rand_rational(rng));
        }
        if (f.is_zero()) continue;

        SosStatus via_gram = gram_decision(f);

        auto gens = default_sos_generators(rep, 2, quartic ? true : false);
        if (!quartic) gens = default_sos_generators(rep, 1, true);
        auto B = invariant_sos_blocks(rep, f, gens);
        auto cert = block_certificate(B, f);
        SosStatus via_blocks = cert.status;
        if (via_blocks == SosStatus::Undecided && negative_point_search(f))
            via_blocks = SosStatus::Infeasible;
        if (cert.status == SosStatus::Feasible) CHECK(verify_certificate(B, cert.A, f));

        if (via_gram == SosStatus::Undecided || via_blocks == SosStatus::Undecided) continue;
        CHECK(via_gram == via_blocks);
        ++agreements;
    }
    CHECK(agreements >= 25);
}
