// End-to-end acceptance run: one line per criterion, PASS or FAIL, covering
// the full toolchain from theta numbers through SAGE certificates. Exits
// nonzero on any unexpected failure. One sub-check (the literal printed form
// of the C4 real pair block) is provably inconsistent with the complex
// diagonal it accompanies; it is reported as a FAIL with the analysis inline
// and does not count as unexpected.
#include <cmath>
#include <iostream>
#include <random>
#include <sstream>

#include "symred/degree_principle.hpp"
#include "symred/orbit_space.hpp"
#include "symred/sage.hpp"
#include "symred/sdp.hpp"
#include "symred/sos.hpp"

using namespace symred;

namespace {

using P = Polynomial<Rational>;

P poly_from(int nvars, std::vector<std::pair<std::vector<int>, Rational>> ts) {
    P p(nvars);
    for (auto& [e, c] : ts) p.add_term(Monomial(e), c);
    return p;
}

P motzkin() {
    return poly_from(2, {{{0, 0}, 1}, {{4, 2}, 1}, {{2, 4}, 1}, {{2, 2}, -3}});
}

P sum_of_powers(int n, int k) {
    P p(n);
    std::vector<int> e(n, 0);
    for (int i = 0; i < n; ++i) {
        e[i] = k;
        p.add_term(Monomial(e), Rational(1));
        e[i] = 0;
    }
    return p;
}

P symmetric_quadratic(int n, const Rational& a, const Rational& b) {
    P p = a * sum_of_powers(n, 2);
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

P random_poly(std::mt19937& rng, int nvars, const std::vector<Monomial>& support) {
    P p(nvars);
    for (const auto& m : support) p.add_term(m, rand_rational(rng));
    return p;
}

P random_sos_quartic(std::mt19937& rng, const GroupRepresentation& rep) {
    int n = rep.degree();
    auto quad = monomial_basis(n, 2, true);
    P f(n);
    for (size_t k = 0; k < quad.size() + 1; ++k) {
        P q = random_poly(rng, n, quad);
        f = f + q * q;
    }
    return reynolds(rep, f);
}

P random_negative_quartic(std::mt19937& rng, const GroupRepresentation& rep) {
    int n = rep.degree();
    P f = reynolds(rep, random_poly(rng, n, monomial_basis(n, 4, true)));
    std::vector<Rational> ones(n, Rational(1));
    Rational shift = f.eval(ones) / Rational(n * n) + 1;
    P s2 = sum_of_powers(n, 2);
    return f - shift * (s2 * s2);
}

SosStatus gram_decision(const P& f) {
    auto res = gram_feasibility(gram_setup(f));
    if (res.status != SosStatus::Undecided) return res.status;
    if (negative_point_search(f)) return SosStatus::Infeasible;
    return SosStatus::Undecided;
}

Matrix<Complex> to_complex(const Matrix<double>& m) {
    return m.map<Complex>([](double v) { return Complex(v, 0.0); });
}

double eval_double(const P& p, const std::vector<double>& x) {
    double s = 0;
    for (auto& [m, c] : p.terms()) {
        double v = to_double(c);
        for (int i = 0; i < p.vars(); ++i)
            for (int r = 0; r < m.e[i]; ++r) v *= x[i];
        s += v;
    }
    return s;
}

bool multiset_close(std::vector<double> a, std::vector<double> b, double tol) {
    if (a.size() != b.size()) return false;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    for (size_t i = 0; i < a.size(); ++i)
        if (std::abs(a[i] - b[i]) > tol) return false;
    return true;
}

// ---------------------------------------------------------------------------
// Criterion 1: cycle theta numbers against the closed form

bool criterion_theta(std::string& note) {
    double worst = 0.0;
    for (int k = 3; k <= 16; ++k) {
        auto res = simplex_solve(theta_cyclic_lp(k));
        if (res.status != LPStatus::Optimal) {
            note = "LP not optimal at k=" + std::to_string(k);
            return false;
        }
        worst = std::max(worst, std::abs(res.value - theta_cycle_closed_form(k)));
    }
    double c10 = simplex_solve(theta_cyclic_lp(10)).value;
    std::ostringstream os;
    os << "k=3..16 within " << worst << " of the closed form, theta(C10) = " << c10;
    note = os.str();
    return worst <= 1e-6 && std::abs(c10 - 5.0) <= 1e-6;
}

// ---------------------------------------------------------------------------
// Criterion 2: C4 circulant block diagonalization (complex and real flavors)

bool criterion_c4(std::string& note, bool& documented_fail) {
    auto rep = GroupRepresentation::cyclic(4);
    auto sab_c = symmetry_adapted_basis(rep, SabFlavor::Complex);
    auto sab_r = symmetry_adapted_basis(rep, SabFlavor::Real);
    std::mt19937 rng(404);
    bool complex_ok = true, consistent_ok = true, literal_ok = true;
    std::string literal_diag;
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<Rational> co;  // alpha, beta, gamma, delta
        for (int i = 0; i < 4; ++i) co.push_back(rand_rational(rng, -6, 6, 5));
        Matrix<Complex> X(4, 4);
        for (int g = 0; g < 4; ++g) {
            auto M = rep.matrix(g);
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 4; ++j)
                    X(i, j) += Complex(to_double(co[g]) * M(i, j), 0.0);
        }
        double a = to_double(co[0]), b = to_double(co[1]), c = to_double(co[2]),
               d = to_double(co[3]);
        // Expected complex diagonal: a+b+c+d, a+ib-c-id, a-b+c-d, a-ib-c+id.
        std::vector<Complex> expect = {Complex(a + b + c + d, 0), Complex(a - c, b - d),
                                       Complex(a - b + c - d, 0), Complex(a - c, d - b)};
        auto res = block_diagonalize(rep, sab_c, X);
        if (res.off_block_mass >= 1e-10 || res.blocks.size() != 4) complex_ok = false;
        for (auto& e : expect) {
            bool found = false;
            for (auto& blk : res.blocks)
                if (std::abs(blk(0, 0) - e) < 1e-8) found = true;
            if (!found) complex_ok = false;
        }
        // Real flavor: the merged conjugate pair appears as one 2x2 block.
        auto res_r = block_diagonalize(rep, sab_r, X);
        if (res_r.off_block_mass >= 1e-10) consistent_ok = false;
        const Matrix<Complex>* pair = nullptr;
        for (size_t k = 0; k < res_r.blocks.size(); ++k)
            if (sab_r.components[k].mult == 2) pair = &res_r.blocks[k];
        if (!pair) {
            consistent_ok = false;
            continue;
        }
        // The pair block must carry the complex pair eigenvalues (a-c) +- i(b-d).
        auto eigs = herm_eigenvalues((*pair) * pair->conj_transpose());
        double want = (a - c) * (a - c) + (b - d) * (b - d);
        for (double ev : eigs)
            if (std::abs(ev - want) > 1e-7) consistent_ok = false;
        double tr = ((*pair)(0, 0) + (*pair)(1, 1)).real();
        if (std::abs(tr - 2 * (a - c)) > 1e-8) consistent_ok = false;
        // Literal comparison with the expected printed block
        // [[d-b, -a+c], [a-c, d-b]].
        double lit[2][2] = {{d - b, -a + c}, {a - c, d - b}};
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                if (std::abs((*pair)(i, j) - Complex(lit[i][j], 0)) > 1e-8) literal_ok = false;
        if (trial == 0 && !literal_ok) {
            std::ostringstream os;
            os << "literal block has trace " << 2 * (d - b) << " but the complex pair "
               << "eigenvalue (a-c)+i(b-d) forces trace " << 2 * (a - c);
            literal_diag = os.str();
        }
    }
    std::ostringstream os;
    os << "complex diagonal " << (complex_ok ? "matches" : "MISMATCH")
       << " on 20 rational tuples; consistent real pair block "
       << (consistent_ok ? "verified" : "MISMATCH")
       << "; literal expected pair block [[d-b,-a+c],[a-c,d-b]] "
       << (literal_ok ? "matches" : "is unattainable: " + literal_diag)
       << " (it contradicts the complex diagonal and criterion 4 on the same data)";
    note = os.str();
    documented_fail = complex_ok && consistent_ok && !literal_ok;
    return complex_ok && consistent_ok && literal_ok;
}

// ---------------------------------------------------------------------------
// Criterion 3: projector algebra on natural and degree-<=3 polynomial spaces

// Fast projector algebra for permutation actions: every representation matrix
// is a column permutation sigma, so building projectors and multiplying by
// M(g) are both linear sweeps.
bool perm_projector_algebra(const GroupRepresentation& rep,
                            const std::vector<std::vector<int>>& sigma, double tol) {
    auto tab = character_table(rep);
    int order = rep.order();
    int dim = (int)sigma[0].size();
    int r = tab.num_irreps();
    std::vector<Matrix<Complex>> projs;
    for (int l = 0; l < r; ++l) {
        Matrix<Complex> Pm(dim, dim);
        for (int g = 0; g < order; ++g) {
            Complex w = std::conj(tab.rows[l][rep.class_of(g)]);
            for (int j = 0; j < dim; ++j) Pm(sigma[g][j], j) += w;
        }
        Pm = Complex((double)tab.dims[l] / order, 0) * Pm;
        projs.push_back(std::move(Pm));
    }
    // product(A, l) = A * pi_l via column gathering.
    auto product = [&](const Matrix<Complex>& A, int l) {
        Matrix<Complex> out(dim, dim);
        for (int g = 0; g < order; ++g) {
            Complex w = Complex((double)tab.dims[l] / order, 0) *
                        std::conj(tab.rows[l][rep.class_of(g)]);
            for (int j = 0; j < dim; ++j) {
                int src = sigma[g][j];
                for (int i = 0; i < dim; ++i) out(i, j) += w * A(i, src);
            }
        }
        return out;
    };
    auto near = [&](const Matrix<Complex>& A, const Matrix<Complex>& B) {
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j)
                if (std::abs(A(i, j) - B(i, j)) > tol) return false;
        return true;
    };
    Matrix<Complex> sum(dim, dim), id(dim, dim);
    for (int i = 0; i < dim; ++i) id(i, i) = Complex(1, 0);
    for (auto& p : projs) sum = sum + p;
    if (!near(sum, id)) return false;
    for (int a = 0; a < r; ++a) {
        if (!near(product(projs[a], a), projs[a])) return false;
        for (int b = a + 1; b < r; ++b)
            if (!near(product(projs[a], b), Matrix<Complex>(dim, dim))) return false;
    }
    return true;
}

bool dense_projector_algebra(const GroupRepresentation& rep,
                             const std::function<Matrix<Complex>(int)>& mats, double tol) {
    auto tab = character_table(rep);
    int dim = mats(0).rows();
    std::vector<Matrix<Complex>> projs;
    for (int l = 0; l < tab.num_irreps(); ++l)
        projs.push_back(isotypic_projector<Complex>(rep, tab, l, mats));
    auto near = [&](const Matrix<Complex>& A, const Matrix<Complex>& B) {
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j)
                if (std::abs(A(i, j) - B(i, j)) > tol) return false;
        return true;
    };
    Matrix<Complex> sum(dim, dim), id(dim, dim);
    for (int i = 0; i < dim; ++i) id(i, i) = Complex(1, 0);
    for (auto& p : projs) sum = sum + p;
    if (!near(sum, id)) return false;
    for (size_t a = 0; a < projs.size(); ++a) {
        if (!near(projs[a] * projs[a], projs[a])) return false;
        for (size_t b = a + 1; b < projs.size(); ++b)
            if (!near(projs[a] * projs[b], Matrix<Complex>(dim, dim))) return false;
    }
    return true;
}

std::vector<std::vector<int>> perm_sigma(const GroupRepresentation& rep,
                                         const std::vector<Monomial>& basis) {
    std::map<Monomial, int> index;
    for (size_t i = 0; i < basis.size(); ++i) index[basis[i]] = (int)i;
    std::vector<std::vector<int>> sigma(rep.order(), std::vector<int>(basis.size()));
    for (int g = 0; g < rep.order(); ++g) {
        const auto& p = rep.perm(g);
        for (size_t j = 0; j < basis.size(); ++j) {
            std::vector<int> e(basis[j].e.size(), 0);
            for (size_t i = 0; i < e.size(); ++i) e[p[i]] += basis[j].e[i];
            sigma[g][j] = index.at(Monomial(std::move(e)));
        }
    }
    return sigma;
}

bool criterion_projectors(std::string& note) {
    std::vector<GroupRepresentation> groups;
    for (int n = 2; n <= 5; ++n) groups.push_back(GroupRepresentation::symmetric(n));
    for (int n = 3; n <= 12; ++n) groups.push_back(GroupRepresentation::cyclic(n));
    for (int n = 3; n <= 8; ++n) groups.push_back(GroupRepresentation::dihedral(n));
    int count = 0;
    for (auto& rep : groups) {
        auto tab = character_table(rep);
        long long dimsq = 0;
        for (int d : tab.dims) dimsq += (long long)d * d;
        if (dimsq != rep.order()) {
            note = "sum of squared dimensions misses the group order";
            return false;
        }
        bool ok;
        if (rep.is_permutation_family()) {
            // Natural action: sigma on the coordinate monomials of degree 1.
            std::vector<Monomial> coords;
            for (int i = 0; i < rep.degree(); ++i) {
                std::vector<int> e(rep.degree(), 0);
                e[i] = 1;
                coords.push_back(Monomial(e));
            }
            ok = perm_projector_algebra(rep, perm_sigma(rep, coords), 1e-9) &&
                 perm_projector_algebra(
                     rep, perm_sigma(rep, monomial_basis(rep.degree(), 3)), 1e-9);
        } else {
            std::function<Matrix<Complex>(int)> nat = [&](int g) {
                return to_complex(rep.matrix(g));
            };
            auto basis = monomial_basis(rep.degree(), 3);
            std::function<Matrix<Complex>(int)> poly = [&](int g) {
                return monomial_action_matrix<Complex>(rep, g, basis);
            };
            ok = dense_projector_algebra(rep, nat, 1e-9) &&
                 dense_projector_algebra(rep, poly, 1e-9);
        }
        if (!ok) {
            note = "projector identities fail for a group of order " +
                   std::to_string(rep.order());
            return false;
        }
        ++count;
    }
    note = "identities hold on natural and degree-<=3 spaces for " + std::to_string(count) +
           " groups; squared dimensions sum to |G| exactly";
    return true;
}

// ---------------------------------------------------------------------------
// Criterion 4: eigenvalue multisets survive block diagonalization

bool criterion_spectra(std::string& note) {
    std::mt19937 rng(808);
    std::uniform_real_distribution<double> val(-2.0, 2.0);
    double worst = 0.0;
    for (auto rep : {GroupRepresentation::symmetric(3), GroupRepresentation::symmetric(4),
                     GroupRepresentation::cyclic(5), GroupRepresentation::cyclic(8),
                     GroupRepresentation::dihedral(3), GroupRepresentation::dihedral(6)}) {
        auto sab = symmetry_adapted_basis(rep, SabFlavor::Complex);
        int n = rep.degree();
        for (int t = 0; t < 50; ++t) {
            Matrix<Complex> X(n, n);
            for (int i = 0; i < n; ++i)
                for (int j = i; j < n; ++j) X(i, j) = X(j, i) = Complex(val(rng), 0.0);
            Matrix<Complex> avg(n, n);
            for (int g = 0; g < rep.order(); ++g) {
                auto M = to_complex(rep.matrix(g));
                avg = avg + M * X * M.conj_transpose();
            }
            avg = Complex(1.0 / rep.order(), 0) * avg;
            auto res = block_diagonalize(rep, sab, avg);
            std::vector<double> block_eigs;
            for (size_t c = 0; c < res.blocks.size(); ++c) {
                auto vals = herm_eigenvalues(res.blocks[c]);
                for (double v : vals)
                    for (int r = 0; r < sab.components[c].dim; ++r) block_eigs.push_back(v);
            }
            auto direct = herm_eigenvalues(avg);
            if (block_eigs.size() != direct.size()) {
                note = "eigenvalue count mismatch";
                return false;
            }
            std::sort(block_eigs.begin(), block_eigs.end());
            for (size_t i = 0; i < direct.size(); ++i)
                worst = std::max(worst, std::abs(block_eigs[i] - direct[i]));
        }
    }
    std::ostringstream os;
    os << "300 averaged matrices over six groups, max spectral deviation " << worst;
    note = os.str();
    return worst <= 1e-8;
}

// ---------------------------------------------------------------------------
// Criterion 5: Motzkin is not SOS; its invariant rewrites are exact

bool criterion_motzkin(std::string& note) {
    auto res = gram_feasibility(gram_setup(motzkin()));
    bool nonsos = res.status == SosStatus::Infeasible &&
                  res.reason.find("forced to -3") != std::string::npos;
    P e_expect = poly_from(2, {{{2, 2}, 1}, {{0, 3}, -2}, {{0, 2}, -3}, {{0, 0}, 1}});
    P p_expect = poly_from(2, {{{4, 1}, Rational(1, 4)},
                               {{4, 0}, Rational(-3, 4)},
                               {{2, 2}, Rational(-1, 2)},
                               {{2, 1}, Rational(3, 2)},
                               {{0, 3}, Rational(1, 4)},
                               {{0, 2}, Rational(-3, 4)},
                               {{0, 0}, 1}});
    bool e_ok = rewrite_in_invariants(motzkin(), InvariantBasis::elementary(2)) == e_expect;
    bool p_ok = rewrite_in_invariants(motzkin(), InvariantBasis::powersum(2)) == p_expect;
    note = std::string("Gram infeasible with the forced -3 diagonal: ") +
           (nonsos ? "yes" : "NO") + "; e-basis rewrite " + (e_ok ? "exact" : "WRONG") +
           ", p-basis rewrite " + (p_ok ? "exact" : "WRONG");
    return nonsos && e_ok && p_ok;
}

// ---------------------------------------------------------------------------
// Criterion 6: symmetric quadratic family, three-way agreement

bool criterion_quadratics(std::string& note) {
    auto closed_form = [](int n, const Rational& a, const Rational& b) {
        Rational beta = (2 * a - b) / (2 * n);
        Rational alpha = beta + b / 2;
        return alpha >= 0 && beta >= 0;
    };
    std::mt19937 rng(71);
    std::uniform_int_distribution<int> pick_n(2, 6);
    int checked = 0;
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
        auto gram = gram_feasibility(gram_setup(f));
        if (cert.status == SosStatus::Undecided || gram.status == SosStatus::Undecided) {
            note = "undecided instance at trial " + std::to_string(trial);
            return false;
        }
        bool agree = ((cert.status == SosStatus::Feasible) == expected) &&
                     ((gram.status == SosStatus::Feasible) == expected);
        if (cert.status == SosStatus::Feasible && !verify_certificate(B, cert.A, f))
            agree = false;
        if (!agree) {
            note = "disagreement at trial " + std::to_string(trial);
            return false;
        }
        ++checked;
    }
    note = std::to_string(checked) +
           " random (a, b, n): block method, exact Gram and the closed form agree";
    return checked >= 95;
}

// ---------------------------------------------------------------------------
// Criterion 7: H matrices for S3 and the dihedral group of order six

bool criterion_hmatrices(std::string& note) {
    auto s3 = GroupRepresentation::symmetric(3);
    auto p = InvariantBasis::powersum(3);
    P x1 = P::variable(3, 0), x2 = P::variable(3, 1), x3 = P::variable(3, 2);
    auto H21 = h_matrix(s3, {x2 - x1, x3 * (x2 - x1)}, p);
    bool ok21 =
        H21.in_z(0, 0) == poly_from(3, {{{0, 1, 0}, 1}, {{2, 0, 0}, Rational(-1, 3)}}) &&
        H21.in_z(0, 1) == poly_from(3, {{{3, 0, 0}, Rational(-1, 3)},
                                        {{1, 1, 0}, Rational(4, 3)},
                                        {{0, 0, 1}, -1}}) &&
        H21.in_z(1, 1) == poly_from(3, {{{4, 0, 0}, Rational(-1, 6)},
                                        {{2, 1, 0}, Rational(2, 3)},
                                        {{1, 0, 1}, Rational(-2, 3)},
                                        {{0, 2, 0}, Rational(1, 6)}});
    P vdm = (x1 - x2) * (x1 - x3) * (x2 - x3);
    auto H111 = h_matrix(s3, {vdm}, p);
    bool ok111 = H111.in_z(0, 0) == poly_from(3, {{{6, 0, 0}, Rational(-1, 6)},
                                                  {{4, 1, 0}, Rational(3, 2)},
                                                  {{3, 0, 1}, Rational(-4, 3)},
                                                  {{2, 2, 0}, Rational(-7, 2)},
                                                  {{1, 1, 1}, 6},
                                                  {{0, 3, 0}, Rational(1, 2)},
                                                  {{0, 0, 2}, -3}});
    // Dihedral group of order six in two variables.
    auto d3 = GroupRepresentation::dihedral(3);
    P pi1 = poly_from(2, {{{2, 0}, 1}, {{0, 2}, 1}});
    P pi2 = poly_from(2, {{{0, 3}, 1}, {{2, 1}, -3}});
    auto basis = InvariantBasis::custom({pi1, pi2});
    P y1 = P::variable(2, 0), y2 = P::variable(2, 1);
    auto Hd = h_matrix(d3, {y1, y1 * y2}, basis);
    bool okd = Hd.in_z(0, 0) == poly_from(2, {{{1, 0}, Rational(1, 2)}}) &&
               Hd.in_z(0, 1) == poly_from(2, {{{0, 1}, Rational(-1, 4)}}) &&
               Hd.in_x(0, 1) == reynolds(d3, y1 * y1 * y2);
    // The off-diagonal is degree one in the second generator; a quadratic
    // -z2^2/2 is dimensionally impossible there (degree 6 vs 4 in X).
    bool quadratic_ruled_out =
        Hd.in_z(0, 1) != poly_from(2, {{{0, 2}, Rational(-1, 2)}});
    note = std::string("H_(2,1) ") + (ok21 ? "exact" : "WRONG") + ", H_(1,1,1) " +
           (ok111 ? "exact" : "WRONG") + "; dihedral (1,1) entry = z1/2 and off-diagonal " +
           (okd ? "matches the Reynolds oracle (-z2/4)" : "WRONG") +
           (quadratic_ruled_out ? "; the often-quoted -z2^2/2 is a degree mismatch" : "");
    return ok21 && ok111 && okd && quadratic_ruled_out;
}

// ---------------------------------------------------------------------------
// Criterion 8: higher Specht worked example and the harmonic pairing

bool criterion_higher_specht(std::string& note) {
    Tableau T{{{1, 2, 4}, {3, 5}}};
    Tableau V{{{1, 3, 5}, {2, 4}}};
    auto hs = higher_specht(T, V);
    bool worked = hs.word == std::vector<int>{3, 1, 5, 2, 4} &&
                  hs.index == std::vector<int>{1, 0, 2, 0, 1} &&
                  hs.monomial == Monomial({0, 1, 0, 2, 1}) && hs.charge == 4;
    std::vector<P> six;
    for (auto& shape : partitions_of(3))
        for (auto& A : standard_tableaux(shape))
            for (auto& B : standard_tableaux(shape)) six.push_back(higher_specht(A, B).poly);
    bool rank_ok = six.size() == 6;
    if (rank_ok) {
        Matrix<Rational> G(6, 6);
        for (int i = 0; i < 6; ++i)
            for (int j = 0; j < 6; ++j) G(i, j) = harmonic_pairing(six[i], six[j]);
        rank_ok = rank(G) == 6;
    }
    note = std::string("word 31524, index 10201, monomial X2 X4^2 X5, charge 4: ") +
           (worked ? "exact" : "WRONG") + "; pairing Gram of the six S3 polynomials has rank " +
           (rank_ok ? "6" : "!= 6");
    return worked && rank_ok;
}

// ---------------------------------------------------------------------------
// Criterion 9: Newton identities

bool criterion_newton(std::string& note) {
    P e2 = P::variable(2, 1);
    bool identity = newton_convert(e2, SymBasis::Elementary) ==
                    poly_from(2, {{{2, 0}, Rational(1, 2)}, {{0, 1}, Rational(-1, 2)}});
    bool round = true, semantic = true;
    std::mt19937 rng(5);
    std::uniform_int_distribution<int> deg(0, 2), coeff(-9, 9);
    for (int n = 1; n <= 6 && round; ++n) {
        InvariantBasis e = InvariantBasis::elementary(n), p = InvariantBasis::powersum(n);
        for (int k = 1; k <= n; ++k) {
            P zk = P::variable(n, k - 1);
            semantic = semantic &&
                       substitute_invariants(newton_convert(zk, SymBasis::Elementary), p) ==
                           e.gens[k - 1] &&
                       substitute_invariants(newton_convert(zk, SymBasis::PowerSum), e) ==
                           p.gens[k - 1];
        }
        for (int t = 0; t < 5; ++t) {
            P f(n);
            for (int k = 0; k < 6; ++k) {
                std::vector<int> ex(n, 0);
                for (int i = 0; i < n; ++i) ex[i] = deg(rng);
                f.add_term(Monomial(ex), Rational(coeff(rng)));
            }
            round = round &&
                    newton_convert(newton_convert(f, SymBasis::Elementary),
                                   SymBasis::PowerSum) == f &&
                    newton_convert(newton_convert(f, SymBasis::PowerSum),
                                   SymBasis::Elementary) == f;
        }
    }
    note = std::string("e2 = (p1^2 - p2)/2: ") + (identity ? "exact" : "WRONG") +
           "; conversions semantically correct and round-trip exactly for n, k <= 6: " +
           (round && semantic ? "yes" : "NO");
    return identity && round && semantic;
}

// ---------------------------------------------------------------------------
// Criterion 10: J matrices

GroupRepresentation signed_swap_group() {
    Matrix<double> g(3, 3);
    g(0, 1) = g(1, 0) = 1.0;
    g(2, 2) = -1.0;
    return GroupRepresentation::explicit_group({g});
}

bool criterion_jmatrix(std::string& note) {
    auto map = hilbert_map(GroupRepresentation::symmetric(2),
                           InvariantBasis::elementary(2).gens);
    auto J = j_matrix(map);
    bool fixture = J(0, 0) == P::constant(2, Rational(2)) && J(0, 1) == P::variable(2, 0) &&
                   J(1, 1) == poly_from(2, {{{2, 0}, 1}, {{0, 1}, -2}});
    std::mt19937 rng(31);
    std::uniform_int_distribution<int> num(-8, 8), den(1, 5);
    bool psd = true;
    for (int t = 0; t < 200; ++t) {
        std::vector<Rational> x = {Rational(num(rng), den(rng)), Rational(num(rng), den(rng))};
        auto z = map.apply(x);
        Matrix<Rational> Jz(2, 2);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) Jz(i, j) = J(i, j).eval(z);
        psd = psd && ldlt_psd_check(Jz).psd;
    }
    // Non-reflection fixture: the relation vanishes identically.
    P t1 = P::variable(3, 0) + P::variable(3, 1);
    P t2 = P::variable(3, 0) * P::variable(3, 1);
    P t3 = P::variable(3, 2) * P::variable(3, 2);
    P t4 = P::variable(3, 2) * (P::variable(3, 0) - P::variable(3, 1));
    P rel = poly_from(4, {{{2, 0, 1, 0}, 1}, {{0, 1, 1, 0}, -4}, {{0, 0, 0, 2}, -1}});
    auto nr = hilbert_map(signed_swap_group(), {t1, t2, t3, t4}, {rel});
    bool rel_ok = nr.relations[0].compose(nr.generators).is_zero();
    note = std::string("e-basis J fixture ") + (fixture ? "exact" : "WRONG") +
           "; PSD at 200 rational image points by exact LDL^T: " + (psd ? "yes" : "NO") +
           "; fixture relation t1^2 t3 - 4 t2 t3 - t4^2 vanishes identically: " +
           (rel_ok ? "yes" : "NO");
    return fixture && psd && rel_ok;
}

// ---------------------------------------------------------------------------
// Criterion 11: orbit-space Motzkin minimum

bool criterion_orbit_motzkin(std::string& note) {
    auto map = hilbert_map(GroupRepresentation::symmetric(2),
                           InvariantBasis::elementary(2).gens);
    auto prob = reformulate(map, motzkin());
    auto res = minimize_orbit_space(prob);
    std::ostringstream os;
    os << "grid + refinement over {J_e >= 0} reaches " << res.value;
    note = os.str();
    return res.found && std::abs(res.value) <= 1e-4;
}

// ---------------------------------------------------------------------------
// Criterion 12: degree principle

bool criterion_degree(std::string& note) {
    auto binom = [](int a, int b) {
        long long r = 1;
        for (int i = 1; i <= b; ++i) r = r * (a - b + i) / i;
        return r;
    };
    for (int n = 1; n <= 12; ++n)
        for (int r = 1; r <= std::min(n, 4); ++r)
            if ((long long)enumerate_partitions(n, r).size() > binom(n + r, r)) {
                note = "partition count exceeds the binomial bound";
                return false;
            }
    double worst = 0.0;
    for (int n = 3; n <= 6; ++n) {
        auto rep = GroupRepresentation::symmetric(n);
        P f = sum_of_powers(n, 4) - sum_of_powers(n, 2);
        auto res = minimize_all(rep, f);
        if (!res.found || (int)res.witness.size() != n) {
            note = "minimizer missing at n=" + std::to_string(n);
            return false;
        }
        worst = std::max(worst, std::abs(res.value + n / 4.0));
        if (std::abs(eval_double(f, res.witness) - res.value) > 1e-9) {
            note = "witness does not reproduce the minimum at n=" + std::to_string(n);
            return false;
        }
    }
    std::ostringstream os;
    os << "min(p4 - p2) = -n/4 for n=3..6 within " << worst
       << "; witnesses evaluate back exactly; partition counts bounded by C(n+r, r)";
    note = os.str();
    return worst <= 1e-6;
}

// ---------------------------------------------------------------------------
// Criterion 13: SAGE

bool criterion_sage(std::string& note) {
    auto ex = [](std::vector<int> v) {
        Exponent a;
        for (int x : v) a.push_back(Rational(x));
        return a;
    };
    auto f = make_signomial({ex({6, 0, 0}), ex({0, 6, 0}), ex({0, 0, 6}), ex({0, 0, 0}),
                             ex({2, 1, 1}), ex({1, 2, 1}), ex({1, 1, 2})},
                            {5, 5, 5, 6, -1, -1, -1});
    auto rep = GroupRepresentation::symmetric(3);
    auto cert = sage_feasible(f, rep);
    bool ident = cert.feasible && cert.decomposition.templates.size() == 1;
    bool age_ok = true;
    if (ident) {
        auto& t = cert.decomposition.templates[0];
        ident = t.d == Rational(-1);
        int heavy = -1;
        for (int i = 0; i < 3; ++i)
            if (t.beta[i] == Rational(2)) heavy = i;
        for (size_t k = 0; k < t.support.size(); ++k) {
            bool is_const = true;
            int six = -1;
            for (int i = 0; i < 3; ++i) {
                if (t.support[k][i] != 0) is_const = false;
                if (t.support[k][i] == Rational(6)) six = i;
            }
            Rational expect = is_const ? Rational(2) : (six == heavy ? Rational(3) : Rational(1));
            ident = ident && t.c[k] == expect;
        }
        // The replicated templates must reconstruct f exactly.
        auto back = orbit_sum(cert.decomposition.templates);
        ident = ident && back.exponents.size() == f.exponents.size();
        for (size_t k = 0; k < f.exponents.size() && ident; ++k)
            ident = ident && back.coeff(f.exponents[k]) == f.coeffs[k];
        for (auto& r : cert.age)
            age_ok = age_ok && r.feasible && r.cert.entropy <= -1.0 + 1e-7;
    }
    auto cosh2 = make_signomial({ex({1}), ex({-1})}, {1, 1});
    auto sb = sage_bound(cosh2, GroupRepresentation::symmetric(1));
    bool bound_ok = sb.bounded && std::abs(sb.value - 2.0) <= 1e-6;
    std::ostringstream os;
    os << "S3 example identifies c = (1, 1, 3), constant 2, d = -1 exactly: "
       << (ident ? "yes" : "NO") << "; AGE entropy within d + 1e-7: " << (age_ok ? "yes" : "NO")
       << "; sage bound of e^x + e^-x = " << sb.value;
    note = os.str();
    return ident && age_ok && bound_ok;
}

// ---------------------------------------------------------------------------
// Criterion 14: symmetric quartic parametrization

bool criterion_quartics(std::string& note) {
    std::mt19937 rng(2024);
    auto rep = GroupRepresentation::symmetric(4);
    int checked = 0, undecided = 0;
    for (int trial = 0; trial < 70 && checked < 50; ++trial) {
        P f = (trial % 2 == 0) ? random_sos_quartic(rng, rep) : random_negative_quartic(rng, rep);
        if (f.is_zero()) continue;
        auto param = symmetric_quartic_form(f);
        SosStatus direct = gram_decision(f);
        if (param.status == SosStatus::Undecided || direct == SosStatus::Undecided) {
            ++undecided;
            continue;
        }
        if (param.status != direct) {
            note = "parametrization disagrees with the Gram oracle at trial " +
                   std::to_string(trial);
            return false;
        }
        ++checked;
    }
    std::vector<std::vector<size_t>> sizes;
    for (int n : {4, 5, 6}) {
        auto gens = default_sos_generators(GroupRepresentation::symmetric(n), 2);
        std::vector<size_t> s;
        for (auto& slot : gens) s.push_back(slot.size());
        sizes.push_back(std::move(s));
    }
    bool stable = sizes[0] == sizes[1] && sizes[1] == sizes[2];
    std::ostringstream os;
    os << checked << " random quartics at n=4 agree (" << undecided
       << " boundary instances undecided by both and skipped); block sizes for n=4,5,6 "
       << (stable ? "identical" : "DIFFER");
    note = os.str();
    return checked >= 50 && stable;
}

// ---------------------------------------------------------------------------
// Criterion 15: SDPA round trips

bool criterion_sdpa(std::string& note) {
    std::vector<SdpaData> cases;
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < 5; ++i) edges.push_back({i, (i + 1) % 5});
    auto sdp = theta_sdp(edges, 5);
    cases.push_back(sdpa_from(sdp));
    cases.push_back(sdpa_from(reduce_sdp(sdp)));
    auto map = hilbert_map(GroupRepresentation::symmetric(2),
                           InvariantBasis::elementary(2).gens);
    cases.push_back(moment_relaxation_qk(reformulate(map, motzkin()), 3));
    for (auto& data : cases) {
        std::string text = format_sdpa(data);
        SdpaData parsed = parse_sdpa(text);
        if (!(parsed == data) || format_sdpa(parsed) != text) {
            note = "round trip altered the data";
            return false;
        }
    }
    note = std::to_string(cases.size()) +
           " exports (full theta, reduced theta, moment relaxation) re-parse byte-identically";
    return true;
}

}  // namespace

int main() {
    struct Criterion {
        int number;
        const char* title;
        bool (*run)(std::string&);
    };
    bool documented_fail = false;
    std::string c2_note;
    bool c2_pass = criterion_c4(c2_note, documented_fail);

    std::vector<Criterion> criteria = {
        {1, "cycle theta numbers", criterion_theta},
        {3, "projector algebra", criterion_projectors},
        {4, "eigenvalue multisets", criterion_spectra},
        {5, "Motzkin polynomial", criterion_motzkin},
        {6, "symmetric quadratics", criterion_quadratics},
        {7, "H matrices", criterion_hmatrices},
        {8, "higher Specht", criterion_higher_specht},
        {9, "Newton identities", criterion_newton},
        {10, "J matrices", criterion_jmatrix},
        {11, "orbit-space Motzkin", criterion_orbit_motzkin},
        {12, "degree principle", criterion_degree},
        {13, "SAGE", criterion_sage},
        {14, "symmetric quartics", criterion_quartics},
        {15, "SDPA round trip", criterion_sdpa},
    };

    int unexpected = 0;
    auto report = [&](int number, const char* title, bool pass, const std::string& note,
                      bool expected_fail) {
        std::cout << "criterion " << number << " (" << title << "): "
                  << (pass ? "PASS" : "FAIL") << " - " << note << "\n";
        if (!pass && !expected_fail) ++unexpected;
    };

    for (auto& c : criteria) {
        std::string note;
        bool pass = false;
        try {
            pass = c.run(note);
        } catch (const std::exception& e) {
            note = std::string("exception: ") + e.what();
        }
        report(c.number, c.title, pass, note, false);
        if (c.number == 1)
            report(2, "C4 circulant blocks", c2_pass, c2_note, documented_fail);
    }

    if (documented_fail && !c2_pass)
        std::cout << "note: criterion 2's literal real-block comparison is the only failure; "
                     "the expected value is internally inconsistent as diagnosed above, and "
                     "every verifiable sub-check of the criterion passes.\n";
    std::cout << (unexpected == 0 ? "acceptance: all verifiable criteria pass"
                                  : "acceptance: UNEXPECTED FAILURES")
              << "\n";
    return unexpected == 0 ? 0 : 1;
}
