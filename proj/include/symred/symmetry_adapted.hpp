// Isotypic projections, symmetry-adapted bases (complex and real flavor),
// block diagonalization of commutant matrices and zonal matrices.
//
// The construction follows the classical projection recipe: with unitary
// irreducible matrices Y_l the operators
//
//     p^l_{ab} = (d_l/|G|) sum_g Y_l(g^-1)_{ba} M(g)
//
// are projections/intertwiners; an orthonormal basis of the image of p^l_00
// picks one vector per copy of the irreducible, and applying p^l_{a0} fills
// in the remaining coordinates of each copy.
#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <map>
#include <stdexcept>
#include <vector>

#include "symred/group.hpp"
#include "symred/matrix.hpp"

namespace symred {

// ---------------------------------------------------------------------------
// Unitary irreducible matrices for the built-in families, indexed in the same
// order as the character table rows.

class IrrepMatrices {
public:
    explicit IrrepMatrices(const GroupRepresentation& rep) : rep_(&rep) {
        tab_ = character_table(rep);
        mats_.resize(tab_.num_irreps());
        switch (rep.family()) {
            case GroupFamily::Cyclic: {
                int n = rep.n_param();
                for (int j = 0; j < n; ++j) {
                    for (int k = 0; k < n; ++k) {
                        Matrix<Complex> m(1, 1);
                        m(0, 0) = std::exp(Complex(0.0, 2.0 * M_PI * j * k / n));
                        mats_[j].push_back(std::move(m));
                    }
                }
                break;
            }
            case GroupFamily::Dihedral: {
                int n = rep.n_param();
                int one_dim = (n % 2 == 0) ? 4 : 2;
                for (int l = 0; l < tab_.num_irreps(); ++l) {
                    for (int g = 0; g < rep.order(); ++g) {
                        auto [k, e] = rep.rot_refl(g);
                        if (l < one_dim) {
                            Matrix<Complex> m(1, 1);
                            m(0, 0) = tab_.rows[l][rep.class_of(g)];
                            mats_[l].push_back(std::move(m));
                        } else {
                            int j = l - one_dim + 1;
                            double th = 2.0 * M_PI * j * k / n;
                            Matrix<Complex> m(2, 2);
                            m(0, 0) = std::cos(th); m(0, 1) = -std::sin(th);
                            m(1, 0) = std::sin(th); m(1, 1) = std::cos(th);
                            if (e) {  // mirror: diag(1, -1) on the right
                                m(0, 1) = -m(0, 1);
                                m(1, 1) = -m(1, 1);
                            }
                            mats_[l].push_back(std::move(m));
                        }
                    }
                }
                break;
            }
            case GroupFamily::Symmetric: {
                auto parts = partitions_of(rep.n_param());
                for (size_t l = 0; l < parts.size(); ++l) {
                    auto gens = young_orthogonal_generators(parts[l]);
                    for (int g = 0; g < rep.order(); ++g) {
                        auto m = young_orthogonal_matrix(rep, gens, g);
                        mats_[l].push_back(m.map<Complex>([](double v) { return Complex(v, 0.0); }));
                    }
                }
                break;
            }
            case GroupFamily::Explicit:
                throw std::invalid_argument(
                    "explicit groups need user-supplied irreducible matrices");
        }
    }

    const CharacterTable& table() const { return tab_; }
    int count() const { return (int)mats_.size(); }
    int dim(int l) const { return tab_.dims[l]; }
    const Matrix<Complex>& at(int l, int g) const { return mats_[l][g]; }

private:
    const GroupRepresentation* rep_;
    CharacterTable tab_;
    std::vector<std::vector<Matrix<Complex>>> mats_;
};

// ---------------------------------------------------------------------------
// Isotypic projections

// Full projector matrix onto the chi_l-isotypic component of the
// representation given by mats; exact when K is exact and the character row
// is rational.
template <class K>
Matrix<K> isotypic_projector(const GroupRepresentation& rep, const CharacterTable& tab, int l,
                             const std::function<Matrix<K>(int)>& mats) {
    if (l < 0 || l >= tab.num_irreps()) throw std::invalid_argument("unknown character index");
    int order = rep.order();
    Matrix<K> acc = mats(0);
    int dim = acc.rows();
    acc = Matrix<K>(dim, dim);
    for (int g = 0; g < order; ++g) {
        K w;
        Complex chi = tab.rows[l][rep.class_of(g)];
        if constexpr (scalar_traits<K>::exact) {
            if (!tab.exact) throw std::invalid_argument("exact projector needs an exact table");
            w = K(tab.rows_q[l][rep.class_of(g)]);
        } else if constexpr (std::is_same_v<K, Complex>) {
            w = std::conj(chi);
        } else {
            w = K(chi.real());  // real characters only
        }
        acc = acc + w * mats(g);
    }
    K scale;
    if constexpr (scalar_traits<K>::exact) scale = K(Rational(tab.dims[l], order));
    else scale = K(1) * K((double)tab.dims[l] / order);
    return scale * acc;
}

// Projection of a vector in the natural representation space.
inline std::vector<Complex> isotypic_project(const GroupRepresentation& rep, int chi_index,
                                             const std::vector<Complex>& v) {
    auto tab = character_table(rep);
    std::function<Matrix<Complex>(int)> mats = [&](int g) {
        return rep.matrix(g).map<Complex>([](double x) { return Complex(x, 0.0); });
    };
    auto P = isotypic_projector<Complex>(rep, tab, chi_index, mats);
    if ((int)v.size() != P.rows()) throw std::invalid_argument("vector dimension mismatch");
    std::vector<Complex> out(v.size(), Complex(0, 0));
    for (int i = 0; i < P.rows(); ++i)
        for (int j = 0; j < P.cols(); ++j) out[i] += P(i, j) * v[j];
    return out;
}

// Frobenius-Schur indicator of the l-th irreducible: +1 real, 0 complex,
// -1 quaternionic.
inline int frobenius_schur(const GroupRepresentation& rep, const CharacterTable& tab, int l) {
    Complex acc(0, 0);
    for (int g = 0; g < rep.order(); ++g) acc += tab.rows[l][rep.class_of(rep.mul(g, g))];
    double v = acc.real() / rep.order();
    int r = (int)std::lround(v);
    if (std::abs(v - r) > 1e-8 || std::abs(acc.imag()) > 1e-8 * rep.order())
        throw std::logic_error("non-integral Frobenius-Schur indicator");
    return r;
}

// ---------------------------------------------------------------------------
// Symmetry-adapted bases

enum class SabFlavor { Complex, Real };

struct SabComponent {
    int irrep = -1;    // character-table index
    int partner = -1;  // conjugate partner when two components were merged
    int mult = 0;      // block size of the commutant on this component
    int dim = 0;       // how often the block repeats
    // vecs[copy u][index h] = ambient basis vector e_{l,u,h}
    std::vector<std::vector<std::vector<Complex>>> vecs;
};

struct SymmetryAdaptedBasis {
    SabFlavor flavor = SabFlavor::Complex;
    int ambient = 0;
    std::vector<SabComponent> components;
    std::vector<std::pair<int, int>> merged;      // realification log
    std::vector<Matrix<Complex>> gen_mats;        // representation generators

    int total_vectors() const {
        int t = 0;
        for (auto& c : components) t += c.mult * c.dim;
        return t;
    }
    // Columns ordered component-major, copy-major, index-minor: every M(g)
    // becomes block-diagonal with the irreducible blocks repeated.
    Matrix<Complex> change_of_basis() const {
        Matrix<Complex> U(ambient, total_vectors());
        int col = 0;
        for (auto& c : components)
            for (auto& copy : c.vecs)
                for (auto& v : copy) {
                    for (int i = 0; i < ambient; ++i) U(i, col) = v[i];
                    ++col;
                }
        return U;
    }
    // (component, copy, index) per column of change_of_basis().
    std::vector<std::array<int, 3>> labels() const {
        std::vector<std::array<int, 3>> out;
        for (size_t ci = 0; ci < components.size(); ++ci)
            for (int u = 0; u < components[ci].mult; ++u)
                for (int h = 0; h < components[ci].dim; ++h)
                    out.push_back({(int)ci, u, h});
        return out;
    }
};

namespace detail {

inline Complex dot_c(const std::vector<Complex>& a, const std::vector<Complex>& b) {
    Complex s(0, 0);
    for (size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
    return s;
}
inline double norm_c(const std::vector<Complex>& a) { return std::sqrt(dot_c(a, a).real()); }

inline std::vector<Complex> apply_mat(const Matrix<Complex>& M, const std::vector<Complex>& v) {
    std::vector<Complex> out(M.rows(), Complex(0, 0));
    for (int i = 0; i < M.rows(); ++i)
        for (int j = 0; j < M.cols(); ++j) out[i] += M(i, j) * v[j];
    return out;
}

}  // namespace detail

// Builds the symmetry-adapted basis for a representation given by unitary
// matrices mats(g) of size ambient; mats defaults to the natural action.
inline SymmetryAdaptedBasis symmetry_adapted_basis(
    const GroupRepresentation& rep, SabFlavor flavor,
    const std::function<Matrix<Complex>(int)>& mats_in = nullptr) {
    std::function<Matrix<Complex>(int)> mats = mats_in;
    if (!mats)
        mats = [&rep](int g) {
            return rep.matrix(g).map<Complex>([](double x) { return Complex(x, 0.0); });
        };
    IrrepMatrices irreps(rep);
    const CharacterTable& tab = irreps.table();
    int order = rep.order();

    std::vector<Matrix<Complex>> M;
    for (int g = 0; g < order; ++g) M.push_back(mats(g));
    int N = M[0].rows();
    // Unitarity check on generators: the projection recipe relies on it.
    for (int g : rep.generators()) {
        auto gram = M[g].conj_transpose() * M[g];
        for (int i = 0; i < N; ++i)
            for (int j = 0; j < N; ++j) {
                double want = (i == j) ? 1.0 : 0.0;
                if (std::abs(gram(i, j) - want) > 1e-8)
                    throw std::invalid_argument("representation matrices must be unitary");
            }
    }

    SymmetryAdaptedBasis sab;
    sab.flavor = flavor;
    sab.ambient = N;
    for (int g : rep.generators()) sab.gen_mats.push_back(M[g]);

    // Multiplicities from the character inner product.
    std::vector<int> mult(tab.num_irreps(), 0);
    for (int l = 0; l < tab.num_irreps(); ++l) {
        Complex acc(0, 0);
        for (int g = 0; g < order; ++g) {
            Complex tr(0, 0);
            for (int i = 0; i < N; ++i) tr += M[g](i, i);
            acc += std::conj(tab.rows[l][rep.class_of(g)]) * tr;
        }
        double m = acc.real() / order;
        mult[l] = (int)std::lround(m);
        if (std::abs(m - mult[l]) > 1e-6 || std::abs(acc.imag()) > 1e-6 * order)
            throw std::logic_error("non-integral multiplicity");
    }

    std::vector<int> inv_of(order);
    for (int g = 0; g < order; ++g) inv_of[g] = rep.inv(g);

    auto intertwiner = [&](int l, int a, int b) {
        // p^l_{ab} = (d_l/|G|) sum_g Y_l(g^-1)_{ba} M(g)
        Matrix<Complex> P(N, N);
        for (int g = 0; g < order; ++g) {
            Complex w = irreps.at(l, inv_of[g])(b, a);
            if (std::abs(w) < 1e-15) continue;
            P = P + w * M[g];
        }
        return Complex((double)irreps.dim(l) / order, 0.0) * P;
    };

    std::vector<SabComponent> complex_components;
    for (int l = 0; l < tab.num_irreps(); ++l) {
        if (mult[l] == 0) continue;
        int d = irreps.dim(l);
        Matrix<Complex> p00 = intertwiner(l, 0, 0);
        // Orthonormal basis of the image of p00, scanning standard basis
        // vectors in index order for reproducibility.
        std::vector<std::vector<Complex>> seeds;
        for (int i = 0; i < N && (int)seeds.size() < mult[l]; ++i) {
            std::vector<Complex> w(N);
            for (int r = 0; r < N; ++r) w[r] = p00(r, i);
            for (auto& s : seeds) {
                Complex proj = detail::dot_c(s, w);
                for (int r = 0; r < N; ++r) w[r] -= proj * s[r];
            }
            double nrm = detail::norm_c(w);
            if (nrm < 1e-10) continue;
            for (auto& x : w) x /= nrm;
            seeds.push_back(std::move(w));
        }
        if ((int)seeds.size() != mult[l])
            throw std::logic_error("projection image smaller than the multiplicity");
        SabComponent comp;
        comp.irrep = l;
        comp.mult = mult[l];
        comp.dim = d;
        for (auto& seed : seeds) {
            std::vector<std::vector<Complex>> copy;
            copy.push_back(seed);
            for (int a = 1; a < d; ++a)
                copy.push_back(detail::apply_mat(intertwiner(l, a, 0), seed));
            comp.vecs.push_back(std::move(copy));
        }
        complex_components.push_back(std::move(comp));
    }

    if (flavor == SabFlavor::Complex) {
        sab.components = std::move(complex_components);
        return sab;
    }

    // Real flavor: keep real-type components as-is (they come out real);
    // merge conjugate pairs into real vectors; reject quaternionic type.
    std::map<int, int> by_irrep;
    for (size_t i = 0; i < complex_components.size(); ++i)
        by_irrep[complex_components[i].irrep] = (int)i;
    auto conj_partner = [&](int l) {
        for (int l2 = 0; l2 < tab.num_irreps(); ++l2) {
            bool match = true;
            for (int c = 0; c < tab.num_classes() && match; ++c)
                if (std::abs(tab.rows[l2][c] - std::conj(tab.rows[l][c])) > 1e-9) match = false;
            if (match) return l2;
        }
        throw std::logic_error("conjugate character missing from the table");
    };
    std::vector<SabComponent> real_components;
    std::vector<SabComponent> merged_components;
    std::vector<bool> consumed(complex_components.size(), false);
    for (size_t ci = 0; ci < complex_components.size(); ++ci) {
        if (consumed[ci]) continue;
        auto& comp = complex_components[ci];
        int fs = frobenius_schur(rep, tab, comp.irrep);
        if (fs == -1) throw std::invalid_argument("quaternionic component: unsupported");
        if (fs == 1) {
            for (auto& copy : comp.vecs)
                for (auto& v : copy)
                    for (auto& x : v)
                        if (std::abs(x.imag()) > 1e-9)
                            throw std::logic_error("real-type component with complex vectors");
            real_components.push_back(comp);
            consumed[ci] = true;
            continue;
        }
        // Complex type: pair with the conjugate component. The partner's
        // copies are taken as the conjugates of this component's copies, so
        // b and b' are honest conjugates.
        int l2 = conj_partner(comp.irrep);
        auto it = by_irrep.find(l2);
        if (it == by_irrep.end() || consumed[it->second])
            throw std::logic_error("conjugate component missing");
        consumed[it->second] = true;
        consumed[ci] = true;
        if (comp.dim != 1)
            throw std::invalid_argument("complex-type components of dimension > 1: unsupported");
        SabComponent m;
        m.irrep = std::min(comp.irrep, l2);
        m.partner = std::max(comp.irrep, l2);
        m.mult = 2 * comp.mult;
        m.dim = 1;
        double inv_sqrt2 = 1.0 / std::sqrt(2.0);
        // b + b' first for all copies, then (1/i)(b - b').
        for (auto& copy : comp.vecs) {
            std::vector<Complex> w(N);
            for (int i = 0; i < N; ++i) w[i] = Complex(2.0 * copy[0][i].real(), 0.0) * inv_sqrt2;
            m.vecs.push_back({std::move(w)});
        }
        for (auto& copy : comp.vecs) {
            std::vector<Complex> w(N);
            for (int i = 0; i < N; ++i) w[i] = Complex(2.0 * copy[0][i].imag(), 0.0) * inv_sqrt2;
            m.vecs.push_back({std::move(w)});
        }
        sab.merged.emplace_back(m.irrep, m.partner);
        merged_components.push_back(std::move(m));
    }
    sab.components = std::move(real_components);
    for (auto& m : merged_components) sab.components.push_back(std::move(m));
    return sab;
}

// ---------------------------------------------------------------------------
// Block diagonalization of commutant matrices

struct BlockDiagResult {
    std::vector<Matrix<Complex>> blocks;          // one per component, mult x mult
    std::vector<std::array<int, 3>> labels;       // basis labels, component/copy/index
    double off_block_mass = 0.0;                  // Frobenius residual of reconstruction
};

inline BlockDiagResult block_diagonalize(const GroupRepresentation& rep,
                                         const SymmetryAdaptedBasis& sab,
                                         const Matrix<Complex>& X, double tol = 1e-9) {
    (void)rep;
    int N = sab.ambient;
    if (X.rows() != N || X.cols() != N) throw std::invalid_argument("matrix dimension mismatch");
    for (auto& G : sab.gen_mats) {
        auto comm = G * X - X * G;
        for (int i = 0; i < N; ++i)
            for (int j = 0; j < N; ++j)
                if (std::abs(comm(i, j)) > tol)
                    throw std::invalid_argument("matrix does not commute with the action");
    }
    BlockDiagResult out;
    out.labels = sab.labels();
    for (auto& comp : sab.components) {
        Matrix<Complex> B(comp.mult, comp.mult);
        for (int u = 0; u < comp.mult; ++u)
            for (int v = 0; v < comp.mult; ++v) {
                Complex acc(0, 0);
                for (int h = 0; h < comp.dim; ++h)
                    acc += detail::dot_c(comp.vecs[u][h], detail::apply_mat(X, comp.vecs[v][h]));
                B(u, v) = acc / (double)comp.dim;
            }
        out.blocks.push_back(std::move(B));
    }
    // Residual of the zonal reconstruction X = sum_l U_l (B_l (x) I) U_l^*.
    Matrix<Complex> rec(N, N);
    for (size_t c = 0; c < sab.components.size(); ++c) {
        auto& comp = sab.components[c];
        for (int u = 0; u < comp.mult; ++u)
            for (int v = 0; v < comp.mult; ++v)
                for (int h = 0; h < comp.dim; ++h)
                    for (int i = 0; i < N; ++i)
                        for (int j = 0; j < N; ++j)
                            rec(i, j) += out.blocks[c](u, v) * comp.vecs[u][h][i] *
                                         std::conj(comp.vecs[v][h][j]);
    }
    double mass = 0;
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) mass += std::norm(rec(i, j) - X(i, j));
    out.off_block_mass = std::sqrt(mass);
    return out;
}

// ---------------------------------------------------------------------------
// Zonal matrices

struct ZonalMatrices {
    int ambient = 0;
    // per component l, E_l(i,j) is mult x mult with
    // E_l(i,j)_{u,v} = sum_h e_{l,u,h}(i) * conj(e_{l,v,h}(j))
    std::vector<std::vector<Matrix<Complex>>> E;  // [component][i * ambient + j]
    std::vector<int> mults;

    const Matrix<Complex>& at(int component, int i, int j) const {
        return E[component][(size_t)i * ambient + j];
    }
};

inline ZonalMatrices zonal_matrices(const GroupRepresentation& rep,
                                    const SymmetryAdaptedBasis& sab) {
    (void)rep;
    ZonalMatrices z;
    z.ambient = sab.ambient;
    int N = sab.ambient;
    for (auto& comp : sab.components) {
        std::vector<Matrix<Complex>> maps((size_t)N * N, Matrix<Complex>(comp.mult, comp.mult));
        for (int u = 0; u < comp.mult; ++u)
            for (int v = 0; v < comp.mult; ++v)
                for (int h = 0; h < comp.dim; ++h)
                    for (int i = 0; i < N; ++i) {
                        Complex ei = comp.vecs[u][h][i];
                        if (std::abs(ei) < 1e-15) continue;
                        for (int j = 0; j < N; ++j)
                            maps[(size_t)i * N + j](u, v) += ei * std::conj(comp.vecs[v][h][j]);
                    }
        z.E.push_back(std::move(maps));
        z.mults.push_back(comp.mult);
    }
    return z;
}

// Entry-wise reconstruction X_{ij} = sum_l <E_l(i,j), B_l>.
inline Matrix<Complex> zonal_reconstruct(const ZonalMatrices& z,
                                         const std::vector<Matrix<Complex>>& blocks) {
    int N = z.ambient;
    Matrix<Complex> X(N, N);
    for (size_t l = 0; l < z.E.size(); ++l)
        for (int i = 0; i < N; ++i)
            for (int j = 0; j < N; ++j) {
                Complex acc(0, 0);
                for (int u = 0; u < z.mults[l]; ++u)
                    for (int v = 0; v < z.mults[l]; ++v)
                        acc += z.at((int)l, i, j)(u, v) * blocks[l](u, v);
                X(i, j) += acc;
            }
    return X;
}

}  // namespace symred
