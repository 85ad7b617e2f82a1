// Invariant semidefinite programs: group averaging, the reduced block SDP,
// theta-number models, the cyclic-graph LP, and sparse SDPA text export with
// a matching parser.
#pragma once

#include <cstdio>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "symred/simplex.hpp"
#include "symred/symmetry_adapted.hpp"

namespace symred {

// ---------------------------------------------------------------------------
// Problem types

struct SDPProblem {
    int n = 0;
    Matrix<double> C;                       // objective, <C, X>
    std::vector<Matrix<double>> A;          // equality constraints <A_i, X> = b_i
    std::vector<double> b;
    bool maximize = true;
    std::optional<GroupRepresentation> group;
};

struct ReducedBlock {
    int irrep = -1;       // character-table index of the kept component
    int partner = -1;     // conjugate partner folded into this block (weight 2)
    int mult = 0;         // block size
    int weight = 1;       // 1, or 2 when a conjugate pair was folded
    int component = -1;   // index into the basis components
};

struct ReducedSDP {
    std::vector<ReducedBlock> blocks;
    std::vector<Matrix<Complex>> C_blocks;                // weight folded in
    std::vector<std::vector<Matrix<Complex>>> A_blocks;   // [constraint][block]
    std::vector<double> b;
    bool maximize = true;
    SymmetryAdaptedBasis sab;   // complex flavor, conjugate components tied
    ZonalMatrices zonal;
};

// ---------------------------------------------------------------------------
// Averaging and invariance

inline Matrix<double> average_invariant(const SDPProblem& sdp, const Matrix<double>& X) {
    if (!sdp.group) throw std::invalid_argument("no group attached");
    const auto& rep = *sdp.group;
    if (X.rows() != sdp.n || X.cols() != sdp.n)
        throw std::invalid_argument("matrix dimension mismatch");
    Matrix<double> acc(sdp.n, sdp.n);
    for (int g = 0; g < rep.order(); ++g) {
        auto M = rep.matrix(g);
        acc = acc + M * X * M.transpose();
    }
    return (1.0 / rep.order()) * acc;
}

namespace detail {

inline bool mat_close(const Matrix<double>& a, const Matrix<double>& b, double tol) {
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j)
            if (std::abs(a(i, j) - b(i, j)) > tol) return false;
    return true;
}

}  // namespace detail

// Throws with the offending generator/constraint when the SDP data is not
// invariant under the attached action.
inline void check_invariant(const SDPProblem& sdp, double tol = 1e-9) {
    if (!sdp.group) return;
    const auto& rep = *sdp.group;
    for (int g : rep.generators()) {
        auto M = rep.matrix(g);
        if (!detail::mat_close(M * sdp.C * M.transpose(), sdp.C, tol))
            throw std::invalid_argument("objective not invariant under generator " +
                                        std::to_string(g));
        for (size_t i = 0; i < sdp.A.size(); ++i) {
            auto img = M * sdp.A[i] * M.transpose();
            bool found = false;
            for (size_t j = 0; j < sdp.A.size() && !found; ++j)
                if (std::abs(sdp.b[i] - sdp.b[j]) <= tol && detail::mat_close(img, sdp.A[j], tol))
                    found = true;
            if (!found)
                throw std::invalid_argument("constraint " + std::to_string(i) +
                                            " not matched under generator " + std::to_string(g));
        }
    }
}

// ---------------------------------------------------------------------------
// Reduction to blocks

namespace detail {

// Ties each complex-type component to its conjugate partner by replacing the
// partner's vectors with conjugates, so folded pairs carry conjugate blocks.
inline void tie_conjugate_components(const GroupRepresentation& rep, const CharacterTable& tab,
                                     SymmetryAdaptedBasis& sab) {
    auto conj_partner = [&](int l) {
        for (int l2 = 0; l2 < tab.num_irreps(); ++l2) {
            bool match = true;
            for (int c = 0; c < tab.num_classes() && match; ++c)
                if (std::abs(tab.rows[l2][c] - std::conj(tab.rows[l][c])) > 1e-9) match = false;
            if (match) return l2;
        }
        throw std::logic_error("conjugate character missing");
    };
    for (auto& comp : sab.components) {
        int l2 = conj_partner(comp.irrep);
        if (l2 <= comp.irrep) continue;
        for (auto& other : sab.components)
            if (other.irrep == l2) {
                other.vecs = comp.vecs;
                for (auto& copy : other.vecs)
                    for (auto& v : copy)
                        for (auto& x : v) x = std::conj(x);
            }
    }
    (void)rep;
}

inline Matrix<Complex> zonal_contract(const ZonalMatrices& z, int comp,
                                      const Matrix<double>& D) {
    int m = z.mults[comp];
    Matrix<Complex> out(m, m);
    for (int i = 0; i < z.ambient; ++i)
        for (int j = 0; j < z.ambient; ++j) {
            if (D(i, j) == 0.0) continue;
            out = out + Complex(D(i, j), 0.0) * z.at(comp, i, j);
        }
    return out;
}

}  // namespace detail

inline ReducedSDP reduce_sdp(const SDPProblem& sdp, double tol = 1e-9) {
    ReducedSDP red;
    red.maximize = sdp.maximize;
    if (!sdp.group || sdp.group->order() == 1) {
        // No symmetry: a single block of full size.
        SabComponent comp;
        comp.irrep = 0;
        comp.mult = sdp.n;
        comp.dim = 1;
        for (int u = 0; u < sdp.n; ++u) {
            std::vector<Complex> e(sdp.n, Complex(0, 0));
            e[u] = 1.0;
            comp.vecs.push_back({std::move(e)});
        }
        red.sab.flavor = SabFlavor::Complex;
        red.sab.ambient = sdp.n;
        red.sab.components.push_back(std::move(comp));
        red.zonal = zonal_matrices(GroupRepresentation::cyclic(1), red.sab);
        red.blocks.push_back({0, -1, sdp.n, 1, 0});
        red.C_blocks.push_back(
            sdp.C.map<Complex>([](double v) { return Complex(v, 0.0); }));
        for (size_t i = 0; i < sdp.A.size(); ++i) {
            red.A_blocks.push_back(
                {sdp.A[i].map<Complex>([](double v) { return Complex(v, 0.0); })});
            red.b.push_back(sdp.b[i]);
        }
        return red;
    }
    const auto& rep = *sdp.group;
    if (rep.degree() != sdp.n) throw std::invalid_argument("action dimension mismatch");
    check_invariant(sdp, tol);
    auto tab = character_table(rep);
    red.sab = symmetry_adapted_basis(rep, SabFlavor::Complex);
    detail::tie_conjugate_components(rep, tab, red.sab);
    red.zonal = zonal_matrices(rep, red.sab);

    // Keep one component per conjugate pair.
    auto conj_partner_idx = [&](int ci) {
        int l = red.sab.components[ci].irrep;
        for (size_t cj = 0; cj < red.sab.components.size(); ++cj) {
            int l2 = red.sab.components[cj].irrep;
            bool match = true;
            for (int c = 0; c < tab.num_classes() && match; ++c)
                if (std::abs(tab.rows[l2][c] - std::conj(tab.rows[l][c])) > 1e-9) match = false;
            if (match) return (int)cj;
        }
        return (int)ci;
    };
    for (size_t ci = 0; ci < red.sab.components.size(); ++ci) {
        int cj = conj_partner_idx((int)ci);
        if (cj < (int)ci) continue;  // folded into the partner
        ReducedBlock blk;
        blk.component = (int)ci;
        blk.irrep = red.sab.components[ci].irrep;
        blk.mult = red.sab.components[ci].mult;
        if (cj != (int)ci) {
            blk.partner = red.sab.components[cj].irrep;
            blk.weight = 2;
        }
        red.blocks.push_back(blk);
    }
    for (auto& blk : red.blocks) {
        auto Cb = detail::zonal_contract(red.zonal, blk.component, sdp.C);
        red.C_blocks.push_back(Complex((double)blk.weight, 0.0) * Cb);
    }
    // Constraint blocks, with duplicates (orbit copies) removed.
    for (size_t i = 0; i < sdp.A.size(); ++i) {
        std::vector<Matrix<Complex>> row;
        for (auto& blk : red.blocks)
            row.push_back(Complex((double)blk.weight, 0.0) *
                          detail::zonal_contract(red.zonal, blk.component, sdp.A[i]));
        bool dup = false;
        for (size_t k = 0; k < red.A_blocks.size() && !dup; ++k) {
            if (std::abs(red.b[k] - sdp.b[i]) > tol) continue;
            bool same = true;
            for (size_t blki = 0; blki < row.size() && same; ++blki)
                for (int u = 0; u < row[blki].rows() && same; ++u)
                    for (int v = 0; v < row[blki].cols() && same; ++v)
                        if (std::abs(row[blki](u, v) - red.A_blocks[k][blki](u, v)) > tol)
                            same = false;
            dup = same;
        }
        if (!dup) {
            red.A_blocks.push_back(std::move(row));
            red.b.push_back(sdp.b[i]);
        }
    }
    return red;
}

// Rebuilds a full-size solution from per-block values (one per kept block;
// folded conjugate partners are filled in automatically).
inline Matrix<Complex> reconstruct_solution(const ReducedSDP& red,
                                            const std::vector<Matrix<Complex>>& block_values) {
    if (block_values.size() != red.blocks.size())
        throw std::invalid_argument("one value per block required");
    std::vector<Matrix<Complex>> per_component;
    for (auto& comp : red.sab.components)
        per_component.push_back(Matrix<Complex>(comp.mult, comp.mult));
    for (size_t k = 0; k < red.blocks.size(); ++k) {
        per_component[red.blocks[k].component] = block_values[k];
        if (red.blocks[k].weight == 2) {
            // conjugate partner component
            for (size_t ci = 0; ci < red.sab.components.size(); ++ci)
                if (red.sab.components[ci].irrep == red.blocks[k].partner)
                    per_component[ci] =
                        block_values[k].map<Complex>([](Complex v) { return std::conj(v); });
        }
    }
    return zonal_reconstruct(red.zonal, per_component);
}

// When every block has size 1 the reduced SDP is an LP over the nonnegative
// block scalars; solves it with the simplex method.
inline std::optional<LPResult<double>> solve_reduced_as_lp(const ReducedSDP& red) {
    int nb = (int)red.blocks.size();
    for (auto& blk : red.blocks)
        if (blk.mult != 1) return std::nullopt;
    LPProblem<double> lp;
    lp.maximize = red.maximize;
    lp.A = Matrix<double>((int)red.A_blocks.size(), nb);
    for (size_t i = 0; i < red.A_blocks.size(); ++i)
        for (int l = 0; l < nb; ++l) lp.A((int)i, l) = red.A_blocks[i][l](0, 0).real();
    lp.b = red.b;
    lp.c.resize(nb);
    for (int l = 0; l < nb; ++l) lp.c[l] = red.C_blocks[l](0, 0).real();
    return simplex_solve(lp);
}

// ---------------------------------------------------------------------------
// Theta-number models

// max <J, B> s.t. tr B = 1, B_ij = 0 on edges, B psd. Circulant graphs get
// the cyclic action attached automatically.
inline SDPProblem theta_sdp(const std::vector<std::pair<int, int>>& edges, int n) {
    SDPProblem sdp;
    sdp.n = n;
    sdp.maximize = true;
    sdp.C = Matrix<double>(n, n, 1.0);
    sdp.A.push_back(Matrix<double>::identity(n));
    sdp.b.push_back(1.0);
    std::vector<std::vector<bool>> adj(n, std::vector<bool>(n, false));
    for (auto& [u, v] : edges) {
        if (u == v) throw std::invalid_argument("self-loop");
        if (u < 0 || v < 0 || u >= n || v >= n) throw std::invalid_argument("vertex out of range");
        if (adj[u][v]) continue;
        adj[u][v] = adj[v][u] = true;
        Matrix<double> E(n, n);
        E(u, v) = E(v, u) = 1.0;
        sdp.A.push_back(std::move(E));
        sdp.b.push_back(0.0);
    }
    // Circulant test: edge set invariant under i -> i+1 (mod n).
    bool circulant = n >= 1;
    for (int u = 0; u < n && circulant; ++u)
        for (int v = 0; v < n && circulant; ++v)
            if (adj[u][v] != adj[(u + 1) % n][(v + 1) % n]) circulant = false;
    if (circulant && n >= 2) sdp.group = GroupRepresentation::cyclic(n);
    return sdp;
}

// The theta number of the n-cycle as a 2-constraint LP over x_0..x_{n/2}.
inline LPProblem<double> theta_cyclic_lp(int n) {
    if (n < 3) throw std::invalid_argument("theta_cyclic_lp needs n >= 3");
    int m = n / 2;
    LPProblem<double> lp;
    lp.maximize = true;
    lp.A = Matrix<double>(2, m + 1);
    for (int j = 0; j <= m; ++j) {
        lp.A(0, j) = 1.0;
        lp.A(1, j) = std::cos(2.0 * M_PI * j / n);
    }
    lp.b = {1.0, 0.0};
    lp.c.assign(m + 1, 0.0);
    lp.c[0] = (double)n;
    return lp;
}

inline double theta_cycle_closed_form(int n) {
    if (n % 2 == 0) return n / 2.0;
    double c = std::cos(M_PI / n);
    return n * c / (1.0 + c);
}

// ---------------------------------------------------------------------------
// SDPA sparse format

struct SdpaEntry {
    int mat, blk, i, j;
    double value;
    friend bool operator==(const SdpaEntry& a, const SdpaEntry& b) {
        return a.mat == b.mat && a.blk == b.blk && a.i == b.i && a.j == b.j &&
               a.value == b.value;
    }
};

struct SdpaData {
    int ncons = 0;
    std::vector<int> block_sizes;  // negative = diagonal block
    std::vector<double> b;
    std::vector<SdpaEntry> entries;
    friend bool operator==(const SdpaData& a, const SdpaData& b) {
        return a.ncons == b.ncons && a.block_sizes == b.block_sizes && a.b == b.b &&
               a.entries == b.entries;
    }
};

inline std::string format_sdpa(const SdpaData& data) {
    std::string out;
    char buf[64];
    auto num = [&](double v) {
        std::snprintf(buf, sizeof buf, "%.17g", v);
        return std::string(buf);
    };
    out += std::to_string(data.ncons) + "\n";
    out += std::to_string((int)data.block_sizes.size()) + "\n";
    for (size_t i = 0; i < data.block_sizes.size(); ++i)
        out += (i ? " " : "") + std::to_string(data.block_sizes[i]);
    out += "\n";
    for (size_t i = 0; i < data.b.size(); ++i) out += (i ? " " : "") + num(data.b[i]);
    out += "\n";
    for (auto& e : data.entries)
        out += std::to_string(e.mat) + " " + std::to_string(e.blk) + " " + std::to_string(e.i) +
               " " + std::to_string(e.j) + " " + num(e.value) + "\n";
    return out;
}

inline SdpaData parse_sdpa(const std::string& text) {
    std::istringstream in(text);
    SdpaData data;
    int nblocks = 0;
    if (!(in >> data.ncons >> nblocks)) throw std::invalid_argument("bad SDPA header");
    data.block_sizes.resize(nblocks);
    for (int i = 0; i < nblocks; ++i)
        if (!(in >> data.block_sizes[i])) throw std::invalid_argument("bad SDPA block sizes");
    data.b.resize(data.ncons);
    for (int i = 0; i < data.ncons; ++i)
        if (!(in >> data.b[i])) throw std::invalid_argument("bad SDPA b vector");
    SdpaEntry e;
    while (in >> e.mat >> e.blk >> e.i >> e.j >> e.value) data.entries.push_back(e);
    return data;
}

inline SdpaData sdpa_from(const SDPProblem& sdp) {
    SdpaData data;
    data.ncons = (int)sdp.A.size();
    data.block_sizes = {sdp.n};
    data.b = sdp.b;
    auto emit = [&](int matno, const Matrix<double>& M) {
        for (int i = 0; i < M.rows(); ++i)
            for (int j = i; j < M.cols(); ++j)
                if (M(i, j) != 0.0) data.entries.push_back({matno, 1, i + 1, j + 1, M(i, j)});
    };
    emit(0, sdp.C);
    for (size_t k = 0; k < sdp.A.size(); ++k) emit((int)k + 1, sdp.A[k]);
    return data;
}

inline SdpaData sdpa_from(const ReducedSDP& red, double tol = 1e-9) {
    SdpaData data;
    data.ncons = (int)red.A_blocks.size();
    data.b = red.b;
    // Blocks of size > 1 keep their own slot; all 1x1 blocks are pooled into
    // one trailing diagonal block.
    std::vector<int> slot(red.blocks.size(), -1), diag_pos(red.blocks.size(), -1);
    int next_slot = 0, ndiag = 0;
    for (size_t k = 0; k < red.blocks.size(); ++k)
        if (red.blocks[k].mult > 1) {
            slot[k] = ++next_slot;
            data.block_sizes.push_back(red.blocks[k].mult);
        }
    for (size_t k = 0; k < red.blocks.size(); ++k)
        if (red.blocks[k].mult == 1) {
            slot[k] = next_slot + 1;
            diag_pos[k] = ++ndiag;
        }
    if (ndiag > 0) data.block_sizes.push_back(-ndiag);
    auto real_entry = [&](Complex v) {
        if (std::abs(v.imag()) > tol)
            throw std::invalid_argument("complex block data cannot be exported");
        return v.real();
    };
    auto emit = [&](int matno, const std::vector<Matrix<Complex>>& blocks) {
        for (size_t k = 0; k < blocks.size(); ++k) {
            if (red.blocks[k].mult == 1) {
                double v = real_entry(blocks[k](0, 0));
                if (std::abs(v) > tol)
                    data.entries.push_back({matno, slot[k], diag_pos[k], diag_pos[k], v});
            } else {
                for (int i = 0; i < blocks[k].rows(); ++i)
                    for (int j = i; j < blocks[k].cols(); ++j) {
                        double v = real_entry(blocks[k](i, j));
                        if (std::abs(v) > tol)
                            data.entries.push_back({matno, slot[k], i + 1, j + 1, v});
                    }
            }
        }
    };
    emit(0, red.C_blocks);
    for (size_t c = 0; c < red.A_blocks.size(); ++c) emit((int)c + 1, red.A_blocks[c]);
    return data;
}

}  // namespace symred
