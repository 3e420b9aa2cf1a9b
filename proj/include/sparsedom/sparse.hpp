#pragma once

#include <optional>
#include <vector>

#include "sparsedom/grid.hpp"
#include "sparsedom/lattice.hpp"

namespace sparsedom {

/// 3Q for a cube Q of a base lattice, together with the tripled lattice
/// D_j (j in [0, 3^dim)) it belongs to. The 3Q of the base lattice split into
/// exactly 3^dim nested families; Q lies in its own 3Q, the unique cube of
/// D_j of side 3 l(Q) containing it.
struct TripledCube {
    LatticeCube q;
    int lattice = 0;
    CellBox box;
    /// 3Q sticks out of the grid.
    bool clipped = false;
};

struct ThreeLatticeCover {
    std::vector<TripledCube> entries;
    int lattices_used = 0;
};

/// Covers every cube of `d` meeting the grid, from the top level down to cells.
ThreeLatticeCover three_lattice_cover(const DyadicLattice& d);

/// Finite family of cubes of one lattice, ordered coarse to fine.
struct SparseFamily {
    DyadicLattice lattice;
    double eta = 0.5;
    std::vector<LatticeCube> cubes;
    /// E_Q per cube (sorted cell indices), filled by certification.
    std::vector<std::vector<std::size_t>> owned;

    CellBox box(std::size_t i) const { return lattice.clipped_box(cubes[i].level, cubes[i].index); }
};

struct SparsenessReport {
    bool ok = true;
    std::optional<LatticeCube> violation;
    std::vector<std::vector<std::size_t>> owned;
};

/// Computes E_Q = Q minus the strictly smaller family cubes and checks
/// |E_Q| >= eta |Q| cube by cube at cell resolution (clipped to the grid).
/// The family's cubes are sorted coarse to fine and de-duplicated in place.
SparsenessReport verify_sparseness(SparseFamily& s, double eta);

/// Stopping-time family: top cubes with nonzero average, then recursively the
/// maximal descendants Q' of a selected Q with <|f|>_{Q'} > <|f|>_Q / (1 - eta).
/// The result is certified; throws if certification fails.
SparseFamily build_sparse_from_stopping(const GridFunction& f, const DyadicLattice& d, double eta);
/// One stopping family per shifted lattice.
std::vector<SparseFamily> build_sparse_families(const GridFunction& f, double eta);

/// sum_Q <|f|^r>_Q^{1/r} chi_Q.
GridFunction sparse_operator(const GridFunction& f, const SparseFamily& s, double r = 1.0);
GridFunction sparse_operator(const GridFunction& f, const std::vector<SparseFamily>& s, double r = 1.0);

/// sum_Q |b(x) - <b>_Q| <|f|>_Q chi_Q, or with adjoint = true sum_Q <|b - <b>_Q| |f|>_Q chi_Q.
GridFunction sparse_commutator(const GridFunction& f, const GridFunction& b, const SparseFamily& s, bool adjoint);

/// sum_j sum_{Q in S_j} prod_{s < l} T(b_s, f_s, Q, gamma_s) prod_{s >= l} <|f_s|>_Q chi_Q, where
/// T(b, f, Q, 1) = |b - <b>_Q| <|f|>_Q and T(b, f, Q, 2) = <|(b - <b>_Q) f|>_Q; l = bs.size().
/// With sum_gammas the sum over all gamma in {1,2}^l is taken instead.
GridFunction hyp1_rhs(const std::vector<GridFunction>& fs, const std::vector<GridFunction>& bs,
                      const std::vector<SparseFamily>& families, const std::vector<int>& gammas, bool sum_gammas);

struct BilinearForm {
    double total = 0.0;
    std::vector<double> per_k;
    /// c[k][i] for cube i of the family.
    std::vector<std::vector<double>> c;
    std::vector<double> volume;
};

/// c_k(Q) = <|b - <b>_Q|^{m-k} |f|>_{r,Q} <|b - <b>_Q|^k |g|>_{t,Q}, total = sum_k sum_Q c_k(Q) |Q|.
BilinearForm bilinear_sparse_form(const GridFunction& f, const GridFunction& g, const GridFunction& b,
                                  const SparseFamily& s, double r, double t, int m);

}  // namespace sparsedom
