#pragma once

#include <vector>

#include "sparsedom/grid.hpp"

namespace sparsedom {

/// Grid-aligned dyadic lattice with integer one-third shift.
///
/// At level k the cubes along an axis are [s_k + m 2^k, s_k + (m+1) 2^k) in
/// cell units, with s_k = t ((-2)^k - 1) / 3 and t in {0, 1, 2}. The offsets
/// are integers, level 0 is the cell partition, and consecutive levels nest.
/// The 3^dim choices of (t_0, t_1) give the shifted family used for
/// maximal functions and sparse domination.
class DyadicLattice {
public:
    DyadicLattice() = default;
    DyadicLattice(GridGeometry grid, std::array<int, 2> shift, int top_level);

    /// Lattice j in [0, 3^dim) with j = t_0 + 3 t_1.
    static DyadicLattice shifted(const GridGeometry& grid, int j, int top_level);
    static DyadicLattice standard(const GridGeometry& grid) { return shifted(grid, 0, natural_level(grid)); }
    /// All 3^dim shifted lattices.
    static std::vector<DyadicLattice> family(const GridGeometry& grid, int top_level);
    static std::vector<DyadicLattice> family(const GridGeometry& grid) { return family(grid, default_top_level(grid)); }

    /// Smallest J with 2^J >= every grid extent.
    static int natural_level(const GridGeometry& grid);
    /// natural_level + 2: some lattice of the family has a single top cube covering the grid.
    static int default_top_level(const GridGeometry& grid) { return natural_level(grid) + 2; }

    const GridGeometry& grid() const { return grid_; }
    std::array<int, 2> shift() const { return shift_; }
    int index() const { return shift_[0] + 3 * shift_[1]; }
    int top_level() const { return top_; }

    long offset(int axis, int level) const;
    /// Nominal (unclipped) cell box of cube (level, m).
    CellBox box(int level, const Index2& m) const;
    /// Box clipped to the grid.
    CellBox clipped_box(int level, const Index2& m) const { return box(level, m).clipped(grid_); }
    Index2 containing(int level, const Index2& cell) const;
    /// Cubes of the given level that meet the grid, in lattice order.
    std::vector<Index2> cubes_at(int level) const;
    std::vector<Index2> children(int level, const Index2& m) const;
    Index2 parent(int level, const Index2& m) const;
    Cube physical(int level, const Index2& m) const;

private:
    GridGeometry grid_;
    std::array<int, 2> shift_{0, 0};
    int top_ = 0;
};

/// Key of a lattice cube.
struct LatticeCube {
    int level = 0;
    Index2 index{0, 0};

    auto operator<=>(const LatticeCube&) const = default;
};

}  // namespace sparsedom
