#pragma once

#include <functional>
#include <vector>

#include "sparsedom/grid.hpp"
#include "sparsedom/lattice.hpp"

namespace sparsedom {

/// Finite family of cubes standing in for "sup over all cubes Q containing x".
///
/// DyadicShifted uses the 3^dim shifted lattices (or the subset in `lattices`)
/// at every level whose nominal side is <= max_side. Dense takes every
/// grid-aligned cube of side 1..floor(max_side / h) cells whose lower corner
/// may lie off-grid; averages are over the part inside the grid. Explicit
/// lists physical cubes.
struct CubeFamilySpec {
    enum class Mode { DyadicShifted, Dense, Explicit };

    Mode mode = Mode::DyadicShifted;
    double max_side = kUnbounded;
    /// DyadicShifted only: which lattices (empty = all 3^dim).
    std::vector<int> lattices;
    /// DyadicShifted only: top lattice level (negative = DyadicLattice::default_top_level).
    int top_level = -1;
    /// Skip cubes that stick out of the grid.
    bool interior_only = false;
    std::vector<Cube> cubes;

    static constexpr double kUnbounded = 1e300;

    static CubeFamilySpec dyadic_shifted(double max_side = kUnbounded) {
        CubeFamilySpec s;
        s.max_side = max_side;
        return s;
    }
    static CubeFamilySpec dense(double max_side) {
        CubeFamilySpec s;
        s.mode = Mode::Dense;
        s.max_side = max_side;
        return s;
    }
    static CubeFamilySpec standard_dyadic_interior() {
        CubeFamilySpec s;
        s.lattices = {0};
        s.interior_only = true;
        return s;
    }
    static CubeFamilySpec explicit_cubes(std::vector<Cube> cubes) {
        CubeFamilySpec s;
        s.mode = Mode::Explicit;
        s.cubes = std::move(cubes);
        return s;
    }

    void validate(const GridGeometry& g) const;
};

/// Visits every cube of the family as a clipped, nonempty cell box, in a
/// fixed deterministic order (lattice, level descending, lattice index).
void for_each_cube(const GridGeometry& g, const CubeFamilySpec& spec,
                   const std::function<void(const CellBox&)>& fn);

/// out(x) = max over family cubes Q containing x of value(Q); 0 where no cube covers x.
GridFunction sup_over_cubes(const GridGeometry& g, const CubeFamilySpec& spec,
                            const std::function<double(const CellBox&)>& value);

/// Maximum of value(Q) over the family and the cube attaining it (first in family order).
struct FamilyMax {
    double value = 0.0;
    CellBox cube{{0, 0}, {0, 0}};
};
FamilyMax max_over_cubes(const GridGeometry& g, const CubeFamilySpec& spec,
                         const std::function<double(const CellBox&)>& value);

/// Physical cube whose rasterization is the box (only meaningful for square boxes).
Cube to_cube(const GridGeometry& g, const CellBox& b);

}  // namespace sparsedom
