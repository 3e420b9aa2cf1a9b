#include "sparsedom/lattice.hpp"

#include <cmath>

namespace sparsedom {

namespace {

long floor_div(long a, long b) {
    long q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

}  // namespace

DyadicLattice::DyadicLattice(GridGeometry grid, std::array<int, 2> shift, int top_level)
    : grid_(grid), shift_(shift), top_(top_level) {
    grid_.validate();
    for (int a = 0; a < 2; ++a)
        if (shift_[a] < 0 || shift_[a] > 2) throw Error("lattice shift must be in {0,1,2}");
    if (grid_.dim == 1) shift_[1] = 0;
    if (top_ < 0 || top_ > 40) throw Error("lattice top level out of range");
}

DyadicLattice DyadicLattice::shifted(const GridGeometry& grid, int j, int top_level) {
    const int count = grid.dim == 2 ? 9 : 3;
    if (j < 0 || j >= count) throw Error("lattice index out of range");
    return DyadicLattice(grid, {j % 3, j / 3}, top_level);
}

std::vector<DyadicLattice> DyadicLattice::family(const GridGeometry& grid, int top_level) {
    const int count = grid.dim == 2 ? 9 : 3;
    std::vector<DyadicLattice> out;
    for (int j = 0; j < count; ++j) out.push_back(shifted(grid, j, top_level));
    return out;
}

int DyadicLattice::natural_level(const GridGeometry& grid) {
    std::size_t n = std::max(grid.extent(0), grid.extent(1));
    int j = 0;
    while ((std::size_t{1} << j) < n) ++j;
    return j;
}

long DyadicLattice::offset(int axis, int level) const {
    if (axis >= grid_.dim) return 0;
    long p = 1;
    for (int i = 0; i < level; ++i) p *= -2;
    return shift_[axis] * ((p - 1) / 3);
}

CellBox DyadicLattice::box(int level, const Index2& m) const {
    const long side = 1L << level;
    CellBox b;
    for (int a = 0; a < 2; ++a) {
        if (a >= grid_.dim) {
            b.lo[a] = 0;
            b.hi[a] = 1;
            continue;
        }
        b.lo[a] = offset(a, level) + m[a] * side;
        b.hi[a] = b.lo[a] + side;
    }
    return b;
}

Index2 DyadicLattice::containing(int level, const Index2& cell) const {
    Index2 m{0, 0};
    for (int a = 0; a < grid_.dim; ++a) m[a] = floor_div(cell[a] - offset(a, level), 1L << level);
    return m;
}

std::vector<Index2> DyadicLattice::cubes_at(int level) const {
    Index2 first = containing(level, {0, 0});
    Index2 last = containing(level, {static_cast<long>(grid_.extent(0)) - 1, static_cast<long>(grid_.extent(1)) - 1});
    std::vector<Index2> out;
    for (long i = first[0]; i <= last[0]; ++i)
        for (long j = first[1]; j <= last[1]; ++j) out.push_back({i, j});
    return out;
}

std::vector<Index2> DyadicLattice::children(int level, const Index2& m) const {
    if (level == 0) return {};
    std::vector<Index2> out;
    // s_k - s_{k-1} = t (-1)^k 2^{k-1}, so children start at 2m + t (-1)^k.
    const int sign = (level % 2 == 0) ? 1 : -1;
    Index2 base{0, 0};
    for (int a = 0; a < grid_.dim; ++a) base[a] = 2 * m[a] + shift_[a] * sign;
    if (grid_.dim == 1) {
        out.push_back({base[0], 0});
        out.push_back({base[0] + 1, 0});
    } else {
        for (long i = 0; i < 2; ++i)
            for (long j = 0; j < 2; ++j) out.push_back({base[0] + i, base[1] + j});
    }
    return out;
}

Index2 DyadicLattice::parent(int level, const Index2& m) const {
    const CellBox b = box(level, m);
    return containing(level + 1, b.lo);
}

Cube DyadicLattice::physical(int level, const Index2& m) const {
    const CellBox b = box(level, m);
    Cube q;
    q.dim = grid_.dim;
    q.side = grid_.spacing * static_cast<double>(1L << level);
    q.lower = {grid_.origin[0] + grid_.spacing * static_cast<double>(b.lo[0]),
               grid_.dim == 2 ? grid_.origin[1] + grid_.spacing * static_cast<double>(b.lo[1]) : 0.0};
    return q;
}

}  // namespace sparsedom
