#include "sparsedom/cubes.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

namespace sparsedom {

namespace {

long dense_max_cells(const GridGeometry& g, const CubeFamilySpec& spec) {
    const long cap = static_cast<long>(std::max(g.extent(0), g.extent(1)));
    const double q = std::floor(spec.max_side / g.spacing + 1e-9);
    if (q >= static_cast<double>(cap)) return cap;
    return std::max<long>(1, static_cast<long>(q));
}

int dyadic_top(const GridGeometry& g, const CubeFamilySpec& spec) {
    int top = spec.top_level >= 0 ? spec.top_level : DyadicLattice::default_top_level(g);
    while (top > 0 && g.spacing * static_cast<double>(1L << top) > spec.max_side * (1 + 1e-12)) --top;
    return top;
}

std::vector<int> lattice_ids(const GridGeometry& g, const CubeFamilySpec& spec) {
    if (!spec.lattices.empty()) return spec.lattices;
    std::vector<int> ids(g.dim == 2 ? 9 : 3);
    for (std::size_t i = 0; i < ids.size(); ++i) ids[i] = static_cast<int>(i);
    return ids;
}

bool inside(const GridGeometry& g, const CellBox& b) {
    for (int a = 0; a < g.dim; ++a)
        if (b.lo[a] < 0 || b.hi[a] > static_cast<long>(g.extent(a))) return false;
    return true;
}

struct Window {
    long lo, hi;  // corner range per axis for side L
};

Window corner_range(const GridGeometry& g, int axis, long L, bool interior) {
    const long n = static_cast<long>(g.extent(axis));
    if (axis >= g.dim) return {0, 0};
    if (interior) return {0, n - L};
    return {-(L - 1), n - 1};
}

CellBox dense_box(const GridGeometry& g, long a0, long a1, long L) {
    CellBox b;
    b.lo = {a0, g.dim == 2 ? a1 : 0};
    b.hi = {a0 + L, g.dim == 2 ? a1 + L : 1};
    return b;
}

// out[x] = max_{a in [x-L+1, x] within [first, last]} in[a - first], for x in [0, n).
void sliding_max(const std::vector<double>& in, long first, long last, long L, long n, std::vector<double>& out) {
    out.assign(static_cast<std::size_t>(n), 0.0);
    std::deque<long> dq;
    long next = first;
    for (long x = 0; x < n; ++x) {
        const long hi = std::min(x, last);
        const long lo = std::max(x - L + 1, first);
        for (; next <= hi; ++next) {
            const double v = in[static_cast<std::size_t>(next - first)];
            while (!dq.empty() && in[static_cast<std::size_t>(dq.back() - first)] <= v) dq.pop_back();
            dq.push_back(next);
        }
        while (!dq.empty() && dq.front() < lo) dq.pop_front();
        if (!dq.empty() && lo <= hi) out[static_cast<std::size_t>(x)] = in[static_cast<std::size_t>(dq.front() - first)];
    }
}

}  // namespace

void CubeFamilySpec::validate(const GridGeometry& g) const {
    if (!(max_side > 0.0)) throw Error("cube family max side must be positive");
    if (mode == Mode::Dense && max_side != kUnbounded) {
        const double domain = std::max(g.domain_side(0), g.dim == 2 ? g.domain_side(1) : 0.0);
        if (max_side > domain * (1 + 1e-12)) throw Error("dense family max side exceeds the domain side");
    }
    const int count = g.dim == 2 ? 9 : 3;
    for (int j : lattices)
        if (j < 0 || j >= count) throw Error("lattice index out of range");
}

void for_each_cube(const GridGeometry& g, const CubeFamilySpec& spec,
                   const std::function<void(const CellBox&)>& fn) {
    spec.validate(g);
    switch (spec.mode) {
        case CubeFamilySpec::Mode::Explicit:
            for (const Cube& q : spec.cubes) {
                const CellBox b = cells_of(g, q);
                if (!b.empty()) fn(b);
            }
            return;
        case CubeFamilySpec::Mode::Dense: {
            const long S = dense_max_cells(g, spec);
            for (long L = 1; L <= S; ++L) {
                const Window w0 = corner_range(g, 0, L, spec.interior_only);
                const Window w1 = corner_range(g, 1, L, spec.interior_only);
                for (long a0 = w0.lo; a0 <= w0.hi; ++a0)
                    for (long a1 = w1.lo; a1 <= w1.hi; ++a1) fn(dense_box(g, a0, a1, L).clipped(g));
            }
            return;
        }
        case CubeFamilySpec::Mode::DyadicShifted: {
            const int top = dyadic_top(g, spec);
            for (int j : lattice_ids(g, spec)) {
                const DyadicLattice lat = DyadicLattice::shifted(g, j, top);
                for (int k = top; k >= 0; --k)
                    for (const Index2& m : lat.cubes_at(k)) {
                        const CellBox nominal = lat.box(k, m);
                        if (spec.interior_only && !inside(g, nominal)) continue;
                        const CellBox b = nominal.clipped(g);
                        if (!b.empty()) fn(b);
                    }
            }
            return;
        }
    }
}

GridFunction sup_over_cubes(const GridGeometry& g, const CubeFamilySpec& spec,
                            const std::function<double(const CellBox&)>& value) {
    GridFunction out(g, 0.0);
    if (spec.mode != CubeFamilySpec::Mode::Dense) {
        bool first_seen = false;
        std::vector<char> seen(g.size(), 0);
        for_each_cube(g, spec, [&](const CellBox& b) {
            const double v = value(b);
            b.for_each_cell(g, [&](std::size_t i) {
                if (!seen[i] || v > out[i]) out[i] = v;
                seen[i] = 1;
            });
            first_seen = true;
        });
        (void)first_seen;
        return out;
    }
    spec.validate(g);
    const long S = dense_max_cells(g, spec);
    const long n0 = static_cast<long>(g.extent(0));
    const long n1 = static_cast<long>(g.extent(1));
    std::vector<char> seen(g.size(), 0);
    std::vector<double> row, tmp, col, colout;
    for (long L = 1; L <= S; ++L) {
        const Window w0 = corner_range(g, 0, L, spec.interior_only);
        const Window w1 = corner_range(g, 1, L, spec.interior_only);
        if (w0.hi < w0.lo || w1.hi < w1.lo) continue;
        const long e0 = w0.hi - w0.lo + 1;
        // Per corner row a0: max over a1 windows -> partial[a0][x1].
        std::vector<double> partial(static_cast<std::size_t>(e0 * n1));
        for (long a0 = w0.lo; a0 <= w0.hi; ++a0) {
            row.clear();
            for (long a1 = w1.lo; a1 <= w1.hi; ++a1) row.push_back(value(dense_box(g, a0, a1, L).clipped(g)));
            if (g.dim == 2) {
                sliding_max(row, w1.lo, w1.hi, L, n1, tmp);
            } else {
                tmp = row;
            }
            std::copy(tmp.begin(), tmp.end(), partial.begin() + (a0 - w0.lo) * n1);
        }
        for (long x1 = 0; x1 < n1; ++x1) {
            col.resize(static_cast<std::size_t>(e0));
            for (long a0 = 0; a0 < e0; ++a0) col[static_cast<std::size_t>(a0)] = partial[static_cast<std::size_t>(a0 * n1 + x1)];
            sliding_max(col, w0.lo, w0.hi, L, n0, colout);
            for (long x0 = 0; x0 < n0; ++x0) {
                const long lo = std::max(x0 - L + 1, w0.lo), hi = std::min(x0, w0.hi);
                if (lo > hi) continue;
                const std::size_t idx = g.flat(x0, x1);
                const double v = colout[static_cast<std::size_t>(x0)];
                if (!seen[idx] || v > out[idx]) out[idx] = v;
                seen[idx] = 1;
            }
        }
    }
    return out;
}

FamilyMax max_over_cubes(const GridGeometry& g, const CubeFamilySpec& spec,
                         const std::function<double(const CellBox&)>& value) {
    FamilyMax best;
    bool any = false;
    for_each_cube(g, spec, [&](const CellBox& b) {
        const double v = value(b);
        if (!any || v > best.value) {
            best.value = v;
            best.cube = b;
            any = true;
        }
    });
    return best;
}

Cube to_cube(const GridGeometry& g, const CellBox& b) {
    Cube q;
    q.dim = g.dim;
    q.side = g.spacing * static_cast<double>(b.extent(0));
    q.lower = {g.origin[0] + g.spacing * static_cast<double>(b.lo[0]),
               g.dim == 2 ? g.origin[1] + g.spacing * static_cast<double>(b.lo[1]) : 0.0};
    return q;
}

}  // namespace sparsedom
