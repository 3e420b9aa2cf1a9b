#include "sparsedom/grid.hpp"

#include <algorithm>
#include <cmath>

namespace sparsedom {

GridGeometry GridGeometry::line(double lo, double hi, std::size_t cells) {
    GridGeometry g;
    g.dim = 1;
    g.origin = {lo, 0.0};
    g.spacing = (hi - lo) / static_cast<double>(cells);
    g.shape = {cells, 1};
    g.validate();
    return g;
}

GridGeometry GridGeometry::square(double lo, double hi, std::size_t cells_per_axis) {
    GridGeometry g;
    g.dim = 2;
    g.origin = {lo, lo};
    g.spacing = (hi - lo) / static_cast<double>(cells_per_axis);
    g.shape = {cells_per_axis, cells_per_axis};
    g.validate();
    return g;
}

void GridGeometry::validate() const {
    if (dim != 1 && dim != 2) throw Error("grid dimension must be 1 or 2");
    if (!(spacing > 0.0) || !std::isfinite(spacing)) throw Error("grid spacing must be positive");
    if (shape[0] < 1 || (dim == 2 && shape[1] < 1)) throw Error("grid extents must be >= 1");
    if (!std::isfinite(origin[0]) || !std::isfinite(origin[1])) throw Error("grid origin must be finite");
}

Point GridGeometry::center(std::size_t idx) const {
    const auto c = unflat(idx);
    Point p{origin[0] + (static_cast<double>(c[0]) + 0.5) * spacing, 0.0};
    if (dim == 2) p[1] = origin[1] + (static_cast<double>(c[1]) + 0.5) * spacing;
    return p;
}

bool GridGeometry::operator==(const GridGeometry& o) const {
    if (dim != o.dim || spacing != o.spacing || shape[0] != o.shape[0] || origin[0] != o.origin[0])
        return false;
    if (dim == 2 && (shape[1] != o.shape[1] || origin[1] != o.origin[1])) return false;
    return true;
}

void require_same_grid(const GridGeometry& a, const GridGeometry& b) {
    if (!(a == b)) throw Error("grid mismatch");
}

GridFunction::GridFunction(GridGeometry geom, double fill) : geom_(geom) {
    geom_.validate();
    if (geom_.dim == 1) geom_.shape[1] = 1;
    values_.assign(geom_.size(), fill);
}

GridFunction::GridFunction(GridGeometry geom, std::vector<double> values)
    : geom_(geom), values_(std::move(values)) {
    geom_.validate();
    if (geom_.dim == 1) geom_.shape[1] = 1;
    if (values_.size() != geom_.size()) throw Error("values length does not match grid shape");
}

double GridFunction::max_abs() const {
    double m = 0.0;
    for (double v : values_) m = std::max(m, std::abs(v));
    return m;
}

bool GridFunction::is_zero() const {
    return std::all_of(values_.begin(), values_.end(), [](double v) { return v == 0.0; });
}

GridFunction GridFunction::abs() const {
    GridFunction r = *this;
    for (double& v : r.values_) v = std::abs(v);
    return r;
}

GridFunction GridFunction::pow(double e) const {
    GridFunction r = *this;
    for (double& v : r.values_) v = std::pow(std::abs(v), e);
    return r;
}

void GridFunction::require_same(const GridFunction& o) const { require_same_grid(geom_, o.geom_); }

GridFunction& GridFunction::operator+=(const GridFunction& o) {
    require_same(o);
    for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += o.values_[i];
    return *this;
}

GridFunction& GridFunction::operator-=(const GridFunction& o) {
    require_same(o);
    for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= o.values_[i];
    return *this;
}

GridFunction& GridFunction::operator*=(const GridFunction& o) {
    require_same(o);
    for (std::size_t i = 0; i < values_.size(); ++i) values_[i] *= o.values_[i];
    return *this;
}

GridFunction& GridFunction::operator*=(double c) {
    for (double& v : values_) v *= c;
    return *this;
}

Cube Cube::tripled() const {
    Cube c = *this;
    c.lower = {lower[0] - side, lower[1] - side};
    c.side = 3 * side;
    return c;
}

CellBox CellBox::clipped(const GridGeometry& g) const {
    CellBox c = *this;
    for (int a = 0; a < 2; ++a) {
        c.lo[a] = std::max<long>(lo[a], 0);
        c.hi[a] = std::min<long>(hi[a], static_cast<long>(g.extent(a)));
        if (c.hi[a] < c.lo[a]) c.hi[a] = c.lo[a];
    }
    return c;
}

CellBox cells_of(const GridGeometry& g, const Cube& q) {
    if (!(q.side > 0.0)) throw Error("cube side must be positive");
    CellBox box;
    bool meets = true;
    for (int a = 0; a < g.dim; ++a) {
        const double lo = (q.lower[a] - g.origin[a]) / g.spacing;
        const double hi = (q.lower[a] + q.side - g.origin[a]) / g.spacing;
        const double n = static_cast<double>(g.extent(a));
        if (hi <= 0.0 || lo >= n) meets = false;
        box.lo[a] = static_cast<long>(std::ceil(lo - 0.5));
        box.hi[a] = static_cast<long>(std::ceil(hi - 0.5));
    }
    if (!meets) return CellBox{{0, 0}, {0, 0}};
    CellBox c = box.clipped(g);
    if (c.empty()) {
        // Sub-cell cube: snap to the cell holding its center.
        const Point m = q.center();
        for (int a = 0; a < g.dim; ++a) {
            long i = static_cast<long>(std::floor((m[a] - g.origin[a]) / g.spacing));
            i = std::clamp<long>(i, 0, static_cast<long>(g.extent(a)) - 1);
            c.lo[a] = i;
            c.hi[a] = i + 1;
        }
    }
    return c;
}

std::vector<std::size_t> cells_of(const GridGeometry& g, const Ball& b) {
    if (!(b.radius >= 0.0)) throw Error("ball radius must be nonnegative");
    std::vector<std::size_t> out;
    Index2 lo{0, 0}, hi{1, 1};
    for (int a = 0; a < g.dim; ++a) {
        const double l = (b.center[a] - b.radius - g.origin[a]) / g.spacing - 0.5;
        const double h = (b.center[a] + b.radius - g.origin[a]) / g.spacing - 0.5;
        lo[a] = std::max<long>(static_cast<long>(std::floor(l)), 0);
        hi[a] = std::min<long>(static_cast<long>(std::ceil(h)) + 1, static_cast<long>(g.extent(a)));
    }
    const double r2 = b.radius * b.radius;
    for (long i = lo[0]; i < hi[0]; ++i) {
        const double dx = g.origin[0] + (static_cast<double>(i) + 0.5) * g.spacing - b.center[0];
        for (long j = lo[1]; j < hi[1]; ++j) {
            double d2 = dx * dx;
            if (g.dim == 2) {
                const double dy = g.origin[1] + (static_cast<double>(j) + 0.5) * g.spacing - b.center[1];
                d2 += dy * dy;
            }
            if (d2 <= r2) out.push_back(g.flat(i, j));
        }
    }
    return out;
}

Region::Region(std::vector<std::size_t> cells) {
    std::sort(cells.begin(), cells.end());
    cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
    repr_ = std::move(cells);
}

std::vector<std::size_t> Region::cells(const GridGeometry& g) const {
    if (const auto* v = std::get_if<std::vector<std::size_t>>(&repr_)) {
        if (!v->empty() && v->back() >= g.size()) throw Error("cell index outside grid");
        return *v;
    }
    if (const auto* q = std::get_if<Cube>(&repr_)) {
        std::vector<std::size_t> out;
        cells_of(g, *q).for_each_cell(g, [&](std::size_t i) { out.push_back(i); });
        return out;
    }
    return cells_of(g, std::get<Ball>(repr_));
}

double integrate(const GridFunction& f, const Region& r, const GridFunction* w) {
    const auto& g = f.geometry();
    if (w) require_same_grid(g, w->geometry());
    double acc = 0.0;
    for (std::size_t i : r.cells(g)) acc += w ? f[i] * (*w)[i] : f[i];
    return acc * g.cell_volume();
}

double integrate(const GridFunction& f, const GridFunction* w) {
    if (w) require_same_grid(f.geometry(), w->geometry());
    double acc = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) acc += w ? f[i] * (*w)[i] : f[i];
    return acc * f.geometry().cell_volume();
}

double measure(const GridGeometry& g, const Region& r) {
    return static_cast<double>(r.cells(g).size()) * g.cell_volume();
}

double local_average(const GridFunction& f, const Cube& q) {
    const auto& g = f.geometry();
    const CellBox box = cells_of(g, q);
    if (box.empty()) throw Error("degenerate cube");
    double acc = 0.0;
    box.for_each_cell(g, [&](std::size_t i) { acc += f[i]; });
    return acc / static_cast<double>(box.count());
}

double level_measure(const GridFunction& f, double s, const GridFunction* w) {
    if (s < 0.0) throw Error("level must be nonnegative");
    if (w) require_same_grid(f.geometry(), w->geometry());
    double acc = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i)
        if (std::abs(f[i]) > s) acc += w ? (*w)[i] : 1.0;
    return acc * f.geometry().cell_volume();
}

PrefixSums::PrefixSums(const GridFunction& f) {
    const auto& g = f.geometry();
    n0_ = g.extent(0);
    n1_ = g.extent(1);
    table_.assign((n0_ + 1) * (n1_ + 1), 0.0L);
    for (std::size_t i = 0; i < n0_; ++i) {
        long double row = 0.0L;
        for (std::size_t j = 0; j < n1_; ++j) {
            row += f[i * n1_ + j];
            table_[(i + 1) * (n1_ + 1) + (j + 1)] = table_[i * (n1_ + 1) + (j + 1)] + row;
        }
    }
}

long double PrefixSums::box_sum(const CellBox& b) const {
    const auto at = [&](long i, long j) { return table_[static_cast<std::size_t>(i) * (n1_ + 1) + static_cast<std::size_t>(j)]; };
    return at(b.hi[0], b.hi[1]) - at(b.lo[0], b.hi[1]) - at(b.hi[0], b.lo[1]) + at(b.lo[0], b.lo[1]);
}

}  // namespace sparsedom
