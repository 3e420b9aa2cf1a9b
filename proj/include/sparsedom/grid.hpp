#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace sparsedom {

/// Error raised for contract violations (grid mismatch, inadmissible input, ...).
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

using Point = std::array<double, 2>;
using Index2 = std::array<long, 2>;

/// Geometry of a uniform axis-aligned grid over R^1 or R^2.
///
/// Cell (i0, i1) covers [origin + i*h, origin + (i+1)*h) per axis and is
/// sampled at its center. Values are stored row-major with axis 0 slowest.
struct GridGeometry {
    int dim = 1;
    Point origin{0.0, 0.0};
    double spacing = 1.0;
    std::array<std::size_t, 2> shape{1, 1};

    static GridGeometry line(double lo, double hi, std::size_t cells);
    static GridGeometry square(double lo, double hi, std::size_t cells_per_axis);

    void validate() const;

    std::size_t size() const { return shape[0] * (dim == 2 ? shape[1] : 1); }
    std::size_t extent(int axis) const { return axis < dim ? shape[axis] : 1; }
    double cell_volume() const { return dim == 2 ? spacing * spacing : spacing; }

    std::size_t flat(long i0, long i1 = 0) const {
        return static_cast<std::size_t>(i0) * extent(1) + static_cast<std::size_t>(i1);
    }
    Index2 unflat(std::size_t idx) const {
        const std::size_t e1 = extent(1);
        return {static_cast<long>(idx / e1), static_cast<long>(idx % e1)};
    }
    Point center(std::size_t idx) const;
    double domain_side(int axis) const { return spacing * static_cast<double>(extent(axis)); }

    bool operator==(const GridGeometry& o) const;
};

/// Sampled real-valued function on a uniform grid; implicitly zero off-grid.
class GridFunction {
public:
    GridFunction() = default;
    explicit GridFunction(GridGeometry geom, double fill = 0.0);
    GridFunction(GridGeometry geom, std::vector<double> values);

    template <class F>
    static GridFunction from(const GridGeometry& geom, F&& fn) {
        GridFunction g(geom);
        for (std::size_t i = 0; i < g.size(); ++i) g.values_[i] = fn(geom.center(i));
        return g;
    }

    const GridGeometry& geometry() const { return geom_; }
    std::size_t size() const { return values_.size(); }
    std::span<const double> values() const& { return values_; }
    std::span<double> values() & { return values_; }
    std::span<const double> values() const&& = delete;
    double operator[](std::size_t i) const { return values_[i]; }
    double& operator[](std::size_t i) { return values_[i]; }

    double max_abs() const;
    bool is_zero() const;

    GridFunction abs() const;
    GridFunction pow(double r) const;

    GridFunction& operator+=(const GridFunction& o);
    GridFunction& operator-=(const GridFunction& o);
    GridFunction& operator*=(const GridFunction& o);
    GridFunction& operator*=(double c);

    friend GridFunction operator+(GridFunction a, const GridFunction& b) { return a += b; }
    friend GridFunction operator-(GridFunction a, const GridFunction& b) { return a -= b; }
    friend GridFunction operator*(GridFunction a, const GridFunction& b) { return a *= b; }
    friend GridFunction operator*(GridFunction a, double c) { return a *= c; }
    friend GridFunction operator*(double c, GridFunction a) { return a *= c; }

private:
    void require_same(const GridFunction& o) const;

    GridGeometry geom_;
    std::vector<double> values_;
};

/// Throws unless both functions live on the same grid.
void require_same_grid(const GridGeometry& a, const GridGeometry& b);

/// Axis-aligned cube [lower, lower + side)^dim.
struct Cube {
    int dim = 1;
    Point lower{0.0, 0.0};
    double side = 1.0;

    double volume() const { return dim == 2 ? side * side : side; }
    Point center() const { return {lower[0] + side / 2, lower[1] + side / 2}; }
    /// Same center, three times the side.
    Cube tripled() const;
};

struct Ball {
    int dim = 1;
    Point center{0.0, 0.0};
    double radius = 1.0;
};

/// Half-open box of cell indices [lo, hi) per axis; used after clipping to the grid.
struct CellBox {
    Index2 lo{0, 0};
    Index2 hi{1, 1};

    long extent(int axis) const { return hi[axis] - lo[axis]; }
    bool empty() const { return hi[0] <= lo[0] || hi[1] <= lo[1]; }
    std::size_t count() const {
        return empty() ? 0 : static_cast<std::size_t>(extent(0)) * static_cast<std::size_t>(extent(1));
    }
    bool contains(const Index2& c) const {
        return c[0] >= lo[0] && c[0] < hi[0] && c[1] >= lo[1] && c[1] < hi[1];
    }
    CellBox clipped(const GridGeometry& g) const;

    template <class F>
    void for_each_cell(const GridGeometry& g, F&& fn) const {
        for (long i = lo[0]; i < hi[0]; ++i)
            for (long j = lo[1]; j < hi[1]; ++j) fn(g.flat(i, j));
    }
    bool operator==(const CellBox&) const = default;
};

/// Cells of the grid covered by a cube: those whose centers lie in it. A
/// cube that meets the domain but contains no center snaps to the cell that
/// holds its center. Returns an empty box if the cube misses the domain.
CellBox cells_of(const GridGeometry& g, const Cube& q);

/// Sorted cell indices whose centers lie within distance r of the ball center.
std::vector<std::size_t> cells_of(const GridGeometry& g, const Ball& b);

/// Explicit cell set, cube or ball.
class Region {
public:
    Region(Cube q) : repr_(q) {}
    Region(Ball b) : repr_(b) {}
    /// Sorts and de-duplicates.
    explicit Region(std::vector<std::size_t> cells);

    std::vector<std::size_t> cells(const GridGeometry& g) const;

private:
    std::variant<std::vector<std::size_t>, Cube, Ball> repr_;
};

/// Midpoint quadrature over R, optionally weighted.
double integrate(const GridFunction& f, const Region& r, const GridFunction* w = nullptr);
double integrate(const GridFunction& f, const GridFunction* w = nullptr);

/// Rasterized measure of a region (cell count times cell volume).
double measure(const GridGeometry& g, const Region& r);

/// <f>_Q over the rasterized cube. Throws "degenerate cube" if Q misses the grid.
double local_average(const GridFunction& f, const Cube& q);

/// (Weighted) measure of {|f| > s}.
double level_measure(const GridFunction& f, double s, const GridFunction* w = nullptr);

/// Prefix sums for O(1) box sums; long double accumulation in ascending index order.
class PrefixSums {
public:
    PrefixSums() = default;
    explicit PrefixSums(const GridFunction& f);
    /// Sum of values over the box (box must be clipped to the grid).
    long double box_sum(const CellBox& b) const;
    double box_average(const CellBox& b) const {
        return static_cast<double>(box_sum(b) / static_cast<long double>(b.count()));
    }

private:
    std::size_t n0_ = 0, n1_ = 0;
    std::vector<long double> table_;
};

}  // namespace sparsedom
