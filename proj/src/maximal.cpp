#include "sparsedom/maximal.hpp"

#include <algorithm>
#include <cmath>

namespace sparsedom {

GridFunction hl_maximal(const GridFunction& f, const CubeFamilySpec& family) {
    const PrefixSums ps(f.abs());
    return sup_over_cubes(f.geometry(), family, [&](const CellBox& q) { return ps.box_average(q); });
}

GridFunction mr_maximal(const GridFunction& f, double r, const CubeFamilySpec& family) {
    if (!(r >= 1.0) || !std::isfinite(r)) throw Error("maximal exponent r must be >= 1");
    if (r == 1.0) return hl_maximal(f, family);
    return hl_maximal(f.pow(r), family).pow(1.0 / r);
}

GridFunction iterated_maximal(const GridFunction& f, int k, const CubeFamilySpec& family) {
    if (k < 0) throw Error("iteration count must be nonnegative");
    GridFunction g = f.abs();
    for (int i = 0; i < k; ++i) g = hl_maximal(g, family);
    return g;
}

GridFunction multilinear_maximal(const std::vector<GridFunction>& fs, const CubeFamilySpec& family) {
    if (fs.empty()) throw Error("multilinear maximal needs at least one function");
    std::vector<PrefixSums> ps;
    for (const auto& f : fs) {
        require_same_grid(fs.front().geometry(), f.geometry());
        ps.emplace_back(f.abs());
    }
    return sup_over_cubes(fs.front().geometry(), family, [&](const CellBox& q) {
        double v = 1.0;
        for (const auto& p : ps) v *= p.box_average(q);
        return v;
    });
}

GridFunction orlicz_maximal(const std::vector<GridFunction>& fs, std::size_t l, double a,
                            const CubeFamilySpec& family) {
    if (fs.empty()) throw Error("multilinear maximal needs at least one function");
    if (l > fs.size()) throw Error("Orlicz count exceeds the number of functions");
    const YoungFunction phi = YoungFunction::power(1.0, a);
    std::vector<PrefixSums> ps;
    for (const auto& f : fs) {
        require_same_grid(fs.front().geometry(), f.geometry());
        ps.emplace_back(f.abs());
    }
    return sup_over_cubes(fs.front().geometry(), family, [&](const CellBox& q) {
        double v = 1.0;
        for (std::size_t i = 0; i < fs.size(); ++i) v *= i < l ? orlicz_local_norm(fs[i], q, phi) : ps[i].box_average(q);
        return v;
    });
}

double oscillation(const GridFunction& g, const CellBox& q, double s) {
    if (q.empty()) throw Error("degenerate cube");
    if (!(s >= 1.0)) throw Error("oscillation exponent must be >= 1");
    std::vector<double> v;
    v.reserve(q.count());
    q.for_each_cell(g.geometry(), [&](std::size_t i) { v.push_back(g[i]); });
    if (std::isinf(s)) {
        const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
        return *hi - *lo;
    }
    double acc = 0.0;
    for (double a : v)
        for (double b : v) acc += std::pow(std::abs(a - b), s);
    const double n = static_cast<double>(v.size());
    return std::pow(acc / (n * n), 1.0 / s);
}

CellBox tripled_box(const GridGeometry& g, const CellBox& q) {
    CellBox t = q;
    for (int a = 0; a < g.dim; ++a) {
        const long e = q.extent(a);
        t.lo[a] -= e;
        t.hi[a] += e;
    }
    return t.clipped(g);
}

GridFunction grand_sharp_truncation(const OperatorFn& t, const GridFunction& f, double s,
                                    const CubeFamilySpec& family) {
    const auto& g = f.geometry();
    GridFunction out(g, 0.0);
    for_each_cube(g, family, [&](const CellBox& q) {
        GridFunction cut = f;
        tripled_box(g, q).for_each_cell(g, [&](std::size_t i) { cut[i] = 0.0; });
        if (cut.is_zero()) return;
        const double v = oscillation(t(cut), q, s);
        q.for_each_cell(g, [&](std::size_t i) { out[i] = std::max(out[i], v); });
    });
    return out;
}

RubioResult rubio_de_francia(const GridFunction& h, int terms, double norm_estimate, const CubeFamilySpec& family) {
    if (terms < 0) throw Error("Rubio de Francia truncation must be nonnegative");
    if (!(norm_estimate > 0.0) || !std::isfinite(norm_estimate)) throw Error("operator norm estimate must be positive");
    const double base = 2.0 * norm_estimate;
    RubioResult out;
    GridFunction mk = h.abs();
    out.value = mk;
    double scale = 1.0;
    for (int k = 1; k <= terms; ++k) {
        mk = hl_maximal(mk, family);
        scale /= base;
        for (std::size_t i = 0; i < mk.size(); ++i) out.value[i] += mk[i] * scale;
    }
    const double sup = h.max_abs();
    out.bounded = base > 1.0;
    if (out.bounded) {
        out.series_tail = sup * std::pow(base, -(terms + 1)) / (1.0 - 1.0 / base);
        out.a1_tail = sup * std::pow(base, -terms);
    } else {
        out.series_tail = kInf;
        out.a1_tail = sup * std::pow(base, -terms);
    }
    return out;
}

NormEstimate operator_norm_estimate(const OperatorFn& t, const std::function<double(const GridFunction&)>& norm,
                                    const std::vector<Sample>& corpus) {
    if (corpus.empty()) throw Error("empty corpus");
    NormEstimate best;
    bool any = false;
    for (const auto& s : corpus) {
        const double d = norm(s.f);
        if (!(d > 0.0)) throw Error("corpus function with zero norm");
        const double v = norm(t(s.f)) / d;
        if (!any || v > best.value) {
            best = {v, s.seed};
            any = true;
        }
    }
    return best;
}

NormEstimate operator_norm_estimate(const OperatorFn& t, const SpaceDescriptor& x, const std::vector<Sample>& corpus) {
    return operator_norm_estimate(
        t, [&](const GridFunction& f) { return space_norm(f, x); }, corpus);
}

}  // namespace sparsedom
