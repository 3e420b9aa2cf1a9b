#include "sparsedom/operators.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "sparsedom/spaces.hpp"

namespace sparsedom {

double Omega::operator()(double u1, double u2) const {
    switch (kind) {
        case Kind::Sign1: return u1 > 0.0 ? 1.0 : (u1 < 0.0 ? -1.0 : 0.0);
        case Kind::Step: {
            const double s = u1 * u2;
            return s > 0.0 ? 1.0 : (s < 0.0 ? -1.0 : 0.0);
        }
        case Kind::Zero: return 0.0;
        case Kind::Custom: return fn(u1, u2);
    }
    return 0.0;
}

double Omega::sphere_mean() const {
    constexpr int n = 4096;
    double acc = 0.0;
    for (int k = 0; k < n; ++k) {
        const double th = (k + 0.5) * 2.0 * std::numbers::pi / n;
        acc += (*this)(std::cos(th), std::sin(th));
    }
    return acc / n;
}

Operator Operator::identity(double scale) {
    Operator t;
    t.scale_ = scale;
    t.name_ = scale == 1.0 ? "identity" : "scaled-identity";
    return t;
}

Operator Operator::hilbert() {
    Operator t;
    t.kind_ = Kind::Hilbert;
    t.name_ = "hilbert";
    return t;
}

Operator Operator::rough(Omega omega) {
    const double mean = omega.sphere_mean();
    if (!(std::abs(mean) <= 1e-10)) throw Error("rough kernel needs a zero-mean Omega");
    Operator t;
    t.kind_ = Kind::Rough;
    t.name_ = "rough";
    t.omega_ = std::move(omega);
    return t;
}

Operator Operator::maximal(CubeFamilySpec family) {
    Operator t;
    t.kind_ = Kind::Maximal;
    t.name_ = "maximal";
    t.family_ = std::move(family);
    return t;
}

Operator Operator::sparse(std::vector<SparseFamily> families, double r) {
    Operator t;
    t.kind_ = Kind::Sparse;
    t.name_ = "sparse";
    t.scale_ = r;
    t.sparse_ = std::make_shared<const std::vector<SparseFamily>>(std::move(families));
    return t;
}

Operator Operator::custom(std::string name, OperatorFn fn) {
    Operator t;
    t.kind_ = Kind::Custom;
    t.name_ = std::move(name);
    t.custom_ = std::move(fn);
    return t;
}

std::vector<double> Operator::kernel_table(const GridGeometry& g) const {
    if (kind_ == Kind::Hilbert) {
        if (g.dim != 1) throw Error("Hilbert transform needs a 1D grid");
        const long n = static_cast<long>(g.extent(0));
        std::vector<double> k(static_cast<std::size_t>(2 * n - 1), 0.0);
        for (long d = -(n - 1); d <= n - 1; ++d)
            if (d != 0) k[static_cast<std::size_t>(d + n - 1)] = 1.0 / (std::numbers::pi * static_cast<double>(d));
        return k;
    }
    if (g.dim != 2) throw Error("rough operator needs a 2D grid");
    const long n0 = static_cast<long>(g.extent(0)), n1 = static_cast<long>(g.extent(1));
    const long w = 2 * n1 - 1;
    std::vector<double> k(static_cast<std::size_t>((2 * n0 - 1) * w), 0.0);
    for (long d0 = -(n0 - 1); d0 <= n0 - 1; ++d0)
        for (long d1 = -(n1 - 1); d1 <= n1 - 1; ++d1) {
            if (d0 == 0 && d1 == 0) continue;
            const double r2 = static_cast<double>(d0 * d0 + d1 * d1);
            const double r = std::sqrt(r2);
            k[static_cast<std::size_t>((d0 + n0 - 1) * w + d1 + n1 - 1)] =
                omega_(static_cast<double>(d0) / r, static_cast<double>(d1) / r) / r2;
        }
    return k;
}

GridFunction Operator::apply_weighted(const GridFunction& f,
                                      const std::function<double(std::size_t, std::size_t)>& w) const {
    if (!kernel_form()) throw Error("operator has no kernel form");
    const auto& g = f.geometry();
    const std::vector<double> k = kernel_table(g);
    const long n0 = static_cast<long>(g.extent(0)), n1 = static_cast<long>(g.extent(1));
    const long width = 2 * n1 - 1;
    std::vector<std::size_t> support;
    for (std::size_t j = 0; j < f.size(); ++j)
        if (f[j] != 0.0) support.push_back(j);
    GridFunction out(g, 0.0);
    for (std::size_t i = 0; i < f.size(); ++i) {
        const Index2 xi = g.unflat(i);
        double acc = 0.0;
        for (std::size_t j : support) {
            if (j == i) continue;
            const Index2 xj = g.unflat(j);
            const double kv = k[static_cast<std::size_t>((xi[0] - xj[0] + n0 - 1) * width + xi[1] - xj[1] + n1 - 1)];
            acc += w ? kv * w(i, j) * f[j] : kv * f[j];
        }
        out[i] = acc;
    }
    return out;
}

GridFunction Operator::operator()(const GridFunction& f) const {
    switch (kind_) {
        case Kind::Identity: return scale_ == 1.0 ? f : f * scale_;
        case Kind::Hilbert:
        case Kind::Rough: return apply_weighted(f, {});
        case Kind::Maximal: return hl_maximal(f, family_);
        case Kind::Sparse: return sparse_operator(f, *sparse_, scale_);
        case Kind::Custom: return custom_(f);
    }
    return f;
}

GridFunction commutator_iterated(const Operator& t, const GridFunction& b, int m, const GridFunction& f) {
    if (!t.kernel_form()) throw Error("commutator needs a kernel-form operator");
    if (m < 1) throw Error("commutator order must be >= 1");
    require_same_grid(f.geometry(), b.geometry());
    return t.apply_weighted(f, [&](std::size_t i, std::size_t j) {
        const double d = b[i] - b[j];
        return m == 1 ? d : std::pow(d, m);
    });
}

GridFunction multilinear_commutator(const std::vector<GridFunction>& bs, const std::vector<int>& symbols,
                                    const GridFunction& f1, const GridFunction& f2) {
    const auto& g = f1.geometry();
    if (g.dim != 1) throw Error("bilinear model needs a 1D grid");
    require_same_grid(g, f2.geometry());
    if (!symbols.empty() && bs.size() != 2) throw Error("bilinear commutator needs two symbols");
    for (int s : symbols)
        if (s != 0 && s != 1) throw Error("symbol positions must be 0 or 1");
    for (const auto& b : bs) require_same_grid(g, b.geometry());
    const bool use0 = std::find(symbols.begin(), symbols.end(), 0) != symbols.end();
    const bool use1 = std::find(symbols.begin(), symbols.end(), 1) != symbols.end();

    const long n = static_cast<long>(g.extent(0));
    std::vector<long> s1, s2;
    for (long j = 0; j < n; ++j) {
        if (f1[static_cast<std::size_t>(j)] != 0.0) s1.push_back(j);
        if (f2[static_cast<std::size_t>(j)] != 0.0) s2.push_back(j);
    }
    GridFunction out(g, 0.0);
    for (long i = 0; i < n; ++i) {
        double acc = 0.0;
        for (long j : s1) {
            if (j == i) continue;
            const double w1 = use0 ? bs[0][static_cast<std::size_t>(i)] - bs[0][static_cast<std::size_t>(j)] : 1.0;
            const double sj = i > j ? 1.0 : -1.0;
            const double aj = static_cast<double>(std::abs(i - j));
            double inner = 0.0;
            for (long k : s2) {
                if (k == i) continue;
                const double w2 = use1 ? bs[1][static_cast<std::size_t>(i)] - bs[1][static_cast<std::size_t>(k)] : 1.0;
                const double sk = i > k ? 1.0 : -1.0;
                const double d = aj + static_cast<double>(std::abs(i - k));
                inner += sk * w2 * f2[static_cast<std::size_t>(k)] / (d * d);
            }
            acc += sj * w1 * f1[static_cast<std::size_t>(j)] * inner;
        }
        out[static_cast<std::size_t>(i)] = acc;
    }
    return out;
}

GridFunction bilinear_model(const GridFunction& f1, const GridFunction& f2) {
    return multilinear_commutator({}, {}, f1, f2);
}

std::vector<WrRow> wr_property_check(const OperatorFn& t, double r, const std::vector<CellBox>& cubes,
                                     const std::vector<GridFunction>& corpus, const std::vector<double>& lambdas) {
    if (!(r >= 1.0)) throw Error("W_r exponent must be >= 1");
    for (double l : lambdas)
        if (!(l > 0.0 && l < 1.0)) throw Error("lambda grid must lie in (0, 1)");
    std::vector<WrRow> rows;
    for (double l : lambdas) rows.push_back({l, 0.0});
    std::vector<double> v;
    for (const auto& f : corpus)
        for (const CellBox& q0 : cubes) {
            const auto& g = f.geometry();
            const CellBox q = q0.clipped(g);
            if (q.empty()) continue;
            long double acc = 0.0L;
            q.for_each_cell(g, [&](std::size_t i) { acc += std::pow(std::abs(f[i]), r); });
            const double avg = std::pow(static_cast<double>(acc / static_cast<long double>(q.count())), 1.0 / r);
            if (avg == 0.0) continue;
            GridFunction local(g, 0.0);
            q.for_each_cell(g, [&](std::size_t i) { local[i] = f[i]; });
            const GridFunction tf = t(local);
            v.clear();
            q.for_each_cell(g, [&](std::size_t i) { v.push_back(std::abs(tf[i]) / avg); });
            std::sort(v.begin(), v.end(), std::greater<>());
            for (auto& row : rows) {
                const auto k = static_cast<std::size_t>(std::floor(row.lambda * static_cast<double>(v.size()) + 1e-9));
                row.phi = std::max(row.phi, k < v.size() ? v[k] : 0.0);
            }
        }
    return rows;
}

JohnNirenbergReport john_nirenberg_check(const GridFunction& b, const CubeFamilySpec& family,
                                         const std::vector<double>& alphas, const CubeFamilySpec& upper_family) {
    JohnNirenbergReport rep;
    const auto& g = b.geometry();
    rep.bmo = bmo_norm(b, family);
    rep.bmo_upper = std::max(rep.bmo, bmo_norm(b, upper_family));
    if (rep.bmo == 0.0) {
        rep.skipped = true;
        return rep;
    }
    const double dimf = g.dim == 2 ? 4.0 : 2.0;
    const double e = std::numbers::e;
    std::vector<double> dev;
    for_each_cube(g, family, [&](const CellBox& q) {
        long double s = 0.0L;
        q.for_each_cell(g, [&](std::size_t i) { s += b[i]; });
        const double avg = static_cast<double>(s / static_cast<long double>(q.count()));
        dev.clear();
        q.for_each_cell(g, [&](std::size_t i) { dev.push_back(std::abs(b[i] - avg)); });
        const double vol = static_cast<double>(q.count()) * g.cell_volume();
        for (double a : alphas) {
            std::size_t above = 0;
            for (double d : dev) above += d > a ? 1 : 0;
            const double meas = static_cast<double>(above) * g.cell_volume();
            ++rep.checks;
            if (meas > e * vol * std::exp(-a / (dimf * e * rep.bmo)) * (1.0 + 1e-12)) ++rep.violations;
            if (meas > e * vol * std::exp(-a / (dimf * e * rep.bmo_upper)) * (1.0 + 1e-12)) ++rep.violations_upper;
        }
    });
    return rep;
}

}  // namespace sparsedom
