#include "sparsedom/spaces.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

namespace sparsedom {

void YoungFunction::validate() const {
    if (kind == Kind::Power) {
        if (!(p >= 1.0) || !std::isfinite(p) || !(a >= 0.0) || !std::isfinite(a))
            throw Error("Young function t^p log^a(e+t) needs p >= 1, a >= 0");
    } else if (!(a >= 1.0) || !std::isfinite(a)) {
        throw Error("Young function exp(t^a) - 1 needs a >= 1");
    }
}

double YoungFunction::operator()(double t) const {
    if (t <= 0.0) return 0.0;
    if (kind == Kind::Power) {
        const double base = std::pow(t, p);
        return a == 0.0 ? base : base * std::pow(std::log(std::numbers::e + t), a);
    }
    return std::expm1(std::pow(t, a));
}

SpaceDescriptor SpaceDescriptor::with_weight(GridFunction w) const {
    SpaceDescriptor out = *this;
    out.weight = std::move(w);
    return out;
}

SpaceDescriptor SpaceDescriptor::powered(double s) const {
    if (!(s > 0.0) || !std::isfinite(s)) throw Error("power transform exponent must be positive");
    SpaceDescriptor out = *this;
    out.power *= s;
    return out;
}

void SpaceDescriptor::validate() const {
    if (!(power > 0.0) || !std::isfinite(power)) throw Error("inadmissible descriptor: power transform");
    if (weight) {
        weight->geometry().validate();
        for (double v : weight->values())
            if (!(v >= 0.0) || !std::isfinite(v)) throw Error("inadmissible descriptor: weight must be nonnegative");
    }
    std::visit(
        [&](const auto& k) {
            using K = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<K, Lebesgue>) {
                if (!(k.p >= 1.0)) throw Error("inadmissible descriptor: Lebesgue exponent must be >= 1");
            } else if constexpr (std::is_same_v<K, Lorentz>) {
                if (!(k.p > 0.0) || !(k.q > 0.0) || (std::isinf(k.p) && !std::isinf(k.q)))
                    throw Error("inadmissible pair");
            } else if constexpr (std::is_same_v<K, VariableExponent>) {
                k.p.geometry().validate();
                for (double v : k.p.values())
                    if (!(v >= 1.0)) throw Error("inadmissible descriptor: variable exponent must lie in [1, inf]");
                if (weight && !(weight->geometry() == k.p.geometry()))
                    throw Error("grid mismatch between exponent and weight");
            } else {
                k.phi.validate();
            }
        },
        kind);
}

std::string SpaceDescriptor::name() const {
    std::string base = std::visit(
        [](const auto& k) -> std::string {
            using K = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<K, Lebesgue>) return "lebesgue";
            else if constexpr (std::is_same_v<K, Lorentz>) return "lorentz";
            else if constexpr (std::is_same_v<K, VariableExponent>) return "variable";
            else return "orlicz";
        },
        kind);
    return base;
}

double luxemburg_gauge(const std::function<double(double)>& rho, double seed) {
    if (!(seed > 0.0) || !std::isfinite(seed)) throw Error("Luxemburg seed must be positive");
    double hi = seed;
    int guard = 0;
    while (!(rho(hi) <= 1.0)) {
        hi *= 2.0;
        if (++guard > 2000) throw Error("Luxemburg bracket did not close");
    }
    double lo = hi;
    guard = 0;
    while (rho(lo) <= 1.0) {
        lo /= 2.0;
        if (lo == 0.0 || ++guard > 2000) return 0.0;
    }
    for (int it = 0; it < 200; ++it) {
        if (hi - lo <= 1e-12 * hi) return hi;
        const double mid = 0.5 * (lo + hi);
        if (rho(mid) <= 1.0) hi = mid;
        else lo = mid;
    }
    throw Error("Luxemburg bisection did not converge");
}

namespace {

std::vector<std::size_t> all_cells(std::size_t n) {
    std::vector<std::size_t> c(n);
    std::iota(c.begin(), c.end(), std::size_t{0});
    return c;
}

double lebesgue_on(const std::vector<double>& v, const std::vector<double>& mass, double p) {
    double top = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i)
        if (mass[i] > 0.0) top = std::max(top, std::abs(v[i]));
    if (top == 0.0) return 0.0;
    if (std::isinf(p)) return top;
    double acc = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) acc += std::pow(std::abs(v[i]) / top, p) * mass[i];
    return top * std::pow(acc, 1.0 / p);
}

double variable_rho(const std::vector<double>& v, const std::vector<double>& mass, const std::vector<double>& ex,
                    double lambda) {
    double acc = 0.0, sup = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const double t = std::abs(v[i]) / lambda;
        if (std::isinf(ex[i])) {
            if (mass[i] > 0.0) sup = std::max(sup, t);
        } else {
            acc += std::pow(t, ex[i]) * mass[i];
        }
    }
    return acc + sup;
}

}  // namespace

double space_norm_on(const GridFunction& f, const SpaceDescriptor& x, const std::vector<std::size_t>& cells) {
    x.validate();
    const auto& g = f.geometry();
    if (x.weight) require_same_grid(g, x.weight->geometry());
    if (const auto* ve = std::get_if<VariableExponent>(&x.kind)) require_same_grid(g, ve->p.geometry());

    const double vol = g.cell_volume();
    std::vector<double> v, mass;
    v.reserve(cells.size());
    mass.reserve(cells.size());
    for (std::size_t i : cells) {
        const double a = std::abs(f[i]);
        v.push_back(x.power == 1.0 ? a : std::pow(a, x.power));
        mass.push_back(x.weight ? (*x.weight)[i] * vol : vol);
    }

    double n = std::visit(
        [&](const auto& k) -> double {
            using K = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<K, Lebesgue>) {
                return lebesgue_on(v, mass, k.p);
            } else if constexpr (std::is_same_v<K, Lorentz>) {
                return lorentz_norm(decreasing_rearrangement(v, mass), k.p, k.q);
            } else if constexpr (std::is_same_v<K, VariableExponent>) {
                std::vector<double> ex;
                ex.reserve(cells.size());
                for (std::size_t i : cells) ex.push_back(k.p[i]);
                double top = 0.0;
                for (double a : v) top = std::max(top, a);
                if (top == 0.0) return 0.0;
                return luxemburg_gauge([&](double lam) { return variable_rho(v, mass, ex, lam); }, top);
            } else {
                double top = 0.0;
                for (double a : v) top = std::max(top, a);
                if (top == 0.0) return 0.0;
                return luxemburg_gauge(
                    [&](double lam) {
                        double acc = 0.0;
                        for (std::size_t i = 0; i < v.size(); ++i) acc += k.phi(v[i] / lam) * mass[i];
                        return acc;
                    },
                    top);
            }
        },
        x.kind);
    return x.power == 1.0 ? n : std::pow(n, 1.0 / x.power);
}

double space_norm(const GridFunction& f, const SpaceDescriptor& x) {
    return space_norm_on(f, x, all_cells(f.size()));
}

double modular(const GridFunction& f, const GridFunction& p, const GridFunction* w) {
    require_same_grid(f.geometry(), p.geometry());
    if (w) require_same_grid(f.geometry(), w->geometry());
    const double vol = f.geometry().cell_volume();
    double acc = 0.0, sup = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) {
        const double a = std::abs(f[i]);
        const double m = w ? (*w)[i] * vol : vol;
        if (std::isinf(p[i])) {
            if (m > 0.0) sup = std::max(sup, a);
        } else {
            acc += std::pow(a, p[i]) * m;
        }
    }
    return acc + sup;
}

double luxemburg_norm(const GridFunction& f, const GridFunction& p, const GridFunction* w) {
    SpaceDescriptor x = SpaceDescriptor::variable(p);
    if (w) x.weight = *w;
    return space_norm(f, x);
}

double orlicz_local_norm(const GridFunction& f, const CellBox& box, const YoungFunction& phi) {
    phi.validate();
    if (box.empty()) throw Error("degenerate cube");
    std::vector<double> v;
    v.reserve(box.count());
    double top = 0.0;
    box.for_each_cell(f.geometry(), [&](std::size_t i) {
        v.push_back(std::abs(f[i]));
        top = std::max(top, v.back());
    });
    if (top == 0.0) return 0.0;
    const double inv = 1.0 / static_cast<double>(v.size());
    return luxemburg_gauge(
        [&](double lam) {
            double acc = 0.0;
            for (double a : v) acc += phi(a / lam);
            return acc * inv;
        },
        top);
}

double orlicz_local_norm(const GridFunction& f, const Cube& q, const YoungFunction& phi) {
    return orlicz_local_norm(f, cells_of(f.geometry(), q), phi);
}

namespace {

double conjugate(double p) {
    if (p == 1.0) return kInf;
    if (std::isinf(p)) return 1.0;
    return p / (p - 1.0);
}

}  // namespace

SpaceDescriptor associate(const SpaceDescriptor& x) {
    x.validate();
    if (x.power != 1.0) throw Error("no computable associate for a power-transformed space");
    return std::visit(
        [&](const auto& k) -> SpaceDescriptor {
            using K = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<K, Lebesgue>) {
                SpaceDescriptor out = SpaceDescriptor::lebesgue(conjugate(k.p));
                if (x.weight) {
                    if (k.p == 1.0 || std::isinf(k.p)) throw Error("no computable associate for weighted L^1 or L^inf");
                    GridFunction w = *x.weight;
                    const double e = 1.0 - conjugate(k.p);
                    for (double& v : w.values()) {
                        if (v <= 0.0) throw Error("associate weight needs a positive weight");
                        v = std::pow(v, e);
                    }
                    out.weight = std::move(w);
                }
                return out;
            } else if constexpr (std::is_same_v<K, Lorentz>) {
                if (x.weight) throw Error("no computable associate for weighted Lorentz spaces");
                if (!(k.p > 1.0) || std::isinf(k.p) || !(k.q >= 1.0))
                    throw Error("Lorentz associate needs 1 < p < inf, q >= 1");
                return SpaceDescriptor::lorentz(conjugate(k.p), conjugate(k.q));
            } else if constexpr (std::is_same_v<K, VariableExponent>) {
                if (x.weight) throw Error("no computable associate for weighted variable exponent spaces");
                GridFunction q = k.p;
                for (double& v : q.values()) v = conjugate(v);
                return SpaceDescriptor::variable(std::move(q));
            } else {
                throw Error("no computable associate for Orlicz spaces");
            }
        },
        x.kind);
}

double holder_constant(const SpaceDescriptor& x) {
    if (const auto* ve = std::get_if<VariableExponent>(&x.kind)) {
        double lo = kInf, hi = 0.0;
        for (double v : ve->p.values()) {
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        return 1.0 + 1.0 / lo - 1.0 / hi;
    }
    return 1.0;
}

double ball_volume(int dim, double r) { return dim == 2 ? std::numbers::pi * r * r : 2.0 * r; }

double lorentz_chi_closed_form(double p, double q, int dim, double r) {
    if (std::isinf(p)) return 1.0;
    const double v = std::pow(ball_volume(dim, r), 1.0 / p);
    return std::isinf(q) ? v : std::pow(p / q, 1.0 / q) * v;
}

ChiBallNorm chi_ball_norm(const SpaceDescriptor& x, const Ball& b, const GridGeometry* grid) {
    x.validate();
    if (!(b.radius > 0.0)) throw Error("ball radius must be positive");
    ChiBallNorm out;
    const double s = 1.0 / x.power;
    if (const auto* lo = std::get_if<Lorentz>(&x.kind); lo && !x.weight) {
        out.value = std::pow(lorentz_chi_closed_form(lo->p, lo->q, b.dim, b.radius), s);
        return out;
    }
    if (const auto* ve = std::get_if<VariableExponent>(&x.kind); ve && !x.weight) {
        const auto& g = ve->p.geometry();
        std::vector<std::size_t> cells = cells_of(g, b);
        if (cells.empty()) {
            Index2 c{0, 0};
            for (int a = 0; a < g.dim; ++a) {
                const long n = static_cast<long>(g.extent(a));
                c[a] = std::clamp(static_cast<long>(std::floor((b.center[a] - g.origin[a]) / g.spacing)), 0L, n - 1);
            }
            cells.push_back(g.flat(c[0], c[1]));
        }
        double inv = 0.0;
        for (std::size_t i : cells) inv += 1.0 / ve->p[i];
        inv /= static_cast<double>(cells.size());
        out.value = std::pow(std::pow(ball_volume(b.dim, b.radius), inv), s);
        out.equivalent_only = true;
        return out;
    }
    const GridGeometry* g = grid;
    if (!g && x.weight) g = &x.weight->geometry();
    if (!g) {
        if (const auto* le = std::get_if<Lebesgue>(&x.kind); le && !x.weight) {
            out.value = std::isinf(le->p) ? 1.0 : std::pow(std::pow(ball_volume(b.dim, b.radius), 1.0 / le->p), s);
            return out;
        }
        throw Error("chi_ball_norm needs a grid for this space");
    }
    GridFunction chi(*g, 0.0);
    for (std::size_t i : cells_of(*g, b)) chi[i] = 1.0;
    out.value = space_norm(chi, x);
    return out;
}

MorreyWeight MorreyWeight::power_radius(double lambda, double q) {
    MorreyWeight u;
    u.kind = Kind::PowerRadius;
    u.lambda = lambda;
    u.q = q;
    return u;
}

MorreyWeight MorreyWeight::chi_norm_power(SpaceDescriptor x, double theta) {
    MorreyWeight u;
    u.kind = Kind::ChiNormPower;
    u.space = std::make_shared<const SpaceDescriptor>(std::move(x));
    u.theta = theta;
    return u;
}

MorreyWeight MorreyWeight::constant_value(double c) {
    MorreyWeight u;
    u.constant = c;
    return u;
}

MorreyWeight MorreyWeight::tabulated(std::function<double(const Point&, double)> fn) {
    MorreyWeight u;
    u.kind = Kind::Tabulated;
    u.table = std::move(fn);
    return u;
}

double MorreyWeight::operator()(const Point& x, double r, int dim, const GridGeometry* grid) const {
    switch (kind) {
        case Kind::PowerRadius:
            return std::pow(r, lambda / q);
        case Kind::ChiNormPower:
            return std::pow(chi_ball_norm(*space, Ball{dim, x, r}, grid).value, theta);
        case Kind::Constant:
            return constant;
        case Kind::Tabulated:
            return table(x, r);
    }
    return 0.0;
}

BallFamily BallFamily::dyadic(const GridGeometry& g, std::size_t stride, int levels) {
    if (stride == 0) throw Error("ball family stride must be positive");
    BallFamily f;
    for (std::size_t i = 0; i < g.size(); ++i) {
        const Index2 c = g.unflat(i);
        if (c[0] % static_cast<long>(stride) == 0 && c[1] % static_cast<long>(stride) == 0)
            f.centers.push_back(g.center(i));
    }
    const double diam = g.dim == 2 ? std::hypot(g.domain_side(0), g.domain_side(1)) : g.domain_side(0);
    for (int k = 0; levels < 0 || k <= levels; ++k) {
        const double r = g.spacing * std::ldexp(1.0, k);
        if (r > diam) break;
        f.radii.push_back(r);
    }
    return f;
}

void BallFamily::validate() const {
    if (centers.empty() || radii.empty()) throw Error("empty ball family");
    for (double r : radii)
        if (!(r > 0.0)) throw Error("ball radius must be positive");
}

MorreyResult morrey_norm(const GridFunction& f, const SpaceDescriptor& x, const MorreyWeight& u,
                         const BallFamily& balls) {
    balls.validate();
    const auto& g = f.geometry();
    MorreyResult best;
    bool any = false;
    for (const Point& c : balls.centers)
        for (double r : balls.radii) {
            const double uv = u(c, r, g.dim, &g);
            if (!(uv > 0.0)) throw Error("Morrey weight must be positive");
            const auto cells = cells_of(g, Ball{g.dim, c, r});
            const double n = cells.empty() ? 0.0 : space_norm_on(f, x, cells);
            const double v = n / uv;
            if (!any || v > best.value) {
                best = {v, c, r};
                any = true;
            }
        }
    return best;
}

MorreyResult classical_morrey_norm(const GridFunction& f, double p, double lambda, const BallFamily& balls) {
    return morrey_norm(f, SpaceDescriptor::lebesgue(p), MorreyWeight::power_radius(lambda, p), balls);
}

BlockBound block_norm_upper_bound(const GridFunction& f, const SpaceDescriptor& x, const MorreyWeight& u,
                                  const BallFamily& balls) {
    balls.validate();
    const auto& g = f.geometry();
    std::vector<std::size_t> supp;
    for (std::size_t i = 0; i < f.size(); ++i)
        if (f[i] != 0.0) supp.push_back(i);
    BlockBound out;
    if (supp.empty()) return out;
    bool found = false;
    for (double r : balls.radii)
        for (const Point& c : balls.centers) {
            if (found && r >= out.radius) continue;
            const auto cells = cells_of(g, Ball{g.dim, c, r});
            if (std::includes(cells.begin(), cells.end(), supp.begin(), supp.end())) {
                out.center = c;
                out.radius = r;
                found = true;
            }
        }
    if (!found) throw Error("no family ball covers the support");
    out.value = space_norm(f, x) * u(out.center, out.radius, g.dim, &g);
    return out;
}

double mean_oscillation(const GridFunction& b, const CellBox& box) {
    if (box.empty()) throw Error("degenerate cube");
    const auto& g = b.geometry();
    long double s = 0.0L;
    box.for_each_cell(g, [&](std::size_t i) { s += b[i]; });
    const long double n = static_cast<long double>(box.count());
    const double avg = static_cast<double>(s / n);
    long double dev = 0.0L;
    box.for_each_cell(g, [&](std::size_t i) { dev += std::abs(b[i] - avg); });
    return static_cast<double>(dev / n);
}

double bmo_norm(const GridFunction& b, const CubeFamilySpec& family) {
    return max_over_cubes(b.geometry(), family, [&](const CellBox& q) { return mean_oscillation(b, q); }).value;
}

GridFunction sharp_maximal(const GridFunction& f, const CubeFamilySpec& family) {
    return sup_over_cubes(f.geometry(), family, [&](const CellBox& q) { return mean_oscillation(f, q); });
}

WxCheck wx_alpha_check(const MorreyWeight& u, const SpaceDescriptor& x, double alpha,
                       const std::vector<BallSample>& samples, int terms, int dim, const GridGeometry* grid) {
    if (terms < 8) throw Error("series truncation must be at least 8");
    if (samples.empty()) throw Error("no sample balls");
    auto chi = [&](const Point& c, double r) { return chi_ball_norm(x, Ball{dim, c, r}, grid).value; };
    WxCheck out;

    std::vector<double> ratio(samples.size()), uval(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i) {
        uval[i] = u(samples[i].center, samples[i].radius, dim, grid);
        if (!(uval[i] > 0.0)) throw Error("Morrey weight must be positive");
        ratio[i] = chi(samples[i].center, samples[i].radius) / uval[i];
    }
    for (std::size_t i = 0; i < samples.size(); ++i)
        for (std::size_t j = 0; j < samples.size(); ++j)
            if (uval[i] <= uval[j]) out.c_ratio = std::max(out.c_ratio, ratio[i] / ratio[j]);

    bool inconclusive = false;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const auto& s = samples[i];
        const double base = chi(s.center, s.radius);
        std::vector<double> partial;
        double sum = 0.0, last = 0.0, prev = 0.0;
        for (int j = 0; j <= terms; ++j) {
            const double big = std::ldexp(s.radius, j + 1);
            const double t = std::pow(2.0, (j + 1) * alpha) * base / chi(s.center, big) * u(s.center, big, dim, grid) /
                             uval[i];
            prev = last;
            last = t;
            sum += t;
            partial.push_back(sum);
        }
        const double rho = prev > 0.0 ? last / prev : 0.0;
        if (rho < 1.0 - 1e-9) {
            out.c_series = std::max(out.c_series, sum + last * rho / (1.0 - rho));
            continue;
        }
        if (partial.back() >= 1.5 * partial[static_cast<std::size_t>(terms / 2)]) {
            out.verdict = WxCheck::Verdict::Fail;
            out.reason = "divergent";
            return out;
        }
        inconclusive = true;
    }
    if (inconclusive) {
        out.verdict = WxCheck::Verdict::Inconclusive;
        out.reason = "series neither contracts nor grows";
        return out;
    }
    out.verdict = WxCheck::Verdict::Pass;
    return out;
}

LogHolder log_holder_constant(const GridFunction& p) {
    const auto& g = p.geometry();
    const std::size_t n = p.size();
    std::vector<double> a(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (!(p[i] >= 1.0)) throw Error("variable exponent must lie in [1, inf]");
        a[i] = 1.0 / p[i];
    }
    LogHolder out;
    std::vector<Point> xs(n);
    for (std::size_t i = 0; i < n; ++i) xs[i] = g.center(i);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const double d = std::hypot(xs[i][0] - xs[j][0], xs[i][1] - xs[j][1]);
            out.c1 = std::max(out.c1, std::abs(a[i] - a[j]) * std::log(std::numbers::e + 1.0 / d));
        }
    double acc = 0.0;
    std::size_t count = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const Index2 c = g.unflat(i);
        bool edge = c[0] == 0 || c[0] == static_cast<long>(g.extent(0)) - 1;
        if (g.dim == 2) edge = edge || c[1] == 0 || c[1] == static_cast<long>(g.extent(1)) - 1;
        if (edge) {
            acc += a[i];
            ++count;
        }
    }
    double a_inf = acc / static_cast<double>(count);
    if (std::all_of(a.begin(), a.end(), [&](double v) { return v == a[0]; })) a_inf = a[0];
    out.p_inf = a_inf > 0.0 ? 1.0 / a_inf : kInf;
    for (std::size_t i = 0; i < n; ++i)
        out.c2 = std::max(out.c2, std::abs(a[i] - a_inf) * std::log(std::numbers::e + std::hypot(xs[i][0], xs[i][1])));
    return out;
}

}  // namespace sparsedom
