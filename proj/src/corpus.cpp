#include "sparsedom/corpus.hpp"

#include <algorithm>
#include <cmath>

namespace sparsedom {

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::optional<CorpusKind> parse_corpus_kind(const std::string& name) {
    if (name == "step") return CorpusKind::Step;
    if (name == "smooth-bump") return CorpusKind::SmoothBump;
    if (name == "random-sign") return CorpusKind::RandomSign;
    if (name == "power-weight") return CorpusKind::PowerWeight;
    if (name == "bmo-log") return CorpusKind::BmoLog;
    return std::nullopt;
}

std::string to_string(CorpusKind kind) {
    switch (kind) {
        case CorpusKind::Step: return "step";
        case CorpusKind::SmoothBump: return "smooth-bump";
        case CorpusKind::RandomSign: return "random-sign";
        case CorpusKind::PowerWeight: return "power-weight";
        case CorpusKind::BmoLog: return "bmo-log";
    }
    return "unknown";
}

namespace {

struct Third {
    Point lo{0.0, 0.0};
    Point hi{0.0, 0.0};
};

Third middle_third(const GridGeometry& g) {
    Third t;
    for (int a = 0; a < g.dim; ++a) {
        const double side = g.domain_side(a);
        t.lo[a] = g.origin[a] + side / 3.0;
        t.hi[a] = g.origin[a] + 2.0 * side / 3.0;
    }
    return t;
}

bool in_third(const GridGeometry& g, const Third& t, const Point& x) {
    for (int a = 0; a < g.dim; ++a)
        if (x[a] < t.lo[a] || x[a] >= t.hi[a]) return false;
    return true;
}

Point random_point(Rng& rng, const GridGeometry& g, const Third& t) {
    Point x{0.0, 0.0};
    for (int a = 0; a < g.dim; ++a) x[a] = rng.uniform(t.lo[a], t.hi[a]);
    return x;
}

double distance(const GridGeometry& g, const Point& x, const Point& y) {
    return g.dim == 2 ? std::hypot(x[0] - y[0], x[1] - y[1]) : std::abs(x[0] - y[0]);
}

GridFunction step(Rng& rng, const GridGeometry& g) {
    const Third t = middle_third(g);
    GridFunction f(g, 0.0);
    const long pieces = rng.integer(1, 6);
    for (long k = 0; k < pieces; ++k) {
        Point a = random_point(rng, g, t), b = random_point(rng, g, t);
        for (int ax = 0; ax < g.dim; ++ax)
            if (a[ax] > b[ax]) std::swap(a[ax], b[ax]);
        const double v = rng.sign() * rng.uniform(0.25, 2.0);
        for (std::size_t i = 0; i < f.size(); ++i) {
            const Point x = g.center(i);
            bool inside = true;
            for (int ax = 0; ax < g.dim; ++ax) inside = inside && x[ax] >= a[ax] && x[ax] < b[ax];
            if (inside) f[i] += v;
        }
    }
    if (f.is_zero()) {
        // Guarantee a nonzero sample: one cell at the center of the support region.
        const Point c = {0.5 * (t.lo[0] + t.hi[0]), 0.5 * (t.lo[1] + t.hi[1])};
        for (std::size_t i = 0; i < f.size(); ++i)
            if (in_third(g, t, g.center(i)) && distance(g, g.center(i), c) <= g.spacing) f[i] = 1.0;
    }
    return f;
}

GridFunction smooth_bump(Rng& rng, const GridGeometry& g) {
    const Third t = middle_third(g);
    const double half = (t.hi[0] - t.lo[0]) / 2.0;
    GridFunction f(g, 0.0);
    const long bumps = rng.integer(1, 4);
    for (long k = 0; k < bumps; ++k) {
        const double w = rng.uniform(0.15, 0.5) * half;
        Point c{0.0, 0.0};
        for (int a = 0; a < g.dim; ++a) c[a] = rng.uniform(t.lo[a] + w, t.hi[a] - w);
        const double amp = rng.sign() * rng.uniform(0.5, 2.0);
        for (std::size_t i = 0; i < f.size(); ++i) {
            const double s = distance(g, g.center(i), c) / w;
            if (s < 1.0) f[i] += amp * std::exp(1.0 - 1.0 / (1.0 - s * s));
        }
    }
    return f;
}

GridFunction random_sign(Rng& rng, const GridGeometry& g) {
    const Third t = middle_third(g);
    GridFunction f(g, 0.0);
    for (std::size_t i = 0; i < f.size(); ++i)
        if (in_third(g, t, g.center(i))) f[i] = rng.sign() * rng.uniform(0.5, 1.0);
    return f;
}

GridFunction power_weight(Rng& rng, const GridGeometry& g) {
    const Third t = middle_third(g);
    const Point x0 = random_point(rng, g, t);
    const double a = rng.uniform(-0.5, 0.9) * g.dim;
    const double eps = 1e-3;
    GridFunction w(g, 0.0);
    for (std::size_t i = 0; i < w.size(); ++i) {
        const double d = std::max(distance(g, g.center(i), x0), 0.25 * g.spacing);
        w[i] = std::pow(d, a) + eps;
    }
    return w;
}

GridFunction bmo_log(Rng& rng, const GridGeometry& g) {
    const Third t = middle_third(g);
    const Point x0 = random_point(rng, g, t);
    const double amp = rng.sign() * rng.uniform(0.5, 2.0);
    GridFunction b(g, 0.0);
    for (std::size_t i = 0; i < b.size(); ++i) {
        const double d = std::max(distance(g, g.center(i), x0), 0.25 * g.spacing);
        b[i] = amp * std::log(d);
    }
    return b;
}

}  // namespace

GridFunction generate_one(CorpusKind kind, std::uint64_t seed, const GridGeometry& g) {
    g.validate();
    Rng rng(seed);
    switch (kind) {
        case CorpusKind::Step: return step(rng, g);
        case CorpusKind::SmoothBump: return smooth_bump(rng, g);
        case CorpusKind::RandomSign: return random_sign(rng, g);
        case CorpusKind::PowerWeight: return power_weight(rng, g);
        case CorpusKind::BmoLog: return bmo_log(rng, g);
    }
    throw Error("unknown corpus kind");
}

std::vector<Sample> generate_corpus(CorpusKind kind, std::size_t n, std::uint64_t seed, const GridGeometry& g) {
    if (n == 0) throw Error("corpus size must be at least 1");
    std::vector<Sample> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::uint64_t s = mix_seed(seed, i);
        out.push_back({s, generate_one(kind, s, g)});
    }
    return out;
}

}  // namespace sparsedom
