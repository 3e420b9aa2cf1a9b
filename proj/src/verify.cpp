#include "sparsedom/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <numbers>
#include <sstream>

#include "sparsedom/corpus.hpp"
#include "sparsedom/lorentz.hpp"
#include "sparsedom/maximal.hpp"
#include "sparsedom/operators.hpp"
#include "sparsedom/weights.hpp"

namespace sparsedom {

double SuiteConfig::tolerance(const std::string& name, double fallback) const {
    const auto it = tolerances.find(name);
    return it == tolerances.end() ? fallback : it->second;
}

SuiteConfig suite_config_from_json(const Json& j) {
    SuiteConfig c;
    c.suite = j.value("suite", std::string());
    c.resolution = j.value("resolution", std::size_t{0});
    c.dim = j.value("dim", 0);
    c.seed = j.value("seed", std::uint64_t{1});
    c.corpus_size = j.value("corpus_size", std::size_t{0});
    if (j.contains("tolerances"))
        for (const auto& [k, v] : j.at("tolerances").items()) c.tolerances[k] = real_from_json(v);
    if (j.contains("space")) c.space = space_from_json(j.at("space"));
    if (j.contains("weight")) c.weight = Weight(grid_function_from_json(j.at("weight"))).function();
    c.output = j.value("output", std::string());
    if (c.dim != 0 && c.dim != 1 && c.dim != 2) throw Error("dimension must be 1 or 2");
    return c;
}

Fit fit_constant(std::vector<double> ratios) {
    if (ratios.empty()) throw Error("fit_constant needs at least one ratio");
    for (double r : ratios)
        if (!(r > 0.0) || std::isnan(r)) throw Error("ratios must be positive");
    std::sort(ratios.begin(), ratios.end());
    const std::size_t n = ratios.size();
    const double median = n % 2 ? ratios[n / 2] : 0.5 * (ratios[n / 2 - 1] + ratios[n / 2]);
    return {ratios.back(), ratios.back() / median};
}

void Digest::bytes(const void* p, std::size_t n) {
    const auto* c = static_cast<const unsigned char*>(p);
    for (std::size_t i = 0; i < n; ++i) {
        h_ ^= c[i];
        h_ *= 0x100000001b3ULL;
    }
}

Digest& Digest::add(double v) {
    bytes(&v, sizeof v);
    return *this;
}

Digest& Digest::add(std::uint64_t v) {
    bytes(&v, sizeof v);
    return *this;
}

Digest& Digest::add(const std::string& s) {
    bytes(s.data(), s.size());
    return *this;
}

Digest& Digest::add(const GridFunction& f) {
    const auto& g = f.geometry();
    add(static_cast<std::uint64_t>(g.dim)).add(static_cast<std::uint64_t>(g.extent(0)));
    add(static_cast<std::uint64_t>(g.extent(1))).add(g.spacing).add(g.origin[0]).add(g.origin[1]);
    bytes(f.values().data(), f.size() * sizeof(double));
    return *this;
}

std::string Digest::hex() const {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h_));
    return buf;
}

namespace {

std::string environment_stamp() {
    std::string s = "sparsedom 0.1.0; ";
#if defined(__clang__)
    s += "clang " __clang_version__;
#elif defined(__GNUC__)
    s += "gcc " __VERSION__;
#else
    s += "unknown compiler";
#endif
    s += "; binary64";
    return s;
}

std::string check_id(const std::string& prefix, std::size_t i) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "-%06zu", i);
    return prefix + buf;
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

class Suite {
public:
    Suite(const SuiteConfig& c, Report& r) : cfg(c), rep(r) {}

    void check(const std::string& id, const std::string& digest, double lhs, double rhs, double constant, bool pass) {
        rep.checks.push_back({id, digest, lhs, rhs, constant, pass});
        if (!pass) ++rep.violations;
    }

    void fitted(const std::string& name, const std::vector<double>& values, double limit) {
        const Fit f = fit_constant(values);
        rep.constants.push_back({name, f.value, f.stability});
        if (!(f.stability <= limit)) ++rep.violations;
    }

    void meta(const std::string& k, const std::string& v) { rep.metadata[k] = v; }

    std::size_t size(std::size_t fallback) const { return cfg.corpus_size ? cfg.corpus_size : fallback; }
    std::size_t res(std::size_t fallback) const { return cfg.resolution ? cfg.resolution : fallback; }
    bool dim_enabled(int d) const { return cfg.dim == 0 || cfg.dim == d; }
    std::uint64_t seed(std::uint64_t stream) const { return mix_seed(cfg.seed, stream); }

    const SuiteConfig& cfg;
    Report& rep;
};

GridGeometry unit_grid(int dim, std::size_t n) {
    return dim == 2 ? GridGeometry::square(0.0, 1.0, n) : GridGeometry::line(0.0, 1.0, n);
}

CorpusKind signal_kind(std::size_t i) {
    static constexpr CorpusKind kinds[] = {CorpusKind::Step, CorpusKind::SmoothBump, CorpusKind::RandomSign};
    return kinds[i % 3];
}

// ---------------------------------------------------------------------------

void suite_chi_ball(Suite& s) {
    const double tol = s.cfg.tolerance("relative", 0.02);
    const std::vector<std::pair<double, double>> pq = {{2, 1}, {2, 2}, {3, 2}, {2, kInf}};
    std::size_t id = 0;
    double worst = 0.0;
    for (int dim : {1, 2}) {
        if (!s.dim_enabled(dim)) continue;
        const GridGeometry g = unit_grid(dim, s.res(dim == 1 ? 4096 : 512));
        const std::vector<double> radii = dim == 1 ? std::vector<double>{0.25, 0.4} : std::vector<double>{0.2, 0.35};
        for (double r : radii) {
            const Ball b{dim, {0.5, dim == 2 ? 0.5 : 0.0}, r};
            GridFunction chi(g, 0.0);
            for (std::size_t i : cells_of(g, b)) chi[i] = 1.0;
            for (const auto& [p, q] : pq) {
                const double got = lorentz_norm(chi, p, q);
                const double want = lorentz_chi_closed_form(p, q, dim, r);
                const double err = std::abs(got - want) / want;
                worst = std::max(worst, err);
                Digest d;
                d.add(static_cast<std::uint64_t>(dim)).add(r).add(p).add(q).add(g.spacing);
                s.check(check_id("chi", id++), d.hex(), got, want, err, err <= tol);
            }
        }
    }
    s.meta("max_relative_error", fmt(worst));
    s.meta("tolerance", fmt(tol));
}

void suite_lorentz_holder(Suite& s) {
    const double tol = s.cfg.tolerance("relative", 1e-12);
    const std::size_t n = s.size(1000);
    const GridGeometry g = unit_grid(1, s.res(64));
    std::size_t regime_count[3] = {0, 0, 0};
    for (std::size_t t = 0; t < n; ++t) {
        Rng rng(s.seed(t));
        const int m = static_cast<int>(rng.integer(2, 3));
        const int regime = static_cast<int>(t % 3);
        std::vector<LorentzFactor> factors;
        GridFunction prod(g, 1.0);
        Digest d;
        d.add(static_cast<std::uint64_t>(t));
        for (int i = 0; i < m; ++i) {
            const CorpusKind kind = rng.uniform() < 0.5 ? CorpusKind::Step : CorpusKind::RandomSign;
            const GridFunction f = generate_one(kind, rng.next(), g);
            double p = kInf, q = kInf;
            if (regime == 0) {
                if (i == 0 || rng.uniform() >= 0.15) {
                    p = rng.uniform(1.05, 6.0);
                    q = rng.uniform(0.5, 8.0);
                }
            } else if (regime == 1) {
                p = rng.uniform(1.05, 6.0);
            }
            factors.push_back({lorentz_norm(f, p, q), p, q});
            for (std::size_t c = 0; c < g.size(); ++c) prod[c] *= f[c];
            d.add(f).add(p).add(q);
        }
        const LorentzHolderBound b = lorentz_holder_bound(factors);
        ++regime_count[static_cast<int>(b.regime)];
        const double lhs = lorentz_norm(prod, b.p, b.q);
        s.check(check_id("holder", t), d.hex(), lhs, b.bound, b.bound == 0.0 ? 0.0 : lhs / b.bound,
                lhs <= b.bound * (1.0 + tol));
    }
    s.meta("regime_finite_q", std::to_string(regime_count[0]));
    s.meta("regime_weak_target", std::to_string(regime_count[1]));
    s.meta("regime_infinite", std::to_string(regime_count[2]));
}

void suite_weak_strong(Suite& s) {
    const double tol = s.cfg.tolerance("relative", 1e-12);
    const std::size_t n = s.size(1000);
    const GridGeometry g = unit_grid(1, s.res(128));
    for (std::size_t t = 0; t < n; ++t) {
        Rng rng(s.seed(t));
        const GridFunction f = generate_one(CorpusKind::Step, rng.next(), g);
        const double p = rng.uniform(0.5, 6.0);
        const double q = t % 10 == 0 ? p : p * rng.uniform(0.04, 1.0);
        const double weak = lorentz_norm(f, p, kInf);
        const double rhs = std::pow(q / p, 1.0 / q) * lorentz_norm(f, p, q);
        Digest d;
        d.add(f).add(p).add(q);
        s.check(check_id("weak", t), d.hex(), weak, rhs, rhs > 0 ? weak / rhs : 0.0, weak <= rhs * (1.0 + tol));
    }
}

void suite_ck_convexity(Suite& s) {
    const double tol = s.cfg.tolerance("relative", 1e-12);
    const std::size_t n = s.size(10000);
    for (std::size_t t = 0; t < n; ++t) {
        Rng rng(s.seed(t));
        const int dim = (t % 4 == 3 && s.dim_enabled(2)) || !s.dim_enabled(1) ? 2 : 1;
        const auto side = static_cast<std::size_t>(dim == 1 ? rng.integer(2, 48) : rng.integer(2, 8));
        const GridGeometry g = dim == 1 ? GridGeometry::line(0.0, static_cast<double>(side) / 64.0, side)
                                        : GridGeometry::square(0.0, static_cast<double>(side) / 64.0, side);
        const double bscale = rng.uniform(0.1, 5.0);
        const bool bconst = rng.uniform() < 0.05;
        GridFunction b(g, 0.0), f(g, 0.0), h(g, 0.0);
        for (std::size_t i = 0; i < g.size(); ++i) {
            b[i] = bconst ? bscale : bscale * rng.uniform(-1.0, 1.0);
            f[i] = rng.uniform() < 0.2 ? 0.0 : rng.uniform(0.0, 2.0);
            h[i] = rng.uniform() < 0.2 ? 0.0 : rng.uniform(0.0, 2.0);
        }
        const int m = static_cast<int>(rng.integer(0, 4));
        const double r = rng.uniform(1.0, 4.0), tt = rng.uniform(1.0, 4.0);
        SparseFamily fam;
        fam.lattice = DyadicLattice::standard(g);
        fam.cubes.push_back({DyadicLattice::natural_level(g), {0, 0}});
        if (fam.box(0).count() != g.size()) throw Error("top cube must cover the grid");
        const BilinearForm form = bilinear_sparse_form(f, h, b, fam, r, tt, m);
        double worst = 0.0;
        for (int k = 0; k <= m; ++k) worst = std::max(worst, form.c[static_cast<std::size_t>(k)][0]);
        const double rhs = form.c[0][0] + form.c[static_cast<std::size_t>(m)][0];
        Digest d;
        d.add(b).add(f).add(h).add(static_cast<std::uint64_t>(m)).add(r).add(tt);
        s.check(check_id("ck", t), d.hex(), worst, rhs, rhs > 0 ? worst / rhs : 0.0, worst <= rhs * (1.0 + tol));
    }
}

std::vector<GridFunction> signal_corpus(const Suite& s, std::size_t n, std::size_t n1, std::size_t n2,
                                        std::uint64_t stream) {
    std::vector<GridFunction> out;
    const bool both = s.dim_enabled(1) && s.dim_enabled(2);
    for (std::size_t i = 0; i < n; ++i) {
        const int dim = both ? (i % 2 ? 2 : 1) : (s.dim_enabled(1) ? 1 : 2);
        const GridGeometry g = unit_grid(dim, dim == 1 ? n1 : n2);
        out.push_back(generate_one(signal_kind(i / 2), mix_seed(s.seed(stream), i), g));
    }
    return out;
}

void suite_sparseness(Suite& s) {
    const double eta = 0.5;
    const auto corpus = signal_corpus(s, s.size(500), s.res(256), 32, 5);
    std::size_t families = 0;
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        const GridFunction& f = corpus[i];
        Digest d;
        d.add(f);
        double worst = kInf;
        bool ok = true;
        try {
            auto built = build_sparse_families(f, eta);
            for (auto& fam : built) {
                ++families;
                SparseFamily copy = fam;
                copy.owned.clear();
                const SparsenessReport r = verify_sparseness(copy, eta);
                ok = ok && r.ok;
                for (std::size_t k = 0; k < copy.cubes.size(); ++k)
                    worst = std::min(worst, static_cast<double>(r.owned[k].size()) /
                                                static_cast<double>(copy.box(k).count()));
            }
        } catch (const Error&) {
            ok = false;
        }
        if (worst == kInf) worst = 1.0;
        s.check(check_id("sparse", i), d.hex(), worst, eta, worst, ok && worst >= eta);
    }
    s.meta("families", std::to_string(families));
}

void suite_dyadic_domination(Suite& s) {
    const auto corpus = signal_corpus(s, s.size(200), s.res(256), 32, 6);
    const CubeFamilySpec fam = CubeFamilySpec::dyadic_shifted();
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        const GridFunction& f = corpus[i];
        const GridFunction mf = hl_maximal(f, fam);
        GridFunction best(f.geometry(), 0.0);
        for (const auto& sf : build_sparse_families(f, 0.5)) {
            const GridFunction t = sparse_operator(f, sf, 1.0);
            for (std::size_t c = 0; c < t.size(); ++c) best[c] = std::max(best[c], t[c]);
        }
        bool ok = true;
        double ratio = 0.0;
        for (std::size_t c = 0; c < f.size(); ++c) {
            if (mf[c] > 2.0 * best[c]) ok = false;
            if (best[c] > 0.0) ratio = std::max(ratio, mf[c] / (2.0 * best[c]));
        }
        Digest d;
        d.add(f);
        s.check(check_id("dom", i), d.hex(), ratio, 1.0, ratio, ok);
    }
}

// Configurations for fitted-constant studies: two seed batches at the base
// resolution and the first batch again at twice the resolution.
struct StudyConfig {
    std::uint64_t stream;
    std::size_t scale;
    std::string tag;
};
const std::vector<StudyConfig> kStudies = {{1, 1, "a-h"}, {2, 1, "b-h"}, {1, 2, "a-h2"}};

double max_pointwise_ratio(const GridFunction& lhs, const GridFunction& rhs) {
    double r = 0.0;
    for (std::size_t i = 0; i < lhs.size(); ++i) {
        if (rhs[i] > 0.0) r = std::max(r, std::abs(lhs[i]) / rhs[i]);
        else if (lhs[i] != 0.0) return kInf;
    }
    return r;
}

void suite_hyp1(Suite& s) {
    const double limit = s.cfg.tolerance("stability", 2.0);
    const std::size_t batch = s.size(8);
    const std::size_t base = s.res(256);
    const Operator hil = Operator::hilbert();
    std::size_t id = 0;
    for (int l : {0, 1}) {
        std::vector<double> per_config;
        for (const auto& st : kStudies) {
            const GridGeometry g = unit_grid(1, base * st.scale);
            double cmax = 0.0;
            for (std::size_t i = 0; i < batch; ++i) {
                const std::uint64_t sd = mix_seed(s.seed(100 + st.stream), i);
                const GridFunction f = generate_one(i % 2 ? CorpusKind::SmoothBump : CorpusKind::Step, sd, g);
                const GridFunction b = generate_one(CorpusKind::BmoLog, mix_seed(sd, 7), g);
                const auto fams = build_sparse_families(f.abs(), 0.5);
                GridFunction lhs = l == 0 ? hil(f) : commutator_iterated(hil, b, 1, f);
                const GridFunction rhs = l == 0 ? hyp1_rhs({f}, {}, fams, {}, false) : hyp1_rhs({f}, {b}, fams, {}, true);
                const double r = max_pointwise_ratio(lhs, rhs);
                cmax = std::max(cmax, r);
                Digest d;
                d.add(f).add(static_cast<std::uint64_t>(l));
                if (l == 1) d.add(b);
                s.check(check_id("hyp1", id++), d.hex(), r, 1.0, r, std::isfinite(r));
            }
            per_config.push_back(cmax);
            s.meta("c_" + std::string(l == 0 ? "hilbert" : "commutator") + "." + st.tag, fmt(cmax));
        }
        s.fitted(l == 0 ? "hilbert" : "hilbert-commutator", per_config, limit);
    }
}

void suite_bilinear(Suite& s) {
    const double limit = s.cfg.tolerance("stability", 2.0);
    const std::size_t batch = s.size(6);
    std::size_t id = 0;
    struct Case {
        Operator op;
        int dim;
        std::size_t base;
        double r;
        std::string name;
    };
    std::vector<Case> cases;
    if (s.dim_enabled(1)) cases.push_back({Operator::hilbert(), 1, s.res(256), 1.0, "hilbert"});
    if (s.dim_enabled(2)) cases.push_back({Operator::rough(Omega::sign1()), 2, 32, 1.5, "rough-sign1"});
    for (const auto& c : cases)
        for (int m : {1, 2}) {
            std::vector<double> per_config;
            for (const auto& st : kStudies) {
                const GridGeometry g = unit_grid(c.dim, c.base * st.scale);
                double cmax = 0.0;
                for (std::size_t i = 0; i < batch; ++i) {
                    const std::uint64_t sd = mix_seed(s.seed(200 + st.stream), i);
                    const GridFunction f = generate_one(i % 2 ? CorpusKind::SmoothBump : CorpusKind::Step, sd, g);
                    const GridFunction h = generate_one(CorpusKind::Step, mix_seed(sd, 3), g);
                    const GridFunction b = generate_one(CorpusKind::BmoLog, mix_seed(sd, 7), g);
                    const GridFunction tf = commutator_iterated(c.op, b, m, f);
                    long double lhs = 0.0L;
                    for (std::size_t k = 0; k < g.size(); ++k) lhs += std::abs(tf[k] * h[k]);
                    const double lhs_v = static_cast<double>(lhs) * g.cell_volume();
                    GridFunction both = f.abs();
                    both += h.abs();
                    double rhs = 0.0;
                    for (const auto& fam : build_sparse_families(both, 0.5))
                        rhs += bilinear_sparse_form(f, h, b, fam, c.r, c.r, m).total;
                    const double ratio = rhs > 0.0 ? lhs_v / rhs : (lhs_v > 0.0 ? kInf : 0.0);
                    cmax = std::max(cmax, ratio);
                    Digest d;
                    d.add(f).add(h).add(b).add(static_cast<std::uint64_t>(m)).add(c.name);
                    s.check(check_id("form", id++), d.hex(), lhs_v, rhs, ratio, std::isfinite(ratio));
                }
                per_config.push_back(cmax);
                s.meta("c_" + c.name + ".m" + std::to_string(m) + "." + st.tag, fmt(cmax));
            }
            s.fitted(c.name + "-m" + std::to_string(m), per_config, limit);
        }
}

void suite_rubio(Suite& s) {
    const double tol = s.cfg.tolerance("relative", 1e-12);
    const CubeFamilySpec fam = CubeFamilySpec::dyadic_shifted();
    const auto corpus = signal_corpus(s, s.size(50), s.res(256), 32, 9);
    std::vector<Sample> c1, c2;
    for (std::size_t i = 0; i < corpus.size(); ++i)
        (corpus[i].geometry().dim == 1 ? c1 : c2).push_back({i, corpus[i]});
    const OperatorFn m = [&](const GridFunction& f) { return hl_maximal(f, fam); };
    const SpaceDescriptor l2 = SpaceDescriptor::lebesgue(2.0);
    const double est1 = c1.empty() ? 0.0 : operator_norm_estimate(m, l2, c1).value;
    const double est2 = c2.empty() ? 0.0 : operator_norm_estimate(m, l2, c2).value;
    s.meta("norm_estimate_1d", fmt(est1));
    s.meta("norm_estimate_2d", fmt(est2));
    std::size_t id = 0;
    for (const auto& h : corpus) {
        const double est = h.geometry().dim == 1 ? est1 : est2;
        Digest dh;
        dh.add(h);
        for (int k : {0, 2, 4, 8}) {
            const RubioResult r = rubio_de_francia(h, k, est, fam);
            double worst = 0.0;
            bool ok = true;
            for (std::size_t c = 0; c < h.size(); ++c) {
                if (std::abs(h[c]) > r.value[c]) ok = false;
                if (r.value[c] > 0.0) worst = std::max(worst, std::abs(h[c]) / r.value[c]);
            }
            Digest d = dh;
            d.add(static_cast<std::uint64_t>(k));
            s.check(check_id("rdf-majorant", id), d.hex(), worst, 1.0, static_cast<double>(k), ok);
            if (k == 8) {
                const GridFunction mr = hl_maximal(r.value, fam);
                bool a1 = true;
                double excess = 0.0;
                for (std::size_t c = 0; c < h.size(); ++c) {
                    const double rhs = 2.0 * est * r.value[c] + r.a1_tail;
                    if (mr[c] > rhs * (1.0 + tol)) a1 = false;
                    if (rhs > 0.0) excess = std::max(excess, mr[c] / rhs);
                }
                s.check(check_id("rdf-a1", id), d.hex(), excess, 1.0, r.a1_tail, a1);
            }
            ++id;
        }
    }
}

void suite_wx(Suite& s) {
    const std::vector<std::pair<double, double>> pq = {{2, 1}, {2, 2}, {3, 2}, {4, 4}, {1.5, 3}};
    const std::vector<double> mus = {0.5, 0.9, 1.0, 1.5};
    std::size_t id = 0, passes = 0, fails = 0;
    for (std::size_t a = 0; a < pq.size(); ++a) {
        const auto [p, q] = pq[a];
        const int dim = a % 2 ? 2 : 1;
        for (double mu : mus) {
            const double lambda = mu * dim * q / p;
            std::vector<BallSample> samples;
            for (double r : {0.0625, 0.25, 1.0, 4.0}) samples.push_back({{0.0, 0.0}, r});
            const WxCheck w = wx_alpha_check(MorreyWeight::power_radius(lambda, q), SpaceDescriptor::lorentz(p, q), 0.0,
                                             samples, 16, dim);
            const bool expect_pass = lambda / dim < q / p;
            const bool ok = expect_pass ? w.verdict == WxCheck::Verdict::Pass
                                        : (w.verdict == WxCheck::Verdict::Fail && w.reason == "divergent");
            (w.verdict == WxCheck::Verdict::Pass ? passes : fails) += 1;
            Digest d;
            d.add(p).add(q).add(lambda).add(static_cast<std::uint64_t>(dim));
            s.check(check_id("wx", id++), d.hex(), lambda / dim, q / p, w.c_series, ok);
        }
    }
    s.meta("verdict_pass", std::to_string(passes));
    s.meta("verdict_not_pass", std::to_string(fails));
}

double plastic_number() {
    const double r = std::sqrt(69.0);
    return std::cbrt((9.0 + r) / 18.0) + std::cbrt((9.0 - r) / 18.0);
}

void suite_variable(Suite& s) {
    const double tol = s.cfg.tolerance("relative", 1e-10);
    const double tol_root = s.cfg.tolerance("two_branch", 1e-9);
    const auto corpus = signal_corpus(s, s.size(200), s.res(128), 16, 11);
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        const GridFunction& f = corpus[i];
        Rng rng(mix_seed(s.seed(12), i));
        const double p = rng.uniform(1.0, 6.0);
        const double lux = space_norm(f, SpaceDescriptor::variable(GridFunction(f.geometry(), p)));
        const double leb = space_norm(f, SpaceDescriptor::lebesgue(p));
        const double err = leb > 0.0 ? std::abs(lux - leb) / leb : std::abs(lux);
        Digest d;
        d.add(f).add(p);
        s.check(check_id("const", i), d.hex(), lux, leb, err, err <= tol);
    }
    const GridGeometry g = GridGeometry::line(-2.0, 2.0, 256);
    GridFunction f(g, 0.0), pexp(g, 0.0);
    for (std::size_t i = 0; i < g.size(); ++i) {
        const double x = g.center(i)[0];
        f[i] = std::abs(x) <= 1.0 ? 1.0 : 0.0;
        pexp[i] = x < 0.0 ? 2.0 : 3.0;
    }
    const double lux = space_norm(f, SpaceDescriptor::variable(pexp));
    const double want = plastic_number();
    Digest d;
    d.add(f).add(pexp);
    s.check(check_id("two-branch", 0), d.hex(), lux, want, std::abs(lux - want), std::abs(lux - want) <= tol_root);
}

void suite_john_nirenberg(Suite& s) {
    const GridGeometry g = unit_grid(1, s.res(1024));
    const std::size_t n = s.size(30);
    std::vector<double> alphas;
    for (int a = 1; a <= 8; ++a) alphas.push_back(a);
    std::size_t total = 0, upper = 0, skipped = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const GridFunction b = generate_one(CorpusKind::BmoLog, mix_seed(s.seed(13), i), g);
        const auto r = john_nirenberg_check(b, CubeFamilySpec::standard_dyadic_interior(), alphas);
        total += r.checks;
        upper += r.violations_upper;
        skipped += r.skipped ? 1 : 0;
        Digest d;
        d.add(b);
        s.check(check_id("jn", i), d.hex(), static_cast<double>(r.violations), 0.0, r.bmo,
                !r.skipped && r.violations == 0 && r.violations_upper == 0);
    }
    s.meta("pairs_checked", std::to_string(total));
    s.meta("violations_domain_norm", std::to_string(upper));
    s.meta("skipped", std::to_string(skipped));
}

// Brute-force A_p over all cubes inside the grid, without prefix sums or normalization.
double brute_force_ap(const GridFunction& w, double p) {
    const auto& g = w.geometry();
    const long n0 = static_cast<long>(g.extent(0)), n1 = static_cast<long>(g.extent(1));
    const double e = 1.0 / (1.0 - p);
    double best = 0.0;
    const long maxl = g.dim == 2 ? std::min(n0, n1) : n0;
    for (long l = 1; l <= maxl; ++l)
        for (long a = 0; a + l <= n0; ++a)
            for (long c = 0; g.dim == 2 ? c + l <= n1 : c == 0; ++c) {
                double sw = 0.0, ss = 0.0;
                const long l1 = g.dim == 2 ? l : 1;
                for (long i = a; i < a + l; ++i)
                    for (long j = c; j < c + l1; ++j) {
                        const double v = w[g.flat(i, j)];
                        sw += v;
                        ss += std::pow(v, e);
                    }
                const double cnt = static_cast<double>(l * l1);
                best = std::max(best, (sw / cnt) * std::pow(ss / cnt, p - 1.0));
            }
    return best;
}

void suite_weights(Suite& s) {
    const double tol = s.cfg.tolerance("relative", 0.05);
    const double tol_buckley = s.cfg.tolerance("buckley", 1e-9);
    std::size_t id = 0;
    for (int dim : {1, 2}) {
        if (!s.dim_enabled(dim)) continue;
        const GridGeometry g = unit_grid(dim, dim == 1 ? 64 : 16);
        for (double c : {1.0, 3.7, 1e-3, 123.456, 0.1})
            for (double p : {1.5, 2.0, 3.0})
                for (int mode = 0; mode < 2; ++mode) {
                    const CubeFamilySpec fam = mode == 0 ? CubeFamilySpec::dyadic_shifted()
                                                         : CubeFamilySpec::dense(g.domain_side(0));
                    const double a = ap_constant(Weight(GridFunction(g, c)), p, fam);
                    Digest d;
                    d.add(c).add(p).add(static_cast<std::uint64_t>(dim * 2 + mode));
                    s.check(check_id("ap-const", id++), d.hex(), a, 1.0, a, a == 1.0);
                }
    }
    const std::size_t n = s.size(12);
    std::size_t oid = 0, bid = 0;
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const int dim = s.dim_enabled(1) && s.dim_enabled(2) ? (i % 2 ? 2 : 1) : (s.dim_enabled(1) ? 1 : 2);
        const GridGeometry g = unit_grid(dim, dim == 1 ? s.res(128) : 16);
        const Weight w(generate_one(CorpusKind::PowerWeight, mix_seed(s.seed(14), i), g));
        Digest dw;
        dw.add(w.function());
        CubeFamilySpec dense = CubeFamilySpec::dense(g.domain_side(0));
        dense.interior_only = true;
        const double got = ap_constant(w, 2.0, dense);
        const double want = brute_force_ap(w.function(), 2.0);
        const double err = std::abs(got - want) / want;
        worst = std::max(worst, err);
        s.check(check_id("ap-oracle", oid++), dw.hex(), got, want, err, err <= tol);
        for (double p : {1.5, 2.0, 3.0}) {
            const CubeFamilySpec fam = CubeFamilySpec::dyadic_shifted();
            const double est = weak_norm_lower_bound(w, p, fam, 16, mix_seed(s.seed(15), i));
            const double lower = std::pow(ap_constant(w, p, fam), 1.0 / p);
            Digest d = dw;
            d.add(p);
            s.check(check_id("buckley", bid++), d.hex(), lower, est, est / lower, lower <= est * (1.0 + tol_buckley));
        }
    }
    s.meta("max_oracle_relative_error", fmt(worst));
}

void suite_claim1(Suite& s) {
    const double limit = s.cfg.tolerance("stability", 2.0);
    const std::size_t batch = s.size(8);
    const std::size_t base = s.res(256);
    const SpaceDescriptor x = SpaceDescriptor::lebesgue(2.0);
    const MorreyWeight u = MorreyWeight::power_radius(0.5, 2.0);
    const CubeFamilySpec fam = CubeFamilySpec::dyadic_shifted();
    std::vector<double> per_config;
    std::size_t id = 0;
    for (const auto& st : kStudies) {
        const std::size_t n = base * st.scale;
        const GridGeometry g = unit_grid(1, n);
        const BallFamily balls = BallFamily::dyadic(g, std::max<std::size_t>(1, n / 64));
        double cmax = 0.0;
        for (std::size_t i = 0; i < batch; ++i) {
            const GridFunction f =
                generate_one(i % 2 ? CorpusKind::SmoothBump : CorpusKind::Step, mix_seed(s.seed(300 + st.stream), i), g);
            const GridFunction ts = sparse_operator(f, build_sparse_families(f, 0.5), 1.0);
            const double lhs = morrey_norm(ts, x, u, balls).value;
            const double rhs = morrey_norm(hl_maximal(f, fam), x, u, balls).value;
            const double ratio = rhs > 0.0 ? lhs / rhs : (lhs > 0.0 ? kInf : 0.0);
            cmax = std::max(cmax, ratio);
            Digest d;
            d.add(f);
            s.check(check_id("claim1", id++), d.hex(), lhs, rhs, ratio, std::isfinite(ratio));
        }
        per_config.push_back(cmax);
        s.meta("c." + st.tag, fmt(cmax));
    }
    s.fitted("sparse-vs-maximal", per_config, limit);
}

void suite_determinism(Suite& s) {
    std::size_t id = 0;
    for (const auto& name : suite_names()) {
        if (name == "determinism") continue;
        SuiteConfig c = s.cfg;
        c.suite = name;
        const std::string a = emit_report(run_suite(c), ReportFormat::Json);
        const std::string b = emit_report(run_suite(c), ReportFormat::Json);
        Digest d;
        d.add(name).add(c.seed);
        Digest da, db;
        da.add(a);
        db.add(b);
        s.check(check_id("rerun", id++), d.hex(), static_cast<double>(a.size()), static_cast<double>(b.size()), 0.0,
                a == b);
        s.meta("digest." + name, da.hex());
    }
}

using SuiteFn = void (*)(Suite&);

const std::vector<std::pair<std::string, SuiteFn>>& registry() {
    static const std::vector<std::pair<std::string, SuiteFn>> r = {
        {"chi-ball-closed-form", suite_chi_ball},
        {"lorentz-holder", suite_lorentz_holder},
        {"lorentz-weak-strong", suite_weak_strong},
        {"ck-convexity", suite_ck_convexity},
        {"sparseness", suite_sparseness},
        {"dyadic-domination", suite_dyadic_domination},
        {"hyp1-domination", suite_hyp1},
        {"bilinear-form", suite_bilinear},
        {"rubio-de-francia", suite_rubio},
        {"wx-membership", suite_wx},
        {"variable-exponent", suite_variable},
        {"john-nirenberg", suite_john_nirenberg},
        {"weights", suite_weights},
        {"claim1-morrey", suite_claim1},
        {"determinism", suite_determinism},
    };
    return r;
}

}  // namespace

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> v;
        for (const auto& [n, f] : registry()) v.push_back(n);
        return v;
    }();
    return names;
}

Report run_suite(const SuiteConfig& config) {
    const auto& r = registry();
    const auto it = std::find_if(r.begin(), r.end(), [&](const auto& e) { return e.first == config.suite; });
    if (it == r.end()) throw Error("unknown suite: " + config.suite);
    Report rep;
    rep.suite = config.suite;
    rep.seed = config.seed;
    rep.environment = environment_stamp();
    Suite s(config, rep);
    it->second(s);
    std::stable_sort(rep.checks.begin(), rep.checks.end(),
                     [](const CheckRecord& a, const CheckRecord& b) { return a.id < b.id; });
    return rep;
}

std::string emit_report(const Report& report, ReportFormat format) {
    std::vector<const CheckRecord*> rows;
    for (const auto& c : report.checks) rows.push_back(&c);
    std::stable_sort(rows.begin(), rows.end(), [](const auto* a, const auto* b) { return a->id < b->id; });
    if (format == ReportFormat::Csv) {
        std::string out = "id,digest,lhs,rhs,constant,pass\n";
        for (const auto* c : rows)
            out += c->id + "," + c->digest + "," + fmt(c->lhs) + "," + fmt(c->rhs) + "," + fmt(c->constant) + "," +
                   (c->pass ? "1" : "0") + "\n";
        return out;
    }
    Json checks = Json::array();
    for (const auto* c : rows)
        checks.push_back({{"id", c->id},
                          {"digest", c->digest},
                          {"lhs", real_to_json(c->lhs)},
                          {"rhs", real_to_json(c->rhs)},
                          {"constant", real_to_json(c->constant)},
                          {"pass", c->pass}});
    Json constants = Json::array();
    for (const auto& c : report.constants)
        constants.push_back(
            {{"name", c.name}, {"value", real_to_json(c.value)}, {"stability", real_to_json(c.stability)}});
    Json j;
    j["suite"] = report.suite;
    j["seed"] = report.seed;
    j["environment"] = report.environment;
    j["violations"] = report.violations;
    j["passed"] = report.passed();
    j["metadata"] = report.metadata;
    j["constants"] = std::move(constants);
    j["checks"] = std::move(checks);
    return j.dump(2) + "\n";
}

Report parse_report(const std::string& json_text) {
    Json j;
    try {
        j = Json::parse(json_text);
    } catch (const Json::exception& e) {
        throw Error(std::string("invalid report: ") + e.what());
    }
    Report r;
    r.suite = j.at("suite").get<std::string>();
    r.seed = j.at("seed").get<std::uint64_t>();
    r.environment = j.at("environment").get<std::string>();
    r.violations = j.at("violations").get<std::size_t>();
    r.metadata = j.at("metadata").get<std::map<std::string, std::string>>();
    for (const auto& c : j.at("constants"))
        r.constants.push_back(
            {c.at("name").get<std::string>(), real_from_json(c.at("value")), real_from_json(c.at("stability"))});
    for (const auto& c : j.at("checks"))
        r.checks.push_back({c.at("id").get<std::string>(), c.at("digest").get<std::string>(),
                            real_from_json(c.at("lhs")), real_from_json(c.at("rhs")),
                            real_from_json(c.at("constant")), c.at("pass").get<bool>()});
    return r;
}

void write_report(const Report& report, ReportFormat format, const std::string& path) {
    write_text_file(path, emit_report(report, format));
}

}  // namespace sparsedom
