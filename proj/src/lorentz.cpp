#include "sparsedom/lorentz.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace sparsedom {

double RearrangementProfile::measure_above(double s) const {
    // levels are nonincreasing: the answer is the right end of the last plateau above s.
    double t = 0.0;
    for (std::size_t k = 0; k < levels.size(); ++k) {
        if (levels[k] > s) t = breakpoints[k + 1];
        else break;
    }
    return t;
}

double RearrangementProfile::value_at(double t) const {
    for (std::size_t k = 0; k < levels.size(); ++k)
        if (t < breakpoints[k + 1]) return levels[k];
    return 0.0;
}

RearrangementProfile decreasing_rearrangement(const GridFunction& f, const GridFunction* w) {
    const auto& g = f.geometry();
    if (w) {
        require_same_grid(g, w->geometry());
        for (double v : w->values())
            if (v < 0.0) throw Error("negative weight");
    }
    const double vol = g.cell_volume();
    std::vector<double> masses(f.size(), vol);
    if (w)
        for (std::size_t i = 0; i < masses.size(); ++i) masses[i] = (*w)[i] * vol;
    return decreasing_rearrangement(f.values(), masses);
}

RearrangementProfile decreasing_rearrangement(std::span<const double> values, std::span<const double> masses) {
    if (values.size() != masses.size()) throw Error("sample and mass counts differ");
    std::vector<std::size_t> order(values.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return std::abs(values[a]) > std::abs(values[b]); });

    RearrangementProfile prof;
    double cumulative = 0.0;
    std::size_t k = 0;
    while (k < order.size()) {
        const double level = std::abs(values[order[k]]);
        if (level == 0.0) break;
        double mass = 0.0;
        while (k < order.size() && std::abs(values[order[k]]) == level) {
            if (masses[order[k]] < 0.0) throw Error("negative weight");
            mass += masses[order[k]];
            ++k;
        }
        if (mass <= 0.0) continue;
        cumulative += mass;
        prof.levels.push_back(level);
        prof.breakpoints.push_back(cumulative);
    }
    return prof;
}

namespace {

void check_pair(double p, double q) {
    if (!(p > 0.0) || !(q > 0.0) || std::isnan(p) || std::isnan(q)) throw Error("inadmissible pair");
    if (std::isinf(p) && !std::isinf(q)) throw Error("inadmissible pair");
}

}  // namespace

double lorentz_norm(const RearrangementProfile& prof, double p, double q) {
    check_pair(p, q);
    if (prof.empty()) return 0.0;
    if (std::isinf(p)) return prof.levels.front();
    if (std::isinf(q)) {
        // sup of t^{1/p} v_k on [t_{k-1}, t_k) is approached at the right edge.
        double best = 0.0;
        for (std::size_t k = 0; k < prof.levels.size(); ++k) {
            best = std::max(best, prof.levels[k] * std::pow(prof.breakpoints[k], 1.0 / p));
            best = std::max(best, prof.levels[k] * std::pow(prof.breakpoints[k + 1], 1.0 / p));
        }
        return best;
    }
    const double e = q / p;
    double acc = 0.0;
    for (std::size_t k = 0; k < prof.levels.size(); ++k) {
        const double span = std::pow(prof.breakpoints[k + 1], e) - std::pow(prof.breakpoints[k], e);
        acc += std::pow(prof.levels[k], q) * span;
    }
    return std::pow(acc / e, 1.0 / q);
}

double lorentz_norm(const GridFunction& f, double p, double q, const GridFunction* w) {
    check_pair(p, q);
    return lorentz_norm(decreasing_rearrangement(f, w), p, q);
}

LorentzHolderBound lorentz_holder_bound(const std::vector<LorentzFactor>& factors) {
    if (factors.empty()) throw Error("empty factor list");
    double inv_p = 0.0, inv_q = 0.0, product = 1.0, weak_const = 1.0;
    for (const auto& f : factors) {
        const bool finite = f.p > 1.0 && std::isfinite(f.p) && f.q > 0.0;
        const bool infinite = std::isinf(f.p) && std::isinf(f.q);
        if (!finite && !infinite) throw Error("inadmissible pair");
        inv_p += 1.0 / f.p;
        inv_q += 1.0 / f.q;
        product *= f.norm;
        if (finite) weak_const *= std::pow(f.p, 1.0 / f.p);
    }
    const double m = static_cast<double>(factors.size());
    LorentzHolderBound out{};
    out.p = inv_p > 0.0 ? 1.0 / inv_p : kInf;
    out.q = inv_q > 0.0 ? 1.0 / inv_q : kInf;
    if (std::isfinite(out.q)) {
        out.regime = HolderRegime::FiniteQ;
        out.bound = std::pow(m, inv_p) * product;
    } else if (std::isfinite(out.p)) {
        out.regime = HolderRegime::WeakTarget;
        out.bound = std::pow(out.p, -inv_p) * weak_const * product;
    } else {
        out.regime = HolderRegime::Infinite;
        out.bound = product;
    }
    return out;
}

}  // namespace sparsedom
