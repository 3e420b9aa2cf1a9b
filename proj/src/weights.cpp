#include "sparsedom/weights.hpp"

#include <algorithm>
#include <cmath>

#include "sparsedom/corpus.hpp"
#include "sparsedom/lorentz.hpp"
#include "sparsedom/maximal.hpp"
#include "sparsedom/spaces.hpp"

namespace sparsedom {

namespace {

double conjugate(double p) { return p / (p - 1.0); }

void check_p(double p) {
    if (!(p > 1.0) || !std::isfinite(p)) throw Error("weight exponent must satisfy 1 < p < inf");
}

GridFunction normalized(const GridFunction& w) {
    GridFunction out = w;
    const double top = w.max_abs();
    for (double& v : out.values()) v /= top;
    return out;
}

GridFunction power_of(const GridFunction& w, double e) {
    GridFunction out = w;
    for (double& v : out.values()) v = std::pow(v, e);
    return out;
}

double box_min(const GridFunction& w, const CellBox& q) {
    double m = kInf;
    q.for_each_cell(w.geometry(), [&](std::size_t i) { m = std::min(m, w[i]); });
    return m;
}

}  // namespace

Weight::Weight(GridFunction w) : w_(std::move(w)) {
    for (double& v : w_.values()) {
        if (!(v > 0.0) || !std::isfinite(v)) throw Error("weight samples must be positive and finite");
        v = std::max(v, kFloor);
    }
}

void WeightVector::validate() const {
    if (weights.empty() || weights.size() != exponents.size()) throw Error("weight vector and exponents differ in length");
    for (std::size_t i = 0; i < weights.size(); ++i) {
        require_same_grid(weights.front().geometry(), weights[i].geometry());
        if (!(exponents[i] >= 1.0) || !std::isfinite(exponents[i])) throw Error("weight exponents must lie in [1, inf)");
    }
}

double WeightVector::target_exponent() const {
    double inv = 0.0;
    for (double p : exponents) inv += 1.0 / p;
    return 1.0 / inv;
}

GridFunction WeightVector::nu() const {
    validate();
    const double p = target_exponent();
    GridFunction out(weights.front().geometry(), 1.0);
    for (std::size_t i = 0; i < weights.size(); ++i) out *= power_of(weights[i].function(), p / exponents[i]);
    return out;
}

FamilyMax ap_witness(const Weight& w, double p, const CubeFamilySpec& family) {
    check_p(p);
    const GridFunction wn = normalized(w.function());
    const PrefixSums pw(wn), ps(power_of(wn, 1.0 - conjugate(p)));
    return max_over_cubes(w.geometry(), family, [&](const CellBox& q) {
        return pw.box_average(q) * std::pow(ps.box_average(q), p - 1.0);
    });
}

double ap_constant(const Weight& w, double p, const CubeFamilySpec& family) { return ap_witness(w, p, family).value; }

double a1_constant(const Weight& w, const CubeFamilySpec& family) {
    const GridFunction wn = normalized(w.function());
    const PrefixSums pw(wn);
    return max_over_cubes(w.geometry(), family, [&](const CellBox& q) { return pw.box_average(q) / box_min(wn, q); })
        .value;
}

double ainfty_constant(const Weight& w, const CubeFamilySpec& family, const CubeFamilySpec& maximal_family) {
    const GridFunction wn = normalized(w.function());
    const auto& g = w.geometry();
    return max_over_cubes(g, family, [&](const CellBox& q) {
               GridFunction local(g, 0.0);
               long double mass = 0.0L;
               q.for_each_cell(g, [&](std::size_t i) {
                   local[i] = wn[i];
                   mass += wn[i];
               });
               const GridFunction m = hl_maximal(local, maximal_family);
               long double acc = 0.0L;
               q.for_each_cell(g, [&](std::size_t i) { acc += m[i]; });
               return static_cast<double>(acc / mass);
           })
        .value;
}

double multi_ap_constant(const WeightVector& ws, const CubeFamilySpec& family) {
    ws.validate();
    const double p = ws.target_exponent();
    const auto& g = ws.weights.front().geometry();
    std::vector<GridFunction> wn;
    for (const auto& w : ws.weights) wn.push_back(normalized(w.function()));
    GridFunction nu(g, 1.0);
    for (std::size_t i = 0; i < wn.size(); ++i) nu *= power_of(wn[i], p / ws.exponents[i]);
    const PrefixSums pnu(nu);
    std::vector<PrefixSums> sig(wn.size());
    for (std::size_t i = 0; i < wn.size(); ++i)
        if (ws.exponents[i] > 1.0) sig[i] = PrefixSums(power_of(wn[i], 1.0 - conjugate(ws.exponents[i])));
    return max_over_cubes(g, family, [&](const CellBox& q) {
               double v = pnu.box_average(q);
               for (std::size_t i = 0; i < wn.size(); ++i) {
                   const double pi = ws.exponents[i];
                   if (pi == 1.0) v *= std::pow(box_min(wn[i], q), -p);
                   else v *= std::pow(sig[i].box_average(q), p / conjugate(pi));
               }
               return v;
           })
        .value;
}

Weight dual_weight(const Weight& w, double p) {
    if (!(p > 1.0)) throw Error("dual weight needs p > 1");
    if (std::isinf(p)) return w;
    return Weight(power_of(w.function(), 1.0 - conjugate(p)));
}

double weak_norm_lower_bound(const Weight& w, double p, const CubeFamilySpec& family, std::size_t probes,
                             std::uint64_t seed) {
    check_p(p);
    const auto& g = w.geometry();
    const GridFunction sigma = dual_weight(w, p).function();
    const SpaceDescriptor strong = SpaceDescriptor::lebesgue(p).with_weight(w.function());

    std::vector<CellBox> cubes{ap_witness(w, p, family).cube};
    std::vector<CellBox> all;
    for_each_cube(g, family, [&](const CellBox& q) { all.push_back(q); });
    Rng rng(seed);
    for (std::size_t k = 0; k < probes && !all.empty(); ++k)
        cubes.push_back(all[static_cast<std::size_t>(rng.integer(0, static_cast<long>(all.size()) - 1))]);

    double best = 0.0;
    for (const CellBox& q : cubes) {
        GridFunction f(g, 0.0);
        q.for_each_cell(g, [&](std::size_t i) { f[i] = sigma[i]; });
        const double weak = lorentz_norm(hl_maximal(f, family), p, kInf, &w.function());
        best = std::max(best, weak / space_norm(f, strong));
    }
    return best;
}

}  // namespace sparsedom
