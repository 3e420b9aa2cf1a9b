#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "sparsedom/grid.hpp"

namespace testing {

using sparsedom::GridFunction;
using sparsedom::GridGeometry;

/// Small hand-rolled generator for property tests.
class Gen {
public:
    explicit Gen(std::uint64_t seed) : rng_(seed) {}

    double real(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
    long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng_); }
    bool coin(double p = 0.5) { return real(0.0, 1.0) < p; }

    /// Values drawn from a few plateaus so ties occur.
    GridFunction plateaus(const GridGeometry& g, int levels = 4) {
        std::vector<double> lv;
        for (int i = 0; i < levels; ++i) lv.push_back(real(-3.0, 3.0));
        GridFunction f(g, 0.0);
        for (std::size_t i = 0; i < g.size(); ++i)
            f[i] = coin(0.25) ? 0.0 : lv[static_cast<std::size_t>(integer(0, levels - 1))];
        return f;
    }

    GridFunction uniform(const GridGeometry& g, double lo, double hi) {
        GridFunction f(g, 0.0);
        for (std::size_t i = 0; i < g.size(); ++i) f[i] = real(lo, hi);
        return f;
    }

private:
    std::mt19937_64 rng_;
};

inline GridFunction indicator(const GridGeometry& g, double a, double b) {
    return GridFunction::from(g, [&](const sparsedom::Point& x) { return x[0] >= a && x[0] < b ? 1.0 : 0.0; });
}

inline double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

}  // namespace testing
