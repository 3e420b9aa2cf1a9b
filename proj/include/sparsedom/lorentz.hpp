#pragma once

#include <limits>
#include <vector>

#include "sparsedom/grid.hpp"

namespace sparsedom {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Exact decreasing rearrangement of a step function: f* = levels[k] on
/// [breakpoints[k], breakpoints[k+1]), zero beyond the last breakpoint.
struct RearrangementProfile {
    std::vector<double> breakpoints{0.0};  // t_0 = 0 < t_1 < ... < t_K
    std::vector<double> levels;            // v_1 >= ... >= v_K > 0

    bool empty() const { return levels.empty(); }
    /// Measure of {f* > s}, which equals the distribution function of f.
    double measure_above(double s) const;
    double value_at(double t) const;
};

/// Sorts cells by |f| descending (ties by cell index) and accumulates the
/// (weighted) cell measures; equal values merge into one plateau.
RearrangementProfile decreasing_rearrangement(const GridFunction& f, const GridFunction* w = nullptr);
/// Same from raw samples: |value| and the measure carried by each sample.
RearrangementProfile decreasing_rearrangement(std::span<const double> values, std::span<const double> masses);

/// Lorentz (quasi)norm of a profile. p, q in (0, inf]; p = inf requires q = inf.
double lorentz_norm(const RearrangementProfile& prof, double p, double q);
double lorentz_norm(const GridFunction& f, double p, double q, const GridFunction* w = nullptr);

struct LorentzFactor {
    double norm;
    double p;
    double q;
};

enum class HolderRegime { FiniteQ, WeakTarget, Infinite };

struct LorentzHolderBound {
    double p;
    double q;
    double bound;
    HolderRegime regime;
};

/// Right-hand side of the Lorentz Hoelder inequality for a product of m
/// factors with 1/p = sum 1/p_i and 1/q = sum 1/q_i:
///   q < inf            : m^{1/p} * prod |f_i|
///   p < inf, q = inf   : p^{-1/p} * prod p_i^{1/p_i} |f_i|
///   p = q = inf        : prod |f_i|
/// Each factor must have 1 < p_i < inf, 0 < q_i <= inf, or p_i = q_i = inf.
LorentzHolderBound lorentz_holder_bound(const std::vector<LorentzFactor>& factors);

}  // namespace sparsedom
