#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "sparsedom/cubes.hpp"
#include "sparsedom/grid.hpp"
#include "sparsedom/lorentz.hpp"

namespace sparsedom {

/// Young function: Power(p, a) is t^p log^a(e + t), ExpPower(a) is exp(t^a) - 1.
struct YoungFunction {
    enum class Kind { Power, ExpPower };

    Kind kind = Kind::Power;
    double p = 1.0;
    double a = 0.0;

    static YoungFunction power(double p, double a = 0.0) { return {Kind::Power, p, a}; }
    static YoungFunction exp_power(double a) { return {Kind::ExpPower, 1.0, a}; }

    void validate() const;
    double operator()(double t) const;
    bool operator==(const YoungFunction&) const = default;
};

struct Lebesgue {
    double p = 2.0;
};
struct Lorentz {
    double p = 2.0;
    double q = 2.0;
};
/// p(x) sampled on a grid, values in [1, inf].
struct VariableExponent {
    GridFunction p;
};
struct Orlicz {
    YoungFunction phi;
};

/// Banach function space: kind, optional weight (the measure w dx) and an
/// optional power transform, ||f||_{X^s} = || |f|^s ||_X^{1/s}.
struct SpaceDescriptor {
    std::variant<Lebesgue, Lorentz, VariableExponent, Orlicz> kind;
    std::optional<GridFunction> weight;
    double power = 1.0;

    static SpaceDescriptor lebesgue(double p) { return {Lebesgue{p}, std::nullopt, 1.0}; }
    static SpaceDescriptor lorentz(double p, double q) { return {Lorentz{p, q}, std::nullopt, 1.0}; }
    static SpaceDescriptor variable(GridFunction p) { return {VariableExponent{std::move(p)}, std::nullopt, 1.0}; }
    static SpaceDescriptor orlicz(YoungFunction phi) { return {Orlicz{phi}, std::nullopt, 1.0}; }

    SpaceDescriptor with_weight(GridFunction w) const;
    SpaceDescriptor powered(double s) const;

    void validate() const;
    std::string name() const;
};

/// Norm of f in X. Throws on an inadmissible descriptor or grid mismatch.
double space_norm(const GridFunction& f, const SpaceDescriptor& x);
/// Norm of f restricted to the given sorted cell set.
double space_norm_on(const GridFunction& f, const SpaceDescriptor& x, const std::vector<std::size_t>& cells);

/// int_{p < inf} |f|^{p(x)} dx + sup_{p = inf} |f|, optionally weighted.
double modular(const GridFunction& f, const GridFunction& p, const GridFunction* w = nullptr);
double luxemburg_norm(const GridFunction& f, const GridFunction& p, const GridFunction* w = nullptr);

/// Smallest lambda with rho(lambda) <= 1 for a nonincreasing modular map,
/// found by bracketing from `seed` and bisecting to relative width 1e-12.
double luxemburg_gauge(const std::function<double(double)>& rho, double seed);

/// Local Luxemburg norm: inf { lambda : (1/|Q|) int_Q phi(|f| / lambda) <= 1 }.
double orlicz_local_norm(const GridFunction& f, const Cube& q, const YoungFunction& phi);
double orlicz_local_norm(const GridFunction& f, const CellBox& box, const YoungFunction& phi);

/// Associate space: L^p(w) -> L^{p'}(w^{1-p'}), L^{p,q} -> L^{p',q'}, L^{p(.)} -> L^{p'(.)}.
SpaceDescriptor associate(const SpaceDescriptor& x);
/// Constant K with int |f g| <= K ||f||_X ||g||_{X'} for the associate above.
double holder_constant(const SpaceDescriptor& x);

/// Exact norm of the indicator of a ball.
struct ChiBallNorm {
    double value = 0.0;
    /// True when only an equivalent quantity is returned (variable exponent).
    bool equivalent_only = false;
};

/// Lorentz: (p/q)^{1/q} v_n^{1/p} r^{n/p}. Variable exponent: |B|^{1/p_B}
/// with 1/p_B the cell average of 1/p over B. Otherwise the norm of the
/// rasterized indicator on `grid`, or the analytic |B|^{1/p} for unweighted
/// Lebesgue when no grid is given.
ChiBallNorm chi_ball_norm(const SpaceDescriptor& x, const Ball& b, const GridGeometry* grid = nullptr);
double ball_volume(int dim, double r);
double lorentz_chi_closed_form(double p, double q, int dim, double r);

/// u(x, r) appearing in Morrey-Banach norms ||f chi_B(x,r)||_X / u(x, r).
struct MorreyWeight {
    enum class Kind { PowerRadius, ChiNormPower, Constant, Tabulated };

    Kind kind = Kind::Constant;
    double lambda = 0.0;
    double q = 1.0;
    std::shared_ptr<const SpaceDescriptor> space;
    double theta = 1.0;
    double constant = 1.0;
    std::function<double(const Point&, double)> table;

    /// u = r^{lambda / q}.
    static MorreyWeight power_radius(double lambda, double q);
    /// u = ||chi_B(x,r)||_X^theta.
    static MorreyWeight chi_norm_power(SpaceDescriptor x, double theta);
    static MorreyWeight constant_value(double c);
    static MorreyWeight tabulated(std::function<double(const Point&, double)> fn);

    double operator()(const Point& x, double r, int dim, const GridGeometry* grid = nullptr) const;
};

/// Finite set of balls: every center paired with every radius.
struct BallFamily {
    std::vector<Point> centers;
    std::vector<double> radii;

    /// Cell centers with the given stride and radii 2^k h, k = 0..K, capped at the domain diameter.
    static BallFamily dyadic(const GridGeometry& g, std::size_t stride = 1, int levels = -1);
    void validate() const;
};

struct MorreyResult {
    double value = 0.0;
    Point center{0.0, 0.0};
    double radius = 0.0;
};

/// max over the family of ||f chi_B||_X / u(B); a lower bound for the Morrey-Banach norm.
MorreyResult morrey_norm(const GridFunction& f, const SpaceDescriptor& x, const MorreyWeight& u,
                         const BallFamily& balls);
/// Classical Morrey norm: u = r^{lambda / p}, X = L^p.
MorreyResult classical_morrey_norm(const GridFunction& f, double p, double lambda, const BallFamily& balls);

/// Single-block decomposition f = lambda b over the smallest family ball containing supp f.
struct BlockBound {
    double value = 0.0;
    Point center{0.0, 0.0};
    double radius = 0.0;
};
BlockBound block_norm_upper_bound(const GridFunction& f, const SpaceDescriptor& x, const MorreyWeight& u,
                                  const BallFamily& balls);

/// (1/|Q|) int_Q |b - <b>_Q| over a clipped box.
double mean_oscillation(const GridFunction& b, const CellBox& box);
double bmo_norm(const GridFunction& b, const CubeFamilySpec& family);
GridFunction sharp_maximal(const GridFunction& f, const CubeFamilySpec& family);

struct WxCheck {
    enum class Verdict { Pass, Fail, Inconclusive };

    Verdict verdict = Verdict::Inconclusive;
    std::string reason;
    /// Witness constants for the monotone ratio condition and the dilation series.
    double c_ratio = 0.0;
    double c_series = 0.0;
};

struct BallSample {
    Point center{0.0, 0.0};
    double radius = 1.0;
};

/// Checks the two W_X^alpha conditions on finitely many (x, r) pairs with
/// the dilation series truncated at J terms plus a geometric tail.
WxCheck wx_alpha_check(const MorreyWeight& u, const SpaceDescriptor& x, double alpha,
                       const std::vector<BallSample>& samples, int terms, int dim,
                       const GridGeometry* grid = nullptr);

struct LogHolder {
    double c1 = 0.0;
    double c2 = 0.0;
    double p_inf = 0.0;
};
/// Local and decay log-Hoelder constants of 1/p over all cell pairs.
LogHolder log_holder_constant(const GridFunction& p);

}  // namespace sparsedom
