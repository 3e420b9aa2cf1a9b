#pragma once

#include <cstdint>
#include <vector>

#include "sparsedom/cubes.hpp"
#include "sparsedom/grid.hpp"

namespace sparsedom {

/// Strictly positive weight. Construction rejects samples <= 0 or non-finite
/// and lifts positive samples below kFloor to kFloor.
class Weight {
public:
    static constexpr double kFloor = 1e-12;

    explicit Weight(GridFunction w);

    const GridFunction& function() const { return w_; }
    const GridGeometry& geometry() const { return w_.geometry(); }

private:
    GridFunction w_;
};

/// Weights w_1..w_m with exponents 1 <= p_i < inf and 1/p = sum 1/p_i.
struct WeightVector {
    std::vector<Weight> weights;
    std::vector<double> exponents;

    void validate() const;
    double target_exponent() const;
    /// nu = prod w_i^{p / p_i}.
    GridFunction nu() const;
};

/// max over the family of <w>_Q <w^{1-p'}>_Q^{p-1}.
double ap_constant(const Weight& w, double p, const CubeFamilySpec& family);
/// Cube attaining the A_p maximum.
FamilyMax ap_witness(const Weight& w, double p, const CubeFamilySpec& family);
/// max over the family of <w>_Q / min_Q w.
double a1_constant(const Weight& w, const CubeFamilySpec& family);
/// Fujii-Wilson: max over the family of (1 / w(Q)) int_Q M(w chi_Q), with M over `maximal_family`.
double ainfty_constant(const Weight& w, const CubeFamilySpec& family, const CubeFamilySpec& maximal_family);
/// max over the family of <nu>_Q prod_i <w_i^{1-p_i'}>_Q^{p/p_i'}, with (min_Q w_i)^{-p} when p_i = 1.
double multi_ap_constant(const WeightVector& ws, const CubeFamilySpec& family);
/// sigma = w^{1-p'}.
Weight dual_weight(const Weight& w, double p);

/// Lower bound for ||M||_{L^p(w) -> L^{p,inf}(w)} from test functions
/// sigma chi_Q: the A_p witness cube plus `probes` family cubes drawn at random.
double weak_norm_lower_bound(const Weight& w, double p, const CubeFamilySpec& family, std::size_t probes,
                             std::uint64_t seed);

}  // namespace sparsedom
