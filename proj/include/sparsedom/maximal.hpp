#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "sparsedom/corpus.hpp"
#include "sparsedom/cubes.hpp"
#include "sparsedom/grid.hpp"
#include "sparsedom/spaces.hpp"

namespace sparsedom {

using OperatorFn = std::function<GridFunction(const GridFunction&)>;

/// Mf(x) = sup over family cubes Q containing x of <|f|>_Q.
GridFunction hl_maximal(const GridFunction& f, const CubeFamilySpec& family);
/// M_r f = (M |f|^r)^{1/r}, r >= 1.
GridFunction mr_maximal(const GridFunction& f, double r, const CubeFamilySpec& family);
/// M^k f with M^0 f = |f|.
GridFunction iterated_maximal(const GridFunction& f, int k, const CubeFamilySpec& family);
/// sup over a common cube of prod_i <|f_i|>_Q.
GridFunction multilinear_maximal(const std::vector<GridFunction>& fs, const CubeFamilySpec& family);
/// sup_Q prod_{i<l} ||f_i||_{L(log L)^a, Q} prod_{i>=l} <|f_i|>_Q.
GridFunction orlicz_maximal(const std::vector<GridFunction>& fs, std::size_t l, double a,
                            const CubeFamilySpec& family);

/// osc_s(g; Q) = ((1/|Q|^2) int_{QxQ} |g(x') - g(x'')|^s)^{1/s}; s = inf gives max - min.
double oscillation(const GridFunction& g, const CellBox& q, double s);
/// Box of 3Q clipped to the grid.
CellBox tripled_box(const GridGeometry& g, const CellBox& q);
/// sup over family cubes Q containing x of osc_s(T(f chi_{complement of 3Q}); Q).
/// Costs one application of T per family cube; 3Q is truncated to the domain.
GridFunction grand_sharp_truncation(const OperatorFn& t, const GridFunction& f, double s,
                                    const CubeFamilySpec& family);

struct RubioResult {
    GridFunction value;
    /// Sup-norm bound on the omitted terms k > K of the series.
    double series_tail = 0.0;
    /// t with M(R_K h) <= 2 normEst R_K h + t pointwise.
    double a1_tail = 0.0;
    /// False when 2 normEst <= 1 and the series cannot be controlled by the sup norm.
    bool bounded = false;
};

/// R_K h = sum_{k <= K} M^k h / (2 normEst)^k, with ||M^k|| replaced by normEst^k.
RubioResult rubio_de_francia(const GridFunction& h, int terms, double norm_estimate, const CubeFamilySpec& family);

struct NormEstimate {
    double value = 0.0;
    std::uint64_t seed = 0;
};

/// max over the corpus of norm(T f) / norm(f); a lower bound for the operator norm.
NormEstimate operator_norm_estimate(const OperatorFn& t, const std::function<double(const GridFunction&)>& norm,
                                    const std::vector<Sample>& corpus);
NormEstimate operator_norm_estimate(const OperatorFn& t, const SpaceDescriptor& x, const std::vector<Sample>& corpus);

}  // namespace sparsedom
