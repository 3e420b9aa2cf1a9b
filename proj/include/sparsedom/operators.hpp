#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "sparsedom/cubes.hpp"
#include "sparsedom/grid.hpp"
#include "sparsedom/maximal.hpp"
#include "sparsedom/sparse.hpp"

namespace sparsedom {

/// Angular part of a rough kernel, evaluated on unit vectors.
struct Omega {
    enum class Kind { Sign1, Step, Zero, Custom };

    Kind kind = Kind::Sign1;
    std::function<double(double, double)> fn;

    /// sign of the first coordinate.
    static Omega sign1() { return {Kind::Sign1, {}}; }
    /// sign(y_1 y_2): +1 on the first and third quadrants.
    static Omega step() { return {Kind::Step, {}}; }
    static Omega zero() { return {Kind::Zero, {}}; }
    static Omega custom(std::function<double(double, double)> f) { return {Kind::Custom, std::move(f)}; }

    double operator()(double u1, double u2) const;
    /// Mean over 4096 equally spaced directions.
    double sphere_mean() const;
};

/// Test operator acting on grid functions. Kernel-form operators
/// (Hilbert, rough) also expose their translation-invariant kernel so that
/// commutators can weight each kernel term.
class Operator {
public:
    enum class Kind { Identity, Hilbert, Rough, Maximal, Sparse, Custom };

    static Operator identity(double scale = 1.0);
    /// (h / pi) sum_{j != i} f_j / (x_i - x_j); 1D only.
    static Operator hilbert();
    /// sum_{j != i} f_j Omega(y / |y|) / |y|^2 h^2 with y = x_i - x_j; 2D only.
    /// Throws unless Omega has zero mean within 1e-10.
    static Operator rough(Omega omega);
    static Operator maximal(CubeFamilySpec family);
    /// Sum of sparse operators over fixed families.
    static Operator sparse(std::vector<SparseFamily> families, double r = 1.0);
    static Operator custom(std::string name, OperatorFn fn);

    Kind kind() const { return kind_; }
    const std::string& name() const { return name_; }
    bool kernel_form() const { return kind_ == Kind::Hilbert || kind_ == Kind::Rough; }

    GridFunction operator()(const GridFunction& f) const;
    /// out_i = sum_{j != i} K(x_i - x_j) w(i, j) f_j for kernel-form operators.
    GridFunction apply_weighted(const GridFunction& f, const std::function<double(std::size_t, std::size_t)>& w) const;

    OperatorFn fn() const {
        return [self = *this](const GridFunction& f) { return self(f); };
    }

private:
    std::vector<double> kernel_table(const GridGeometry& g) const;

    Kind kind_ = Kind::Identity;
    std::string name_ = "identity";
    double scale_ = 1.0;
    Omega omega_;
    CubeFamilySpec family_;
    std::shared_ptr<const std::vector<SparseFamily>> sparse_;
    OperatorFn custom_;
};

/// T((b(x) - b(.))^m f)(x) for kernel-form T.
GridFunction commutator_iterated(const Operator& t, const GridFunction& b, int m, const GridFunction& f);

/// Bilinear model with K(x, y1, y2) = sgn(x - y1) sgn(x - y2) / (|x - y1| + |x - y2|)^2
/// on a 1D grid, diagonal cells y_s = x excluded. `symbols` lists the
/// positions s in {0, 1} carrying (b_s(x) - b_s(y_s)); bs must have two
/// entries when symbols is nonempty.
GridFunction multilinear_commutator(const std::vector<GridFunction>& bs, const std::vector<int>& symbols,
                                    const GridFunction& f1, const GridFunction& f2);
GridFunction bilinear_model(const GridFunction& f1, const GridFunction& f2);

struct WrRow {
    double lambda = 0.0;
    double phi = 0.0;
};

/// Empirical phi(lambda): the smallest c with |{x in Q : |T(f chi_Q)| > c <|f|>_{r,Q}}| <= lambda |Q|
/// over all (cube, f) pairs. Pairs with <|f|>_{r,Q} = 0 are skipped.
std::vector<WrRow> wr_property_check(const OperatorFn& t, double r, const std::vector<CellBox>& cubes,
                                     const std::vector<GridFunction>& corpus, const std::vector<double>& lambdas);

struct JohnNirenbergReport {
    bool skipped = false;
    std::size_t checks = 0;
    std::size_t violations = 0;
    std::size_t violations_upper = 0;
    double bmo = 0.0;
    double bmo_upper = 0.0;
};

/// Counts (Q, alpha) with |{x in Q : |b - <b>_Q| > alpha}| > e |Q| exp(-alpha / (2^n e ||b||)).
/// `violations` uses the BMO norm over `family` itself; `violations_upper`
/// uses the (larger) norm over `upper_family`.
JohnNirenbergReport john_nirenberg_check(const GridFunction& b, const CubeFamilySpec& family,
                                         const std::vector<double>& alphas,
                                         const CubeFamilySpec& upper_family = CubeFamilySpec::dyadic_shifted());

}  // namespace sparsedom
