#include <doctest.h>

#include <numbers>

#include "sparsedom/corpus.hpp"
#include "sparsedom/operators.hpp"
#include "support.hpp"

using namespace sparsedom;
using testing::Gen;
using testing::indicator;

namespace {

const double kPi = std::numbers::pi;

GridFunction reflect0(const GridFunction& f) {
    const auto& g = f.geometry();
    GridFunction out(g, 0.0);
    const long n0 = static_cast<long>(g.extent(0));
    for (std::size_t i = 0; i < g.size(); ++i) {
        const Index2 c = g.unflat(i);
        out[i] = f[g.flat(n0 - 1 - c[0], c[1])];
    }
    return out;
}

std::vector<CellBox> interval_boxes(const GridGeometry& g, long side) {
    std::vector<CellBox> out;
    for (long a = 0; a + side <= static_cast<long>(g.extent(0)); a += side) out.push_back(CellBox{{a, 0}, {a + side, 1}});
    return out;
}

}  // namespace

TEST_CASE("Hilbert transform basics") {
    const GridGeometry g = GridGeometry::line(-2.0, 2.0, 64);
    const Operator h = Operator::hilbert();
    CHECK(h(GridFunction(g, 0.0)).max_abs() == 0.0);
    Gen gen(71);
    const GridFunction half = gen.uniform(g, -1, 1);
    const GridFunction even = half + reflect0(half);
    const GridFunction he = h(even), hr = reflect0(he);
    for (std::size_t i = 0; i < g.size(); ++i) CHECK(he[i] == doctest::Approx(-hr[i]).epsilon(1e-12));
    CHECK_THROWS_AS(h(GridFunction(GridGeometry::square(0.0, 1.0, 4), 1.0)), Error);
}

TEST_CASE("Hilbert transform of an interval indicator") {
    const double hh = std::ldexp(1.0, -9);
    const GridGeometry g = GridGeometry::line(-4.0, 4.0, 4096);
    const GridFunction hf = Operator::hilbert()(indicator(g, -1.0, 1.0));
    double worst = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
        const double x = g.center(i)[0];
        if (std::abs(std::abs(x) - 1.0) <= 4 * hh || std::abs(x) < 0.05) continue;
        const double want = std::log(std::abs((x + 1) / (x - 1))) / kPi;
        worst = std::max(worst, std::abs(hf[i] - want) / std::abs(want));
    }
    CHECK(worst <= 0.03);
}

TEST_CASE("rough operator") {
    const GridGeometry g = GridGeometry::square(-2.0, 2.0, 32);
    CHECK(Operator::rough(Omega::zero())(indicator(g, -1.0, 1.0)).max_abs() == 0.0);
    CHECK_THROWS_AS(Operator::rough(Omega::custom([](double, double) { return 1.0; })), Error);
    CHECK_THROWS_AS(Operator::rough(Omega::sign1())(GridFunction(GridGeometry::line(0.0, 1.0, 8), 1.0)), Error);

    const GridFunction radial = GridFunction::from(g, [](const Point& x) { return std::exp(-x[0] * x[0] - x[1] * x[1]); });
    const GridFunction t = Operator::rough(Omega::sign1())(radial), tr = reflect0(t);
    for (std::size_t i = 0; i < g.size(); ++i) CHECK(t[i] == doctest::Approx(-tr[i]).epsilon(1e-12));

    // Refinement study on block averages.
    auto block = [](std::size_t n) {
        const GridGeometry gg = GridGeometry::square(-2.0, 2.0, n);
        const GridFunction chi = GridFunction::from(gg, [](const Point& x) {
            return x[0] >= 0 && x[0] < 1 && x[1] >= 0 && x[1] < 1 ? 1.0 : 0.0;
        });
        const GridFunction out = Operator::rough(Omega::sign1())(chi);
        return std::vector<double>{local_average(out, Cube{2, {1.0, 0.25}, 0.5}),
                                   local_average(out, Cube{2, {-0.5, 0.25}, 0.5}),
                                   local_average(out, Cube{2, {0.25, -1.0}, 0.5})};
    };
    const auto a = block(32), b = block(64);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (std::abs(b[i]) < 1e-12) continue;
        CHECK(std::abs(a[i] - b[i]) <= 0.1 * std::abs(b[i]));
    }
}

TEST_CASE("property: kernel operators are linear") {
    Gen gen(72);
    for (int t = 0; t < 20; ++t) {
        const bool two = t % 2;
        const GridGeometry g = two ? GridGeometry::square(-1.0, 1.0, 12) : GridGeometry::line(-1.0, 1.0, 80);
        const Operator op = two ? Operator::rough(t % 4 == 1 ? Omega::sign1() : Omega::step()) : Operator::hilbert();
        const GridFunction f = gen.uniform(g, -1, 1), h = gen.plateaus(g);
        const double a = gen.real(-3, 3), c = gen.real(-3, 3);
        const GridFunction lhs = op(a * f + c * h), rhs = a * op(f) + c * op(h);
        const double scale = std::max(1.0, rhs.max_abs());
        for (std::size_t i = 0; i < g.size(); ++i) CHECK(std::abs(lhs[i] - rhs[i]) <= 1e-12 * scale);
    }
}

TEST_CASE("property: commutators") {
    Gen gen(73);
    for (int t = 0; t < 20; ++t) {
        const bool two = t % 2;
        const GridGeometry g = two ? GridGeometry::square(-1.0, 1.0, 10) : GridGeometry::line(-1.0, 1.0, 64);
        const Operator op = two ? Operator::rough(Omega::sign1()) : Operator::hilbert();
        const GridFunction f = gen.uniform(g, -1, 1), b = gen.uniform(g, -2, 2);
        for (int m = 1; m <= 3; ++m) CHECK(commutator_iterated(op, GridFunction(g, 0.3), m, f).max_abs() == 0.0);
        const GridFunction c1 = commutator_iterated(op, b, 1, f), alt = b * op(f) - op(b * f);
        const double scale = std::max(1.0, alt.max_abs());
        for (std::size_t i = 0; i < g.size(); ++i) CHECK(std::abs(c1[i] - alt[i]) <= 1e-12 * scale);
        // m = 2 is the commutator applied twice.
        const GridFunction c2 = commutator_iterated(op, b, 2, f);
        const GridFunction twice = b * c1 - commutator_iterated(op, b, 1, b * f);
        const double s2 = std::max(1.0, twice.max_abs());
        for (std::size_t i = 0; i < g.size(); ++i) CHECK(std::abs(c2[i] - twice[i]) <= 1e-11 * s2);
    }
    CHECK_THROWS_AS(commutator_iterated(Operator::identity(), GridFunction(GridGeometry::line(0, 1, 4), 1.0), 1,
                                        GridFunction(GridGeometry::line(0, 1, 4), 1.0)),
                    Error);
}

TEST_CASE("commutator with the identity symbol") {
    const GridGeometry g = GridGeometry::line(-2.0, 3.0, 640);
    const GridFunction x = GridFunction::from(g, [](const Point& p) { return p[0]; });
    const GridFunction c = commutator_iterated(Operator::hilbert(), x, 1, indicator(g, 0.0, 1.0));
    for (std::size_t i = 0; i < g.size(); ++i) CHECK(std::abs(c[i] - 1.0 / kPi) <= 0.03 / kPi);
}

TEST_CASE("bilinear model and multilinear commutators") {
    const GridGeometry g = GridGeometry::line(-2.0, 6.0, 64);
    const GridFunction chi = indicator(g, 0.0, 1.0);
    const GridFunction out = bilinear_model(chi, chi);
    const std::size_t at = static_cast<std::size_t>((3.0 + 2.0) / g.spacing);
    const double x = g.center(at)[0];
    double want = 0.0;
    for (std::size_t j = 0; j < g.size(); ++j)
        for (std::size_t k = 0; k < g.size(); ++k) {
            if (j == at || k == at) continue;
            const double y1 = g.center(j)[0], y2 = g.center(k)[0];
            const double d = std::abs(x - y1) + std::abs(x - y2);
            want += (x > y1 ? 1 : -1) * (x > y2 ? 1 : -1) * chi[j] * chi[k] * g.spacing * g.spacing / (d * d);
        }
    CHECK(out[at] == doctest::Approx(want).epsilon(1e-12));
    CHECK(want > 0.0);

    Gen gen(74);
    const GridFunction f = gen.uniform(g, -1, 1), h = gen.plateaus(g);
    CHECK(bilinear_model(GridFunction(g, 0.0), h).max_abs() == 0.0);
    const GridFunction bc(g, 2.0);
    CHECK(multilinear_commutator({bc, bc}, {0}, f, h).max_abs() == 0.0);
    CHECK(multilinear_commutator({bc, bc}, {0, 1}, f, h).max_abs() == 0.0);
    const GridFunction plain = multilinear_commutator({bc, bc}, {}, f, h), bm = bilinear_model(f, h);
    for (std::size_t i = 0; i < g.size(); ++i) CHECK(plain[i] == bm[i]);
    CHECK_THROWS_AS(multilinear_commutator({bc}, {0}, f, h), Error);

    // Symbol in slot 0 is linear in b.
    const GridFunction b1 = gen.uniform(g, -1, 1), b2 = gen.uniform(g, -1, 1);
    const GridFunction s = multilinear_commutator({b1 + b2, bc}, {0}, f, h);
    const GridFunction s1 = multilinear_commutator({b1, bc}, {0}, f, h), s2 = multilinear_commutator({b2, bc}, {0}, f, h);
    for (std::size_t i = 0; i < g.size(); ++i) CHECK(s[i] == doctest::Approx(s1[i] + s2[i]).epsilon(1e-12));
}

TEST_CASE("W_r property tables") {
    const GridGeometry g = GridGeometry::line(0.0, 1.0, 128);
    const std::vector<double> lambdas = {0.05, 0.1, 0.25, 0.5, 0.75};
    const auto cubes = interval_boxes(g, 16);
    const OperatorFn id = [](const GridFunction& f) { return f; };
    for (const WrRow& row : wr_property_check(id, 1.0, cubes, {GridFunction(g, 3.0)}, lambdas))
        CHECK(row.phi == doctest::Approx(1.0));
    CHECK_THROWS_AS(wr_property_check(id, 1.0, cubes, {GridFunction(g, 1.0)}, {1.0}), Error);
    CHECK_THROWS_AS(wr_property_check(id, 0.5, cubes, {GridFunction(g, 1.0)}, lambdas), Error);

    auto fitted = [&](const OperatorFn& t, double r, std::uint64_t seed, double shape_power) {
        std::vector<GridFunction> corpus;
        for (const Sample& s : generate_corpus(CorpusKind::Step, 8, seed, g)) corpus.push_back(s.f);
        double c = 0.0;
        for (const WrRow& row : wr_property_check(t, r, cubes, corpus, lambdas)) {
            CHECK(std::isfinite(row.phi));
            c = std::max(c, row.phi * std::pow(row.lambda, shape_power));
        }
        return c;
    };
    const auto fam = CubeFamilySpec::dyadic_shifted();
    const OperatorFn m = [&](const GridFunction& f) { return hl_maximal(f, fam); };
    const double cm1 = fitted(m, 1.0, 1, 1.0), cm2 = fitted(m, 1.0, 2, 1.0);
    CHECK(std::max(cm1, cm2) <= 2 * std::min(cm1, cm2));
    const OperatorFn hil = Operator::hilbert().fn();
    const double ch1 = fitted(hil, 2.0, 1, 0.5), ch2 = fitted(hil, 2.0, 2, 0.5);
    CHECK(ch1 > 0.0);
    CHECK(std::max(ch1, ch2) <= 2 * std::min(ch1, ch2));
}

TEST_CASE("John-Nirenberg inequality") {
    const GridGeometry g = GridGeometry::line(0.0, 2.0, 64);
    const std::vector<double> alphas = {0.1, 0.25, 0.5, 1, 2, 4};
    CHECK(john_nirenberg_check(GridFunction(g, 4.0), CubeFamilySpec::dyadic_shifted(), alphas).skipped);

    CubeFamilySpec dense = CubeFamilySpec::dense(2.0);
    dense.interior_only = true;
    const JohnNirenbergReport r = john_nirenberg_check(indicator(g, 0.0, 1.0), dense, alphas, dense);
    CHECK_FALSE(r.skipped);
    CHECK(r.checks > 0);
    CHECK(r.violations == 0);

    const GridGeometry gl = GridGeometry::line(-1.0, 1.0, 2048);
    const GridFunction lg = GridFunction::from(gl, [](const Point& x) { return std::log(std::abs(x[0])); });
    const JohnNirenbergReport rl =
        john_nirenberg_check(lg, CubeFamilySpec::standard_dyadic_interior(), {1, 2, 3, 4, 5, 6, 7, 8});
    CHECK(rl.violations == 0);
    CHECK(rl.violations_upper == 0);
    CHECK(rl.bmo_upper >= rl.bmo);
}
