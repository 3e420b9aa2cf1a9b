#include <doctest.h>

#include <algorithm>
#include <set>

#include "sparsedom/maximal.hpp"
#include "sparsedom/sparse.hpp"
#include "support.hpp"

using namespace sparsedom;
using testing::Gen;
using testing::indicator;

namespace {

bool inside(const CellBox& a, const CellBox& b) {
    return a.lo[0] >= b.lo[0] && a.hi[0] <= b.hi[0] && a.lo[1] >= b.lo[1] && a.hi[1] <= b.hi[1];
}

bool disjoint(const CellBox& a, const CellBox& b) {
    return a.hi[0] <= b.lo[0] || b.hi[0] <= a.lo[0] || a.hi[1] <= b.lo[1] || b.hi[1] <= a.lo[1];
}

SparseFamily family_of(const DyadicLattice& d, std::vector<LatticeCube> cubes) {
    SparseFamily s;
    s.lattice = d;
    s.cubes = std::move(cubes);
    return s;
}

CubeFamilySpec single_lattice(const DyadicLattice& d) {
    CubeFamilySpec f = CubeFamilySpec::dyadic_shifted();
    f.lattices = {d.index()};
    f.top_level = d.top_level();
    return f;
}

GridGeometry random_grid(Gen& gen, int dim) {
    return dim == 1 ? GridGeometry::line(0.0, 1.0, static_cast<std::size_t>(gen.integer(5, 100)))
                    : GridGeometry::square(0.0, 1.0, static_cast<std::size_t>(gen.integer(3, 14)));
}

}  // namespace

TEST_CASE("property: lattice levels nest and partition") {
    Gen gen(61);
    for (int t = 0; t < 20; ++t) {
        const int dim = t % 2 ? 2 : 1;
        const GridGeometry g = random_grid(gen, dim);
        for (const DyadicLattice& d : DyadicLattice::family(g)) {
            for (int k = 1; k <= d.top_level(); ++k)
                for (const Index2& m : d.cubes_at(k)) {
                    const CellBox parent = d.box(k, m);
                    CHECK(parent.extent(0) == (1L << k));
                    std::size_t cells = 0;
                    for (const Index2& c : d.children(k, m)) {
                        CHECK(inside(d.box(k - 1, c), parent));
                        CHECK(d.parent(k - 1, c) == m);
                        cells += d.box(k - 1, c).count();
                    }
                    CHECK(cells == parent.count());
                }
            CHECK(d.cubes_at(0).size() == g.size());
        }
        // Some lattice has a single top cube.
        bool single = false;
        for (const DyadicLattice& d : DyadicLattice::family(g))
            single = single || d.cubes_at(d.top_level()).size() == 1;
        CHECK(single);
    }
}

TEST_CASE("three-lattice cover of the unit interval") {
    const GridGeometry g = GridGeometry::line(-1.0, 2.0, 48);
    const DyadicLattice d = DyadicLattice::standard(g);
    const ThreeLatticeCover cover = three_lattice_cover(d);
    CHECK(cover.lattices_used == 3);
    const CellBox unit = cells_of(g, Cube{1, {0.0, 0.0}, 1.0});
    bool found = false;
    for (const TripledCube& e : cover.entries) {
        const CellBox q = d.clipped_box(e.q.level, e.q.index);
        if (q != unit) continue;
        found = true;
        CHECK(inside(q, e.box));
        CHECK(e.box.extent(0) == 3 * q.extent(0));
    }
    CHECK(found);
}

TEST_CASE("property: three-lattice cover") {
    Gen gen(62);
    for (int t = 0; t < 16; ++t) {
        const int dim = t % 2 ? 2 : 1;
        const GridGeometry g = t == 1 ? GridGeometry::square(0.0, 1.0, 8) : random_grid(gen, dim);
        const DyadicLattice d = DyadicLattice::standard(g);
        const ThreeLatticeCover cover = three_lattice_cover(d);
        std::size_t want = 0;
        for (int k = 0; k <= d.top_level(); ++k) want += d.cubes_at(k).size();
        CHECK(cover.entries.size() == want);
        std::set<std::size_t> cells;
        for (const TripledCube& e : cover.entries) {
            const CellBox q = d.clipped_box(e.q.level, e.q.index);
            CHECK(inside(q, e.box));
            CHECK(e.lattice >= 0);
            CHECK(e.lattice < (dim == 1 ? 3 : 9));
            const CellBox nominal = d.box(e.q.level, e.q.index);
            CHECK(e.clipped == (e.box.clipped(g) != e.box || nominal != q ||
                                e.box.extent(0) != 3 * nominal.extent(0)));
            if (!e.clipped)
                for (int a = 0; a < dim; ++a) CHECK(e.box.extent(a) == 3 * q.extent(a));
            if (e.q.level == 0) q.for_each_cell(g, [&](std::size_t i) { cells.insert(i); });
        }
        CHECK(cells.size() == g.size());
        if (t == 1) CHECK(cover.lattices_used == 9);
        // Within one target lattice the tripled cubes are nested or disjoint.
        for (std::size_t a = 0; a < cover.entries.size(); ++a)
            for (std::size_t b = a + 1; b < cover.entries.size(); ++b) {
                const TripledCube &x = cover.entries[a], &y = cover.entries[b];
                if (x.lattice != y.lattice || x.clipped || y.clipped) continue;
                CHECK((inside(x.box, y.box) || inside(y.box, x.box) || disjoint(x.box, y.box)));
            }
    }
}

TEST_CASE("sparseness certification examples") {
    const GridGeometry g = GridGeometry::line(0.0, 1.0, 16);
    const DyadicLattice d = DyadicLattice::standard(g);
    const int top = d.top_level();
    SparseFamily one = family_of(d, {{top, {0, 0}}});
    SparsenessReport r = verify_sparseness(one, 0.5);
    CHECK(r.ok);
    CHECK(r.owned[0].size() == 16);

    SparseFamily two = family_of(d, {{top - 1, {0, 0}}, {top, {0, 0}}});
    r = verify_sparseness(two, 0.5);
    CHECK(r.ok);
    CHECK(two.cubes[0].level == top);
    REQUIRE(r.owned[0].size() == 8);
    CHECK(r.owned[0].front() == 8);

    SparseFamily three = family_of(d, {{top, {0, 0}}, {top - 1, {0, 0}}, {top - 1, {1, 0}}});
    r = verify_sparseness(three, 0.5);
    CHECK_FALSE(r.ok);
    REQUIRE(r.violation);
    CHECK(*r.violation == LatticeCube{top, {0, 0}});
}

TEST_CASE("stopping-time examples") {
    const GridGeometry g = GridGeometry::line(0.0, 4.0, 16);
    const DyadicLattice d = DyadicLattice::standard(g);
    const SparseFamily c = build_sparse_from_stopping(GridFunction(g, 2.0), d, 0.5);
    REQUIRE(c.cubes.size() == 1);
    CHECK(c.cubes[0].level == d.top_level());

    GridFunction spike(g, 0.0);
    spike[5] = 1.0;
    const SparseFamily s = build_sparse_from_stopping(spike, d, 0.5);
    std::vector<int> levels;
    for (const LatticeCube& q : s.cubes) {
        CHECK(d.box(q.level, q.index).contains({5, 0}));
        levels.push_back(q.level);
    }
    // Averages double per level, and selection needs more than a doubling.
    CHECK(levels == std::vector<int>{4, 2, 0});
    SparseFamily copy = s;
    CHECK(verify_sparseness(copy, 0.5).ok);
}

TEST_CASE("property: constructed families are sparse with disjoint owned sets") {
    Gen gen(63);
    for (int t = 0; t < 60; ++t) {
        const int dim = t % 2 ? 2 : 1;
        const GridGeometry g = random_grid(gen, dim);
        const GridFunction f = t % 3 ? gen.plateaus(g) : gen.uniform(g, -1, 1);
        const double eta = gen.real(0.1, 0.9);
        for (SparseFamily s : build_sparse_families(f, eta)) {
            const SparsenessReport r = verify_sparseness(s, eta);
            REQUIRE(r.ok);
            std::vector<int> seen(g.size(), 0);
            for (std::size_t i = 0; i < s.cubes.size(); ++i) {
                CHECK(static_cast<double>(r.owned[i].size()) >= eta * static_cast<double>(s.box(i).count()) - 1e-9);
                for (std::size_t c : r.owned[i]) {
                    CHECK(s.box(i).contains(g.unflat(c)));
                    ++seen[c];
                }
            }
            CHECK(*std::max_element(seen.begin(), seen.end()) <= 1);
        }
    }
}

TEST_CASE("sparse operator examples") {
    const GridGeometry g = GridGeometry::line(0.0, 1.0, 16);
    const DyadicLattice d = DyadicLattice::standard(g);
    const int top = d.top_level();
    const SparseFamily one = family_of(d, {{top - 1, {0, 0}}});
    const CellBox q = one.box(0);
    GridFunction chi(g, 0.0);
    q.for_each_cell(g, [&](std::size_t i) { chi[i] = 1.0; });
    const GridFunction t1 = sparse_operator(chi, one);
    for (std::size_t i = 0; i < g.size(); ++i) CHECK(t1[i] == chi[i]);

    Gen gen(64);
    const GridFunction f = gen.uniform(g, 0, 2);
    double avg = 0.0;
    q.for_each_cell(g, [&](std::size_t i) { avg += f[i]; });
    avg /= static_cast<double>(q.count());
    const GridFunction t2 = sparse_operator(f, one);
    for (std::size_t i = 0; i < g.size(); ++i) CHECK(t2[i] == doctest::Approx(avg * chi[i]));

    // Nested pair, f the indicator of the inner cube.
    const SparseFamily pair = family_of(d, {{top, {0, 0}}, {top - 2, {1, 0}}});
    GridFunction inner(g, 0.0);
    pair.box(1).for_each_cell(g, [&](std::size_t i) { inner[i] = 1.0; });
    const GridFunction t3 = sparse_operator(inner, pair);
    for (std::size_t i = 0; i < g.size(); ++i) CHECK(t3[i] == doctest::Approx(0.25 + inner[i]));
    const GridFunction t4 = sparse_operator(inner, pair, 2.0);
    for (std::size_t i = 0; i < g.size(); ++i) CHECK(t4[i] == doctest::Approx(0.5 + inner[i]));
}

TEST_CASE("sparse commutator examples") {
    const GridGeometry g = GridGeometry::line(0.0, 1.0, 16);
    const DyadicLattice d = DyadicLattice::standard(g);
    const SparseFamily one = family_of(d, {{d.top_level(), {0, 0}}});
    const GridFunction f(g, 1.0);
    const GridFunction b0(g, 3.0);
    CHECK(sparse_commutator(f, b0, one, false).max_abs() == 0.0);
    CHECK(sparse_commutator(f, b0, one, true).max_abs() == 0.0);
    const GridFunction b = indicator(g, 0.0, 0.5);
    const GridFunction plain = sparse_commutator(f, b, one, false), adj = sparse_commutator(f, b, one, true);
    for (double v : plain.values()) CHECK(v == doctest::Approx(0.5));
    for (double v : adj.values()) CHECK(v == doctest::Approx(0.5));
    const GridFunction h = indicator(g, 0.0, 0.25);
    const GridFunction pl = sparse_commutator(h, b, one, false);
    CHECK(pl[0] == doctest::Approx(0.5 * 0.25));
    CHECK(sparse_commutator(h, b, one, true)[15] == doctest::Approx(0.5 * 0.25));
}

TEST_CASE("hyp1 right-hand side reductions") {
    Gen gen(65);
    const GridGeometry g = GridGeometry::line(0.0, 1.0, 32);
    const GridFunction f1 = gen.plateaus(g), f2 = gen.uniform(g, -1, 1);
    const auto families = build_sparse_families(f1.abs() + f2.abs(), 0.5);
    GridFunction want(g, 0.0);
    for (const SparseFamily& s : families)
        for (std::size_t i = 0; i < s.cubes.size(); ++i) {
            const CellBox q = s.box(i);
            double a = 0.0, c = 0.0;
            q.for_each_cell(g, [&](std::size_t k) {
                a += std::abs(f1[k]);
                c += std::abs(f2[k]);
            });
            const double n = static_cast<double>(q.count());
            q.for_each_cell(g, [&](std::size_t k) { want[k] += a / n * (c / n); });
        }
    const GridFunction got = hyp1_rhs({f1, f2}, {}, families, {}, false);
    for (std::size_t i = 0; i < g.size(); ++i) CHECK(got[i] == doctest::Approx(want[i]).epsilon(1e-12));

    const GridFunction bc(g, -1.25);
    CHECK(hyp1_rhs({f1, f2}, {bc}, families, {1}, false).max_abs() == 0.0);
    CHECK(hyp1_rhs({f1, f2}, {bc, bc}, families, {2, 1}, false).max_abs() == 0.0);
    CHECK(hyp1_rhs({f1, f2}, {bc}, families, {}, true).max_abs() == 0.0);

    const GridFunction b = gen.uniform(g, -1, 1);
    const std::vector<SparseFamily> single = {families.front()};
    const GridFunction plain = sparse_commutator(f1, b, single.front(), false);
    const GridFunction adj = sparse_commutator(f1, b, single.front(), true);
    const GridFunction r1 = hyp1_rhs({f1}, {b}, single, {1}, false), r2 = hyp1_rhs({f1}, {b}, single, {2}, false);
    const GridFunction rs = hyp1_rhs({f1}, {b}, single, {}, true);
    for (std::size_t i = 0; i < g.size(); ++i) {
        CHECK(r1[i] == doctest::Approx(plain[i]).epsilon(1e-13));
        CHECK(r2[i] == doctest::Approx(adj[i]).epsilon(1e-13));
        CHECK(rs[i] == doctest::Approx(plain[i] + adj[i]).epsilon(1e-13));
    }
}

TEST_CASE("bilinear sparse form") {
    Gen gen(66);
    const GridGeometry g = GridGeometry::line(0.0, 1.0, 64);
    for (int t = 0; t < 20; ++t) {
        const GridFunction f = gen.plateaus(g), h = gen.uniform(g, -1, 1), b = gen.uniform(g, -2, 2);
        const SparseFamily s = build_sparse_families(f.abs() + h.abs(), 0.5)[static_cast<std::size_t>(t % 3)];
        const double r = gen.real(1, 4), tt = gen.real(1, 4);
        const BilinearForm m0 = bilinear_sparse_form(f, h, b, s, r, tt, 0);
        double want = 0.0;
        for (std::size_t i = 0; i < s.cubes.size(); ++i) {
            const CellBox q = s.box(i);
            double a = 0.0, c = 0.0;
            q.for_each_cell(g, [&](std::size_t k) {
                a += std::pow(std::abs(f[k]), r);
                c += std::pow(std::abs(h[k]), tt);
            });
            const double n = static_cast<double>(q.count());
            want += std::pow(a / n, 1 / r) * std::pow(c / n, 1 / tt) * n * g.cell_volume();
        }
        CHECK(m0.total == doctest::Approx(want).epsilon(1e-12));
        CHECK(bilinear_sparse_form(f, h, GridFunction(g, 0.7), s, r, tt, 2).total == 0.0);
        const int m = static_cast<int>(gen.integer(1, 4));
        const BilinearForm bf = bilinear_sparse_form(f, h, b, s, r, tt, m);
        REQUIRE(bf.per_k.size() == static_cast<std::size_t>(m + 1));
        for (std::size_t i = 0; i < s.cubes.size(); ++i)
            for (int k = 0; k <= m; ++k) CHECK(bf.c[k][i] <= (bf.c[0][i] + bf.c[m][i]) * (1 + 1e-12));
    }
}

TEST_CASE("property: dyadic domination and Carleson bound") {
    Gen gen(67);
    for (int t = 0; t < 40; ++t) {
        const int dim = t % 2 ? 2 : 1;
        const GridGeometry g = random_grid(gen, dim);
        const GridFunction f = gen.plateaus(g), h = gen.uniform(g, 0, 1);
        const auto families = build_sparse_families(f, 0.5);
        const GridFunction m = hl_maximal(f, CubeFamilySpec::dyadic_shifted());
        GridFunction best(g, 0.0);
        for (const SparseFamily& s : families) {
            const GridFunction ts = sparse_operator(f, s);
            const CubeFamilySpec one = single_lattice(s.lattice);
            const GridFunction mj = hl_maximal(f, one);
            for (std::size_t i = 0; i < g.size(); ++i) {
                best[i] = std::max(best[i], ts[i]);
                CHECK(mj[i] <= 2 * ts[i] * (1 + 1e-12));
            }
            double lhs = 0.0;
            for (std::size_t i = 0; i < s.cubes.size(); ++i) {
                const CellBox q = s.box(i);
                double a = 0.0, c = 0.0;
                q.for_each_cell(g, [&](std::size_t k) {
                    a += std::abs(f[k]);
                    c += h[k];
                });
                const double n = static_cast<double>(q.count());
                lhs += a / n * (c / n) * n * g.cell_volume();
            }
            CHECK(lhs <= integrate(mj * hl_maximal(h, one)) / 0.5 * (1 + 1e-12));
        }
        for (std::size_t i = 0; i < g.size(); ++i) CHECK(m[i] <= 2 * best[i] * (1 + 1e-12));
    }
}
