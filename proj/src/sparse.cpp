#include "sparsedom/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace sparsedom {

namespace {

long mod3(long v) { return ((v % 3) + 3) % 3; }

// residue[k][c0] = residue mod 3 at level k of the tripled lattice whose level-0 residue is c0.
std::vector<std::array<long, 3>> residue_chain(int top, int shift) {
    std::vector<std::array<long, 3>> out(static_cast<std::size_t>(top) + 1);
    out[0] = {0, 1, 2};
    for (int k = 1; k <= top; ++k) {
        const long sign = (k % 2 == 0) ? 1 : -1;
        for (int c0 = 0; c0 < 3; ++c0) {
            const long prev = out[static_cast<std::size_t>(k - 1)][static_cast<std::size_t>(c0)];
            out[static_cast<std::size_t>(k)][static_cast<std::size_t>(c0)] = mod3(2 * ((prev - 1) - shift * sign) + 1);
        }
    }
    return out;
}

bool inside_grid(const GridGeometry& g, const CellBox& b) {
    for (int a = 0; a < g.dim; ++a)
        if (b.lo[a] < 0 || b.hi[a] > static_cast<long>(g.extent(a))) return false;
    return true;
}

double box_power_mean(const GridFunction& f, const CellBox& q, double r) {
    long double acc = 0.0L;
    q.for_each_cell(f.geometry(), [&](std::size_t i) { acc += std::pow(std::abs(f[i]), r); });
    const double avg = static_cast<double>(acc / static_cast<long double>(q.count()));
    return r == 1.0 ? avg : std::pow(avg, 1.0 / r);
}

double box_mean(const GridFunction& f, const CellBox& q) {
    long double acc = 0.0L;
    q.for_each_cell(f.geometry(), [&](std::size_t i) { acc += f[i]; });
    return static_cast<double>(acc / static_cast<long double>(q.count()));
}

}  // namespace

ThreeLatticeCover three_lattice_cover(const DyadicLattice& d) {
    const auto& g = d.grid();
    const int top = d.top_level();
    std::array<std::vector<std::array<long, 3>>, 2> chains{residue_chain(top, d.shift()[0]),
                                                           residue_chain(top, d.shift()[1])};
    ThreeLatticeCover out;
    std::set<int> used;
    for (int k = top; k >= 0; --k) {
        const long side = 1L << k;
        for (const Index2& m : d.cubes_at(k)) {
            TripledCube e;
            e.q = {k, m};
            CellBox b = d.box(k, m);
            int j = 0, stride = 1;
            for (int a = 0; a < g.dim; ++a) {
                b.lo[a] -= side;
                b.hi[a] += side;
                const auto& level = chains[static_cast<std::size_t>(a)][static_cast<std::size_t>(k)];
                int c0 = 0;
                while (level[static_cast<std::size_t>(c0)] != mod3(m[a])) ++c0;
                j += c0 * stride;
                stride *= 3;
            }
            e.box = b;
            e.lattice = j;
            e.clipped = !inside_grid(g, b);
            used.insert(j);
            out.entries.push_back(e);
        }
    }
    out.lattices_used = static_cast<int>(used.size());
    return out;
}

SparsenessReport verify_sparseness(SparseFamily& s, double eta) {
    if (!(eta > 0.0 && eta < 1.0)) throw Error("sparseness parameter must lie in (0, 1)");
    auto& cubes = s.cubes;
    std::sort(cubes.begin(), cubes.end(), [](const LatticeCube& a, const LatticeCube& b) {
        if (a.level != b.level) return a.level > b.level;
        return a.index < b.index;
    });
    cubes.erase(std::unique(cubes.begin(), cubes.end()), cubes.end());

    const auto& g = s.lattice.grid();
    std::vector<long> owner(g.size(), -1);
    for (std::size_t i = 0; i < cubes.size(); ++i) {
        const CellBox b = s.box(i);
        if (b.empty()) throw Error("family cube misses the grid");
        b.for_each_cell(g, [&](std::size_t c) { owner[c] = static_cast<long>(i); });
    }
    SparsenessReport rep;
    rep.owned.assign(cubes.size(), {});
    for (std::size_t c = 0; c < owner.size(); ++c)
        if (owner[c] >= 0) rep.owned[static_cast<std::size_t>(owner[c])].push_back(c);
    for (std::size_t i = 0; i < cubes.size(); ++i) {
        const double need = eta * static_cast<double>(s.box(i).count());
        if (static_cast<double>(rep.owned[i].size()) < need) {
            rep.ok = false;
            rep.violation = cubes[i];
            break;
        }
    }
    return rep;
}

SparseFamily build_sparse_from_stopping(const GridFunction& f, const DyadicLattice& d, double eta) {
    if (!(eta > 0.0 && eta < 1.0)) throw Error("sparseness parameter must lie in (0, 1)");
    require_same_grid(f.geometry(), d.grid());
    const PrefixSums ps(f.abs());
    const double tau = 1.0 / (1.0 - eta);
    SparseFamily s;
    s.lattice = d;
    s.eta = eta;

    struct Item {
        LatticeCube q;
        double avg;
    };
    std::vector<Item> selected;
    for (const Index2& m : d.cubes_at(d.top_level())) {
        const CellBox b = d.clipped_box(d.top_level(), m);
        if (b.empty()) continue;
        const double a = ps.box_average(b);
        if (a > 0.0) selected.push_back({{d.top_level(), m}, a});
    }
    std::vector<Item> work = selected;
    while (!work.empty()) {
        const Item q = work.back();
        work.pop_back();
        std::vector<LatticeCube> frontier{q.q};
        while (!frontier.empty()) {
            const LatticeCube p = frontier.back();
            frontier.pop_back();
            for (const Index2& c : d.children(p.level, p.index)) {
                const CellBox b = d.clipped_box(p.level - 1, c);
                if (b.empty()) continue;
                const double a = ps.box_average(b);
                const LatticeCube child{p.level - 1, c};
                if (a > tau * q.avg) {
                    selected.push_back({child, a});
                    work.push_back({child, a});
                } else if (child.level > 0) {
                    frontier.push_back(child);
                }
            }
        }
    }
    for (const auto& it : selected) s.cubes.push_back(it.q);
    SparsenessReport rep = verify_sparseness(s, eta);
    if (!rep.ok) throw Error("stopping family failed sparseness certification");
    s.owned = std::move(rep.owned);
    return s;
}

std::vector<SparseFamily> build_sparse_families(const GridFunction& f, double eta) {
    std::vector<SparseFamily> out;
    for (const auto& d : DyadicLattice::family(f.geometry())) out.push_back(build_sparse_from_stopping(f, d, eta));
    return out;
}

GridFunction sparse_operator(const GridFunction& f, const SparseFamily& s, double r) {
    if (!(r >= 1.0) || !std::isfinite(r)) throw Error("sparse operator exponent must be >= 1");
    const auto& g = f.geometry();
    require_same_grid(g, s.lattice.grid());
    GridFunction out(g, 0.0);
    const PrefixSums ps(f.abs());
    for (std::size_t i = 0; i < s.cubes.size(); ++i) {
        const CellBox b = s.box(i);
        const double v = r == 1.0 ? ps.box_average(b) : box_power_mean(f, b, r);
        b.for_each_cell(g, [&](std::size_t c) { out[c] += v; });
    }
    return out;
}

GridFunction sparse_operator(const GridFunction& f, const std::vector<SparseFamily>& s, double r) {
    GridFunction out(f.geometry(), 0.0);
    for (const auto& fam : s) out += sparse_operator(f, fam, r);
    return out;
}

GridFunction sparse_commutator(const GridFunction& f, const GridFunction& b, const SparseFamily& s, bool adjoint) {
    const auto& g = f.geometry();
    require_same_grid(g, b.geometry());
    require_same_grid(g, s.lattice.grid());
    GridFunction out(g, 0.0);
    const PrefixSums pf(f.abs());
    for (std::size_t i = 0; i < s.cubes.size(); ++i) {
        const CellBox q = s.box(i);
        const double bq = box_mean(b, q);
        if (adjoint) {
            long double acc = 0.0L;
            q.for_each_cell(g, [&](std::size_t c) { acc += std::abs(b[c] - bq) * std::abs(f[c]); });
            const double v = static_cast<double>(acc / static_cast<long double>(q.count()));
            q.for_each_cell(g, [&](std::size_t c) { out[c] += v; });
        } else {
            const double fa = pf.box_average(q);
            q.for_each_cell(g, [&](std::size_t c) { out[c] += std::abs(b[c] - bq) * fa; });
        }
    }
    return out;
}

GridFunction hyp1_rhs(const std::vector<GridFunction>& fs, const std::vector<GridFunction>& bs,
                      const std::vector<SparseFamily>& families, const std::vector<int>& gammas, bool sum_gammas) {
    if (fs.empty()) throw Error("no functions");
    const std::size_t l = bs.size();
    if (l > fs.size()) throw Error("more symbols than functions");
    if (!sum_gammas && gammas.size() != l) throw Error("gamma vector length must equal the number of symbols");
    for (int gm : gammas)
        if (gm != 1 && gm != 2) throw Error("gamma entries must be 1 or 2");
    const auto& g = fs.front().geometry();
    for (const auto& f : fs) require_same_grid(g, f.geometry());
    for (const auto& b : bs) require_same_grid(g, b.geometry());

    std::vector<PrefixSums> pf;
    for (const auto& f : fs) pf.emplace_back(f.abs());
    GridFunction out(g, 0.0);
    std::vector<double> local;
    for (const auto& fam : families) {
        require_same_grid(g, fam.lattice.grid());
        for (std::size_t i = 0; i < fam.cubes.size(); ++i) {
            const CellBox q = fam.box(i);
            double tail = 1.0;
            for (std::size_t s = l; s < fs.size(); ++s) tail *= pf[s].box_average(q);
            if (tail == 0.0) continue;
            local.assign(q.count(), tail);
            for (std::size_t s = 0; s < l; ++s) {
                const double bq = box_mean(bs[s], q);
                const double fa = pf[s].box_average(q);
                long double acc = 0.0L;
                q.for_each_cell(g, [&](std::size_t c) { acc += std::abs(bs[s][c] - bq) * std::abs(fs[s][c]); });
                const double t2 = static_cast<double>(acc / static_cast<long double>(q.count()));
                std::size_t k = 0;
                q.for_each_cell(g, [&](std::size_t c) {
                    const double t1 = std::abs(bs[s][c] - bq) * fa;
                    local[k++] *= sum_gammas ? t1 + t2 : (gammas[s] == 1 ? t1 : t2);
                });
            }
            std::size_t k = 0;
            q.for_each_cell(g, [&](std::size_t c) { out[c] += local[k++]; });
        }
    }
    return out;
}

BilinearForm bilinear_sparse_form(const GridFunction& f, const GridFunction& g, const GridFunction& b,
                                  const SparseFamily& s, double r, double t, int m) {
    if (!(r >= 1.0) || !(t >= 1.0) || !std::isfinite(r) || !std::isfinite(t))
        throw Error("averaging exponents must be >= 1");
    if (m < 0) throw Error("commutator order must be nonnegative");
    const auto& geo = f.geometry();
    require_same_grid(geo, g.geometry());
    require_same_grid(geo, b.geometry());
    require_same_grid(geo, s.lattice.grid());

    BilinearForm out;
    out.per_k.assign(static_cast<std::size_t>(m) + 1, 0.0);
    out.c.assign(static_cast<std::size_t>(m) + 1, std::vector<double>(s.cubes.size(), 0.0));
    std::vector<double> beta, fa, ga;
    for (std::size_t i = 0; i < s.cubes.size(); ++i) {
        const CellBox q = s.box(i);
        const double bq = box_mean(b, q);
        beta.clear();
        fa.clear();
        ga.clear();
        q.for_each_cell(geo, [&](std::size_t c) {
            beta.push_back(std::abs(b[c] - bq));
            fa.push_back(std::abs(f[c]));
            ga.push_back(std::abs(g[c]));
        });
        const double n = static_cast<double>(beta.size());
        const double vol = n * geo.cell_volume();
        out.volume.push_back(vol);
        for (int k = 0; k <= m; ++k) {
            double sf = 0.0, sg = 0.0;
            for (std::size_t c = 0; c < beta.size(); ++c) {
                sf += std::pow(std::pow(beta[c], m - k) * fa[c], r);
                sg += std::pow(std::pow(beta[c], k) * ga[c], t);
            }
            const double ck = std::pow(sf / n, 1.0 / r) * std::pow(sg / n, 1.0 / t);
            out.c[static_cast<std::size_t>(k)][i] = ck;
            out.per_k[static_cast<std::size_t>(k)] += ck * vol;
        }
    }
    for (double v : out.per_k) out.total += v;
    return out;
}

}  // namespace sparsedom
