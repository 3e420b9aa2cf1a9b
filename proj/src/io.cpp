#include "sparsedom/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace sparsedom {

Json real_to_json(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    return v;
}

double real_from_json(const Json& j) {
    if (j.is_number()) return j.get<double>();
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        if (s == "inf") return kInf;
        if (s == "-inf") return -kInf;
        if (s == "nan") return std::nan("");
    }
    throw Error("expected a real number");
}

Json to_json(const GridGeometry& g) {
    Json j;
    j["dim"] = g.dim;
    j["origin"] = g.dim == 2 ? Json::array({g.origin[0], g.origin[1]}) : Json::array({g.origin[0]});
    j["spacing"] = g.spacing;
    j["shape"] = g.dim == 2 ? Json::array({g.shape[0], g.shape[1]}) : Json::array({g.shape[0]});
    return j;
}

GridGeometry geometry_from_json(const Json& j) {
    GridGeometry g;
    g.dim = j.at("dim").get<int>();
    if (g.dim != 1 && g.dim != 2) throw Error("grid dimension must be 1 or 2");
    const auto& o = j.at("origin");
    const auto& s = j.at("shape");
    if (o.size() != static_cast<std::size_t>(g.dim) || s.size() != static_cast<std::size_t>(g.dim))
        throw Error("origin and shape must have one entry per axis");
    for (int a = 0; a < g.dim; ++a) {
        g.origin[static_cast<std::size_t>(a)] = o[static_cast<std::size_t>(a)].get<double>();
        g.shape[static_cast<std::size_t>(a)] = s[static_cast<std::size_t>(a)].get<std::size_t>();
    }
    if (g.dim == 1) g.shape[1] = 1;
    g.spacing = j.at("spacing").get<double>();
    g.validate();
    return g;
}

Json to_json(const GridFunction& f) {
    Json j = to_json(f.geometry());
    Json vals = Json::array();
    for (double v : f.values()) {
        if (!std::isfinite(v)) throw Error("grid values must be finite");
        vals.push_back(v);
    }
    j["values"] = std::move(vals);
    return j;
}

GridFunction grid_function_from_json(const Json& j) {
    const GridGeometry g = geometry_from_json(j);
    const auto& vals = j.at("values");
    if (!vals.is_array() || vals.size() != g.size()) throw Error("values length must equal the product of the shape");
    std::vector<double> v;
    v.reserve(vals.size());
    for (const auto& e : vals) {
        if (!e.is_number()) throw Error("grid values must be finite numbers");
        const double x = e.get<double>();
        if (!std::isfinite(x)) throw Error("grid values must be finite numbers");
        v.push_back(x);
    }
    return GridFunction(g, std::move(v));
}

Json to_json(const YoungFunction& phi) {
    if (phi.kind == YoungFunction::Kind::Power) return {{"kind", "power"}, {"p", phi.p}, {"a", phi.a}};
    return {{"kind", "exp-power"}, {"a", phi.a}};
}

YoungFunction young_from_json(const Json& j) {
    const auto kind = j.at("kind").get<std::string>();
    YoungFunction phi;
    if (kind == "power") phi = YoungFunction::power(j.at("p").get<double>(), j.value("a", 0.0));
    else if (kind == "exp-power") phi = YoungFunction::exp_power(j.at("a").get<double>());
    else throw Error("unknown Young function kind: " + kind);
    phi.validate();
    return phi;
}

Json to_json(const SpaceDescriptor& x) {
    Json j = std::visit(
        [](const auto& k) -> Json {
            using K = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<K, Lebesgue>) return {{"kind", "lebesgue"}, {"p", real_to_json(k.p)}};
            else if constexpr (std::is_same_v<K, Lorentz>)
                return {{"kind", "lorentz"}, {"p", real_to_json(k.p)}, {"q", real_to_json(k.q)}};
            else if constexpr (std::is_same_v<K, VariableExponent>) {
                Json e = to_json(k.p.geometry());
                Json vals = Json::array();
                for (double v : k.p.values()) vals.push_back(real_to_json(v));
                e["values"] = std::move(vals);
                return {{"kind", "variable"}, {"exponent", std::move(e)}};
            } else {
                return {{"kind", "orlicz"}, {"phi", to_json(k.phi)}};
            }
        },
        x.kind);
    if (x.weight) j["weight"] = to_json(*x.weight);
    if (x.power != 1.0) j["power"] = x.power;
    return j;
}

SpaceDescriptor space_from_json(const Json& j) {
    const auto kind = j.at("kind").get<std::string>();
    SpaceDescriptor x;
    if (kind == "lebesgue") {
        x = SpaceDescriptor::lebesgue(real_from_json(j.at("p")));
    } else if (kind == "lorentz") {
        x = SpaceDescriptor::lorentz(real_from_json(j.at("p")), real_from_json(j.at("q")));
    } else if (kind == "variable") {
        const auto& e = j.at("exponent");
        const GridGeometry g = geometry_from_json(e);
        const auto& vals = e.at("values");
        if (vals.size() != g.size()) throw Error("exponent values length must equal the product of the shape");
        std::vector<double> v;
        for (const auto& a : vals) v.push_back(real_from_json(a));
        x = SpaceDescriptor::variable(GridFunction(g, std::move(v)));
    } else if (kind == "orlicz") {
        x = SpaceDescriptor::orlicz(young_from_json(j.at("phi")));
    } else {
        throw Error("unknown space kind: " + kind);
    }
    if (j.contains("weight")) x.weight = grid_function_from_json(j.at("weight"));
    x.power = j.value("power", 1.0);
    x.validate();
    return x;
}

Json to_json(const MorreyWeight& u) {
    switch (u.kind) {
        case MorreyWeight::Kind::PowerRadius: return {{"kind", "power-radius"}, {"lambda", u.lambda}, {"q", u.q}};
        case MorreyWeight::Kind::ChiNormPower:
            return {{"kind", "chi-norm-power"}, {"space", to_json(*u.space)}, {"theta", u.theta}};
        case MorreyWeight::Kind::Constant: return {{"kind", "constant"}, {"value", u.constant}};
        case MorreyWeight::Kind::Tabulated: break;
    }
    throw Error("tabulated Morrey weights cannot be serialized");
}

MorreyWeight morrey_weight_from_json(const Json& j) {
    const auto kind = j.at("kind").get<std::string>();
    if (kind == "power-radius") return MorreyWeight::power_radius(j.at("lambda").get<double>(), j.at("q").get<double>());
    if (kind == "chi-norm-power")
        return MorreyWeight::chi_norm_power(space_from_json(j.at("space")), j.at("theta").get<double>());
    if (kind == "constant") return MorreyWeight::constant_value(j.at("value").get<double>());
    throw Error("unknown Morrey weight kind: " + kind);
}

Json to_json(const CubeFamilySpec& s) {
    Json j;
    switch (s.mode) {
        case CubeFamilySpec::Mode::DyadicShifted: j["mode"] = "dyadic"; break;
        case CubeFamilySpec::Mode::Dense: j["mode"] = "dense"; break;
        case CubeFamilySpec::Mode::Explicit: {
            j["mode"] = "explicit";
            Json cubes = Json::array();
            for (const auto& q : s.cubes)
                cubes.push_back({{"dim", q.dim}, {"lower", {q.lower[0], q.lower[1]}}, {"side", q.side}});
            j["cubes"] = std::move(cubes);
            break;
        }
    }
    if (s.max_side != CubeFamilySpec::kUnbounded) j["max_side"] = s.max_side;
    if (!s.lattices.empty()) j["lattices"] = s.lattices;
    if (s.top_level >= 0) j["top_level"] = s.top_level;
    if (s.interior_only) j["interior_only"] = true;
    return j;
}

CubeFamilySpec cube_family_from_json(const Json& j) {
    CubeFamilySpec s;
    const auto mode = j.value("mode", std::string("dyadic"));
    if (mode == "dyadic") s.mode = CubeFamilySpec::Mode::DyadicShifted;
    else if (mode == "dense") s.mode = CubeFamilySpec::Mode::Dense;
    else if (mode == "explicit") s.mode = CubeFamilySpec::Mode::Explicit;
    else throw Error("unknown cube family mode: " + mode);
    s.max_side = j.value("max_side", CubeFamilySpec::kUnbounded);
    if (j.contains("lattices")) s.lattices = j.at("lattices").get<std::vector<int>>();
    s.top_level = j.value("top_level", -1);
    s.interior_only = j.value("interior_only", false);
    if (j.contains("cubes"))
        for (const auto& c : j.at("cubes")) {
            Cube q;
            q.dim = c.at("dim").get<int>();
            q.lower = {c.at("lower")[0].get<double>(), c.at("lower")[1].get<double>()};
            q.side = c.at("side").get<double>();
            s.cubes.push_back(q);
        }
    return s;
}

Json to_json(const SparseFamily& s) {
    Json cubes = Json::array();
    for (const auto& q : s.cubes) cubes.push_back({q.level, q.index[0], q.index[1]});
    const auto sh = s.lattice.shift();
    return {{"grid", to_json(s.lattice.grid())},
            {"shift", {sh[0], sh[1]}},
            {"top_level", s.lattice.top_level()},
            {"eta", s.eta},
            {"cubes", std::move(cubes)}};
}

SparseFamily sparse_family_from_json(const Json& j) {
    SparseFamily s;
    const GridGeometry g = geometry_from_json(j.at("grid"));
    const auto sh = j.at("shift");
    s.lattice = DyadicLattice(g, {sh.at(0).get<int>(), sh.at(1).get<int>()}, j.at("top_level").get<int>());
    s.eta = j.value("eta", 0.5);
    for (const auto& c : j.at("cubes")) {
        if (!c.is_array() || c.size() != 3) throw Error("sparse cube entries are [level, i0, i1]");
        s.cubes.push_back({c[0].get<int>(), {c[1].get<long>(), c[2].get<long>()}});
    }
    return s;
}

Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path);
    try {
        return Json::parse(in);
    } catch (const Json::exception& e) {
        throw Error("invalid JSON in " + path + ": " + e.what());
    }
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path);
    out << text;
    if (!out) throw Error("write failed for " + path);
}

}  // namespace sparsedom
