#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "sparsedom/io.hpp"
#include "sparsedom/maximal.hpp"
#include "sparsedom/operators.hpp"
#include "sparsedom/sparse.hpp"
#include "sparsedom/verify.hpp"

using namespace sparsedom;

namespace {

std::uint64_t default_seed() {
    if (const char* s = std::getenv("SPARSEDOM_SEED")) {
        try {
            return std::stoull(s);
        } catch (const std::exception&) {
            throw Error("SPARSEDOM_SEED must be an unsigned integer");
        }
    }
    return 1;
}

void emit(const Json& j, const std::string& out) {
    if (out.empty()) std::cout << j.dump(2) << "\n";
    else write_text_file(out, j.dump(2) + "\n");
}

SpaceDescriptor space_from_flags(const std::string& file, double p, double q, const std::string& weight) {
    SpaceDescriptor x = file.empty() ? (q > 0 ? SpaceDescriptor::lorentz(p, q) : SpaceDescriptor::lebesgue(p))
                                     : space_from_json(read_json_file(file));
    if (!weight.empty()) x.weight = grid_function_from_json(read_json_file(weight));
    x.validate();
    return x;
}

CubeFamilySpec family_from_flags(const std::string& mode, double max_side, const GridGeometry& g) {
    if (mode == "dyadic") return CubeFamilySpec::dyadic_shifted(max_side > 0 ? max_side : CubeFamilySpec::kUnbounded);
    if (mode == "dense") return CubeFamilySpec::dense(max_side > 0 ? max_side : g.domain_side(0));
    throw Error("unknown cube family mode: " + mode);
}

std::vector<SparseFamily> families_from_json(const Json& j) {
    std::vector<SparseFamily> out;
    if (j.is_array())
        for (const auto& e : j) out.push_back(sparse_family_from_json(e));
    else
        out.push_back(sparse_family_from_json(j));
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Sparse domination and function-space verification toolkit"};
    app.require_subcommand(1);

    std::string suite, config_file, out, format = "json";
    std::uint64_t seed = 0;
    auto* verify = app.add_subcommand("verify", "Run a verification suite and write its report");
    verify->add_option("suite", suite, "Suite name (see `list`)")->required();
    verify->add_option("--config", config_file, "JSON suite configuration");
    auto* seed_opt = verify->add_option("--seed", seed, "Seed (default: $SPARSEDOM_SEED or 1)");
    verify->add_option("--out", out, "Report path (default: stdout)");
    verify->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));

    app.add_subcommand("list", "List suite names");

    std::string input, space_file, weight_file;
    double p = 2.0, q = -1.0;
    auto* norm = app.add_subcommand("norm", "Norm of a grid function");
    norm->add_option("--input", input, "Grid function JSON")->required();
    norm->add_option("--space", space_file, "Space descriptor JSON");
    norm->add_option("-p", p, "Lebesgue / Lorentz exponent p");
    norm->add_option("-q", q, "Lorentz exponent q (omit for Lebesgue)");
    norm->add_option("--weight", weight_file, "Weight grid function JSON");

    std::string mode = "dyadic";
    double max_side = -1.0, r = 1.0;
    auto* maximal = app.add_subcommand("maximal", "Maximal function over a cube family");
    maximal->add_option("--input", input, "Grid function JSON")->required();
    maximal->add_option("--mode", mode, "dyadic or dense")->check(CLI::IsMember({"dyadic", "dense"}));
    maximal->add_option("--max-side", max_side, "Largest cube side");
    maximal->add_option("-r", r, "Exponent of M_r");
    maximal->add_option("--out", out, "Output path (default: stdout)");

    std::string family_file;
    double eta = 0.5;
    auto* sparse = app.add_subcommand("sparse", "Build, verify or apply sparse families");
    sparse->require_subcommand(1);
    auto* build = sparse->add_subcommand("build", "Stopping-time families on every shifted lattice");
    build->add_option("--input", input, "Grid function JSON")->required();
    build->add_option("--eta", eta, "Sparseness parameter");
    build->add_option("--out", out, "Output path (default: stdout)");
    auto* check = sparse->add_subcommand("verify", "Certify sparseness of stored families");
    check->add_option("--family", family_file, "Family JSON (object or array)")->required();
    check->add_option("--eta", eta, "Sparseness parameter");
    auto* sapply = sparse->add_subcommand("apply", "Apply the sparse operator of stored families");
    sapply->add_option("--input", input, "Grid function JSON")->required();
    sapply->add_option("--family", family_file, "Family JSON (object or array)")->required();
    sapply->add_option("-r", r, "Average exponent");
    sapply->add_option("--out", out, "Output path (default: stdout)");

    std::string op = "hilbert", omega = "sign1", input2, symbol;
    int order = 0;
    auto* apply = app.add_subcommand("apply", "Apply a test operator or its commutator");
    apply->add_option("--op", op, "hilbert, rough or bilinear")->check(CLI::IsMember({"hilbert", "rough", "bilinear"}));
    apply->add_option("--omega", omega, "sign1 or step")->check(CLI::IsMember({"sign1", "step"}));
    apply->add_option("--input", input, "Grid function JSON")->required();
    apply->add_option("--input2", input2, "Second argument of the bilinear model");
    apply->add_option("--symbol", symbol, "Commutator symbol b (grid function JSON)");
    apply->add_option("--order", order, "Commutator order m (0 = operator itself)");
    apply->add_option("--out", out, "Output path (default: stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand("list")) {
            for (const auto& n : suite_names()) std::cout << n << "\n";
            return 0;
        }
        if (verify->parsed()) {
            SuiteConfig cfg = config_file.empty() ? SuiteConfig{} : suite_config_from_json(read_json_file(config_file));
            cfg.suite = suite;
            if (*seed_opt) cfg.seed = seed;
            else if (config_file.empty() || !read_json_file(config_file).contains("seed")) cfg.seed = default_seed();
            if (!out.empty()) cfg.output = out;
            const Report rep = run_suite(cfg);
            const std::string text = emit_report(rep, format == "csv" ? ReportFormat::Csv : ReportFormat::Json);
            if (cfg.output.empty()) std::cout << text;
            else write_text_file(cfg.output, text);
            std::cerr << rep.suite << ": " << rep.checks.size() << " checks, " << rep.violations << " violations\n";
            return rep.passed() ? 0 : 1;
        }
        if (norm->parsed()) {
            const GridFunction f = grid_function_from_json(read_json_file(input));
            const SpaceDescriptor x = space_from_flags(space_file, p, q, weight_file);
            std::cout.precision(17);
            std::cout << space_norm(f, x) << "\n";
            return 0;
        }
        if (maximal->parsed()) {
            const GridFunction f = grid_function_from_json(read_json_file(input));
            const CubeFamilySpec fam = family_from_flags(mode, max_side, f.geometry());
            emit(to_json(r == 1.0 ? hl_maximal(f, fam) : mr_maximal(f, r, fam)), out);
            return 0;
        }
        if (build->parsed()) {
            const GridFunction f = grid_function_from_json(read_json_file(input));
            Json arr = Json::array();
            for (const auto& s : build_sparse_families(f, eta)) arr.push_back(to_json(s));
            emit(arr, out);
            return 0;
        }
        if (check->parsed()) {
            bool ok = true;
            auto fams = families_from_json(read_json_file(family_file));
            for (std::size_t i = 0; i < fams.size(); ++i) {
                const SparsenessReport rep = verify_sparseness(fams[i], eta);
                std::cout << "family " << i << ": " << (rep.ok ? "sparse" : "not sparse");
                if (rep.violation)
                    std::cout << " (cube level " << rep.violation->level << " index " << rep.violation->index[0] << ","
                              << rep.violation->index[1] << ")";
                std::cout << "\n";
                ok = ok && rep.ok;
            }
            return ok ? 0 : 1;
        }
        if (sapply->parsed()) {
            const GridFunction f = grid_function_from_json(read_json_file(input));
            emit(to_json(sparse_operator(f, families_from_json(read_json_file(family_file)), r)), out);
            return 0;
        }
        if (apply->parsed()) {
            const GridFunction f = grid_function_from_json(read_json_file(input));
            if (op == "bilinear") {
                if (input2.empty()) throw Error("--input2 is required for the bilinear model");
                const GridFunction f2 = grid_function_from_json(read_json_file(input2));
                if (symbol.empty() || order == 0) {
                    emit(to_json(bilinear_model(f, f2)), out);
                } else {
                    const GridFunction b = grid_function_from_json(read_json_file(symbol));
                    const GridFunction zero(b.geometry(), 0.0);
                    emit(to_json(multilinear_commutator({b, zero}, {0}, f, f2)), out);
                }
                return 0;
            }
            const Operator t = op == "hilbert" ? Operator::hilbert()
                                               : Operator::rough(omega == "step" ? Omega::step() : Omega::sign1());
            if (order == 0) {
                emit(to_json(t(f)), out);
            } else {
                if (symbol.empty()) throw Error("--symbol is required for a commutator");
                emit(to_json(commutator_iterated(t, grid_function_from_json(read_json_file(symbol)), order, f)), out);
            }
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
