#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sparsedom/io.hpp"

namespace sparsedom {

/// Zero / negative fields mean "suite default".
struct SuiteConfig {
    std::string suite;
    std::size_t resolution = 0;
    int dim = 0;
    std::uint64_t seed = 1;
    std::size_t corpus_size = 0;
    /// Named tolerance overrides, e.g. {"relative": 0.02}.
    std::map<std::string, double> tolerances;
    std::optional<SpaceDescriptor> space;
    std::optional<GridFunction> weight;
    std::string output;

    double tolerance(const std::string& name, double fallback) const;
};

SuiteConfig suite_config_from_json(const Json& j);

struct CheckRecord {
    std::string id;
    /// 64-bit FNV-1a of the check inputs, hex.
    std::string digest;
    double lhs = 0.0;
    double rhs = 0.0;
    double constant = 0.0;
    bool pass = true;

    bool operator==(const CheckRecord&) const = default;
};

struct FittedConstant {
    std::string name;
    double value = 0.0;
    double stability = 0.0;

    bool operator==(const FittedConstant&) const = default;
};

struct Report {
    std::string suite;
    std::uint64_t seed = 0;
    std::string environment;
    std::vector<CheckRecord> checks;
    std::vector<FittedConstant> constants;
    std::map<std::string, std::string> metadata;
    /// Hard failures: failed checks, or fitted constants whose stability exceeds the limit.
    std::size_t violations = 0;

    bool passed() const { return violations == 0; }
    bool operator==(const Report&) const = default;
};

struct Fit {
    double value = 0.0;
    double stability = 0.0;
};

/// (max, max / median); the median of an even count is the mean of the two middle values.
Fit fit_constant(std::vector<double> ratios);

/// Incremental FNV-1a digest of check inputs.
class Digest {
public:
    Digest& add(double v);
    Digest& add(std::uint64_t v);
    Digest& add(const std::string& s);
    Digest& add(const GridFunction& f);
    std::string hex() const;

private:
    void bytes(const void* p, std::size_t n);
    std::uint64_t h_ = 0xcbf29ce484222325ULL;
};

/// Suite names in acceptance order.
const std::vector<std::string>& suite_names();
/// Throws Error on an unknown suite.
Report run_suite(const SuiteConfig& config);

enum class ReportFormat { Json, Csv };

/// Rows are emitted sorted by check id. The CSV schema is
/// `id,digest,lhs,rhs,constant,pass` with reals printed to 17 significant digits.
std::string emit_report(const Report& report, ReportFormat format);
Report parse_report(const std::string& json_text);
void write_report(const Report& report, ReportFormat format, const std::string& path);

}  // namespace sparsedom
