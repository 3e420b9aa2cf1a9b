#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "sparsedom/grid.hpp"

namespace sparsedom {

/// Seeded generator with a fixed, library-independent mapping from engine
/// output to doubles so that corpora are reproducible across platforms.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform in [0, 1).
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    /// Uniform integer in [lo, hi].
    long integer(long lo, long hi) {
        const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
        return lo + static_cast<long>(engine_() % span);
    }
    double sign() { return (engine_() >> 63) ? 1.0 : -1.0; }
    std::uint64_t next() { return engine_(); }

private:
    std::mt19937_64 engine_;
};

/// splitmix64 finalizer; derives independent child seeds.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

enum class CorpusKind { Step, SmoothBump, RandomSign, PowerWeight, BmoLog };

std::optional<CorpusKind> parse_corpus_kind(const std::string& name);
std::string to_string(CorpusKind kind);

struct Sample {
    std::uint64_t seed = 0;
    GridFunction f;
};

/// Deterministic corpus. Function kinds are supported in the middle third of
/// the domain on every axis; power weights are strictly positive; bmo-log
/// symbols are log-singular at a random point of the middle third.
std::vector<Sample> generate_corpus(CorpusKind kind, std::size_t n, std::uint64_t seed, const GridGeometry& g);
GridFunction generate_one(CorpusKind kind, std::uint64_t seed, const GridGeometry& g);

}  // namespace sparsedom
