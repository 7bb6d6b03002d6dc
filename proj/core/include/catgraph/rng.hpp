#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string_view>

namespace catgraph {

/// Reproducible generator: mt19937_64 seeded through std::seed_seq with a
/// stream tag, so that tape contents and algorithm coins drawn from the same
/// user seed never share a sequence. Distributions are implemented here
/// rather than with <random> distributions, whose output is
/// implementation-defined.
class Rng {
public:
    enum class Stream : std::uint32_t { Tape = 0x7a9e, Algorithm = 0xa1c0, Harness = 0x4a55 };

    explicit Rng(std::uint64_t seed, Stream stream = Stream::Algorithm);

    std::uint64_t next() { return engine_(); }

    /// Uniform integer in [lo, hi] (inclusive), by rejection.
    std::uint64_t uniform(std::uint64_t lo, std::uint64_t hi);

    /// Uniform value with the given number of low bits (bits <= 64).
    std::uint64_t bits(unsigned count);

    /// Uniform double in [0, 1).
    double unit();

    bool coin(double p_true) { return unit() < p_true; }

private:
    std::mt19937_64 engine_;
};

/// Seed fallback: CATGRAPH_SEED from the environment if set and parseable.
std::optional<std::uint64_t> seed_from_environment();

} // namespace catgraph
