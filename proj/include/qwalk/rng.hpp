#pragma once

#include <cstdint>
#include <random>

namespace qwalk {

using Seed = std::uint64_t;

// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t x) noexcept;

// Seed of the independent stream `stream` under `master`:
//   mix64(master + 0x9E3779B97F4A7C15 * (stream + 1)).
// Every run derives all of its RNG streams through this rule, so a
// (config, master seed) pair fixes every output byte.
Seed derive_seed(Seed master, std::uint64_t stream) noexcept;

// Thin wrapper over mt19937_64 with portable uniform draws. The standard
// distributions are implementation-defined, which would break byte-level
// reproducibility across toolchains.
class Rng {
public:
    explicit Rng(Seed seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    // Uniform on [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    // Uniform integer on [0, n); n > 0.
    std::uint64_t below(std::uint64_t n);

private:
    std::mt19937_64 engine_;
};

}  // namespace qwalk
