#pragma once

#include <cstdint>
#include <random>

namespace conetutte {

// Deterministic random source. mt19937_64 output is fixed by the standard;
// the distribution mappings below are implemented by hand so that streams
// are reproducible across platforms and standard libraries.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // Uniform in [0, 1) with 53 random bits.
    double next_unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * next_unit(); }

    // Uniform integer in [lo, hi] by rejection-free modulo over a wide range;
    // bias is negligible (< 2^-32) and irrelevant for test-instance sampling.
    std::uint64_t uniform_index(std::uint64_t n) { return n == 0 ? 0 : engine_() % n; }

    int uniform_int(int lo, int hi) {
        return lo + static_cast<int>(uniform_index(static_cast<std::uint64_t>(hi - lo + 1)));
    }

    bool chance(double p) { return next_unit() < p; }

    // Derive an independent child stream; used to give sub-tasks their own
    // reproducible sequence regardless of how much the parent consumed.
    Rng fork() { return Rng(next_u64() ^ 0x9e3779b97f4a7c15ull); }

  private:
    std::mt19937_64 engine_;
};

} // namespace conetutte
