#pragma once

#include <cstdint>
#include <random>

namespace apfree {

// SplitMix64 mixer; used to derive independent stream seeds from a master
// seed so parallel work is reproducible regardless of scheduling.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
    return splitmix64(master ^ splitmix64(stream));
}

// Thin wrapper over mt19937_64 with self-contained double generation so
// draws are identical across standard library implementations.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // Uniform in [0, 1), 53-bit resolution.
    double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    // Uniform in [-half_width, half_width).
    double uniform_symmetric(double half_width) { return (2.0 * uniform01() - 1.0) * half_width; }

    // Uniform over the fundamental torus cell [-1/2, 1/2).
    double uniform_box0() { return uniform01() - 0.5; }

  private:
    std::mt19937_64 engine_;
};

}  // namespace apfree
