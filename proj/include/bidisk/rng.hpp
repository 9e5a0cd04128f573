#pragma once

#include <complex>
#include <cstdint>

namespace bidisk {

// Deterministic splittable RNG (splitmix64 core). All randomness in the
// library flows through this so that identical seeds give identical runs
// regardless of call order elsewhere; per-trial streams are derived from
// (seed, counter) rather than by sharing one stream.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed ^ kPhi) {
    // warm up so nearby seeds decorrelate
    next_u64();
    next_u64();
  }

  // Counter-based splitter: an independent stream for trial `index`.
  static Rng split(std::uint64_t seed, std::uint64_t index) {
    return Rng(mix(seed + kPhi * (index + 1)));
  }

  std::uint64_t next_u64() {
    state_ += kPhi;
    return mix(state_);
  }

  // Uniform in [0, 1).
  double uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Uniform integer in [lo, hi] inclusive.
  int uniform_int(int lo, int hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<int>(next_u64() % span);
  }

  // Uniform w.r.t. area in the closed disk of the given radius.
  std::complex<double> in_disk(double radius) {
    const double r = radius * std::sqrt(uniform());
    const double theta = 2.0 * kPi * uniform();
    return {r * std::cos(theta), r * std::sin(theta)};
  }

 private:
  static constexpr std::uint64_t kPhi = 0x9e3779b97f4a7c15ULL;
  static constexpr double kPi = 3.14159265358979323846;

  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::uint64_t state_;
};

}  // namespace bidisk
