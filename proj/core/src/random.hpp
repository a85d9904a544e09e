#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

namespace twc::detail {

/// SplitMix64: small, seedable, identical output on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) noexcept : state_(seed) {}

  std::uint64_t next() noexcept {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Uniform on [0, 1).
  double uniform() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Uniform on [lo, hi).
  double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform(); }

  /// Flat Dirichlet sample of dimension n.
  std::vector<double> dirichlet(std::size_t n) {
    std::vector<double> p(n);
    double sum = 0.0;
    for (double& v : p) {
      v = -std::log1p(-uniform());
      sum += v;
    }
    for (double& v : p) v /= sum;
    return p;
  }

 private:
  std::uint64_t state_;
};

/// Derives an independent stream seed from a master seed and stream indices.
inline std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0) noexcept {
  Rng mixer(seed ^ (a * 0xD1B54A32D192ED03ULL) ^ (b * 0x8CB92BA72F3D8DD7ULL));
  mixer.next();
  return mixer.next();
}

}  // namespace twc::detail
