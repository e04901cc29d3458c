#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <span>

namespace irlab {

// Finalizer from the splitmix64 generator; used to derive independent
// stream seeds from a base seed and structural indices (rep, row, grid
// point). Derived streams are statistically independent, not
// cryptographically so.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t a) {
  return splitmix64(splitmix64(seed) ^ a);
}

inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
  return splitmix64(mix_seed(seed, a) ^ splitmix64(b ^ 0x5851f42d4c957f2dULL));
}

// Deterministic random stream backed by mt19937_64.
//
// Standard normals are produced by the Box-Muller transform of two 53-bit
// uniforms, always generated in pairs: normal() consumes one pair and
// discards the sine branch, fill_normals(k) consumes ceil(k/2) pairs.
// The transform (not the platform's std::normal_distribution) is the
// reproducibility contract: same seed, same call sequence, same values.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  // Uniform on [0, 1), 53-bit resolution.
  double uniform01() {
    return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
  }

  double normal() {
    double z0, z1;
    normal_pair(z0, z1);
    return z0;
  }

  void fill_normals(std::span<double> out) {
    std::size_t i = 0;
    double z0, z1;
    for (; i + 1 < out.size(); i += 2) {
      normal_pair(z0, z1);
      out[i] = z0;
      out[i + 1] = z1;
    }
    if (i < out.size()) {
      normal_pair(z0, z1);
      out[i] = z0;
    }
  }

  // Index into a categorical law given its inclusive-prefix-sum CDF.
  std::size_t categorical(std::span<const double> cdf) {
    const double u = uniform01() * cdf.back();
    std::size_t lo = 0, hi = cdf.size() - 1;
    while (lo < hi) {
      const std::size_t mid = (lo + hi) / 2;
      if (cdf[mid] > u) {
        hi = mid;
      } else {
        lo = mid + 1;
      }
    }
    return lo;
  }

  std::uint64_t raw() { return eng_(); }

 private:
  void normal_pair(double& z0, double& z1) {
    // u1 in (0, 1] so the log is finite.
    const double u1 = static_cast<double>((eng_() >> 11) + 1) * 0x1.0p-53;
    const double u2 = static_cast<double>(eng_() >> 11) * 0x1.0p-53;
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * M_PI * u2;
    z0 = r * std::cos(theta);
    z1 = r * std::sin(theta);
  }

  std::mt19937_64 eng_;
};

}  // namespace irlab
