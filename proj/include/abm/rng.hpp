#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <random>

namespace abm {

/// Seeded random stream for one simulation run.
///
/// The engine is std::mt19937_64, whose output sequence is fixed by the C++ standard.
/// Uniforms and normals are derived here rather than through <random> distributions so
/// that a seed reproduces the same draws under every standard library. Replication r of
/// an ensemble uses seed base + r.
///
/// Draw order within a run is part of the output contract (see sim.hpp).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// +1 or -1 with equal probability.
  int sign() { return (engine_() >> 63) != 0 ? 1 : -1; }

  /// Standard normal via the Marsaglia polar method; the second variate of each pair is cached.
  double normal() {
    if (spare_) {
      const double z = *spare_;
      spare_.reset();
      return z;
    }
    double u = 0.0, v = 0.0, s = 0.0;
    do {
      u = 2.0 * uniform() - 1.0;
      v = 2.0 * uniform() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double scale = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * scale;
    return u * scale;
  }

 private:
  std::mt19937_64 engine_;
  std::optional<double> spare_;
};

}  // namespace abm
