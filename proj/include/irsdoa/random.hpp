#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "irsdoa/numerics.hpp"

namespace irsdoa {

/// Seedable, splittable random stream.
///
/// A stream is identified by its key: the root seed followed by the stream
/// ids of every split() that led to it. The engine is seeded from the key
/// through std::seed_seq, so a child stream depends only on (seed, path) and
/// never on how many numbers the parent has already produced.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  Rng split(std::uint64_t stream) const;

  double uniform(double lo, double hi);
  double standard_normal();

  /// Circular complex Gaussian CN(0, variance).
  Complex circular_gaussian(double variance);

  std::mt19937_64& engine() { return engine_; }

 private:
  explicit Rng(std::vector<std::uint32_t> key);

  std::vector<std::uint32_t> key_;
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

/// Stream ids used when deriving per-trial streams.
namespace stream {
inline constexpr std::uint64_t kMeasurement = 1;
inline constexpr std::uint64_t kNoise = 2;
}  // namespace stream

}  // namespace irsdoa
