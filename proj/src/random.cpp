#include "irsdoa/random.hpp"

#include <cmath>

namespace irsdoa {

namespace {

void append_u64(std::vector<std::uint32_t>& key, std::uint64_t value) {
  key.push_back(static_cast<std::uint32_t>(value & 0xffffffffu));
  key.push_back(static_cast<std::uint32_t>(value >> 32));
}

std::mt19937_64 seeded_engine(const std::vector<std::uint32_t>& key) {
  std::seed_seq seq(key.begin(), key.end());
  return std::mt19937_64(seq);
}

}  // namespace

Rng::Rng(std::uint64_t seed) : Rng([seed] {
    std::vector<std::uint32_t> key;
    append_u64(key, seed);
    return key;
  }()) {}

Rng::Rng(std::vector<std::uint32_t> key) : key_(std::move(key)), engine_(seeded_engine(key_)) {}

Rng Rng::split(std::uint64_t stream) const {
  std::vector<std::uint32_t> child = key_;
  append_u64(child, stream);
  return Rng(std::move(child));
}

double Rng::uniform(double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(engine_);
}

double Rng::standard_normal() { return normal_(engine_); }

Complex Rng::circular_gaussian(double variance) {
  const double sd = std::sqrt(0.5 * variance);
  const double re = sd * standard_normal();
  const double im = sd * standard_normal();
  return {re, im};
}

}  // namespace irsdoa
