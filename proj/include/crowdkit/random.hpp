#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <utility>

namespace crowdkit {

// splitmix64 finalizer (Steele, Lea, Flood 2014). Used for seed derivation.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Seed for batch `batch` of sweep point `sweep_index` under `master_seed`.
constexpr std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t batch,
                                    std::uint64_t sweep_index = 0) noexcept {
  return mix64(mix64(mix64(master_seed) ^ batch) ^ (sweep_index * 0xd6e8feb86659fd93ULL));
}

// Random source with platform-independent output. std::mt19937_64 is fully
// specified by the standard; the distributions below are written out so that
// results do not depend on the standard library's distribution code.
class Rng {
 public:
  using engine_type = std::mt19937_64;

  explicit Rng(std::uint64_t seed = 0) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  // Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double low, double high) { return low + (high - low) * uniform(); }

  // Uniform integer in [0, bound). bound must be > 0.
  std::uint64_t below(std::uint64_t bound) {
    // rejection on the top of the range keeps it unbiased
    const std::uint64_t limit = bound * (UINT64_MAX / bound);
    std::uint64_t x = engine_();
    while (x >= limit) x = engine_();
    return x % bound;
  }

  bool bernoulli(double p) { return uniform() < p; }

  template <class T>
  void shuffle(std::span<T> values) {
    for (std::size_t i = values.size(); i > 1; --i) {
      std::size_t j = below(i);
      std::swap(values[i - 1], values[j]);
    }
  }

 private:
  engine_type engine_;
};

}  // namespace crowdkit
