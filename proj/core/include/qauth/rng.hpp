#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace qauth {

using Bits = std::vector<std::uint8_t>;

/// SplitMix64 finalizer; used to derive independent child seeds.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

/// Seedable, splittable pseudo-random source.
///
/// The engine is std::mt19937_64 (bit-exact across standard libraries);
/// conversions to doubles and bounded integers are done here rather than
/// through <random> distributions, whose output is implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t next_u64();
  /// Uniform in [0, 1) with 53 bits of precision.
  double uniform();
  /// Uniform in [0, bound); bound must be > 0.
  std::uint64_t below(std::uint64_t bound);
  std::uint8_t bit();
  Bits bits(std::size_t count);

  /// Child generator whose sequence depends only on (seed, stream).
  Rng split(std::uint64_t stream) const;

  std::uint64_t seed() const { return seed_; }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

}  // namespace qauth
