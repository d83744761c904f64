#include "qauth/rng.hpp"

#include "qauth/errors.hpp"

namespace qauth {

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

Rng::Rng(std::uint64_t seed) : seed_(seed), engine_(mix_seed(seed, 0)) {}

std::uint64_t Rng::next_u64() { return engine_(); }

double Rng::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

std::uint64_t Rng::below(std::uint64_t bound) {
  if (bound == 0) throw ArgumentError("Rng::below: bound must be positive");
  // Rejection keeps the result unbiased for bounds that do not divide 2^64.
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
  std::uint64_t x = engine_();
  while (x >= limit) x = engine_();
  return x % bound;
}

std::uint8_t Rng::bit() { return static_cast<std::uint8_t>(engine_() >> 63); }

Bits Rng::bits(std::size_t count) {
  Bits out(count);
  for (auto& b : out) b = bit();
  return out;
}

Rng Rng::split(std::uint64_t stream) const {
  return Rng(mix_seed(seed_, stream + 1));
}

}  // namespace qauth
