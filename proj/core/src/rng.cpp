#include "thetalab/rng.hpp"

#include <cmath>

#include "thetalab/errors.hpp"

namespace thetalab::rmt {

namespace {
constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;
constexpr std::uint64_t kSeedTweak = 0x5851F42D4C957F2DULL;
constexpr std::uint64_t kDeriveTweak = 0xD1B54A32D192ED03ULL;
}  // namespace

std::uint64_t Rng::mix64(std::uint64_t x) {
  x ^= x >> 30;
  x *= 0xBF58476D1CE4E5B9ULL;
  x ^= x >> 27;
  x *= 0x94D049BB133111EBULL;
  x ^= x >> 31;
  return x;
}

Rng::Rng(std::uint64_t seed) : key_(mix64(seed ^ kSeedTweak)) {}

Rng::Rng(std::uint64_t key, int) : key_(key) {}

std::uint64_t Rng::next_u64() {
  ++counter_;
  return mix64(key_ + counter_ * kGolden);
}

double Rng::next_double() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::next_sign() {
  return (next_u64() >> 63) ? 1.0 : -1.0;
}

std::uint64_t Rng::next_below(std::uint64_t bound) {
  if (bound == 0) throw InvalidInput("next_below: bound must be positive");
  const std::uint64_t threshold = (0ULL - bound) % bound;
  for (;;) {
    const std::uint64_t x = next_u64();
    if (x >= threshold) return x % bound;
  }
}

double Rng::next_normal() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  for (;;) {
    const double u = 2.0 * next_double() - 1.0;
    const double v = 2.0 * next_double() - 1.0;
    const double s = u * u + v * v;
    if (s >= 1.0 || s == 0.0) continue;
    const double m = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * m;
    have_spare_ = true;
    return u * m;
  }
}

Rng Rng::derive(std::uint64_t stream) const {
  return Rng(mix64(key_ ^ mix64(stream ^ kDeriveTweak)), 0);
}

}  // namespace thetalab::rmt
