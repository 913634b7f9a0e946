#pragma once

#include <cstdint>

namespace thetalab::rmt {

// Counter-based splittable generator. Output i of a stream with key k is
// mix64(k + i * GOLDEN) (splitmix64), so a draw depends only on (seed,
// derivation path, index) and never on scheduling or thread count.
// Integer draws are platform-independent; next_normal() additionally
// depends on the platform's log().
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t next_u64();
  // Uniform in [0, 1), 53-bit resolution.
  double next_double();
  // Standard normal via the Marsaglia polar method.
  double next_normal();
  // Fair coin: +1.0 or -1.0.
  double next_sign();
  // Uniform in [0, bound) without modulo bias.
  std::uint64_t next_below(std::uint64_t bound);

  // Independent child stream; derive(a) and derive(b) collide only if a == b.
  Rng derive(std::uint64_t stream) const;

  static std::uint64_t mix64(std::uint64_t x);

 private:
  Rng(std::uint64_t key, int tag);
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

// Stream labels used across the library so derivations stay disjoint.
namespace streams {
inline constexpr std::uint64_t kEdges = 1;
inline constexpr std::uint64_t kGoe = 2;
inline constexpr std::uint64_t kClique = 3;
inline constexpr std::uint64_t kResample = 4;
inline constexpr std::uint64_t kBaseline = 5;
}  // namespace streams

}  // namespace thetalab::rmt
