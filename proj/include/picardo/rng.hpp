#pragma once

// Counter-based 64-bit generator (SplitMix64 core) with named substreams.
// Outputs are pure integer arithmetic plus a fixed double conversion, so
// datasets are bit-reproducible across platforms and compilers. Streams are
// keyed by (seed, domain, index): each source row and the mixing matrix draw
// from their own stream, so changing one does not shift the others.

#include <cstdint>

namespace picardo {

namespace rng_domain {
inline constexpr std::uint64_t kSource = 0x736f757263650000ull;  // per-source rows
inline constexpr std::uint64_t kMixing = 0x6d6978696e670000ull;  // mixing redraws
}  // namespace rng_domain

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  /// Substream keyed by (seed, domain, index) through an extra mixing round.
  static Rng stream(std::uint64_t seed, std::uint64_t domain, std::uint64_t index);

  std::uint64_t next_u64();

  /// Uniform on [0, 1), 53-bit resolution.
  double uniform01();
  /// Uniform on the open interval (0, 1); safe as a log/tail argument.
  double uniform_open01();
  /// Uniform on [-half_width, half_width).
  double uniform_sym(double half_width);
  /// Standard normal via Box-Muller; pairs are cached per stream.
  double gaussian();
  /// Laplace with the given scale (variance 2 * scale^2), via inverse CDF.
  double laplace(double scale);

 private:
  std::uint64_t state_;
  bool has_cached_gaussian_ = false;
  double cached_gaussian_ = 0;
};

}  // namespace picardo
