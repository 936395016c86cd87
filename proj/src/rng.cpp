#include "picardo/rng.hpp"

#include <cmath>

namespace picardo {

namespace {

constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ull;

inline std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

}  // namespace

Rng Rng::stream(std::uint64_t seed, std::uint64_t domain, std::uint64_t index) {
  std::uint64_t key = mix64(seed + kGamma);
  key = mix64(key ^ domain);
  key = mix64(key + index * kGamma);
  return Rng(key);
}

std::uint64_t Rng::next_u64() {
  state_ += kGamma;
  return mix64(state_);
}

double Rng::uniform01() {
  return double(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::uniform_open01() {
  return (double(next_u64() >> 12) + 0.5) * 0x1.0p-52;
}

double Rng::uniform_sym(double half_width) {
  return (2 * uniform01() - 1) * half_width;
}

double Rng::gaussian() {
  if (has_cached_gaussian_) {
    has_cached_gaussian_ = false;
    return cached_gaussian_;
  }
  const double u1 = uniform_open01();
  const double u2 = uniform01();
  const double r = std::sqrt(-2 * std::log(u1));
  const double angle = 2 * M_PI * u2;
  cached_gaussian_ = r * std::sin(angle);
  has_cached_gaussian_ = true;
  return r * std::cos(angle);
}

double Rng::laplace(double scale) {
  const double t = 2 * uniform_open01() - 1;  // in (-1, 1)
  const double sign = t < 0 ? -1.0 : 1.0;
  return -scale * sign * std::log1p(-std::abs(t));
}

}  // namespace picardo
