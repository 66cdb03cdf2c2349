#pragma once

#include <cstdint>
#include <numbers>

#include "rootmax/common.hpp"

namespace rootmax {

namespace detail {
inline std::uint64_t splitmix64(std::uint64_t& x) {
  x += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = x;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

inline std::uint64_t rotl(std::uint64_t x, int k) {
  return (x << k) | (x >> (64 - k));
}
}  // namespace detail

// Counter-seeded xoshiro256++ stream. A (seed, stream) pair reproduces the
// same draws bit-for-bit on every platform; all distribution transforms are
// implemented here (not via <random>) so outputs never depend on the standard
// library implementation.
//
// Parallel drivers derive independent sub-streams with child(counter); the
// derivation is a pure function of (seed, stream, counter), so results do not
// depend on how work is scheduled across threads.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed, std::uint64_t stream = 0)
      : seed_(seed), stream_(stream) {
    // Every state word must depend on both seed and stream; sharing words
    // across streams correlates them enough to bias large Monte Carlo runs.
    std::uint64_t a = seed;
    std::uint64_t b = stream ^ 0xA3EC647659359ACDULL;
    std::uint64_t x = detail::splitmix64(a) ^
                      (detail::splitmix64(b) + 0x9E3779B97F4A7C15ULL);
    s_[0] = detail::splitmix64(x);
    s_[1] = detail::splitmix64(x);
    s_[2] = detail::splitmix64(x);
    s_[3] = detail::splitmix64(x);
    if ((s_[0] | s_[1] | s_[2] | s_[3]) == 0) s_[0] = 1;
  }

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream() const { return stream_; }

  RngStream child(std::uint64_t counter) const {
    std::uint64_t x = stream_ ^ (0x9E3779B97F4A7C15ULL * (counter + 1));
    return RngStream(seed_, detail::splitmix64(x));
  }

  std::uint64_t next_u64() {
    std::uint64_t result = detail::rotl(s_[0] + s_[3], 23) + s_[0];
    std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = detail::rotl(s_[3], 45);
    return result;
  }

  // Uniform on [0, 1), 53 random bits.
  double uniform() { return double(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform on (0, 1); never returns an exact endpoint, safe under log().
  double uniform_pos() {
    return (double(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  }

  // Standard complex Gaussian with E|G|^2 = 1 (real and imaginary parts
  // independent N(0, 1/2)): radius sqrt(-log U), uniform phase.
  cplx complex_gaussian() {
    double r = std::sqrt(-std::log(uniform_pos()));
    double phi = 2.0 * std::numbers::pi * uniform();
    return cplx(r * std::cos(phi), r * std::sin(phi));
  }

  // Uniform on the unit disk (Lebesgue).
  cplx uniform_disk() {
    double r = std::sqrt(uniform());
    double phi = 2.0 * std::numbers::pi * uniform();
    return cplx(r * std::cos(phi), r * std::sin(phi));
  }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t s_[4];
};

}  // namespace rootmax
