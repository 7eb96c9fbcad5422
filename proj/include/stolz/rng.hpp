#ifndef STOLZ_RNG_HPP
#define STOLZ_RNG_HPP

#include <array>
#include <cmath>
#include <cstdint>

namespace stolz {

// Counter-based random stream. Every variate is a pure function of
// (seed, stream, counter, slot), so Monte Carlo batches can be evaluated
// in any order, on any number of workers, with identical results.

namespace detail {

// SplitMix64 finalizer (Steele, Lea, Vigna).
inline std::uint64_t mix64(std::uint64_t z) {
  z ^= z >> 30;
  z *= 0xbf58476d1ce4e5b9ULL;
  z ^= z >> 27;
  z *= 0x94d049bb133111ebULL;
  z ^= z >> 31;
  return z;
}

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

inline std::uint64_t counter_hash(std::uint64_t seed, std::uint64_t stream,
                                  std::uint64_t counter, std::uint64_t slot) {
  std::uint64_t h = mix64(seed + kGolden);
  h = mix64(h ^ (stream + kGolden));
  h = mix64(h ^ (counter + kGolden));
  h = mix64(h ^ (slot + kGolden));
  return h;
}

// Map to (0, 1]; never returns 0 so logs are safe.
inline double to_unit(std::uint64_t bits) {
  return (static_cast<double>(bits >> 11) + 1.0) * 0x1.0p-53;
}

}  // namespace detail

/// One standard normal keyed by (seed, stream, counter, slot), via
/// Box-Muller on two hashed uniforms.
inline double counter_normal(std::uint64_t seed, std::uint64_t stream,
                             std::uint64_t counter, std::uint64_t slot) {
  const double u1 =
      detail::to_unit(detail::counter_hash(seed, stream, counter, 2 * slot));
  const double u2 = detail::to_unit(
      detail::counter_hash(seed, stream, counter, 2 * slot + 1));
  constexpr double two_pi = 6.283185307179586476925286766559;
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(two_pi * u2);
}

/// The standard-normal triple used for one Euler-Maruyama step of
/// trajectory `stream` at step index `counter`.
inline std::array<double, 3> counter_normal3(std::uint64_t seed,
                                             std::uint64_t stream,
                                             std::uint64_t counter) {
  return {counter_normal(seed, stream, counter, 0),
          counter_normal(seed, stream, counter, 1),
          counter_normal(seed, stream, counter, 2)};
}

/// Deterministic uniform in [0,1) keyed the same way; used by samplers.
inline double counter_uniform(std::uint64_t seed, std::uint64_t stream,
                              std::uint64_t counter, std::uint64_t slot) {
  return static_cast<double>(
             detail::counter_hash(seed, stream, counter, slot) >> 11) *
         0x1.0p-53;
}

}  // namespace stolz

#endif  // STOLZ_RNG_HPP
