#pragma once

#include <cstdint>
#include <memory>

#include "fleetmatch/bignum.hpp"

namespace fleetmatch {

/// Seedable randomness source (Mersenne Twister over GMP limbs). Every
/// operation that draws randomness takes one of these explicitly, so a fixed
/// seed makes a whole run reproducible. Not safe to share across threads;
/// give each concurrent caller its own instance.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);
  ~Rng();

  Rng(Rng&&) noexcept;
  Rng& operator=(Rng&&) noexcept;
  Rng(const Rng&) = delete;
  Rng& operator=(const Rng&) = delete;

  /// Seeded from OS entropy.
  static Rng from_entropy();

  /// Uniform in [0, bound); requires bound >= 1.
  Bignum below(const Bignum& bound);

  /// Uniform in [lo, hi] inclusive; requires lo <= hi.
  Bignum between(const Bignum& lo, const Bignum& hi);

  /// Uniform in [0, 2^nbits).
  Bignum bits(std::size_t nbits);

  std::uint64_t u64_below(std::uint64_t bound);

 private:
  struct State;
  std::unique_ptr<State> state_;
};

}  // namespace fleetmatch
