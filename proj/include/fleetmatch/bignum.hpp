#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace fleetmatch {

/// Arbitrary-precision integer. All protocol arithmetic is over naturals;
/// signed values appear only in Bezout coefficients.
using Bignum = mpz_class;

/// Bits in the binary representation of |x|; bit_length(0) == 0.
std::size_t bit_length(const Bignum& x);

/// base^exp mod m. Requires m > 0 and exp >= 0.
Bignum powmod(const Bignum& base, const Bignum& exp, const Bignum& m);

/// x^-1 mod m; throws std::invalid_argument when gcd(x, m) != 1.
Bignum invmod(const Bignum& x, const Bignum& m);

Bignum gcd(const Bignum& a, const Bignum& b);
Bignum lcm(const Bignum& a, const Bignum& b);

/// Trial division plus Baillie-PSW plus Miller-Rabin rounds (40 total reps);
/// exact below 2^64.
bool is_probable_prime(const Bignum& n);

struct BezoutResult {
  Bignum x;
  Bignum y;
  Bignum g;
};

/// Extended Euclid on naturals, not both zero: a*x + b*y = g = gcd(a, b).
/// The returned pair is normalized to the minimal-|x| representative,
/// x in (-b/2g, b/2g], so away from the divisibility corner cases it
/// satisfies |x| < b/g and |y| < a/g.
BezoutResult bezout(const Bignum& a, const Bignum& b);

/// Lowercase hex, big-endian, no leading zeros ("0" for zero). Requires x >= 0.
std::string to_hex(const Bignum& x);
Bignum from_hex(const std::string& s);

/// Appends exactly `width` big-endian bytes (left-padded with zeros).
/// Throws when x < 0 or x does not fit.
void append_fixed_bytes(std::vector<std::uint8_t>& out, const Bignum& x,
                        std::size_t width);

/// Big-endian bytes to natural; empty input decodes to 0.
Bignum read_be_bytes(const std::uint8_t* data, std::size_t len);

}  // namespace fleetmatch
