#pragma once

#include <cstdint>
#include <stdexcept>

#include "fleetmatch/bignum.hpp"
#include "fleetmatch/rng.hpp"

namespace fleetmatch::paillier {

/// Public modulus N = p*q with the squared modulus cached. key_bits is the
/// bit length of each generating prime.
struct PublicKey {
  Bignum n;
  Bignum n_squared;
  int key_bits = 0;

  bool operator==(const PublicKey&) const = default;
};

struct PrivateKey {
  Bignum p;
  Bignum q;
  Bignum lambda;  // lcm(p-1, q-1)
  Bignum mu;      // lambda^-1 mod n

  bool operator==(const PrivateKey&) const = default;
};

struct KeyPair {
  PublicKey pub;
  PrivateKey prv;
};

/// Element of the residue ring mod N^2; the unit of all protocol traffic.
struct Ciphertext {
  Bignum value;

  bool operator==(const Ciphertext&) const = default;
};

/// Decryption rejected the input: (c^lambda mod N^2) - 1 was not divisible
/// by N. Honest ciphertexts always pass, so this flags a mangled or
/// out-of-group value rather than silently truncating.
struct CorruptCiphertextError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Thread-local operation tally used by the complexity checks.
struct OpCounts {
  std::uint64_t encryptions = 0;
  std::uint64_t exponentiations = 0;  // scalar_mul calls
  std::uint64_t ciphertext_muls = 0;  // add_cipher calls
};

OpCounts& op_counts();
void reset_op_counts();

/// Draws two distinct probable primes of exactly key_bits bits each with
/// gcd(pq, (p-1)(q-1)) = 1 and assembles the key pair. key_bits as small as 3
/// is accepted so the protocol bounds can be checked by exhaustion at toy
/// moduli. Throws std::runtime_error when no admissible pair is found within
/// the attempt budget.
KeyPair generate_keys(int key_bits, Rng& rng);

/// Builds a key pair from caller-chosen primes (p != q, both prime,
/// gcd(pq, (p-1)(q-1)) = 1, pq >= 15). key_bits is set to the wider prime.
KeyPair keypair_from_primes(const Bignum& p, const Bignum& q);

/// Uniform draw from Z*_N by rejection.
Bignum sample_unit(const PublicKey& pk, Rng& rng);

/// E(t; r) = (N+1)^t r^N mod N^2. Requires 0 <= t < N and r a unit of Z_N.
/// Deterministic given (t, r).
Ciphertext encrypt(const PublicKey& pk, const Bignum& t, const Bignum& r);

/// Convenience overload drawing a fresh randomizer.
Ciphertext encrypt(const PublicKey& pk, const Bignum& t, Rng& rng);

/// D(c) = L(c^lambda mod N^2) * mu mod N with L(x) = (x-1)/N; the division
/// must be exact and is checked.
Bignum decrypt(const PrivateKey& sk, const PublicKey& pk, const Ciphertext& c);

/// c1*c2 mod N^2; decrypts to the sum of the plaintexts mod N.
Ciphertext add_cipher(const PublicKey& pk, const Ciphertext& c1,
                      const Ciphertext& c2);

/// c^k mod N^2 with 0 <= k < N; decrypts to k times the plaintext mod N.
Ciphertext scalar_mul(const PublicKey& pk, const Ciphertext& c, const Bignum& k);

}  // namespace fleetmatch::paillier
