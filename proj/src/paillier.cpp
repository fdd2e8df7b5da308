#include "fleetmatch/paillier.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace fleetmatch::paillier {

namespace {

constexpr int kKeygenAttempts = 4096;
constexpr int kUnitAttempts = 4096;

Bignum random_prime(int bits, Rng& rng) {
  // Top and low bit forced: exactly `bits` bits, odd. Odd-only excludes 2,
  // which needs bits >= 3 anyway (enforced by generate_keys).
  const int attempts = 256 * bits;
  for (int i = 0; i < attempts; ++i) {
    Bignum c = rng.bits(static_cast<std::size_t>(bits));
    mpz_setbit(c.get_mpz_t(), static_cast<mp_bitcnt_t>(bits - 1));
    mpz_setbit(c.get_mpz_t(), 0);
    if (is_probable_prime(c)) return c;
  }
  throw std::runtime_error("random_prime: no prime found; key_bits too small or rng broken");
}

KeyPair assemble(const Bignum& p, const Bignum& q, int key_bits) {
  KeyPair kp;
  kp.prv.p = p;
  kp.prv.q = q;
  kp.prv.lambda = lcm(p - 1, q - 1);
  kp.pub.n = p * q;
  kp.pub.n_squared = kp.pub.n * kp.pub.n;
  kp.pub.key_bits = key_bits;
  kp.prv.mu = invmod(kp.prv.lambda, kp.pub.n);
  return kp;
}

void check_ciphertext_range(const PublicKey& pk, const Ciphertext& c,
                            const char* who) {
  if (c.value < 0 || c.value >= pk.n_squared)
    throw std::invalid_argument(std::string(who) + ": ciphertext out of range");
}

}  // namespace

OpCounts& op_counts() {
  thread_local OpCounts counts;
  return counts;
}

void reset_op_counts() { op_counts() = OpCounts{}; }

KeyPair generate_keys(int key_bits, Rng& rng) {
  if (key_bits < 3)
    throw std::invalid_argument("generate_keys: key_bits must be >= 3");
  for (int i = 0; i < kKeygenAttempts; ++i) {
    const Bignum p = random_prime(key_bits, rng);
    const Bignum q = random_prime(key_bits, rng);
    if (p == q) continue;
    if (gcd(p * q, (p - 1) * (q - 1)) != 1) continue;
    return assemble(p, q, key_bits);
  }
  throw std::runtime_error("generate_keys: no admissible prime pair found");
}

KeyPair keypair_from_primes(const Bignum& p, const Bignum& q) {
  if (p < 2 || q < 2 || !is_probable_prime(p) || !is_probable_prime(q))
    throw std::invalid_argument("keypair_from_primes: both arguments must be prime");
  if (p == q)
    throw std::invalid_argument("keypair_from_primes: primes must be distinct");
  if (gcd(p * q, (p - 1) * (q - 1)) != 1)
    throw std::invalid_argument(
        "keypair_from_primes: gcd(pq, (p-1)(q-1)) != 1");
  if (p * q < 15)
    throw std::invalid_argument("keypair_from_primes: modulus below 15");
  const int bits =
      static_cast<int>(std::max(bit_length(p), bit_length(q)));
  return assemble(p, q, bits);
}

Bignum sample_unit(const PublicKey& pk, Rng& rng) {
  for (int i = 0; i < kUnitAttempts; ++i) {
    Bignum r = rng.below(pk.n);
    if (r >= 1 && gcd(r, pk.n) == 1) return r;
  }
  throw std::runtime_error("sample_unit: rejection loop exhausted; rng broken?");
}

Ciphertext encrypt(const PublicKey& pk, const Bignum& t, const Bignum& r) {
  if (t < 0 || t >= pk.n)
    throw std::invalid_argument("encrypt: plaintext out of Z_N");
  if (r < 1 || r >= pk.n || gcd(r, pk.n) != 1)
    throw std::invalid_argument("encrypt: randomizer not a unit of Z_N");
  ++op_counts().encryptions;
  // (N+1)^t == 1 + t*N (mod N^2), so one powm covers the whole ciphertext.
  const Bignum generator_part = (1 + t * pk.n) % pk.n_squared;
  const Bignum randomizer_part = powmod(r, pk.n, pk.n_squared);
  return Ciphertext{(generator_part * randomizer_part) % pk.n_squared};
}

Ciphertext encrypt(const PublicKey& pk, const Bignum& t, Rng& rng) {
  return encrypt(pk, t, sample_unit(pk, rng));
}

Bignum decrypt(const PrivateKey& sk, const PublicKey& pk, const Ciphertext& c) {
  check_ciphertext_range(pk, c, "decrypt");
  const Bignum u = powmod(c.value, sk.lambda, pk.n_squared);
  const Bignum numerator = u - 1;
  if (numerator % pk.n != 0)
    throw CorruptCiphertextError("decrypt: L(x) division is not exact");
  return ((numerator / pk.n) * sk.mu) % pk.n;
}

Ciphertext add_cipher(const PublicKey& pk, const Ciphertext& c1,
                      const Ciphertext& c2) {
  check_ciphertext_range(pk, c1, "add_cipher");
  check_ciphertext_range(pk, c2, "add_cipher");
  ++op_counts().ciphertext_muls;
  return Ciphertext{(c1.value * c2.value) % pk.n_squared};
}

Ciphertext scalar_mul(const PublicKey& pk, const Ciphertext& c, const Bignum& k) {
  check_ciphertext_range(pk, c, "scalar_mul");
  if (k < 0 || k >= pk.n)
    throw std::invalid_argument("scalar_mul: scalar out of Z_N");
  ++op_counts().exponentiations;
  return Ciphertext{powmod(c.value, k, pk.n_squared)};
}

}  // namespace fleetmatch::paillier
