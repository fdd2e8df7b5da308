#include "fleetmatch/rng.hpp"

#include <random>
#include <stdexcept>

namespace fleetmatch {

struct Rng::State {
  gmp_randstate_t s;
};

Rng::Rng(std::uint64_t seed) : state_(std::make_unique<State>()) {
  gmp_randinit_mt(state_->s);
  Bignum z;
  mpz_import(z.get_mpz_t(), 1, 1, sizeof(seed), 0, 0, &seed);
  gmp_randseed(state_->s, z.get_mpz_t());
}

Rng::~Rng() {
  if (state_) gmp_randclear(state_->s);
}

Rng::Rng(Rng&&) noexcept = default;
Rng& Rng::operator=(Rng&&) noexcept = default;

Rng Rng::from_entropy() {
  std::random_device rd;
  const std::uint64_t seed =
      (static_cast<std::uint64_t>(rd()) << 32) ^ static_cast<std::uint64_t>(rd());
  return Rng(seed);
}

Bignum Rng::below(const Bignum& bound) {
  if (bound < 1) throw std::invalid_argument("Rng::below: bound must be >= 1");
  Bignum r;
  mpz_urandomm(r.get_mpz_t(), state_->s, bound.get_mpz_t());
  return r;
}

Bignum Rng::between(const Bignum& lo, const Bignum& hi) {
  if (lo > hi) throw std::invalid_argument("Rng::between: empty range");
  return lo + below(hi - lo + 1);
}

Bignum Rng::bits(std::size_t nbits) {
  Bignum r;
  mpz_urandomb(r.get_mpz_t(), state_->s, nbits);
  return r;
}

std::uint64_t Rng::u64_below(std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("Rng::u64_below: bound must be >= 1");
  return mpz_get_ui(below(Bignum(static_cast<unsigned long>(bound))).get_mpz_t());
}

}  // namespace fleetmatch
