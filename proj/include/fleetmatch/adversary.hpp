#pragma once

#include <stdexcept>
#include <vector>

#include "fleetmatch/matchmaking.hpp"
#include "fleetmatch/network.hpp"
#include "fleetmatch/paillier.hpp"
#include "fleetmatch/rng.hpp"

namespace fleetmatch::adversary {

/// Raised when an enumeration request exceeds the brute-force budget
/// (N <= 64 and N^variables <= ~1.7e7). A partial count would falsify
/// bound checks, so over-budget requests fail loudly instead.
class BudgetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A query whose entries encrypt arbitrary coefficients instead of an
/// indicator vector, with the randomizers kept for later analysis.
struct MaliciousQuery {
  std::vector<Bignum> coefficients;
  std::vector<Bignum> randomizers;
  matchmaking::QueryVector query;
};

/// entry i = E(coefficients[i]; fresh unit). An indicator vector reproduces
/// submit_query draw-for-draw.
MaliciousQuery craft_query(const paillier::PublicKey& pk,
                           const std::vector<Bignum>& coefficients, Rng& rng);

/// Closed-form decryption of a two-party response: sum of
/// coefficient * weight over the held indices, mod n. All three vectors are
/// aligned; weights at non-member positions are ignored.
Bignum predict_decryption(const Bignum& n,
                          const std::vector<Bignum>& coefficients,
                          const std::vector<Bignum>& weights,
                          const std::vector<bool>& memberships);

/// Distributed analogue, fed directly from a dist_response draw log.
Bignum predict_decryption(const Bignum& n,
                          const std::vector<Bignum>& coefficients,
                          const std::vector<network::DrawRecord>& draws);

/// All solutions in Z_n^t of sum(coefficients[i] * xi_i) == target (mod n),
/// counted exactly by brute force.
struct SolutionSet {
  Bignum target;
  std::vector<Bignum> coefficients;
  unsigned long long count = 0;
  /// Filled only when requested; each tuple satisfies the congruence.
  std::vector<std::vector<int>> tuples;
};

SolutionSet enumerate_solutions(const Bignum& n,
                                const std::vector<Bignum>& coefficients,
                                const Bignum& target,
                                bool store_tuples = false);

/// Multi-fleet variant: num_fleets copies of each variable; a tuple
/// (xi_i^j) solves sum_i coefficients[i] * (sum_j xi_i^j) == target (mod n).
/// Stored tuples are flattened with the fleet index fastest.
SolutionSet enumerate_solutions_distributed(
    const Bignum& n, const std::vector<Bignum>& coefficients,
    const Bignum& target, int num_fleets, bool store_tuples = false);

/// The minimal Bezout pair for distinct primes p, q:
/// alpha_bar * q + beta_bar * p = 1 with |alpha_bar| < p, |beta_bar| < q;
/// alpha/beta are the same values reduced into Z_pq.
struct BezoutSplit {
  Bignum alpha_bar;
  Bignum beta_bar;
  Bignum alpha;
  Bignum beta;
};

BezoutSplit bezout_split(const Bignum& p, const Bignum& q);

/// One crafted query answering two membership questions at once.
struct AttackOutcome {
  bool first = false;   // decoded membership of w1
  bool second = false;  // decoded membership of w2
  Bignum decrypted;     // what the response decrypted to
  /// Union bound on a wrong decode: ((p-1)+(q-1))/(N-1), the chance a
  /// random weight is divisible by the relevant prime.
  double failure_bound = 0.0;
};

/// The enquirer owns the keypair, plants q at w1 and p at w2, and reads
/// both answers out of one response: membership of w1 iff D(y) mod p != 0,
/// membership of w2 iff D(y) mod q != 0.
AttackOutcome bezout_attack(const paillier::KeyPair& keys,
                            const matchmaking::World& world, int w1, int w2,
                            const matchmaking::InterestSet& responder,
                            Rng& rng);

}  // namespace fleetmatch::adversary
