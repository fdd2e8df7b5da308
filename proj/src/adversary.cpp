#include "fleetmatch/adversary.hpp"

#include <cstddef>
#include <string>
#include <utility>

namespace fleetmatch::adversary {

namespace {

constexpr unsigned long long kBudget = 17'000'000ULL;

unsigned long checked_small(const Bignum& x, const char* what) {
  if (x < 0 || !x.fits_ulong_p())
    throw std::invalid_argument(std::string(what) + " out of range");
  return x.get_ui();
}

// n^vars, or BudgetError.
void check_budget(unsigned long n, std::size_t vars) {
  unsigned long long total = 1;
  for (std::size_t i = 0; i < vars; ++i) {
    if (total > kBudget / n)
      throw BudgetError("enumeration budget exceeded: " + std::to_string(n) +
                        "^" + std::to_string(vars) + " > " +
                        std::to_string(kBudget));
    total *= n;
  }
}

// Depth-first odometer over Z_n^vars with an incrementally maintained
// partial sum; visits every tuple once.
struct Enumerator {
  int n = 0;
  int target = 0;
  bool store = false;
  const std::vector<int>& coeffs;
  SolutionSet& out;
  std::vector<int> digits;

  Enumerator(int n_, int target_, bool store_, const std::vector<int>& c,
             SolutionSet& o)
      : n(n_), target(target_), store(store_), coeffs(c), out(o),
        digits(c.size(), 0) {}

  void walk(std::size_t level, int partial) {
    if (level == coeffs.size()) {
      if (partial == target) {
        ++out.count;
        if (store) out.tuples.push_back(digits);
      }
      return;
    }
    int running = partial;
    for (int v = 0; v < n; ++v) {
      digits[level] = v;
      walk(level + 1, running);
      running += coeffs[level];
      if (running >= n) running -= n;
    }
  }
};

SolutionSet enumerate_over(const Bignum& n,
                           const std::vector<Bignum>& coefficients,
                           const std::vector<int>& expanded,
                           const Bignum& target, bool store_tuples) {
  if (n < 2) throw std::invalid_argument("modulus must be at least 2");
  if (n > 64)
    throw BudgetError("modulus " + n.get_str() +
                      " exceeds the toy enumeration budget (N <= 64)");
  const unsigned long n_small = checked_small(n, "modulus");
  if (expanded.empty())
    throw std::invalid_argument("at least one coefficient is required");
  if (target < 0 || target >= n)
    throw std::invalid_argument("target must lie in Z_N");
  check_budget(n_small, expanded.size());

  SolutionSet out;
  out.target = target;
  out.coefficients = coefficients;
  Enumerator run(static_cast<int>(n_small),
                 static_cast<int>(target.get_ui()), store_tuples, expanded,
                 out);
  run.walk(0, 0);
  return out;
}

std::vector<int> reduced_coefficients(const Bignum& n,
                                      const std::vector<Bignum>& coefficients) {
  std::vector<int> small;
  small.reserve(coefficients.size());
  for (const auto& c : coefficients) {
    if (c < 0 || c >= n)
      throw std::invalid_argument("coefficient out of Z_N");
    small.push_back(static_cast<int>(c.get_ui()));
  }
  return small;
}

}  // namespace

MaliciousQuery craft_query(const paillier::PublicKey& pk,
                           const std::vector<Bignum>& coefficients, Rng& rng) {
  if (coefficients.empty())
    throw std::invalid_argument("craft_query: empty coefficient vector");
  MaliciousQuery out;
  out.coefficients = coefficients;
  out.query.pk = pk;
  out.query.entries.reserve(coefficients.size());
  for (const auto& c : coefficients) {
    if (c < 0 || c >= pk.n)
      throw std::invalid_argument("craft_query: coefficient out of Z_N");
    Bignum r = paillier::sample_unit(pk, rng);
    out.randomizers.push_back(r);
    out.query.entries.push_back(paillier::encrypt(pk, c, r));
  }
  return out;
}

Bignum predict_decryption(const Bignum& n,
                          const std::vector<Bignum>& coefficients,
                          const std::vector<Bignum>& weights,
                          const std::vector<bool>& memberships) {
  if (n < 2) throw std::invalid_argument("modulus must be at least 2");
  if (coefficients.size() != weights.size() ||
      coefficients.size() != memberships.size())
    throw std::invalid_argument("predict_decryption: length mismatch");
  Bignum acc = 0;
  for (std::size_t i = 0; i < coefficients.size(); ++i)
    if (memberships[i]) acc += coefficients[i] * weights[i];
  return acc % n;
}

Bignum predict_decryption(const Bignum& n,
                          const std::vector<Bignum>& coefficients,
                          const std::vector<network::DrawRecord>& draws) {
  if (n < 2) throw std::invalid_argument("modulus must be at least 2");
  Bignum acc = 0;
  for (const auto& d : draws) {
    if (d.index < 1 || d.index > static_cast<int>(coefficients.size()))
      throw std::invalid_argument("predict_decryption: draw index " +
                                  std::to_string(d.index) + " out of range");
    acc += coefficients[d.index - 1] * d.omega;
  }
  return acc % n;
}

SolutionSet enumerate_solutions(const Bignum& n,
                                const std::vector<Bignum>& coefficients,
                                const Bignum& target, bool store_tuples) {
  return enumerate_over(n, coefficients, reduced_coefficients(n, coefficients),
                        target, store_tuples);
}

SolutionSet enumerate_solutions_distributed(
    const Bignum& n, const std::vector<Bignum>& coefficients,
    const Bignum& target, int num_fleets, bool store_tuples) {
  if (num_fleets < 1)
    throw std::invalid_argument("at least one fleet is required");
  const std::vector<int> base = reduced_coefficients(n, coefficients);
  std::vector<int> expanded;
  expanded.reserve(base.size() * static_cast<std::size_t>(num_fleets));
  for (int c : base)
    for (int j = 0; j < num_fleets; ++j) expanded.push_back(c);
  return enumerate_over(n, coefficients, expanded, target, store_tuples);
}

BezoutSplit bezout_split(const Bignum& p, const Bignum& q) {
  if (p < 2 || q < 2 || !is_probable_prime(p) || !is_probable_prime(q))
    throw std::invalid_argument("bezout_split: both arguments must be prime");
  if (p == q)
    throw std::invalid_argument("bezout_split: primes must be distinct");
  const BezoutResult r = bezout(q, p);  // alpha*q + beta*p = 1
  const Bignum n = p * q;
  BezoutSplit out;
  out.alpha_bar = r.x;
  out.beta_bar = r.y;
  out.alpha = ((r.x % n) + n) % n;
  out.beta = ((r.y % n) + n) % n;
  return out;
}

AttackOutcome bezout_attack(const paillier::KeyPair& keys,
                            const matchmaking::World& world, int w1, int w2,
                            const matchmaking::InterestSet& responder,
                            Rng& rng) {
  if (w1 < 1 || w1 > world.size() || w2 < 1 || w2 > world.size())
    throw std::invalid_argument("bezout_attack: target index out of range");
  if (w1 == w2)
    throw std::invalid_argument("bezout_attack: targets must differ");
  if (!(responder.world() == world))
    throw std::invalid_argument("bezout_attack: responder world mismatch");

  const Bignum& p = keys.prv.p;
  const Bignum& q = keys.prv.q;
  std::vector<Bignum> coefficients(static_cast<std::size_t>(world.size()), 0);
  coefficients[static_cast<std::size_t>(w1 - 1)] = q;
  coefficients[static_cast<std::size_t>(w2 - 1)] = p;
  const MaliciousQuery crafted = craft_query(keys.pub, coefficients, rng);
  const matchmaking::Response resp =
      matchmaking::return_response(keys.pub, crafted.query, responder, rng);

  AttackOutcome out;
  out.decrypted = paillier::decrypt(keys.prv, keys.pub, resp.y);
  // D(y) = (q*v1*z1 + p*v2*z2) mod pq keeps both residues intact.
  out.first = (out.decrypted % p != 0);
  out.second = (out.decrypted % q != 0);
  out.failure_bound =
      Bignum(p + q - 2).get_d() / Bignum(keys.pub.n - 1).get_d();
  return out;
}

}  // namespace fleetmatch::adversary
