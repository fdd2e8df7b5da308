#pragma once

#include <cstdint>
#include <set>
#include <utility>
#include <vector>

#include "fleetmatch/paillier.hpp"
#include "fleetmatch/rng.hpp"

namespace fleetmatch::matchmaking {

/// Road/time-window grid. Indices w run 1..size() and map to (road, slot)
/// row-major: w = (road-1)*num_slots + slot.
struct World {
  int num_roads = 0;
  int num_slots = 0;

  World(int roads, int slots);
  int size() const { return num_roads * num_slots; }
  int index_of(int road, int slot) const;
  std::pair<int, int> road_slot(int w) const;

  bool operator==(const World&) const = default;
};

/// The road/time-window indices a fleet operates on; bounds-checked against
/// its world at construction.
class InterestSet {
 public:
  InterestSet(World world, std::set<int> members);

  const World& world() const { return world_; }
  const std::set<int>& members() const { return members_; }
  bool contains(int w) const { return members_.count(w) > 0; }

 private:
  World world_;
  std::set<int> members_;
};

/// Length-|W| vector of ciphertexts; entry i-1 carries index i. Carries its
/// public key so the wire width is self-describing.
struct QueryVector {
  paillier::PublicKey pk;
  std::vector<paillier::Ciphertext> entries;
};

struct Response {
  paillier::Ciphertext y;
};

/// Indicator query for index w: E(1) at w, E(0) elsewhere, each entry under a
/// fresh randomizer.
QueryVector submit_query(const paillier::PublicKey& pk, const World& world,
                         int w, Rng& rng);

/// Homomorphic response y = prod over the responder's interests of
/// x_i^{v_i} mod N^2, v_i uniform in {1..N-1} drawn in ascending index
/// order. An empty interest set returns the literal ciphertext 1.
/// When v_log is given, each (index, v) draw is appended to it.
Response return_response(const paillier::PublicKey& pk, const QueryVector& x,
                         const InterestSet& interests, Rng& rng,
                         std::vector<std::pair<int, Bignum>>* v_log = nullptr);

/// True iff the response decrypts to a nonzero value, i.e. the responder
/// holds the queried index (for honest queries).
bool interpret(const paillier::PrivateKey& sk, const paillier::PublicKey& pk,
               const Response& y);

/// Bytes per ciphertext field on the wire: ceil(ceil(log2 N^2) / 8).
std::size_t ciphertext_field_bytes(const paillier::PublicKey& pk);

/// Exact wire size of a query: 8-byte count plus one field per entry.
std::size_t query_message_bytes(const QueryVector& q);

/// Exact wire size of a response: a single ciphertext field.
std::size_t response_message_bytes(const paillier::PublicKey& pk);

/// Wire codec. Query: 8-byte big-endian count, then fixed-width big-endian
/// ciphertext fields. Response: one field, no header.
std::vector<std::uint8_t> encode_query(const QueryVector& q);
QueryVector decode_query(const std::vector<std::uint8_t>& bytes,
                         const paillier::PublicKey& pk);
std::vector<std::uint8_t> encode_response(const Response& r,
                                          const paillier::PublicKey& pk);
Response decode_response(const std::vector<std::uint8_t>& bytes,
                         const paillier::PublicKey& pk);

}  // namespace fleetmatch::matchmaking
