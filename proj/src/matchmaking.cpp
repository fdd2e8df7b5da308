#include "fleetmatch/matchmaking.hpp"

#include <stdexcept>
#include <string>

namespace fleetmatch::matchmaking {

World::World(int roads, int slots) : num_roads(roads), num_slots(slots) {
  if (roads <= 0 || slots <= 0)
    throw std::invalid_argument("world dimensions must be positive");
}

int World::index_of(int road, int slot) const {
  if (road < 1 || road > num_roads)
    throw std::invalid_argument("road out of range: " + std::to_string(road));
  if (slot < 1 || slot > num_slots)
    throw std::invalid_argument("slot out of range: " + std::to_string(slot));
  return (road - 1) * num_slots + slot;
}

std::pair<int, int> World::road_slot(int w) const {
  if (w < 1 || w > size())
    throw std::invalid_argument("index out of range: " + std::to_string(w));
  return {(w - 1) / num_slots + 1, (w - 1) % num_slots + 1};
}

InterestSet::InterestSet(World world, std::set<int> members)
    : world_(world), members_(std::move(members)) {
  for (int w : members_) {
    if (w < 1 || w > world_.size())
      throw std::invalid_argument("interest index out of range: " +
                                  std::to_string(w));
  }
}

QueryVector submit_query(const paillier::PublicKey& pk, const World& world,
                         int w, Rng& rng) {
  if (w < 1 || w > world.size())
    throw std::invalid_argument("queried index out of range: " +
                                std::to_string(w));
  QueryVector q{pk, {}};
  q.entries.reserve(world.size());
  for (int i = 1; i <= world.size(); ++i)
    q.entries.push_back(paillier::encrypt(pk, i == w ? 1 : 0, rng));
  return q;
}

Response return_response(const paillier::PublicKey& pk, const QueryVector& x,
                         const InterestSet& interests, Rng& rng,
                         std::vector<std::pair<int, Bignum>>* v_log) {
  if (x.pk.n != pk.n) throw std::invalid_argument("query is under another key");
  if (static_cast<int>(x.entries.size()) != interests.world().size())
    throw std::invalid_argument("query length does not match world size");
  paillier::Ciphertext y{1};
  for (int w : interests.members()) {
    Bignum v = rng.between(1, pk.n - 1);
    if (v_log) v_log->emplace_back(w, v);
    y = paillier::add_cipher(pk, y, paillier::scalar_mul(pk, x.entries[w - 1], v));
  }
  return Response{y};
}

bool interpret(const paillier::PrivateKey& sk, const paillier::PublicKey& pk,
               const Response& y) {
  return paillier::decrypt(sk, pk, y.y) != 0;
}

std::size_t ciphertext_field_bytes(const paillier::PublicKey& pk) {
  return (bit_length(pk.n_squared) + 7) / 8;
}

std::size_t query_message_bytes(const QueryVector& q) {
  return 8 + q.entries.size() * ciphertext_field_bytes(q.pk);
}

std::size_t response_message_bytes(const paillier::PublicKey& pk) {
  return ciphertext_field_bytes(pk);
}

std::vector<std::uint8_t> encode_query(const QueryVector& q) {
  const std::size_t width = ciphertext_field_bytes(q.pk);
  std::vector<std::uint8_t> out;
  out.reserve(query_message_bytes(q));
  std::uint64_t count = q.entries.size();
  for (int shift = 56; shift >= 0; shift -= 8)
    out.push_back(static_cast<std::uint8_t>((count >> shift) & 0xff));
  for (const auto& c : q.entries) append_fixed_bytes(out, c.value, width);
  return out;
}

QueryVector decode_query(const std::vector<std::uint8_t>& bytes,
                         const paillier::PublicKey& pk) {
  if (bytes.size() < 8) throw std::invalid_argument("query message truncated");
  std::uint64_t count = 0;
  for (int i = 0; i < 8; ++i) count = (count << 8) | bytes[i];
  const std::size_t width = ciphertext_field_bytes(pk);
  if (bytes.size() != 8 + count * width)
    throw std::invalid_argument("query message has wrong length");
  QueryVector q{pk, {}};
  q.entries.reserve(count);
  for (std::uint64_t i = 0; i < count; ++i) {
    Bignum v = read_be_bytes(bytes.data() + 8 + i * width, width);
    if (v >= pk.n_squared)
      throw std::invalid_argument("query field exceeds modulus");
    q.entries.push_back(paillier::Ciphertext{v});
  }
  return q;
}

std::vector<std::uint8_t> encode_response(const Response& r,
                                          const paillier::PublicKey& pk) {
  std::vector<std::uint8_t> out;
  append_fixed_bytes(out, r.y.value, ciphertext_field_bytes(pk));
  return out;
}

Response decode_response(const std::vector<std::uint8_t>& bytes,
                         const paillier::PublicKey& pk) {
  if (bytes.size() != ciphertext_field_bytes(pk))
    throw std::invalid_argument("response message has wrong length");
  Bignum v = read_be_bytes(bytes.data(), bytes.size());
  if (v >= pk.n_squared)
    throw std::invalid_argument("response field exceeds modulus");
  return Response{paillier::Ciphertext{v}};
}

}  // namespace fleetmatch::matchmaking
