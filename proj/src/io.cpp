#include "fleetmatch/io.hpp"

#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <stdexcept>
#include <utility>

namespace fleetmatch::io {

namespace {

using ordered_json = nlohmann::ordered_json;

void refuse_clobber(const std::string& path, bool overwrite) {
  if (!overwrite && std::filesystem::exists(path))
    throw std::runtime_error(path +
                             ": already exists (use --force to overwrite)");
}

void write_text(const std::string& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error(path + ": cannot open for writing");
  out << body;
  out.flush();
  if (!out) throw std::runtime_error(path + ": write failed");
}

ordered_json read_json(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error(path + ": cannot open");
  try {
    return ordered_json::parse(in);
  } catch (const std::exception& e) {
    throw std::runtime_error(path + ": invalid JSON: " + e.what());
  }
}

Bignum hex_field(const ordered_json& j, const char* key,
                 const std::string& path) {
  if (!j.contains(key) || !j.at(key).is_string())
    throw std::runtime_error(path + ": missing or non-string field \"" +
                             key + "\"");
  try {
    return from_hex(j.at(key).get<std::string>());
  } catch (const std::exception& e) {
    throw std::runtime_error(path + ": field \"" + key + "\": " + e.what());
  }
}

int int_field(const ordered_json& j, const char* key,
              const std::string& path) {
  if (!j.contains(key) || !j.at(key).is_number_integer())
    throw std::runtime_error(path + ": missing or non-integer field \"" +
                             key + "\"");
  return j.at(key).get<int>();
}

}  // namespace

void save_key_file(const std::string& path, const paillier::KeyPair& keys,
                   bool overwrite) {
  refuse_clobber(path, overwrite);
  ordered_json j;
  j["n"] = to_hex(keys.pub.n);
  j["p"] = to_hex(keys.prv.p);
  j["q"] = to_hex(keys.prv.q);
  j["lambda"] = to_hex(keys.prv.lambda);
  j["mu"] = to_hex(keys.prv.mu);
  j["key_bits"] = keys.pub.key_bits;
  write_text(path, j.dump(2) + "\n");
}

void save_public_key_file(const std::string& path,
                          const paillier::PublicKey& pk, bool overwrite) {
  refuse_clobber(path, overwrite);
  ordered_json j;
  j["n"] = to_hex(pk.n);
  j["key_bits"] = pk.key_bits;
  write_text(path, j.dump(2) + "\n");
}

paillier::KeyPair load_key_file(const std::string& path) {
  const ordered_json j = read_json(path);
  paillier::KeyPair keys;
  keys.pub.n = hex_field(j, "n", path);
  keys.prv.p = hex_field(j, "p", path);
  keys.prv.q = hex_field(j, "q", path);
  keys.prv.lambda = hex_field(j, "lambda", path);
  keys.prv.mu = hex_field(j, "mu", path);
  keys.pub.key_bits = int_field(j, "key_bits", path);
  keys.pub.n_squared = keys.pub.n * keys.pub.n;
  if (keys.prv.p * keys.prv.q != keys.pub.n)
    throw std::runtime_error(path + ": inconsistent key (p*q != n)");
  if ((keys.prv.lambda * keys.prv.mu) % keys.pub.n != 1)
    throw std::runtime_error(path + ": inconsistent key (mu is not 1/lambda)");
  if (keys.pub.key_bits < 3)
    throw std::runtime_error(path + ": key_bits below 3");
  return keys;
}

paillier::PublicKey load_public_key_file(const std::string& path) {
  const ordered_json j = read_json(path);
  paillier::PublicKey pk;
  pk.n = hex_field(j, "n", path);
  pk.key_bits = int_field(j, "key_bits", path);
  pk.n_squared = pk.n * pk.n;
  if (pk.n < 15) throw std::runtime_error(path + ": modulus below 15");
  if (pk.key_bits < 3) throw std::runtime_error(path + ": key_bits below 3");
  return pk;
}

matchmaking::World Scenario::world() const {
  return matchmaking::World(roads, slots);
}

std::map<int, matchmaking::InterestSet> Scenario::interest_map() const {
  const matchmaking::World w = world();
  std::map<int, matchmaking::InterestSet> out;
  for (const auto& fleet : fleets)
    out.emplace(fleet.id, matchmaking::InterestSet(w, fleet.interests));
  return out;
}

Scenario load_scenario(const std::string& path) {
  const ordered_json j = read_json(path);
  Scenario s;
  s.roads = int_field(j, "roads", path);
  s.slots = int_field(j, "slots", path);
  if (!j.contains("fleets") || !j.at("fleets").is_array())
    throw std::runtime_error(path + ": missing or non-array field \"fleets\"");
  for (const auto& f : j.at("fleets")) {
    FleetSpec spec;
    spec.id = int_field(f, "id", path);
    if (spec.id < 1)
      throw std::runtime_error(path + ": fleet ids must be positive");
    if (!f.contains("interests") || !f.at("interests").is_array())
      throw std::runtime_error(path + ": fleet " + std::to_string(spec.id) +
                               " lacks an \"interests\" array");
    for (const auto& w : f.at("interests")) {
      if (!w.is_number_integer())
        throw std::runtime_error(path + ": non-integer interest for fleet " +
                                 std::to_string(spec.id));
      spec.interests.insert(w.get<int>());
    }
    for (const auto& other : s.fleets)
      if (other.id == spec.id)
        throw std::runtime_error(path + ": duplicate fleet id " +
                                 std::to_string(spec.id));
    s.fleets.push_back(std::move(spec));
  }
  try {
    (void)s.interest_map();  // bounds-check everything against the world
  } catch (const std::exception& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
  return s;
}

void save_scenario(const std::string& path, const Scenario& scenario,
                   bool overwrite) {
  refuse_clobber(path, overwrite);
  ordered_json j;
  j["roads"] = scenario.roads;
  j["slots"] = scenario.slots;
  j["fleets"] = ordered_json::array();
  for (const auto& fleet : scenario.fleets) {
    ordered_json f;
    f["id"] = fleet.id;
    f["interests"] = fleet.interests;
    j["fleets"].push_back(std::move(f));
  }
  write_text(path, j.dump(2) + "\n");
}

network::CommGraph load_graph(const std::string& path) {
  const ordered_json j = read_json(path);
  if (!j.contains("vertices") || !j.at("vertices").is_array())
    throw std::runtime_error(path +
                             ": missing or non-array field \"vertices\"");
  if (!j.contains("edges") || !j.at("edges").is_array())
    throw std::runtime_error(path + ": missing or non-array field \"edges\"");
  try {
    std::set<int> vertices;
    for (const auto& v : j.at("vertices")) {
      if (!v.is_number_integer())
        throw std::invalid_argument("non-integer vertex id");
      vertices.insert(v.get<int>());
    }
    network::CommGraph g(std::move(vertices));
    for (const auto& e : j.at("edges")) {
      if (!e.is_array() || e.size() != 2 || !e.at(0).is_number_integer() ||
          !e.at(1).is_number_integer())
        throw std::invalid_argument("edges must be [int, int] pairs");
      g.add_edge(e.at(0).get<int>(), e.at(1).get<int>());
    }
    return g;
  } catch (const std::invalid_argument& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
}

void save_graph(const std::string& path, const network::CommGraph& g,
                bool overwrite) {
  refuse_clobber(path, overwrite);
  ordered_json j;
  j["vertices"] = g.vertices();
  j["edges"] = ordered_json::array();
  for (int u : g.vertices())
    for (int v : g.neighbors(u))
      if (u < v) j["edges"].push_back(ordered_json::array({u, v}));
  write_text(path, j.dump(2) + "\n");
}

std::string transcript_to_jsonl(
    const std::vector<network::TranscriptEntry>& transcript) {
  std::string out;
  for (const auto& hop : transcript) {
    ordered_json j;
    j["from"] = hop.from;
    j["to"] = hop.to;
    j["bytes"] = hop.bytes;
    j["elapsed_ns"] = hop.elapsed_ns;
    out += j.dump();
    out += "\n";
  }
  return out;
}

void write_transcript(const std::string& path,
                      const std::vector<network::TranscriptEntry>& transcript,
                      bool overwrite) {
  refuse_clobber(path, overwrite);
  write_text(path, transcript_to_jsonl(transcript));
}

}  // namespace fleetmatch::io
