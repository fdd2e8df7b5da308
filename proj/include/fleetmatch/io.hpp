#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "fleetmatch/matchmaking.hpp"
#include "fleetmatch/network.hpp"
#include "fleetmatch/paillier.hpp"

namespace fleetmatch::io {

/// Key file: {"n","p","q","lambda","mu": lowercase hex, "key_bits": int}.
/// The public-only variant keeps just n and key_bits. Unless `overwrite`,
/// writers refuse paths that already exist. All loaders throw
/// std::runtime_error with the path in the message.
void save_key_file(const std::string& path, const paillier::KeyPair& keys,
                   bool overwrite = false);
void save_public_key_file(const std::string& path,
                          const paillier::PublicKey& pk,
                          bool overwrite = false);
paillier::KeyPair load_key_file(const std::string& path);
paillier::PublicKey load_public_key_file(const std::string& path);

/// Scenario file: {"roads","slots","fleets":[{"id","interests"}]}.
struct FleetSpec {
  int id = 0;
  std::set<int> interests;
};

struct Scenario {
  int roads = 0;
  int slots = 0;
  std::vector<FleetSpec> fleets;

  matchmaking::World world() const;
  std::map<int, matchmaking::InterestSet> interest_map() const;
};

Scenario load_scenario(const std::string& path);
void save_scenario(const std::string& path, const Scenario& scenario,
                   bool overwrite = false);

/// Graph file: {"vertices":[int,...],"edges":[[int,int],...]}.
network::CommGraph load_graph(const std::string& path);
void save_graph(const std::string& path, const network::CommGraph& g,
                bool overwrite = false);

/// One JSON object per hop: {"from","to","bytes","elapsed_ns"}.
void write_transcript(const std::string& path,
                      const std::vector<network::TranscriptEntry>& transcript,
                      bool overwrite = false);
std::string transcript_to_jsonl(
    const std::vector<network::TranscriptEntry>& transcript);

}  // namespace fleetmatch::io
