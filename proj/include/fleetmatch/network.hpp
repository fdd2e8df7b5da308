#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <vector>

#include "fleetmatch/matchmaking.hpp"
#include "fleetmatch/paillier.hpp"
#include "fleetmatch/rng.hpp"

namespace fleetmatch::network {

/// Undirected communication graph over positive fleet identifiers.
/// No self-loops; parallel edges collapse.
class CommGraph {
 public:
  /// Vertices 1..num_vertices.
  explicit CommGraph(int num_vertices);
  explicit CommGraph(std::set<int> vertices);

  void add_edge(int u, int v);
  bool has_vertex(int v) const { return adjacency_.count(v) > 0; }
  bool has_edge(int u, int v) const;
  const std::set<int>& vertices() const { return vertices_; }
  /// Ascending; throws for unknown vertices.
  const std::vector<int>& neighbors(int v) const;
  std::size_t num_edges() const { return num_edges_; }

 private:
  std::set<int> vertices_;
  std::map<int, std::vector<int>> adjacency_;
  std::size_t num_edges_ = 0;
};

bool is_connected(const CommGraph& g);

/// Smallest vertex whose removal disconnects the graph, or 0 if none.
/// Requires a connected graph.
int find_cut_vertex(const CommGraph& g);

/// True iff removing any single vertex leaves a connected graph.
/// Requires at least 3 vertices.
bool is_two_connected(const CommGraph& g);

/// Closed walk (v_0, ..., v_k): v_0 = v_k = the enquirer, interior vertices
/// all differ from the enquirer, k >= 2, consecutive pairs are graph edges.
struct LoopWalk {
  std::vector<int> sequence;

  int enquirer() const { return sequence.front(); }
  /// Interior positions, repeats included: |sequence| - 2.
  std::size_t interior_positions() const { return sequence.size() - 2; }
};

/// Throws std::invalid_argument describing the first violated walk
/// invariant; passing silently means the walk is legal in g.
void validate_loop_walk(const CommGraph& g, const LoopWalk& walk);

/// Deterministic loop through every target: two internally-disjoint paths
/// to the first target (always available in a 2-connected graph) merged
/// with shortest out-and-back detours, enquirer-free inside, for the rest.
LoopWalk find_query_loop(const CommGraph& g, int enquirer,
                         const std::set<int>& targets);

/// One weight draw made by an interior fleet for one of its indices.
struct DrawRecord {
  int fleet;
  int index;
  Bignum omega;
};

/// Raised when the accumulated coefficient for some index can only land on
/// a multiple of N (possible solely at toy moduli with omega_max == 1).
class CoefficientWrapError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Multi-fleet response along a walk: each distinct interior fleet j
/// multiplies x_i^{omega_i} into the traveling accumulator for each i in
/// its interest set, omega fresh and uniform in {1..floor(N/(|L|-2))} where
/// |L| counts walk positions. Fleets are visited in walk order (first visit
/// only); indices ascending within a fleet. A draw that would push an
/// index's coefficient sum to exactly N is resampled; if omega_max == 1
/// leaves no alternative, CoefficientWrapError is thrown.
matchmaking::Response dist_response(
    const paillier::PublicKey& pk, const matchmaking::QueryVector& x,
    const LoopWalk& walk,
    const std::map<int, matchmaking::InterestSet>& interests_by_fleet,
    Rng& rng, std::vector<DrawRecord>* draw_log = nullptr);

/// One simulated hop: payload size and the sender's processing time.
struct TranscriptEntry {
  int from = 0;
  int to = 0;
  std::size_t bytes = 0;
  std::int64_t elapsed_ns = 0;
};

struct SessionResult {
  bool answer = false;
  LoopWalk walk;
  std::vector<TranscriptEntry> transcript;
};

/// End-to-end simulated session: the enquirer keys up, queries index w, and
/// routes it along a spanning loop over FIFO message queues; every other
/// fleet contributes per dist_response semantics. The answer is union
/// membership of w across the non-enquirer fleets. Interior hops carry the
/// wire-encoded query plus the accumulator; the final hop carries only the
/// response, and no other message is delivered to the enquirer.
SessionResult run_session(
    const CommGraph& g, int enquirer, int w, const matchmaking::World& world,
    const std::map<int, matchmaking::InterestSet>& interests_by_fleet,
    int key_bits, Rng& rng);

}  // namespace fleetmatch::network
