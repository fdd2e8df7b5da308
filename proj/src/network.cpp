#include "fleetmatch/network.hpp"

#include <algorithm>
#include <chrono>
#include <deque>
#include <functional>
#include <string>
#include <utility>

namespace fleetmatch::network {

CommGraph::CommGraph(int num_vertices) {
  if (num_vertices < 0)
    throw std::invalid_argument("vertex count must be non-negative");
  for (int v = 1; v <= num_vertices; ++v) {
    vertices_.insert(v);
    adjacency_[v];
  }
}

CommGraph::CommGraph(std::set<int> vertices) : vertices_(std::move(vertices)) {
  for (int v : vertices_) {
    if (v < 1) throw std::invalid_argument("vertex ids must be positive");
    adjacency_[v];
  }
}

void CommGraph::add_edge(int u, int v) {
  if (!has_vertex(u) || !has_vertex(v))
    throw std::invalid_argument("edge endpoint is not a vertex");
  if (u == v) throw std::invalid_argument("self-loops are not allowed");
  if (has_edge(u, v)) return;
  auto& au = adjacency_[u];
  au.insert(std::lower_bound(au.begin(), au.end(), v), v);
  auto& av = adjacency_[v];
  av.insert(std::lower_bound(av.begin(), av.end(), u), u);
  ++num_edges_;
}

bool CommGraph::has_edge(int u, int v) const {
  auto it = adjacency_.find(u);
  if (it == adjacency_.end()) return false;
  return std::binary_search(it->second.begin(), it->second.end(), v);
}

const std::vector<int>& CommGraph::neighbors(int v) const {
  auto it = adjacency_.find(v);
  if (it == adjacency_.end())
    throw std::invalid_argument("unknown vertex " + std::to_string(v));
  return it->second;
}

bool is_connected(const CommGraph& g) {
  if (g.vertices().empty()) return true;
  std::set<int> seen{*g.vertices().begin()};
  std::deque<int> queue{*g.vertices().begin()};
  while (!queue.empty()) {
    int cur = queue.front();
    queue.pop_front();
    for (int nb : g.neighbors(cur))
      if (seen.insert(nb).second) queue.push_back(nb);
  }
  return seen.size() == g.vertices().size();
}

int find_cut_vertex(const CommGraph& g) {
  if (!is_connected(g))
    throw std::invalid_argument("find_cut_vertex: graph is not connected");
  if (g.vertices().empty()) return 0;
  std::map<int, int> disc, low;
  std::set<int> cuts;
  int timer = 0;
  // Vertex ids are positive, so 0 marks the DFS root.
  std::function<void(int, int)> dfs = [&](int v, int parent) {
    disc[v] = low[v] = ++timer;
    int children = 0;
    for (int to : g.neighbors(v)) {
      if (to == parent) continue;
      if (disc.count(to)) {
        low[v] = std::min(low[v], disc[to]);
        continue;
      }
      ++children;
      dfs(to, v);
      low[v] = std::min(low[v], low[to]);
      if (parent != 0 && low[to] >= disc[v]) cuts.insert(v);
    }
    if (parent == 0 && children > 1) cuts.insert(v);
  };
  dfs(*g.vertices().begin(), 0);
  return cuts.empty() ? 0 : *cuts.begin();
}

bool is_two_connected(const CommGraph& g) {
  if (g.vertices().size() < 3)
    throw std::invalid_argument(
        "is_two_connected: need at least three vertices");
  return is_connected(g) && find_cut_vertex(g) == 0;
}

void validate_loop_walk(const CommGraph& g, const LoopWalk& walk) {
  const auto& s = walk.sequence;
  if (s.size() < 3)
    throw std::invalid_argument("loop walk needs at least two hops");
  if (s.front() != s.back())
    throw std::invalid_argument("walk must start and end at the enquirer");
  for (int v : s)
    if (!g.has_vertex(v))
      throw std::invalid_argument("walk visits unknown vertex " +
                                  std::to_string(v));
  for (std::size_t i = 1; i + 1 < s.size(); ++i)
    if (s[i] == s.front())
      throw std::invalid_argument("walk interior visits the enquirer");
  for (std::size_t i = 0; i + 1 < s.size(); ++i)
    if (!g.has_edge(s[i], s[i + 1]))
      throw std::invalid_argument("walk steps over a non-edge " +
                                  std::to_string(s[i]) + "-" +
                                  std::to_string(s[i + 1]));
}

namespace {

// Two internally-vertex-disjoint enquirer-target paths (Menger, via unit
// vertex capacities: split v into in=2r, out=2r+1 and cap the in->out arc),
// closed into a loop. Outbound leg = the path with the smaller first
// neighbor, so the result is deterministic.
std::vector<int> menger_loop(const CommGraph& g, int l, int t) {
  std::vector<int> ids(g.vertices().begin(), g.vertices().end());
  std::map<int, int> rank;
  for (std::size_t i = 0; i < ids.size(); ++i) rank[ids[i]] = static_cast<int>(i);
  auto in = [&](int v) { return 2 * rank.at(v); };
  auto out = [&](int v) { return 2 * rank.at(v) + 1; };

  std::map<int, std::map<int, int>> cap;
  for (int v : ids)
    if (v != l && v != t) cap[in(v)][out(v)] = 1;
  for (int u : ids)
    for (int v : g.neighbors(u)) cap[out(u)][in(v)] = 1;

  const int source = out(l), sink = in(t);
  int flow = 0;
  while (flow < 2) {
    std::map<int, int> parent;
    parent[source] = source;
    std::deque<int> queue{source};
    while (!queue.empty() && !parent.count(sink)) {
      int cur = queue.front();
      queue.pop_front();
      for (const auto& [nxt, c] : cap[cur]) {
        if (c <= 0 || parent.count(nxt)) continue;
        parent[nxt] = cur;
        queue.push_back(nxt);
      }
    }
    if (!parent.count(sink)) break;
    for (int v = sink; v != source; v = parent[v]) {
      --cap[parent[v]][v];
      ++cap[v][parent[v]];
    }
    ++flow;
  }
  if (flow < 2)
    throw std::runtime_error("menger_loop: fewer than two disjoint paths");

  // Net flow on forward arcs = 1 - remaining capacity; follow and consume.
  std::map<int, std::map<int, int>> used;
  for (int v : ids)
    if (v != l && v != t && cap[in(v)][out(v)] == 0) used[in(v)][out(v)] = 1;
  for (int u : ids)
    for (int v : g.neighbors(u))
      if (cap[out(u)][in(v)] == 0) used[out(u)][in(v)] = 1;

  std::vector<std::vector<int>> paths;
  for (int first : g.neighbors(l)) {
    if (used[out(l)].count(in(first)) == 0 || used[out(l)][in(first)] == 0)
      continue;
    used[out(l)][in(first)] = 0;
    std::vector<int> path{l, first};
    int cur = first;
    while (cur != t) {
      used[in(cur)][out(cur)] = 0;
      int next = -1;
      for (auto& [node, u] : used[out(cur)]) {
        if (u == 0) continue;
        u = 0;
        next = node;
        break;
      }
      if (next < 0)
        throw std::runtime_error("menger_loop: flow decomposition broke");
      // Arc targets are in-nodes 2r; map back to the vertex id.
      path.push_back(ids[static_cast<std::size_t>(next / 2)]);
      cur = path.back();
    }
    paths.push_back(std::move(path));
  }
  if (paths.size() != 2)
    throw std::runtime_error("menger_loop: expected exactly two paths");

  std::vector<int> loop = paths[0];
  loop.insert(loop.end(), paths[1].rbegin() + 1, paths[1].rend());
  return loop;
}

bool interior_contains(const std::vector<int>& walk, int v) {
  return std::find(walk.begin() + 1, walk.end() - 1, v) != walk.end() - 1;
}

}  // namespace

LoopWalk find_query_loop(const CommGraph& g, int enquirer,
                         const std::set<int>& targets) {
  if (!g.has_vertex(enquirer))
    throw std::invalid_argument("enquirer is not a vertex");
  if (targets.empty())
    throw std::invalid_argument("at least one target fleet is required");
  for (int t : targets) {
    if (!g.has_vertex(t))
      throw std::invalid_argument("target is not a vertex: " +
                                  std::to_string(t));
    if (t == enquirer)
      throw std::invalid_argument("the enquirer cannot be a target");
  }
  if (!is_two_connected(g))
    throw std::invalid_argument("graph is not 2-connected");

  std::vector<int> walk = menger_loop(g, enquirer, *targets.begin());
  for (int t : targets) {
    if (interior_contains(walk, t)) continue;
    // Shortest out-and-back detour to t, found by a multi-source BFS over
    // g minus the enquirer, sources seeded in walk order.
    std::vector<int> sources;
    std::set<int> seeded;
    for (std::size_t i = 1; i + 1 < walk.size(); ++i)
      if (seeded.insert(walk[i]).second) sources.push_back(walk[i]);
    std::map<int, int> parent;
    std::deque<int> queue;
    for (int s : sources) {
      parent[s] = 0;
      queue.push_back(s);
    }
    while (!queue.empty() && !parent.count(t)) {
      int cur = queue.front();
      queue.pop_front();
      for (int nb : g.neighbors(cur)) {
        if (nb == enquirer || parent.count(nb)) continue;
        parent[nb] = cur;
        queue.push_back(nb);
      }
    }
    if (!parent.count(t))
      throw std::runtime_error("find_query_loop: target unreachable");
    std::vector<int> path;
    for (int v = t; v != 0; v = parent[v]) path.push_back(v);
    std::reverse(path.begin(), path.end());  // source .. t
    std::vector<int> detour(path.begin() + 1, path.end());
    detour.insert(detour.end(), path.rbegin() + 1, path.rend());
    auto at = std::find(walk.begin() + 1, walk.end() - 1, path.front());
    walk.insert(at + 1, detour.begin(), detour.end());
  }

  LoopWalk result{std::move(walk)};
  validate_loop_walk(g, result);
  return result;
}

namespace {

void check_walk_shape(const LoopWalk& walk) {
  const auto& s = walk.sequence;
  if (s.size() < 3)
    throw std::invalid_argument("loop walk needs at least two hops");
  if (s.front() != s.back())
    throw std::invalid_argument("walk must start and end at the enquirer");
  for (std::size_t i = 1; i + 1 < s.size(); ++i)
    if (s[i] == s.front())
      throw std::invalid_argument("walk interior visits the enquirer");
}

// Distinct interior fleets in walk order (first visit wins).
std::vector<int> interior_fleets(const LoopWalk& walk) {
  std::vector<int> fleets;
  std::set<int> seen;
  for (std::size_t i = 1; i + 1 < walk.sequence.size(); ++i)
    if (seen.insert(walk.sequence[i]).second)
      fleets.push_back(walk.sequence[i]);
  return fleets;
}

// One fleet's terms. A draw landing the per-index coefficient sum exactly
// on N is resampled; partial sums stay below N while later contributors
// remain, so this can only trigger on an index's final contribution.
void apply_fleet_terms(const paillier::PublicKey& pk,
                       const matchmaking::QueryVector& x, int fleet,
                       const std::set<int>& members, const Bignum& omega_max,
                       std::map<int, Bignum>& coeff_sums, Rng& rng,
                       paillier::Ciphertext& y,
                       std::vector<DrawRecord>* draw_log) {
  for (int i : members) {
    Bignum omega = rng.between(1, omega_max);
    if (coeff_sums[i] + omega == pk.n) {
      if (omega_max == 1)
        throw CoefficientWrapError(
            "coefficient sum for index " + std::to_string(i) +
            " can only land on a multiple of the modulus");
      const Bignum banned = omega;
      while (omega == banned) omega = rng.between(1, omega_max);
    }
    coeff_sums[i] += omega;
    if (draw_log) draw_log->push_back({fleet, i, omega});
    y = paillier::add_cipher(pk, y,
                             paillier::scalar_mul(pk, x.entries[i - 1], omega));
  }
}

Bignum omega_bound(const paillier::PublicKey& pk, const LoopWalk& walk) {
  Bignum omega_max =
      pk.n / Bignum(static_cast<unsigned long>(walk.interior_positions()));
  if (omega_max < 1)
    throw std::invalid_argument("walk has more interior positions than N");
  return omega_max;
}

}  // namespace

matchmaking::Response dist_response(
    const paillier::PublicKey& pk, const matchmaking::QueryVector& x,
    const LoopWalk& walk,
    const std::map<int, matchmaking::InterestSet>& interests_by_fleet,
    Rng& rng, std::vector<DrawRecord>* draw_log) {
  check_walk_shape(walk);
  if (x.pk.n != pk.n) throw std::invalid_argument("query is under another key");
  const Bignum omega_max = omega_bound(pk, walk);
  const std::vector<int> fleets = interior_fleets(walk);
  for (int f : fleets) {
    auto it = interests_by_fleet.find(f);
    if (it == interests_by_fleet.end())
      throw std::invalid_argument("no interest set for fleet " +
                                  std::to_string(f));
    if (static_cast<int>(x.entries.size()) != it->second.world().size())
      throw std::invalid_argument("query length does not match world size");
  }
  paillier::Ciphertext y{1};
  std::map<int, Bignum> coeff_sums;
  for (int f : fleets)
    apply_fleet_terms(pk, x, f, interests_by_fleet.at(f).members(), omega_max,
                      coeff_sums, rng, y, draw_log);
  return matchmaking::Response{y};
}

SessionResult run_session(
    const CommGraph& g, int enquirer, int w, const matchmaking::World& world,
    const std::map<int, matchmaking::InterestSet>& interests_by_fleet,
    int key_bits, Rng& rng) {
  using clock = std::chrono::steady_clock;
  auto ns_between = [](clock::time_point a, clock::time_point b) {
    return std::chrono::duration_cast<std::chrono::nanoseconds>(b - a).count();
  };

  std::set<int> targets;
  for (int v : g.vertices())
    if (v != enquirer) targets.insert(v);
  LoopWalk walk = find_query_loop(g, enquirer, targets);
  for (int f : interior_fleets(walk)) {
    auto it = interests_by_fleet.find(f);
    if (it == interests_by_fleet.end())
      throw std::invalid_argument("no interest set for fleet " +
                                  std::to_string(f));
    if (!(it->second.world() == world))
      throw std::invalid_argument("fleet " + std::to_string(f) +
                                  " lives in a different world");
  }

  const paillier::KeyPair keys = paillier::generate_keys(key_bits, rng);
  const Bignum omega_max = omega_bound(keys.pub, walk);

  struct FleetNode {
    int id = 0;
    std::deque<std::vector<std::uint8_t>> inbox;
    bool contributed = false;
  };
  std::map<int, FleetNode> nodes;
  for (int v : g.vertices()) nodes[v].id = v;

  SessionResult result;
  result.walk = walk;
  const auto& seq = walk.sequence;
  const std::size_t y_width = matchmaking::response_message_bytes(keys.pub);

  // The enquirer opens the loop: query plus an identity accumulator.
  auto t0 = clock::now();
  const auto query = matchmaking::submit_query(keys.pub, world, w, rng);
  std::vector<std::uint8_t> payload = matchmaking::encode_query(query);
  {
    auto y0 = matchmaking::encode_response(
        matchmaking::Response{paillier::Ciphertext{1}}, keys.pub);
    payload.insert(payload.end(), y0.begin(), y0.end());
  }
  auto t1 = clock::now();
  nodes[seq[1]].inbox.push_back(payload);
  result.transcript.push_back(
      {seq[0], seq[1], payload.size(), ns_between(t0, t1)});

  std::map<int, Bignum> coeff_sums;
  for (std::size_t i = 1; i + 1 < seq.size(); ++i) {
    FleetNode& node = nodes.at(seq[i]);
    std::vector<std::uint8_t> msg = node.inbox.front();
    node.inbox.pop_front();

    t0 = clock::now();
    if (msg.size() < y_width + 8)
      throw std::runtime_error("session payload truncated");
    const std::vector<std::uint8_t> query_part(msg.begin(),
                                               msg.end() - y_width);
    const std::vector<std::uint8_t> y_part(msg.end() - y_width, msg.end());
    const auto x = matchmaking::decode_query(query_part, keys.pub);
    paillier::Ciphertext y = matchmaking::decode_response(y_part, keys.pub).y;
    if (!node.contributed) {
      node.contributed = true;
      apply_fleet_terms(keys.pub, x, node.id,
                        interests_by_fleet.at(node.id).members(), omega_max,
                        coeff_sums, rng, y, nullptr);
    }
    std::vector<std::uint8_t> out;
    if (i + 2 == seq.size()) {
      // Last hop: only the finished accumulator returns to the enquirer.
      out = matchmaking::encode_response(matchmaking::Response{y}, keys.pub);
    } else {
      out = matchmaking::encode_query(x);
      auto y_bytes =
          matchmaking::encode_response(matchmaking::Response{y}, keys.pub);
      out.insert(out.end(), y_bytes.begin(), y_bytes.end());
    }
    t1 = clock::now();
    nodes.at(seq[i + 1]).inbox.push_back(out);
    result.transcript.push_back(
        {seq[i], seq[i + 1], out.size(), ns_between(t0, t1)});
  }

  FleetNode& home = nodes.at(enquirer);
  const auto answer =
      matchmaking::decode_response(home.inbox.front(), keys.pub);
  home.inbox.pop_front();
  result.answer = matchmaking::interpret(keys.prv, keys.pub, answer);
  return result;
}

}  // namespace fleetmatch::network
