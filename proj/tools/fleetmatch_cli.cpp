#include <CLI11.hpp>
#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "fleetmatch/adversary.hpp"
#include "fleetmatch/bench.hpp"
#include "fleetmatch/bignum.hpp"
#include "fleetmatch/io.hpp"
#include "fleetmatch/matchmaking.hpp"
#include "fleetmatch/network.hpp"
#include "fleetmatch/paillier.hpp"
#include "fleetmatch/rng.hpp"

using namespace fleetmatch;
using ordered_json = nlohmann::ordered_json;

namespace {

Rng make_rng(bool seeded, std::uint64_t seed) {
  return seeded ? Rng(seed) : Rng::from_entropy();
}

/// Data goes to --out when given, stdout otherwise. Existing files are kept
/// unless --force.
void emit(const std::string& out_path, bool force, const std::string& body) {
  if (out_path.empty()) {
    std::cout << body;
    return;
  }
  if (!force && std::filesystem::exists(out_path))
    throw std::runtime_error(out_path +
                             ": already exists (use --force to overwrite)");
  std::ofstream out(out_path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error(out_path + ": cannot open for writing");
  out << body;
  out.flush();
  if (!out) throw std::runtime_error(out_path + ": write failed");
}

paillier::KeyPair obtain_keys(const std::string& keys_path, int bits,
                              Rng& rng) {
  if (!keys_path.empty()) return io::load_key_file(keys_path);
  return paillier::generate_keys(bits, rng);
}

struct KeygenArgs {
  int bits = 128;
  std::string out;
  std::string public_out;
  bool force = false;
  bool seeded = false;
  std::uint64_t seed = 0;
};

void cmd_keygen(const KeygenArgs& a) {
  Rng rng = make_rng(a.seeded, a.seed);
  const paillier::KeyPair keys = paillier::generate_keys(a.bits, rng);
  io::save_key_file(a.out, keys, a.force);
  std::cout << "wrote " << a.out << " (modulus: " << bit_length(keys.pub.n)
            << " bits)\n";
  if (!a.public_out.empty()) {
    io::save_public_key_file(a.public_out, keys.pub, a.force);
    std::cout << "wrote " << a.public_out << "\n";
  }
}

struct DemoArgs {
  int roads = 10;
  int slots = 24;
  std::vector<int> interests;
  int bits = 128;
  std::string keys_path;
  std::string out;
  bool force = false;
  bool seeded = false;
  std::uint64_t seed = 0;
};

void cmd_demo(const DemoArgs& a) {
  const matchmaking::World world(a.roads, a.slots);
  // Interest validation happens before any crypto work.
  const matchmaking::InterestSet interests(
      world, std::set<int>(a.interests.begin(), a.interests.end()));
  Rng rng = make_rng(a.seeded, a.seed);
  const paillier::KeyPair keys = obtain_keys(a.keys_path, a.bits, rng);

  std::ostringstream csv;
  csv << "# fleetmatch demo v1\n";
  csv << "w,answered\n";
  for (int w = 1; w <= world.size(); ++w) {
    const auto query = matchmaking::submit_query(keys.pub, world, w, rng);
    const auto response =
        matchmaking::return_response(keys.pub, query, interests, rng);
    const bool answered =
        matchmaking::interpret(keys.prv, keys.pub, response);
    csv << w << "," << (answered ? "true" : "false") << "\n";
  }
  emit(a.out, a.force, csv.str());
}

struct BenchArgs {
  std::vector<int> bits{128, 256, 512, 1024};
  int trials = 5;
  int world_size = 32;
  bool parallel = false;
  std::string out;
  bool force = false;
  bool seeded = false;
  std::uint64_t seed = 0;
};

void cmd_bench(const BenchArgs& a) {
  bench::BenchOptions opts;
  opts.bit_sizes = a.bits;
  opts.trials = a.trials;
  opts.world_size = a.world_size;
  opts.parallel = a.parallel;
  opts.seed = a.seeded ? a.seed : Rng::from_entropy().bits(64).get_ui();
  const auto records = bench::run_protocol_bench(opts);

  std::ostringstream csv;
  csv << "# fleetmatch bench v1\n";
  csv << "key_bits,submit_time_ns,respond_time_ns,interpret_time_ns,"
         "query_bytes,response_bytes,trials\n";
  std::vector<double> xs, total_ns, query_b, response_b;
  for (const auto& r : records) {
    csv << r.key_bits << "," << r.submit_time_ns << "," << r.respond_time_ns
        << "," << r.interpret_time_ns << "," << r.query_bytes << ","
        << r.response_bytes << "," << r.trials << "\n";
    xs.push_back(static_cast<double>(r.key_bits));
    total_ns.push_back(static_cast<double>(
        r.submit_time_ns + r.respond_time_ns + r.interpret_time_ns));
    query_b.push_back(static_cast<double>(r.query_bytes));
    response_b.push_back(static_cast<double>(r.response_bytes));
  }
  if (std::set<double>(xs.begin(), xs.end()).size() >= 2) {
    auto fit_line = [&](const char* label, const std::vector<double>& ys) {
      char buf[128];
      std::snprintf(buf, sizeof(buf), "# fit: %s ~ key_bits^%.3f\n", label,
                    bench::fitted_exponent(xs, ys));
      csv << buf;
    };
    fit_line("total_time_ns", total_ns);
    fit_line("query_bytes", query_b);
    fit_line("response_bytes", response_b);
  }
  emit(a.out, a.force, csv.str());
}

struct DistDemoArgs {
  std::string graph_path;
  std::string scenario_path;
  int enquirer = 0;
  int w = 0;
  int bits = 128;
  std::string out;
  bool force = false;
  bool seeded = false;
  std::uint64_t seed = 0;
};

void cmd_dist_demo(const DistDemoArgs& a) {
  const network::CommGraph g = io::load_graph(a.graph_path);
  const io::Scenario scenario = io::load_scenario(a.scenario_path);

  if (g.vertices().size() < 3)
    throw std::runtime_error("graph needs at least 3 fleets");
  if (!network::is_connected(g))
    throw std::runtime_error("graph is not connected");
  if (const int cut = network::find_cut_vertex(g); cut != 0)
    throw std::runtime_error("graph is not 2-connected: removing vertex " +
                             std::to_string(cut) + " disconnects it");
  if (!g.has_vertex(a.enquirer))
    throw std::runtime_error("enquirer " + std::to_string(a.enquirer) +
                             " is not a graph vertex");
  const auto interests = scenario.interest_map();
  for (int v : g.vertices())
    if (v != a.enquirer && interests.count(v) == 0)
      throw std::runtime_error("fleet " + std::to_string(v) +
                               " is missing from the scenario");

  Rng rng = make_rng(a.seeded, a.seed);
  const auto session = network::run_session(g, a.enquirer, a.w,
                                            scenario.world(), interests,
                                            a.bits, rng);
  std::cout << (session.answer ? "true" : "false") << "\n";
  if (a.out.empty())
    std::cout << io::transcript_to_jsonl(session.transcript);
  else
    io::write_transcript(a.out, session.transcript, a.force);
}

struct AttackArgs {
  std::string mode;
  std::string scenario_path;
  int w1 = 0;
  int w2 = 0;
  int bits = 64;
  std::string keys_path;
  std::vector<long> coeffs;
  long target = 0;
  long modulus = 0;
  std::string out;
  bool force = false;
  bool seeded = false;
  std::uint64_t seed = 0;
};

void attack_bezout(const AttackArgs& a) {
  if (a.scenario_path.empty())
    throw std::runtime_error("bezout mode needs --scenario");
  if (a.w1 == 0 || a.w2 == 0)
    throw std::runtime_error("bezout mode needs --w1 and --w2");
  const io::Scenario scenario = io::load_scenario(a.scenario_path);
  if (scenario.fleets.empty())
    throw std::runtime_error(a.scenario_path + ": no fleets to attack");
  // The responder is the scenario's first fleet.
  const matchmaking::InterestSet responder(
      scenario.world(), scenario.fleets.front().interests);

  Rng rng = make_rng(a.seeded, a.seed);
  const paillier::KeyPair keys = obtain_keys(a.keys_path, a.bits, rng);
  const auto outcome = adversary::bezout_attack(keys, scenario.world(), a.w1,
                                                a.w2, responder, rng);
  ordered_json report;
  report["mode"] = "bezout";
  report["targets"] = {a.w1, a.w2};
  report["decoded"] = {outcome.first, outcome.second};
  report["ground_truth"] = {responder.contains(a.w1),
                           responder.contains(a.w2)};
  report["key_bits"] = keys.pub.key_bits;
  report["failure_bound"] = outcome.failure_bound;
  emit(a.out, a.force, report.dump(2) + "\n");
}

void attack_freevar(const AttackArgs& a) {
  if (a.coeffs.empty())
    throw std::runtime_error("freevar mode needs --coeffs");
  Bignum n;
  if (!a.keys_path.empty())
    n = io::load_public_key_file(a.keys_path).n;
  else if (a.modulus != 0)
    n = a.modulus;
  else
    throw std::runtime_error("freevar mode needs --modulus or --keys");

  std::vector<Bignum> coefficients(a.coeffs.begin(), a.coeffs.end());
  const auto solutions =
      adversary::enumerate_solutions(n, coefficients, a.target);

  // Lower bound on |solution set|: (N-1)^(t-1) when some coefficient is a
  // unit mod N, 2(N-1)^(t-2) when none is (for t >= 2).
  const std::size_t t = coefficients.size();
  bool has_unit = false;
  for (const auto& c : coefficients)
    if (c != 0 && gcd(c, n) == 1) has_unit = true;
  Bignum bound = 0;
  if (has_unit) {
    Bignum b = 1;
    for (std::size_t i = 1; i < t; ++i) b *= n - 1;
    bound = b;
  } else if (t >= 2) {
    Bignum b = 2;
    for (std::size_t i = 2; i < t; ++i) b *= n - 1;
    bound = b;
  }

  ordered_json report;
  report["mode"] = "freevar";
  report["modulus"] = n.get_si();
  report["coefficients"] = a.coeffs;
  report["target"] = a.target;
  report["count"] = solutions.count;
  report["bound"] = bound.get_si();
  report["bound_holds"] =
      Bignum(static_cast<unsigned long>(solutions.count)) >= bound;
  emit(a.out, a.force, report.dump(2) + "\n");
}

void cmd_attack(const AttackArgs& a) {
  if (a.mode == "bezout")
    attack_bezout(a);
  else
    attack_freevar(a);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Privacy-preserving fleet match-making over Paillier "
               "ciphertexts"};
  app.require_subcommand(1);

  KeygenArgs keygen;
  auto* keygen_cmd =
      app.add_subcommand("keygen", "Generate a Paillier key file");
  keygen_cmd->add_option("--bits", keygen.bits, "Prime length in bits")
      ->capture_default_str();
  keygen_cmd->add_option("--out", keygen.out, "Key file path")->required();
  keygen_cmd->add_option("--public-out", keygen.public_out,
                         "Also write a public-only key file");
  keygen_cmd->add_flag("--force", keygen.force, "Overwrite existing files");
  auto* keygen_seed = keygen_cmd->add_option("--seed", keygen.seed,
                                             "Deterministic randomness seed");
  keygen_cmd->callback([&] {
    keygen.seeded = keygen_seed->count() > 0;
    cmd_keygen(keygen);
  });

  DemoArgs demo;
  auto* demo_cmd = app.add_subcommand(
      "demo", "Sweep every index w through the two-party protocol (CSV)");
  demo_cmd->add_option("--roads", demo.roads, "Number of roads")
      ->capture_default_str();
  demo_cmd->add_option("--slots", demo.slots, "Time windows per road")
      ->capture_default_str();
  demo_cmd
      ->add_option("--interests", demo.interests,
                   "Responder interest indices (comma separated)")
      ->delimiter(',');
  demo_cmd->add_option("--bits", demo.bits, "Prime length in bits")
      ->capture_default_str();
  demo_cmd->add_option("--keys", demo.keys_path,
                       "Use an existing key file instead of --bits");
  demo_cmd->add_option("--out", demo.out, "CSV path (default: stdout)");
  demo_cmd->add_flag("--force", demo.force, "Overwrite existing files");
  auto* demo_seed =
      demo_cmd->add_option("--seed", demo.seed, "Deterministic seed");
  demo_cmd->callback([&] {
    demo.seeded = demo_seed->count() > 0;
    cmd_demo(demo);
  });

  BenchArgs bench_args;
  auto* bench_cmd = app.add_subcommand(
      "bench", "Protocol timing/size benchmark across key lengths (CSV)");
  bench_cmd
      ->add_option("--bits", bench_args.bits,
                   "Key lengths to measure (comma separated)")
      ->delimiter(',')
      ->capture_default_str();
  bench_cmd->add_option("--trials", bench_args.trials, "Timed trials (>= 3)")
      ->capture_default_str();
  bench_cmd
      ->add_option("--world-size", bench_args.world_size, "Indices |W|")
      ->capture_default_str();
  bench_cmd->add_flag("--parallel", bench_args.parallel,
                      "Run trials on separate threads");
  bench_cmd->add_option("--out", bench_args.out, "CSV path (default: stdout)");
  bench_cmd->add_flag("--force", bench_args.force, "Overwrite existing files");
  auto* bench_seed =
      bench_cmd->add_option("--seed", bench_args.seed, "Deterministic seed");
  bench_cmd->callback([&] {
    bench_args.seeded = bench_seed->count() > 0;
    cmd_bench(bench_args);
  });

  DistDemoArgs dist;
  auto* dist_cmd = app.add_subcommand(
      "dist-demo", "Run one distributed session over a fleet graph");
  dist_cmd->add_option("--graph", dist.graph_path, "Graph JSON file")
      ->required();
  dist_cmd->add_option("--scenario", dist.scenario_path, "Scenario JSON file")
      ->required();
  dist_cmd->add_option("--enquirer", dist.enquirer, "Querying fleet id")
      ->required();
  dist_cmd->add_option("--w", dist.w, "Queried index")->required();
  dist_cmd->add_option("--bits", dist.bits, "Prime length in bits")
      ->capture_default_str();
  dist_cmd->add_option("--out", dist.out,
                       "Transcript JSONL path (default: stdout)");
  dist_cmd->add_flag("--force", dist.force, "Overwrite existing files");
  auto* dist_seed =
      dist_cmd->add_option("--seed", dist.seed, "Deterministic seed");
  dist_cmd->callback([&] {
    dist.seeded = dist_seed->count() > 0;
    cmd_dist_demo(dist);
  });

  AttackArgs attack;
  auto* attack_cmd = app.add_subcommand(
      "attack", "Demonstrate responder-privacy attacks (JSON report)");
  attack_cmd->add_option("--mode", attack.mode, "bezout or freevar")
      ->required()
      ->check(CLI::IsMember({"bezout", "freevar"}));
  attack_cmd->add_option("--scenario", attack.scenario_path,
                         "Scenario whose first fleet responds (bezout)");
  attack_cmd->add_option("--w1", attack.w1, "First target index (bezout)");
  attack_cmd->add_option("--w2", attack.w2, "Second target index (bezout)");
  attack_cmd->add_option("--bits", attack.bits, "Prime length in bits")
      ->capture_default_str();
  attack_cmd->add_option("--keys", attack.keys_path,
                         "Use an existing key file instead of --bits");
  attack_cmd
      ->add_option("--coeffs", attack.coeffs,
                   "Malicious coefficients (comma separated, freevar)")
      ->delimiter(',');
  attack_cmd->add_option("--target", attack.target,
                         "Observed decryption (freevar)");
  attack_cmd->add_option("--modulus", attack.modulus,
                         "Toy modulus N (freevar)");
  attack_cmd->add_option("--out", attack.out,
                         "Report JSON path (default: stdout)");
  attack_cmd->add_flag("--force", attack.force, "Overwrite existing files");
  auto* attack_seed =
      attack_cmd->add_option("--seed", attack.seed, "Deterministic seed");
  attack_cmd->callback([&] {
    attack.seeded = attack_seed->count() > 0;
    cmd_attack(attack);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
