#include "fleetmatch/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <set>
#include <stdexcept>
#include <thread>

#include "fleetmatch/matchmaking.hpp"
#include "fleetmatch/paillier.hpp"
#include "fleetmatch/rng.hpp"

namespace fleetmatch::bench {

namespace {

using clock_type = std::chrono::steady_clock;

struct TrialSample {
  std::int64_t submit_ns = 0;
  std::int64_t respond_ns = 0;
  std::int64_t interpret_ns = 0;
};

std::int64_t elapsed_ns(clock_type::time_point a, clock_type::time_point b) {
  return std::chrono::duration_cast<std::chrono::nanoseconds>(b - a).count();
}

std::int64_t median_of(std::vector<std::int64_t> values) {
  std::sort(values.begin(), values.end());
  const std::size_t mid = values.size() / 2;
  if (values.size() % 2 == 1) return values[mid];
  return (values[mid - 1] + values[mid]) / 2;
}

}  // namespace

std::vector<BenchRecord> run_protocol_bench(const BenchOptions& options) {
  if (options.bit_sizes.empty())
    throw std::invalid_argument("bench: no key lengths given");
  for (int bits : options.bit_sizes)
    if (bits < 32)
      throw std::invalid_argument("bench: key lengths below 32 bits");
  if (options.trials < 3)
    throw std::invalid_argument("bench: at least 3 trials required");
  if (options.world_size < 1)
    throw std::invalid_argument("bench: world size must be positive");

  const matchmaking::World world(1, options.world_size);
  std::set<int> members;
  for (int w = 1; w <= options.world_size; w += 4) members.insert(w);
  const matchmaking::InterestSet interests(world, members);

  std::vector<BenchRecord> records;
  for (int bits : options.bit_sizes) {
    Rng key_rng(options.seed ^
                (0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(bits)));
    const paillier::KeyPair keys = paillier::generate_keys(bits, key_rng);

    auto run_trial = [&](int trial) {
      Rng rng(options.seed + 1000003ULL * static_cast<std::uint64_t>(bits) +
              static_cast<std::uint64_t>(trial));
      const int w = 1 + (trial % options.world_size);
      TrialSample sample;
      auto t0 = clock_type::now();
      auto query = matchmaking::submit_query(keys.pub, world, w, rng);
      auto t1 = clock_type::now();
      auto response =
          matchmaking::return_response(keys.pub, query, interests, rng);
      auto t2 = clock_type::now();
      volatile bool answer =
          matchmaking::interpret(keys.prv, keys.pub, response);
      (void)answer;
      auto t3 = clock_type::now();
      sample.submit_ns = elapsed_ns(t0, t1);
      sample.respond_ns = elapsed_ns(t1, t2);
      sample.interpret_ns = elapsed_ns(t2, t3);
      return sample;
    };

    (void)run_trial(0);  // warm-up, discarded

    std::vector<TrialSample> samples(
        static_cast<std::size_t>(options.trials));
    if (options.parallel) {
      std::vector<std::thread> workers;
      workers.reserve(samples.size());
      for (int t = 0; t < options.trials; ++t)
        workers.emplace_back(
            [&samples, &run_trial, t] { samples[static_cast<std::size_t>(t)] = run_trial(t + 1); });
      for (auto& worker : workers) worker.join();
    } else {
      for (int t = 0; t < options.trials; ++t)
        samples[static_cast<std::size_t>(t)] = run_trial(t + 1);
    }

    std::vector<std::int64_t> submit, respond, interpret;
    for (const auto& s : samples) {
      submit.push_back(s.submit_ns);
      respond.push_back(s.respond_ns);
      interpret.push_back(s.interpret_ns);
    }

    BenchRecord rec;
    rec.key_bits = bits;
    rec.submit_time_ns = median_of(submit);
    rec.respond_time_ns = median_of(respond);
    rec.interpret_time_ns = median_of(interpret);
    const std::size_t width = matchmaking::ciphertext_field_bytes(keys.pub);
    rec.query_bytes = 8 + static_cast<std::size_t>(options.world_size) * width;
    rec.response_bytes = width;
    rec.trials = options.trials;
    records.push_back(rec);
  }
  return records;
}

double fitted_exponent(const std::vector<double>& x,
                       const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2)
    throw std::invalid_argument("fitted_exponent: need matching series of >= 2 points");
  const std::size_t n = x.size();
  double mx = 0, my = 0;
  std::vector<double> lx(n), ly(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (x[i] <= 0 || y[i] <= 0)
      throw std::invalid_argument("fitted_exponent: values must be positive");
    lx[i] = std::log(x[i]);
    ly[i] = std::log(y[i]);
    mx += lx[i];
    my += ly[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double num = 0, den = 0;
  for (std::size_t i = 0; i < n; ++i) {
    num += (lx[i] - mx) * (ly[i] - my);
    den += (lx[i] - mx) * (lx[i] - mx);
  }
  if (den == 0)
    throw std::invalid_argument("fitted_exponent: all x values identical");
  return num / den;
}

}  // namespace fleetmatch::bench
