#pragma once

#include <cstdint>
#include <vector>

namespace fleetmatch::bench {

/// Median timings and exact wire sizes for one key length.
struct BenchRecord {
  int key_bits = 0;
  std::int64_t submit_time_ns = 0;
  std::int64_t respond_time_ns = 0;
  std::int64_t interpret_time_ns = 0;
  std::size_t query_bytes = 0;
  std::size_t response_bytes = 0;
  int trials = 0;
};

struct BenchOptions {
  std::vector<int> bit_sizes{128, 256, 512, 1024};
  int trials = 5;
  /// Number of world indices |W|; a quarter of them form the responder's
  /// interest set.
  int world_size = 32;
  std::uint64_t seed = 0;
  /// Run trials on separate threads, one seeded randomness source each.
  bool parallel = false;
};

/// Full two-party rounds per key length: one discarded warm-up, then
/// `trials` timed runs on a monotonic clock; medians are reported.
std::vector<BenchRecord> run_protocol_bench(const BenchOptions& options);

/// Least-squares slope of log(y) against log(x): the growth exponent.
double fitted_exponent(const std::vector<double>& x,
                       const std::vector<double>& y);

}  // namespace fleetmatch::bench
