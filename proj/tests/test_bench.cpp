#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <stdexcept>

#include "fleetmatch/bench.hpp"

using namespace fleetmatch;

TEST_CASE("fitted_exponent recovers exact power laws") {
  // log-log slope of y = x^2 sampled at doubling x.
  CHECK(bench::fitted_exponent({2, 4, 8, 16}, {4, 16, 64, 256}) ==
        doctest::Approx(2.0));
  CHECK(bench::fitted_exponent({128, 256, 512}, {128, 256, 512}) ==
        doctest::Approx(1.0));
  CHECK(bench::fitted_exponent({1, 10, 100}, {3, 3000, 3000000}) ==
        doctest::Approx(3.0));
  // Constant series has slope zero; scaling y shifts only the intercept.
  CHECK(bench::fitted_exponent({2, 4, 8}, {5, 5, 5}) == doctest::Approx(0.0));
  CHECK(bench::fitted_exponent({2, 4, 8}, {6, 24, 96}) ==
        doctest::Approx(2.0));
}

TEST_CASE("fitted_exponent rejects unusable series") {
  CHECK_THROWS_AS(bench::fitted_exponent({1}, {1}), std::invalid_argument);
  CHECK_THROWS_AS(bench::fitted_exponent({1, 2}, {1, 2, 3}),
                  std::invalid_argument);
  CHECK_THROWS_AS(bench::fitted_exponent({1, 2}, {0, 2}),
                  std::invalid_argument);
  CHECK_THROWS_AS(bench::fitted_exponent({-1, 2}, {1, 2}),
                  std::invalid_argument);
  CHECK_THROWS_AS(bench::fitted_exponent({3, 3}, {1, 2}),
                  std::invalid_argument);
}

TEST_CASE("protocol bench produces one record per key length") {
  bench::BenchOptions opts;
  opts.bit_sizes = {32, 48};
  opts.trials = 3;
  opts.world_size = 8;
  opts.seed = 7;
  auto records = bench::run_protocol_bench(opts);
  REQUIRE(records.size() == 2);
  CHECK(records[0].key_bits == 32);
  CHECK(records[1].key_bits == 48);
  for (const auto& rec : records) {
    CHECK(rec.trials == 3);
    CHECK(rec.submit_time_ns > 0);
    CHECK(rec.respond_time_ns > 0);
    CHECK(rec.interpret_time_ns > 0);
    // Wire sizes are exact: 8-byte header + |W| fields, one field back.
    CHECK(rec.query_bytes == 8 + 8 * rec.response_bytes);
  }
  // 32-bit primes give a 64-bit modulus: 128-bit N^2, 16-byte fields.
  CHECK(records[0].response_bytes == 16);
  CHECK(records[1].response_bytes == 24);
}

TEST_CASE("parallel trials report the same sizes as serial ones") {
  bench::BenchOptions serial;
  serial.bit_sizes = {32};
  serial.trials = 4;
  serial.world_size = 5;
  serial.seed = 11;
  auto parallel = serial;
  parallel.parallel = true;
  auto a = bench::run_protocol_bench(serial);
  auto b = bench::run_protocol_bench(parallel);
  REQUIRE(a.size() == 1);
  REQUIRE(b.size() == 1);
  CHECK(a[0].query_bytes == b[0].query_bytes);
  CHECK(a[0].response_bytes == b[0].response_bytes);
  CHECK(a[0].trials == b[0].trials);
}

TEST_CASE("protocol bench validates its options") {
  bench::BenchOptions opts;
  opts.bit_sizes = {};
  CHECK_THROWS_AS(bench::run_protocol_bench(opts), std::invalid_argument);
  opts.bit_sizes = {16};
  CHECK_THROWS_AS(bench::run_protocol_bench(opts), std::invalid_argument);
  opts.bit_sizes = {32};
  opts.trials = 2;
  CHECK_THROWS_AS(bench::run_protocol_bench(opts), std::invalid_argument);
  opts.trials = 3;
  opts.world_size = 0;
  CHECK_THROWS_AS(bench::run_protocol_bench(opts), std::invalid_argument);
}
