#include <doctest.h>

#include "picardo/bench.hpp"
#include "picardo/metrics.hpp"

using namespace picardo;

namespace {

DatasetSpec spec_for(std::uint64_t seed) {
  DatasetSpec spec;
  spec.n_channels = 10;
  spec.n_samples = 10000;
  spec.n_uniform = 5;
  spec.n_laplace = 5;
  spec.seed = seed;
  return spec;
}

}  // namespace

TEST_CASE("benchmark runs both algorithms on the identical whitened input") {
  std::vector<DatasetSpec> specs{spec_for(0), spec_for(1), spec_for(2)};
  SolverConfig config;
  const std::vector<RunRecord> records =
      run_benchmark(specs, config, {Algorithm::PicardO, Algorithm::FastICA});
  REQUIRE(records.size() == 6);

  // canonical (algorithm, seed) order
  CHECK(records[0].algorithm == "fastica");
  CHECK(records[3].algorithm == "picardo");
  for (int i = 0; i < 3; ++i) {
    CHECK(records[size_t(i)].seed == std::uint64_t(i));
    // same seed, same whitened matrix for both algorithms
    CHECK(records[size_t(i)].whitened_checksum ==
          records[size_t(i + 3)].whitened_checksum);
  }
  for (const RunRecord& rec : records) {
    CHECK(rec.converged);
    CHECK(rec.final_amari < 1e-2);
    CHECK(rec.iterations == int(rec.trace.size()));
    CHECK(rec.seconds == rec.trace.back().elapsed_s);
  }
}

TEST_CASE("benchmark records are deterministic apart from timestamps") {
  std::vector<DatasetSpec> specs{spec_for(4)};
  SolverConfig config;
  const auto a = run_benchmark(specs, config, {Algorithm::PicardO});
  const auto b = run_benchmark(specs, config, {Algorithm::PicardO});
  REQUIRE(a.size() == 1);
  REQUIRE(a[0].trace.size() == b[0].trace.size());
  CHECK(a[0].final_amari == b[0].final_amari);
  CHECK(a[0].final_grad_norm == b[0].final_grad_norm);
  CHECK(a[0].whitened_checksum == b[0].whitened_checksum);
  for (std::size_t k = 0; k < a[0].trace.size(); ++k) {
    CHECK(a[0].trace[k].grad_norm == b[0].trace[k].grad_norm);
    CHECK(a[0].trace[k].loss == b[0].trace[k].loss);
    CHECK(a[0].trace[k].ls_count == b[0].trace[k].ls_count);
    CHECK(a[0].trace[k].sign_flips == b[0].trace[k].sign_flips);
  }
}

TEST_CASE("empty algorithm set gives an empty record list") {
  std::vector<DatasetSpec> specs{spec_for(5)};
  CHECK(run_benchmark(specs, SolverConfig{}, {}).empty());
}

TEST_CASE("iterations_to_tolerance is censored at the trace length") {
  RunRecord rec;
  rec.trace = {{0, 1e-2, 0, 0, 0, 0}, {1, 1e-5, 0, 0, 0, 0}, {2, 1e-9, 0, 0, 0, 0}};
  CHECK(iterations_to_tolerance(rec, 1e-4) == 1);
  CHECK(iterations_to_tolerance(rec, 1e-8) == 2);
  CHECK(iterations_to_tolerance(rec, 1e-12) == 3);
}
