// Command-line front end: `run` solves one dataset from a file, `bench`
// reproduces the synthetic comparison, `gen` writes synthetic datasets.
// Exit codes: 0 success, 2 usage error, 3 data error, 4 numerical failure.

#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "picardo/bench.hpp"
#include "picardo/core_linalg.hpp"
#include "picardo/fastica.hpp"
#include "picardo/io.hpp"
#include "picardo/metrics.hpp"
#include "picardo/picardo.hpp"
#include "picardo/svg.hpp"

namespace {

using namespace picardo;

struct RunArgs {
  std::string input, algo = "picardo", score = "tanh";
  std::string output, trace;
  double tol = 1e-8, kappa_min = 0.01;
  int max_iter = 500, memory = 7;
  std::uint64_t seed = 0;
  bool rho_literal = false;
};

struct BenchArgs {
  std::string preset = "synthetic-small";
  int n = -1, t = -1, repeats = -1;
  std::string out, svg;
  std::uint64_t seed = 0;
};

struct GenArgs {
  int n = 0, t = 0, uniform = 0, laplace = 0, gaussian = 0;
  std::uint64_t seed = 0;
  std::string out, mixing_out;
};

SolverConfig config_from(const RunArgs& args) {
  SolverConfig config;
  config.tol = args.tol;
  config.max_iter = args.max_iter;
  config.memory_size = args.memory;
  config.kappa_min = args.kappa_min;
  config.score = score_kind_from_string(args.score);
  config.rho_literal = args.rho_literal;
  return config;
}

int do_run(const RunArgs& args) {
  const Algorithm algo = algorithm_from_string(args.algo);
  const SolverConfig config = config_from(args);
  config.validate();
  const Matrix x = read_matrix_auto(args.input);

  const SolveResult result = algo == Algorithm::PicardO ? solve(x, config)
                                                        : fastica_solve(x, config);

  std::cout << args.algo << ": " << (result.converged ? "converged" : "stopped")
            << " after " << result.trace.size() << " iterations, grad_norm "
            << format_double(result.trace.back().grad_norm) << "\n";
  if (!result.diagnostic.empty()) std::cout << "note: " << result.diagnostic << "\n";
  if (result.whitening_floored)
    std::cout << "note: near-rank-deficient input, whitening floored "
                 "eigenvalues\n";

  if (!args.output.empty()) write_matrix_csv(result.y, args.output);
  if (!args.trace.empty()) {
    RunRecord rec;
    rec.algorithm = args.algo;
    rec.seed = args.seed;
    rec.converged = result.converged;
    rec.trace = result.trace;
    rec.iterations = int(result.trace.size());
    rec.seconds = result.trace.back().elapsed_s;
    rec.final_grad_norm = result.trace.back().grad_norm;
    write_trace_csv({rec}, args.trace);
  }
  return 0;
}

int do_bench(const BenchArgs& args) {
  DatasetSpec base;
  SolverConfig config;
  int repeats = 10;
  if (args.preset == "synthetic-small") {
    base = DatasetSpec{};  // N=10, T=1e4, 5 uniform + 5 laplace
  } else if (args.preset == "synthetic-paper") {
    base.n_channels = 50;
    base.n_uniform = base.n_laplace = 25;
    repeats = 100;
  } else if (args.preset == "ar1-misspec") {
    base.ar1_coeff = 0.9;
  } else {
    throw UsageError("unknown preset '" + args.preset + "'");
  }
  if (args.n > 0) {
    base.n_channels = args.n;
    base.n_uniform = args.n / 2;
    base.n_laplace = args.n - args.n / 2;
  }
  if (args.t > 0) base.n_samples = args.t;
  if (args.repeats > 0) repeats = args.repeats;

  std::vector<DatasetSpec> specs;
  for (int r = 0; r < repeats; ++r) {
    DatasetSpec spec = base;
    spec.seed = args.seed + std::uint64_t(r);
    specs.push_back(spec);
  }

  const std::vector<RunRecord> records =
      run_benchmark(specs, config, {Algorithm::PicardO, Algorithm::FastICA});

  for (const char* algo : {"picardo", "fastica"}) {
    std::vector<double> iters, amari;
    for (const RunRecord& rec : records)
      if (rec.algorithm == algo) {
        iters.push_back(double(rec.iterations));
        amari.push_back(rec.final_amari);
      }
    if (!iters.empty())
      std::cout << algo << ": median iterations " << percentile(iters, 0.5)
                << ", median final amari " << format_double(percentile(amari, 0.5))
                << "\n";
  }

  if (!args.out.empty()) write_records_csv(records, args.out);
  if (!args.svg.empty()) render_svg(records, args.svg);
  return 0;
}

int do_gen(const GenArgs& args) {
  DatasetSpec spec;
  spec.n_channels = args.n;
  spec.n_samples = args.t;
  spec.n_uniform = args.uniform;
  spec.n_laplace = args.laplace;
  spec.n_gaussian = args.gaussian;
  spec.seed = args.seed;
  const SyntheticData data = gen_synthetic(spec);
  write_matrix_bin(data.x, args.out);
  if (!args.mixing_out.empty()) write_matrix_csv(data.mixing, args.mixing_out);
  std::cout << "wrote " << spec.n_channels << "x" << spec.n_samples << " dataset to "
            << args.out;
  if (data.mixing_redraws > 0)
    std::cout << " (mixing redrawn " << data.mixing_redraws << "x for conditioning)";
  std::cout << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  if (const char* threads = std::getenv("PICARDO_THREADS")) {
    const int n = std::atoi(threads);
    if (n > 0) Eigen::setNbThreads(n);
  }

  CLI::App app{"Blind source separation: preconditioned L-BFGS ICA under the "
               "whiteness constraint, with a symmetric FastICA baseline"};
  app.require_subcommand(1);

  RunArgs run_args;
  CLI::App* run = app.add_subcommand("run", "unmix one dataset from a file");
  run->add_option("--input", run_args.input, "input matrix (.csv or .bin)")
      ->required();
  run->add_option("--algo", run_args.algo, "picardo|fastica");
  run->add_option("--score", run_args.score, "tanh|cube|exp_quad");
  run->add_option("--tol", run_args.tol, "gradient-norm stopping tolerance");
  run->add_option("--max-iter", run_args.max_iter, "iteration budget");
  run->add_option("--memory", run_args.memory, "L-BFGS memory size");
  run->add_option("--kappa-min", run_args.kappa_min, "preconditioner floor");
  run->add_option("--seed", run_args.seed, "seed recorded in the trace");
  run->add_option("--output", run_args.output, "write unmixed signals (csv)");
  run->add_option("--trace", run_args.trace, "write per-iteration trace (csv)");
  run->add_flag("--rho-literal", run_args.rho_literal,
                "store rho = <e,delta> instead of its reciprocal");

  BenchArgs bench_args;
  CLI::App* bench = app.add_subcommand("bench", "run the benchmark comparison");
  bench->add_option("--preset", bench_args.preset,
                    "synthetic-small|synthetic-paper|ar1-misspec");
  bench->add_option("--n", bench_args.n, "override channel count");
  bench->add_option("--t", bench_args.t, "override sample count");
  bench->add_option("--repeats", bench_args.repeats, "override repeat count");
  bench->add_option("--out", bench_args.out, "write run records (csv)");
  bench->add_option("--svg", bench_args.svg, "write convergence curves (svg)");
  bench->add_option("--seed", bench_args.seed, "base seed");

  GenArgs gen_args;
  CLI::App* gen = app.add_subcommand("gen", "generate a synthetic dataset");
  gen->add_option("--n", gen_args.n, "channel count")->required();
  gen->add_option("--t", gen_args.t, "sample count")->required();
  gen->add_option("--uniform", gen_args.uniform, "number of uniform sources");
  gen->add_option("--laplace", gen_args.laplace, "number of laplace sources");
  gen->add_option("--gaussian", gen_args.gaussian, "number of gaussian sources");
  gen->add_option("--seed", gen_args.seed, "dataset seed");
  gen->add_option("--out", gen_args.out, "output dataset (PICO binary)")
      ->required();
  gen->add_option("--mixing-out", gen_args.mixing_out,
                  "write the ground-truth mixing matrix (csv)");

  try {
    app.parse(argc, argv);
    if (run->parsed()) return do_run(run_args);
    if (bench->parsed()) return do_bench(bench_args);
    if (gen->parsed()) return do_gen(gen_args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const picardo::UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const picardo::DataError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return 3;
  } catch (const picardo::DimensionError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return 3;
  } catch (const picardo::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 4;
  }
  return 0;
}
