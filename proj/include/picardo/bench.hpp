#pragma once

// Benchmark harness: runs Picard-O and FastICA on the same whitened data,
// collects per-run records and writes the trace / record CSV files.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "picardo/picardo.hpp"
#include "picardo/synth.hpp"
#include "picardo/types.hpp"

namespace picardo {

enum class Algorithm { PicardO, FastICA };

const char* to_string(Algorithm a);
Algorithm algorithm_from_string(std::string_view name);

struct RunRecord {
  std::string algorithm;
  std::uint64_t seed = 0;
  bool converged = false;
  int iterations = 0;       // trace length
  double seconds = 0;       // last trace timestamp
  double final_grad_norm = 0;
  double final_amari = 0;   // amari_index(w * a_true)
  std::uint64_t whitened_checksum = 0;  // FNV-1a of the whitened input
  IterationTrace trace;
};

/// FNV-1a over the raw row-major bytes.
std::uint64_t matrix_checksum(const Matrix& m);

/// For each spec x algorithm: generate, whiten once, solve, record. Both
/// algorithms of a seed consume the identical whitened matrix (checksum
/// logged in each record). Individual numerical failures are recorded as
/// non-converged runs and never abort the batch. Records are ordered by
/// (algorithm, seed).
std::vector<RunRecord> run_benchmark(const std::vector<DatasetSpec>& specs,
                                     const SolverConfig& config,
                                     const std::vector<Algorithm>& algorithms);

/// Long-format per-iteration table, columns exactly:
/// algorithm,seed,iter,grad_norm,loss,elapsed_s,ls_count,sign_flips
void write_trace_csv(const std::vector<RunRecord>& records, std::ostream& out);
void write_trace_csv(const std::vector<RunRecord>& records, const std::string& path);

/// One summary line per run.
void write_records_csv(const std::vector<RunRecord>& records, std::ostream& out);
void write_records_csv(const std::vector<RunRecord>& records,
                       const std::string& path);

/// First trace index whose grad_norm drops below the threshold; trace length
/// if it never does (censored).
int iterations_to_tolerance(const RunRecord& record, double threshold);

}  // namespace picardo
