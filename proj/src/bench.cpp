#include "picardo/bench.hpp"

#include <algorithm>
#include <fstream>

#include "picardo/core_linalg.hpp"
#include "picardo/fastica.hpp"
#include "picardo/io.hpp"
#include "picardo/metrics.hpp"

namespace picardo {

const char* to_string(Algorithm a) {
  return a == Algorithm::PicardO ? "picardo" : "fastica";
}

Algorithm algorithm_from_string(std::string_view name) {
  if (name == "picardo") return Algorithm::PicardO;
  if (name == "fastica") return Algorithm::FastICA;
  throw UsageError("unknown algorithm '" + std::string(name) +
                   "' (expected picardo or fastica)");
}

std::uint64_t matrix_checksum(const Matrix& m) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j) {
      const double v = m(i, j);
      const unsigned char* bytes = reinterpret_cast<const unsigned char*>(&v);
      for (std::size_t b = 0; b < sizeof(double); ++b) {
        h ^= bytes[b];
        h *= 0x100000001b3ull;
      }
    }
  return h;
}

std::vector<RunRecord> run_benchmark(const std::vector<DatasetSpec>& specs,
                                     const SolverConfig& config,
                                     const std::vector<Algorithm>& algorithms) {
  std::vector<RunRecord> records;
  for (const DatasetSpec& spec : specs) {
    const SyntheticData data = gen_synthetic(spec);
    const WhitenResult white = whiten(data.x, config.eig_floor_rel);
    const std::uint64_t checksum = matrix_checksum(white.y);

    for (Algorithm algo : algorithms) {
      RunRecord rec;
      rec.algorithm = to_string(algo);
      rec.seed = spec.seed;
      rec.whitened_checksum = checksum;
      try {
        const SolveResult result =
            algo == Algorithm::PicardO
                ? solve_whitened(white.y, white.w0, white.means, config,
                                 white.floored)
                : fastica_solve_whitened(white.y, white.w0, white.means, config,
                                         white.floored);
        rec.converged = result.converged;
        rec.trace = result.trace;
        rec.final_amari = amari_index(result.w * data.mixing);
      } catch (const NumericalError&) {
        rec.converged = false;  // failed run, recorded, never aborts the batch
      }
      if (!rec.trace.empty()) {
        rec.iterations = int(rec.trace.size());
        rec.seconds = rec.trace.back().elapsed_s;
        rec.final_grad_norm = rec.trace.back().grad_norm;
      }
      records.push_back(std::move(rec));
    }
  }
  std::stable_sort(records.begin(), records.end(),
                   [](const RunRecord& a, const RunRecord& b) {
                     if (a.algorithm != b.algorithm) return a.algorithm < b.algorithm;
                     return a.seed < b.seed;
                   });
  return records;
}

void write_trace_csv(const std::vector<RunRecord>& records, std::ostream& out) {
  out << "algorithm,seed,iter,grad_norm,loss,elapsed_s,ls_count,sign_flips\n";
  for (const RunRecord& rec : records)
    for (const IterationRecord& it : rec.trace)
      out << rec.algorithm << ',' << rec.seed << ',' << it.iter << ','
          << format_double(it.grad_norm) << ',' << format_double(it.loss) << ','
          << format_double(it.elapsed_s) << ',' << it.ls_count << ','
          << it.sign_flips << '\n';
}

void write_trace_csv(const std::vector<RunRecord>& records,
                     const std::string& path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot open '" + path + "' for writing");
  write_trace_csv(records, out);
  if (!out) throw DataError("write failed for '" + path + "'");
}

void write_records_csv(const std::vector<RunRecord>& records, std::ostream& out) {
  out << "algorithm,seed,converged,iterations,seconds,final_grad_norm,"
         "final_amari,whitened_checksum\n";
  for (const RunRecord& rec : records)
    out << rec.algorithm << ',' << rec.seed << ',' << (rec.converged ? 1 : 0)
        << ',' << rec.iterations << ',' << format_double(rec.seconds) << ','
        << format_double(rec.final_grad_norm) << ','
        << format_double(rec.final_amari) << ',' << rec.whitened_checksum << '\n';
}

void write_records_csv(const std::vector<RunRecord>& records,
                       const std::string& path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot open '" + path + "' for writing");
  write_records_csv(records, out);
  if (!out) throw DataError("write failed for '" + path + "'");
}

int iterations_to_tolerance(const RunRecord& record, double threshold) {
  for (std::size_t i = 0; i < record.trace.size(); ++i)
    if (record.trace[i].grad_norm < threshold) return int(i);
  return int(record.trace.size());
}

}  // namespace picardo
