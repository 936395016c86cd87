#pragma once

// Hand-rolled SVG convergence plot: two panels with grad_norm on a log axis
// against iterations and against wall time, median solid line plus a 10-90%
// percentile band per algorithm.

#include <iosfwd>
#include <string>
#include <vector>

#include "picardo/bench.hpp"

namespace picardo {

/// Linear-interpolated percentile of an unsorted sample, q in [0, 1].
double percentile(std::vector<double> values, double q);

struct CurveBand {
  std::string algorithm;
  std::vector<double> x;       // iteration index or seconds
  std::vector<double> median;  // grad_norm percentiles across runs
  std::vector<double> lo;      // 10%
  std::vector<double> hi;      // 90%
};

/// Per-iteration-index aggregation over all runs of one algorithm.
CurveBand aggregate_by_iteration(const std::vector<RunRecord>& records,
                                 const std::string& algorithm);

/// Aggregation on a common time grid; each run contributes its most recent
/// grad_norm at every grid time (piecewise-constant in time).
CurveBand aggregate_by_time(const std::vector<RunRecord>& records,
                            const std::string& algorithm, int grid_points = 120);

void render_svg(const std::vector<RunRecord>& records, std::ostream& out);
void render_svg(const std::vector<RunRecord>& records, const std::string& path);

}  // namespace picardo
