#pragma once

// The Picard-O driver: sign adaptation, preconditioned L-BFGS direction,
// backtracking line search, exponential update on the rotation group,
// stopping and per-iteration tracing.

#include <functional>
#include <string>
#include <vector>

#include "picardo/lbfgs.hpp"
#include "picardo/model.hpp"
#include "picardo/score.hpp"
#include "picardo/types.hpp"

namespace picardo {

struct SolverConfig {
  int max_iter = 500;
  double tol = 1e-8;  // stop when ||G - G^T||_F < tol
  int memory_size = 7;
  double kappa_min = 1e-2;
  int ls_max_halvings = 10;
  ScoreKind score = ScoreKind::Tanh;
  int reproject_every = 50;
  bool rho_literal = false;     // store rho = <e,delta> instead of its reciprocal
  double eig_floor_rel = 1e-10; // whitening eigenvalue floor, relative to largest
  bool track_whiteness = false; // record max ||(1/T)YY^T - I|| across iterates

  void validate() const;
};

struct IterationRecord {
  int iter;
  double grad_norm;  // ||G - G^T||_F at this state
  double loss;       // surrogate loss at this state
  double elapsed_s;  // monotonic clock, sampled after this iteration's Y update
  int ls_count;      // line-search halvings spent leaving this state
  int sign_flips;    // sources whose sign changed when entering this state
};
using IterationTrace = std::vector<IterationRecord>;

struct SolveResult {
  Matrix w;       // unmixing matrix: y = w * (x - means)
  Matrix y;       // unmixed signals, white within 1e-8
  Vector means;   // per-channel means removed by whitening
  Vector signs;   // final sign adaptation
  IterationTrace trace;
  bool converged = false;
  bool whitening_floored = false;
  double max_whiteness_dev = 0;  // filled when track_whiteness is set
  std::string diagnostic;        // non-empty on stagnation / degeneracy
};

struct LineSearchResult {
  double alpha = 0;
  bool accepted = false;
  int halvings = 0;
};

/// Backtracking search over alpha in {1, 1/2, ..., 2^-max_halvings}: returns
/// the first (largest) alpha whose trial strictly decreases the loss.
/// loss_delta_at(alpha) must return loss(trial) - loss(current); a non-finite
/// delta counts as a rejection, not an error.
LineSearchResult line_search(const std::function<double(double)>& loss_delta_at,
                             int max_halvings);

/// ||G - G^T||_F, the stopping metric shared by both algorithms.
double gradient_norm(const RelativeGradient& g);

/// Whiten, then minimize the surrogate loss over rotations of the whitened
/// signals. Per iteration: recompute signs (flushing the memory on any flip),
/// gradient, two-loop direction, backtracking line search, exponential
/// update. Stops at grad_norm < tol or after max_iter updates; a line search
/// that fails even after a flush and a plain preconditioned-gradient retry
/// returns the best iterate with converged = false.
SolveResult solve(const Matrix& x, const SolverConfig& config = {});

/// Same, starting from already-whitened signals (y0 = w0 (x - means)).
/// The trace clock starts here, so whitening cost is excluded.
SolveResult solve_whitened(const Matrix& y0, const Matrix& w0, const Vector& means,
                           const SolverConfig& config = {},
                           bool whitening_floored = false);

}  // namespace picardo
