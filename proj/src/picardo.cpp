#include "picardo/picardo.hpp"

#include <chrono>
#include <cmath>
#include <utility>

#include "picardo/core_linalg.hpp"

namespace picardo {

void SolverConfig::validate() const {
  if (max_iter < 0) throw UsageError("max_iter must be >= 0");
  if (!(tol > 0 && tol < 1)) throw UsageError("tol must lie in (0, 1)");
  if (memory_size < 1) throw UsageError("memory_size must be positive");
  if (!(kappa_min > 0)) throw UsageError("kappa_min must be positive");
  if (ls_max_halvings < 1) throw UsageError("ls_max_halvings must be positive");
  if (reproject_every < 1) throw UsageError("reproject_every must be positive");
  if (!(eig_floor_rel > 0)) throw UsageError("eig_floor_rel must be positive");
}

LineSearchResult line_search(const std::function<double(double)>& loss_delta_at,
                             int max_halvings) {
  double alpha = 1.0;
  for (int m = 0; m <= max_halvings; ++m) {
    const double delta = loss_delta_at(alpha);
    if (delta < 0) return {alpha, true, m};
    alpha /= 2;  // non-finite deltas fall through here as rejections
  }
  return {std::pow(2.0, -max_halvings), false, max_halvings};
}

double gradient_norm(const RelativeGradient& g) {
  return (g.g - g.g.transpose()).norm();
}

SolveResult solve_whitened(const Matrix& y0, const Matrix& w0, const Vector& means,
                           const SolverConfig& config, bool whitening_floored) {
  config.validate();
  const Index n = y0.rows();
  const double t_samples = double(y0.cols());
  const Score score(config.score);

  LbfgsMemory memory(config.memory_size,
                     config.rho_literal ? RhoMode::Literal : RhoMode::Reciprocal);
  SolveResult res;
  res.means = means;
  res.whitening_floored = whitening_floored;

  Matrix rotation = Matrix::Identity(n, n);
  Matrix y = y0;
  Vector signs_prev;
  Matrix grad_minus_prev;
  Matrix step_prev;
  bool have_step = false;
  int steps_taken = 0;

  const auto t0 = std::chrono::steady_clock::now();
  const auto elapsed = [&t0] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
        .count();
  };

  for (int k = 0;; ++k) {
    const ScoreStats stats = compute_score_stats(y, score);
    const MomentSet moments = moments_from_stats(stats);

    int flips = 0;
    if (k > 0)
      flips = int((moments.signs.array() != signs_prev.array()).count());
    if (flips > 0) memory.flush();

    const RelativeGradient g = gradient_from_stats(stats, moments.signs);
    if (k > 0 && flips == 0 && have_step)
      memory.push(step_prev, g.g_minus - grad_minus_prev);

    const double gn = gradient_norm(g);
    const double loss = surrogate_loss(y, score, moments.signs);
    if (config.track_whiteness) {
      const double dev =
          (y * y.transpose() / t_samples - Matrix::Identity(n, n)).norm();
      res.max_whiteness_dev = std::max(res.max_whiteness_dev, dev);
    }

    if (gn < config.tol) {
      res.trace.push_back({k, gn, loss, elapsed(), 0, flips});
      res.signs = moments.signs;
      res.converged = true;
      break;
    }
    if (k >= config.max_iter) {
      res.trace.push_back({k, gn, loss, elapsed(), 0, flips});
      res.signs = moments.signs;
      break;
    }

    const Preconditioner precond{moments.kappa, config.kappa_min};
    Matrix direction = two_loop_direction(g, precond, memory);

    // Trial states are compared through pointwise loss differences, and for
    // steps below ~1e-6 through the directional second-order model, which
    // stays resolvable when the decrease drops under the rounding floor of
    // an evaluated trial state. The last evaluated trial is cached so the
    // accepted step is not recomputed.
    Matrix trial_q, trial_y;
    double trial_alpha = -1;
    const auto delta_at = [&](double alpha) {
      if (alpha * direction.norm() <= 1e-6)
        return surrogate_loss_delta_directional(y, direction, alpha, score,
                                                moments.signs);
      trial_q = expm_skew(Matrix(alpha * direction));
      trial_y = trial_q * y;
      trial_alpha = alpha;
      return surrogate_loss_delta(trial_y, y, score, moments.signs);
    };

    LineSearchResult ls = line_search(delta_at, config.ls_max_halvings);
    int halvings_total = ls.halvings;
    if (!ls.accepted) {
      // Retry once from the pure preconditioned-gradient direction.
      memory.flush();
      direction = two_loop_direction(g, precond, memory);
      trial_alpha = -1;
      ls = line_search(delta_at, config.ls_max_halvings);
      halvings_total += ls.halvings;
      if (!ls.accepted) {
        res.trace.push_back({k, gn, loss, elapsed(), halvings_total, flips});
        res.signs = moments.signs;
        res.diagnostic =
            "stagnation: line search found no decrease, even after a memory "
            "flush and a preconditioned-gradient retry";
        break;
      }
    }
    if (trial_alpha != ls.alpha) {
      trial_q = expm_skew(Matrix(ls.alpha * direction));
      trial_y = trial_q * y;
    }

    rotation = trial_q * rotation;
    y = std::move(trial_y);
    ++steps_taken;
    if (steps_taken % config.reproject_every == 0) {
      rotation = reproject_orthogonal(rotation);
      y = rotation * y0;
    }

    res.trace.push_back({k, gn, loss, elapsed(), halvings_total, flips});
    step_prev = ls.alpha * direction;
    grad_minus_prev = g.g_minus;
    have_step = true;
    signs_prev = moments.signs;
  }

  res.w = rotation * w0;
  res.y = rotation * y0;  // exact restatement of y = w (x - means)
  return res;
}

SolveResult solve(const Matrix& x, const SolverConfig& config) {
  config.validate();
  const WhitenResult w = whiten(x, config.eig_floor_rel);
  return solve_whitened(w.y, w.w0, w.means, config, w.floored);
}

}  // namespace picardo
