#include "picardo/fastica.hpp"

#include <chrono>
#include <utility>

#include "picardo/core_linalg.hpp"

namespace picardo {

Vector fastica_signs(const MomentSet& moments) { return -moments.signs; }

CMatrix c_from_stats(const ScoreStats& stats, const Vector& signs_c) {
  CMatrix cm;
  cm.c = signs_c.asDiagonal() * stats.scaled_cross;
  cm.c.diagonal() -= signs_c.cwiseProduct(stats.psi_prime_mean);
  cm.c_plus = sym_part(cm.c);
  cm.c_minus = skew_part(cm.c);
  return cm;
}

CMatrix c_matrix(const Matrix& y, const Score& score, const Vector& signs_c) {
  return c_from_stats(compute_score_stats(y, score), signs_c);
}

std::pair<Matrix, Matrix> fastica_step(const Matrix& y, const Score& score) {
  const ScoreStats stats = compute_score_stats(y, score);
  const Vector signs_c = fastica_signs(moments_from_stats(stats));
  const CMatrix cm = c_from_stats(stats, signs_c);
  Matrix c_w = polar_factor(cm.c);
  Matrix y_next = c_w * y;
  return {std::move(c_w), std::move(y_next)};
}

double fixed_point_residual(const Matrix& y, const Score& score) {
  const ScoreStats stats = compute_score_stats(y, score);
  const Vector signs_c = fastica_signs(moments_from_stats(stats));
  const CMatrix cm = c_from_stats(stats, signs_c);
  const Matrix c_w = polar_factor(cm.c);
  return (c_w - Matrix::Identity(y.rows(), y.rows())).norm();
}

SolveResult fastica_solve_whitened(const Matrix& y0, const Matrix& w0,
                                   const Vector& means,
                                   const SolverConfig& config,
                                   bool whitening_floored) {
  config.validate();
  const Index n = y0.rows();
  const double t_samples = double(y0.cols());
  const Score score(config.score);

  SolveResult res;
  res.means = means;
  res.whitening_floored = whitening_floored;

  Matrix rotation = Matrix::Identity(n, n);
  Matrix y = y0;
  Vector signs_prev;
  int steps_taken = 0;

  const auto t0 = std::chrono::steady_clock::now();
  const auto elapsed = [&t0] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
        .count();
  };

  for (int k = 0;; ++k) {
    const ScoreStats stats = compute_score_stats(y, score);
    const MomentSet moments = moments_from_stats(stats);
    const Vector signs_c = fastica_signs(moments);

    int flips = 0;
    if (k > 0)
      flips = int((moments.signs.array() != signs_prev.array()).count());

    // Shared trace metric: C_minus = -G_minus(stability signs) entrywise, so
    // the norm recorded here equals the Picard-O one exactly.
    const RelativeGradient g = gradient_from_stats(stats, signs_c);
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

    const CMatrix cm = c_from_stats(stats, signs_c);
    Matrix c_w;
    try {
      c_w = polar_factor(cm.c);
    } catch (const NumericalError& err) {
      res.trace.push_back({k, gn, loss, elapsed(), 0, flips});
      res.signs = moments.signs;
      res.diagnostic = err.what();
      break;
    }

    rotation = c_w * rotation;
    y = c_w * y;
    ++steps_taken;
    if (steps_taken % config.reproject_every == 0) {
      rotation = reproject_orthogonal(rotation);
      y = rotation * y0;
    }

    res.trace.push_back({k, gn, loss, elapsed(), 0, flips});
    signs_prev = moments.signs;
  }

  res.w = rotation * w0;
  res.y = rotation * y0;
  return res;
}

SolveResult fastica_solve(const Matrix& x, const SolverConfig& config) {
  config.validate();
  const WhitenResult w = whiten(x, config.eig_floor_rel);
  return fastica_solve_whitened(w.y, w.w0, w.means, config, w.floored);
}

}  // namespace picardo
