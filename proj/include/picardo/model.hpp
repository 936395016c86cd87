#pragma once

// Likelihood machinery: nonlinear moments, sign switching, relative gradient,
// surrogate loss, approximate-Hessian quadratic form, and the exact relative
// Hessian (diagnostic only; the solve path never forms it).

#include "picardo/core_linalg.hpp"
#include "picardo/score.hpp"
#include "picardo/types.hpp"

namespace picardo {

/// Per-source stability moments under the fixed base nonlinearity.
///   k_i = E^[psi'(y_i)] - E^[psi(y_i) y_i]
/// k_i > 0 marks a source the base score is stable for (super-Gaussian under
/// tanh), k_i < 0 the opposite family. Source i is given the adapted score
/// psi_i = signs[i] * psi, which makes kappa_i = signs[i] * k_i = |k_i| >= 0
/// the model curvature of the pair terms.
struct MomentSet {
  Vector k;
  Vector kappa;  // |k|
  Vector signs;  // sign(k), with sign(0) := +1
};

/// Sufficient statistics shared by the gradient, the moments and the FastICA
/// C-matrix, so both algorithms run through the exact same kernels:
/// scaled_cross = (1/T) psi(Y) Y^T under the base score, psi_prime_mean the
/// per-row mean of psi'(Y).
struct ScoreStats {
  Matrix scaled_cross;
  Vector psi_prime_mean;
};

ScoreStats compute_score_stats(const Matrix& y, const Score& score);
MomentSet moments_from_stats(const ScoreStats& stats);
MomentSet compute_moments(const Matrix& y, const Score& score);

/// Relative gradient of the surrogate loss under a multiplicative
/// perturbation: G_ij = s_i E^[psi(y_i) y_j] - delta_ij. g_minus caches the
/// exactly skew (G - G^T)/2.
struct RelativeGradient {
  Matrix g;
  Matrix g_minus;
};

RelativeGradient gradient_from_stats(const ScoreStats& stats, const Vector& signs);
RelativeGradient relative_gradient(const Matrix& y, const Score& score,
                                   const Vector& signs);

/// Surrogate negative log-likelihood E^[sum_i s_i rho(y_i)]. The -log|det W|
/// term is constant on the orthogonal manifold and dropped, as are additive
/// constants; values are comparable only between states with identical signs.
double surrogate_loss(const Matrix& y, const Score& score, const Vector& signs);

/// loss(y_trial) - loss(y), accumulated from pointwise rho differences.
/// Near convergence the step changes the loss by far less than the loss's own
/// rounding noise, so the difference must be summed before it is lost.
double surrogate_loss_delta(const Matrix& y_trial, const Matrix& y,
                            const Score& score, const Vector& signs);

/// Second-order model of loss(exp(alpha d) y) - loss(y), evaluated directly
/// from y and d without forming the exponential. For ||alpha d|| below ~1e-6
/// this resolves decreases that fall under the rounding floor of any
/// evaluated trial state (the exponential alone carries an O(eps) bias that
/// swamps deltas near machine precision); the cubic remainder is negligible
/// there.
double surrogate_loss_delta_directional(const Matrix& y, const Matrix& direction,
                                        double alpha, const Score& score,
                                        const Vector& signs);

/// Model of loss(exp(E) W) - loss(W) under the approximate Hessian:
///   sum_{i<j} (G_ij - G_ji) E_ij + ((kappa_i + kappa_j)/2) E_ij^2.
double hessian_quadratic_form(const RelativeGradient& g, const MomentSet& moments,
                              const Matrix& e);

/// Exact relative Hessian applied to a skew direction, as a matrix HE with
/// <E|HE> equal to the second derivative of the surrogate loss along
/// W <- exp(tE) W. Cost O(N^2 T) per apply; test/diagnostic surface only.
Matrix exact_hessian_apply(const Matrix& y, const Score& score, const Vector& signs,
                           const Matrix& e);

}  // namespace picardo
