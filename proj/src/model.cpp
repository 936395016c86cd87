#include "picardo/model.hpp"

namespace picardo {

ScoreStats compute_score_stats(const Matrix& y, const Score& score) {
  const double t = double(y.cols());
  ScoreStats stats;
  stats.scaled_cross = score.psi(y) * y.transpose() / t;
  stats.psi_prime_mean = score.psi_prime(y).rowwise().mean();
  if (!stats.scaled_cross.allFinite() || !stats.psi_prime_mean.allFinite())
    throw NumericalError("score statistics overflowed on non-finite sample averages");
  return stats;
}

MomentSet moments_from_stats(const ScoreStats& stats) {
  MomentSet m;
  m.k = stats.psi_prime_mean - stats.scaled_cross.diagonal();
  m.signs = (m.k.array() >= 0).select(Vector::Ones(m.k.size()),
                                      -Vector::Ones(m.k.size()));
  m.kappa = m.signs.cwiseProduct(m.k);
  return m;
}

MomentSet compute_moments(const Matrix& y, const Score& score) {
  return moments_from_stats(compute_score_stats(y, score));
}

RelativeGradient gradient_from_stats(const ScoreStats& stats, const Vector& signs) {
  RelativeGradient g;
  g.g = signs.asDiagonal() * stats.scaled_cross;
  g.g.diagonal().array() -= 1.0;
  g.g_minus = skew_part(g.g);
  return g;
}

RelativeGradient relative_gradient(const Matrix& y, const Score& score,
                                   const Vector& signs) {
  return gradient_from_stats(compute_score_stats(y, score), signs);
}

double surrogate_loss(const Matrix& y, const Score& score, const Vector& signs) {
  const double loss = signs.dot(score.rho(y).rowwise().mean());
  if (!std::isfinite(loss)) throw NumericalError("surrogate loss overflowed");
  return loss;
}

double surrogate_loss_delta(const Matrix& y_trial, const Matrix& y,
                            const Score& score, const Vector& signs) {
  const Matrix diff = score.rho(y_trial) - score.rho(y);
  return signs.dot(diff.rowwise().mean());
}

double surrogate_loss_delta_directional(const Matrix& y, const Matrix& direction,
                                        double alpha, const Score& score,
                                        const Vector& signs) {
  // d/da loss = <psi(y) | d y>, d2/da2 loss = <psi(y) | d^2 y> + <psi'(y) | (d y)^2>
  const Matrix z = direction * y;
  const Matrix psi = score.psi(y);
  const double first = signs.dot(psi.cwiseProduct(z).rowwise().mean());
  const double second =
      signs.dot(psi.cwiseProduct(direction * z).rowwise().mean()) +
      signs.dot(score.psi_prime(y).cwiseProduct(z.cwiseAbs2()).rowwise().mean());
  return alpha * first + 0.5 * alpha * alpha * second;
}

double hessian_quadratic_form(const RelativeGradient& g, const MomentSet& moments,
                              const Matrix& e) {
  const Index n = e.rows();
  double value = 0;
  for (Index i = 0; i < n; ++i)
    for (Index j = i + 1; j < n; ++j) {
      const double eij = e(i, j);
      value += (g.g(i, j) - g.g(j, i)) * eij +
               0.5 * (moments.kappa[i] + moments.kappa[j]) * eij * eij;
    }
  return value;
}

Matrix exact_hessian_apply(const Matrix& y, const Score& score, const Vector& signs,
                           const Matrix& e) {
  const double t = double(y.cols());
  // <E|HE> = sum_i E^[psi_i(y_i) (E^2 y)_i] + sum_i E^[psi_i'(y_i) (E y)_i^2]
  // with psi_i = s_i psi; the first term contributes E^T P, P_ij = E^[psi_i y_j].
  const Matrix p = signs.asDiagonal() * Matrix(score.psi(y) * y.transpose() / t);
  const Matrix z = e * y;
  const Matrix weighted = (signs.asDiagonal() * score.psi_prime(y)).cwiseProduct(z);
  Matrix he = e.transpose() * p + weighted * y.transpose() / t;
  if (!he.allFinite()) throw NumericalError("exact Hessian apply overflowed");
  return he;
}

}  // namespace picardo
