#pragma once

#include <string_view>

#include "picardo/types.hpp"

namespace picardo {

enum class ScoreKind { Tanh, Cube, ExpQuad };

ScoreKind score_kind_from_string(std::string_view name);
const char* to_string(ScoreKind kind);

/// Fixed base nonlinearity psi with derivative psi' and primitive rho
/// (rho' = psi, additive constant dropped). psi is odd for every kind.
/// The classic FastICA family:
///   tanh:     psi = tanh(u),          rho = log cosh(u)
///   cube:     psi = u^3,              rho = u^4/4
///   exp_quad: psi = u exp(-u^2/2),    rho = -exp(-u^2/2)
class Score {
 public:
  explicit Score(ScoreKind kind = ScoreKind::Tanh) : kind_(kind) {}

  ScoreKind kind() const { return kind_; }

  double psi(double u) const;
  double psi_prime(double u) const;
  double rho(double u) const;

  Matrix psi(const Matrix& y) const;
  Matrix psi_prime(const Matrix& y) const;
  Matrix rho(const Matrix& y) const;

 private:
  ScoreKind kind_;
};

}  // namespace picardo
