#include "picardo/score.hpp"

#include <cmath>
#include <string>

namespace picardo {

ScoreKind score_kind_from_string(std::string_view name) {
  if (name == "tanh") return ScoreKind::Tanh;
  if (name == "cube") return ScoreKind::Cube;
  if (name == "exp_quad") return ScoreKind::ExpQuad;
  throw UsageError("unknown score '" + std::string(name) +
                   "' (expected tanh, cube or exp_quad)");
}

const char* to_string(ScoreKind kind) {
  switch (kind) {
    case ScoreKind::Tanh: return "tanh";
    case ScoreKind::Cube: return "cube";
    case ScoreKind::ExpQuad: return "exp_quad";
  }
  return "?";
}

namespace {

// log cosh(u) = |u| + log(1 + exp(-2|u|)) - log 2; stays finite past |u|>350.
inline double log_cosh(double u) {
  const double a = std::abs(u);
  return a + std::log1p(std::exp(-2 * a)) - M_LN2;
}

}  // namespace

double Score::psi(double u) const {
  switch (kind_) {
    case ScoreKind::Tanh: return std::tanh(u);
    case ScoreKind::Cube: return u * u * u;
    case ScoreKind::ExpQuad: return u * std::exp(-0.5 * u * u);
  }
  return 0;
}

double Score::psi_prime(double u) const {
  switch (kind_) {
    case ScoreKind::Tanh: {
      const double t = std::tanh(u);
      return 1 - t * t;
    }
    case ScoreKind::Cube: return 3 * u * u;
    case ScoreKind::ExpQuad: return (1 - u * u) * std::exp(-0.5 * u * u);
  }
  return 0;
}

double Score::rho(double u) const {
  switch (kind_) {
    case ScoreKind::Tanh: return log_cosh(u);
    case ScoreKind::Cube: return 0.25 * u * u * u * u;
    case ScoreKind::ExpQuad: return -std::exp(-0.5 * u * u);
  }
  return 0;
}

Matrix Score::psi(const Matrix& y) const {
  switch (kind_) {
    case ScoreKind::Tanh: return y.array().tanh();
    case ScoreKind::Cube: return y.array().cube();
    case ScoreKind::ExpQuad: return y.array() * (-0.5 * y.array().square()).exp();
  }
  return {};
}

Matrix Score::psi_prime(const Matrix& y) const {
  switch (kind_) {
    case ScoreKind::Tanh: return 1 - y.array().tanh().square();
    case ScoreKind::Cube: return 3 * y.array().square();
    case ScoreKind::ExpQuad:
      return (1 - y.array().square()) * (-0.5 * y.array().square()).exp();
  }
  return {};
}

Matrix Score::rho(const Matrix& y) const {
  switch (kind_) {
    case ScoreKind::Tanh:
      return y.array().abs() + (-2 * y.array().abs()).exp().log1p() - M_LN2;
    case ScoreKind::Cube: return 0.25 * y.array().square().square();
    case ScoreKind::ExpQuad: return -(-0.5 * y.array().square()).exp();
  }
  return {};
}

}  // namespace picardo
