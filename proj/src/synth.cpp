#include "picardo/synth.hpp"

#include <cmath>
#include <string>

#include <Eigen/SVD>

#include "picardo/rng.hpp"

namespace picardo {

void DatasetSpec::validate() const {
  if (n_channels < 2) throw UsageError("dataset needs at least 2 channels");
  if (n_samples < n_channels)
    throw UsageError("dataset needs n_samples >= n_channels");
  if (n_uniform < 0 || n_laplace < 0 || n_gaussian < 0)
    throw UsageError("source counts must be non-negative");
  if (n_uniform + n_laplace + n_gaussian != n_channels)
    throw UsageError("source counts must sum to n_channels (" +
                     std::to_string(n_uniform) + "+" + std::to_string(n_laplace) +
                     "+" + std::to_string(n_gaussian) +
                     " != " + std::to_string(n_channels) + ")");
  if (!(ar1_coeff >= 0 && ar1_coeff < 1))
    throw UsageError("ar1_coeff must lie in [0, 1)");
}

namespace {

constexpr double kUniformHalfWidth = 1.7320508075688772;  // sqrt(3)
constexpr double kLaplaceScale = 0.7071067811865476;      // 1/sqrt(2)

double condition_number(const Matrix& a) {
  Eigen::JacobiSVD<Matrix> svd(a);
  const auto& sv = svd.singularValues();
  return sv.maxCoeff() / sv.minCoeff();
}

}  // namespace

SyntheticData gen_synthetic(const DatasetSpec& spec) {
  spec.validate();
  const Index n = spec.n_channels;
  const Index t = spec.n_samples;

  SyntheticData data;
  data.sources.resize(n, t);
  for (Index i = 0; i < n; ++i) {
    Rng rng = Rng::stream(spec.seed, rng_domain::kSource, std::uint64_t(i));
    auto draw = [&]() {
      if (i < spec.n_uniform) return rng.uniform_sym(kUniformHalfWidth);
      if (i < spec.n_uniform + spec.n_laplace) return rng.laplace(kLaplaceScale);
      return rng.gaussian();
    };
    if (spec.ar1_coeff > 0) {
      // Stationary AR(1): innovations scaled so every sample has unit variance.
      const double phi = spec.ar1_coeff;
      const double innov_scale = std::sqrt(1 - phi * phi);
      double prev = draw();
      data.sources(i, 0) = prev;
      for (Index s = 1; s < t; ++s) {
        prev = phi * prev + innov_scale * draw();
        data.sources(i, s) = prev;
      }
    } else {
      for (Index s = 0; s < t; ++s) data.sources(i, s) = draw();
    }
  }

  if (spec.mixing == MixingKind::Identity) {
    data.mixing = Matrix::Identity(n, n);
    data.x = data.sources;
    return data;
  }

  for (std::uint64_t attempt = 0;; ++attempt) {
    Rng rng = Rng::stream(spec.seed, rng_domain::kMixing, attempt);
    Matrix a(n, n);
    for (Index i = 0; i < n; ++i)
      for (Index j = 0; j < n; ++j) a(i, j) = rng.gaussian();
    if (condition_number(a) <= 1e4) {
      data.mixing = std::move(a);
      data.mixing_redraws = int(attempt);
      break;
    }
  }
  data.x = data.mixing * data.sources;
  return data;
}

}  // namespace picardo
