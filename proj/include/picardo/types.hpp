#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <string>

namespace picardo {

template <typename Scalar>
using DenseMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using DenseVector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using Matrix = DenseMatrix<double>;
using Vector = DenseVector<double>;
using Index = Eigen::Index;

/// N x T multichannel signal block: rows are channels, columns are samples.
using SignalMatrix = Matrix;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Shape mismatch between operands.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Malformed input data (parse failures, bad file headers, truncation).
class DataError : public Error {
 public:
  using Error::Error;
};

/// Numerical failure: rank deficiency, singular matrices, overflow.
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// Invalid configuration or command usage.
class UsageError : public Error {
 public:
  using Error::Error;
};

/// Checks the signal-matrix contract: finite entries, N >= 2, T >= N.
inline void validate_signal(const Matrix& x) {
  if (x.rows() < 2)
    throw DimensionError("signal matrix needs at least 2 channels, got " +
                         std::to_string(x.rows()));
  if (x.cols() < x.rows())
    throw DimensionError("signal matrix needs n_samples >= n_channels, got " +
                         std::to_string(x.rows()) + "x" +
                         std::to_string(x.cols()));
  if (!x.allFinite()) throw NumericalError("signal matrix has non-finite entries");
}

}  // namespace picardo
