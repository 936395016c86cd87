#include "picardo/metrics.hpp"

namespace picardo {

double amari_index(const Matrix& p) {
  if (p.rows() != p.cols() || p.rows() < 2)
    throw DimensionError("amari_index: need a square matrix of size >= 2");
  const Index n = p.rows();
  const Matrix a = p.cwiseAbs();

  double total = 0;
  for (Index i = 0; i < n; ++i) {
    const double row_max = a.row(i).maxCoeff();
    if (!(row_max > 0))
      throw NumericalError("amari_index: row " + std::to_string(i) + " is all zero");
    total += a.row(i).sum() / row_max - 1;
  }
  for (Index j = 0; j < n; ++j) {
    const double col_max = a.col(j).maxCoeff();
    if (!(col_max > 0))
      throw NumericalError("amari_index: column " + std::to_string(j) +
                           " is all zero");
    total += a.col(j).sum() / col_max - 1;
  }
  return total / double(2 * n * (n - 1));
}

}  // namespace picardo
