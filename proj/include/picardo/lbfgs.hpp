#pragma once

// Preconditioned two-loop L-BFGS recursion over skew-symmetric matrices,
// with the Frobenius pairing as inner product.

#include <deque>

#include "picardo/model.hpp"
#include "picardo/types.hpp"

namespace picardo {

/// rho bookkeeping: Reciprocal stores 1/<e, delta> (standard L-BFGS, the
/// default); Literal stores <e, delta> itself for comparison runs.
enum class RhoMode { Reciprocal, Literal };

/// Ring buffer of (step, gradient difference, rho) triplets, oldest first.
/// Pairs with <e, delta> <= 1e-12 ||e|| ||delta|| are discarded at push time,
/// so every stored rho is finite and positive.
class LbfgsMemory {
 public:
  struct Entry {
    Matrix step;       // accepted relative move alpha * D, skew
    Matrix grad_diff;  // G_minus difference between consecutive iterates
    double rho;
  };

  explicit LbfgsMemory(int capacity = 7, RhoMode mode = RhoMode::Reciprocal)
      : capacity_(capacity), mode_(mode) {}

  void push(const Matrix& step, const Matrix& grad_diff);
  void flush() { entries_.clear(); }

  int capacity() const { return capacity_; }
  RhoMode mode() const { return mode_; }
  const std::deque<Entry>& entries() const { return entries_; }

 private:
  int capacity_;
  RhoMode mode_;
  std::deque<Entry> entries_;
};

/// Diagonal curvature model with a regularization floor:
/// curvature(i, j) = max((kappa_i + kappa_j)/2, kappa_min).
struct Preconditioner {
  Vector kappa;
  double kappa_min = 1e-2;

  double curvature(Index i, Index j) const {
    return std::max(0.5 * (kappa[i] + kappa[j]), kappa_min);
  }
};

/// Two-loop recursion with the curvature model inserted between the loops.
/// Q starts at -(G - G^T)/2; with empty memory this reduces to the
/// preconditioned quasi-Newton step D_ij = -(G_ij - G_ji)/2 / curvature(i,j).
/// The output is exactly skew-symmetric.
Matrix two_loop_direction(const RelativeGradient& g, const Preconditioner& precond,
                          const LbfgsMemory& memory);

}  // namespace picardo
