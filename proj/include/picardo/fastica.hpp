#pragma once

// Sign-adaptive symmetric FastICA: the speed baseline, and the fixed-point
// cross-check for converged Picard-O states.

#include <utility>

#include "picardo/model.hpp"
#include "picardo/picardo.hpp"
#include "picardo/score.hpp"
#include "picardo/types.hpp"

namespace picardo {

/// C_ij = E^[psi_i(y_i) y_j] - delta_ij E^[psi_i'(y_i)] with psi_i the
/// sign-adapted scores, split into symmetric and skew parts. The skew part
/// equals the skew part of the matching relative gradient exactly; with the
/// FastICA sign adaptation the diagonal satisfies C_ii = kappa_i >= 0.
struct CMatrix {
  Matrix c;
  Matrix c_plus;
  Matrix c_minus;
};

/// FastICA's own sign adaptation: the sign of E^[psi(y_i) y_i] - E^[psi'(y_i)],
/// i.e. the negation of the moment signs that stabilize the surrogate loss.
/// It keeps the diagonal of C non-negative, which turns the +-1 sign-flipping
/// fixed points of fixed-score FastICA into plain fixed points with C_w = I.
Vector fastica_signs(const MomentSet& moments);

CMatrix c_from_stats(const ScoreStats& stats, const Vector& signs_c);
CMatrix c_matrix(const Matrix& y, const Score& score, const Vector& signs_c);

/// One symmetric FastICA iteration on white signals: recomputes the sign
/// adaptation from y, forms C and its orthogonal polar factor C_w, and
/// returns (C_w, C_w * y). A singular C is a degeneracy error.
std::pair<Matrix, Matrix> fastica_step(const Matrix& y, const Score& score);

/// ||C_w(Y) - I||_F under the sign-adapted scores; zero exactly at the fixed
/// points of FastICA.
double fixed_point_residual(const Matrix& y, const Score& score);

/// Whiten, then iterate y <- C_w(y) y. Records the same trace schema as the
/// Picard-O solver with the shared metric ||G - G^T||_F (whose value is
/// identical under either sign convention), so curves are comparable
/// column-for-column. No line search and no step size. A singular C ends the
/// run with converged = false instead of throwing.
SolveResult fastica_solve(const Matrix& x, const SolverConfig& config = {});
SolveResult fastica_solve_whitened(const Matrix& y0, const Matrix& w0,
                                   const Vector& means,
                                   const SolverConfig& config = {},
                                   bool whitening_floored = false);

}  // namespace picardo
