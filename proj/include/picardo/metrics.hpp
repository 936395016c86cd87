#pragma once

#include "picardo/types.hpp"

namespace picardo {

/// Separation quality of a gain matrix p = W * A_true. Zero if and only if p
/// is a signed scaled permutation; 1 for the all-ones matrix at every N.
/// Row/column terms are averaged over the 2 N (N-1) off-dominant slots:
///   (sum_i (sum_j |p_ij| / max_j |p_ij| - 1)
///    + sum_j (sum_i |p_ij| / max_i |p_ij| - 1)) / (2 N (N-1)).
/// Invariant under permutations and signed scalings of rows and columns.
double amari_index(const Matrix& p);

}  // namespace picardo
