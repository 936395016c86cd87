#pragma once

// Dense linear-algebra primitives for orthogonal-constraint ICA: whitening,
// symmetric inverse square root, skew-symmetric matrix exponential, polar
// factor. Free functions over Eigen dense types, templated on scalar where
// it costs nothing.

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "picardo/types.hpp"

namespace picardo {

/// Frobenius pairing <a|b> = sum_ij a_ij * b_ij.
template <typename DerivedA, typename DerivedB>
typename DerivedA::Scalar frobenius_inner(const Eigen::MatrixBase<DerivedA>& a,
                                          const Eigen::MatrixBase<DerivedB>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw DimensionError("frobenius_inner: shape mismatch " +
                         std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                         " vs " + std::to_string(b.rows()) + "x" +
                         std::to_string(b.cols()));
  return a.cwiseProduct(b).sum();
}

/// (m - m^T)/2. Exactly skew-symmetric: entry (i,j) is the IEEE negation of
/// entry (j,i) because subtraction rounds symmetrically.
template <typename Derived>
DenseMatrix<typename Derived::Scalar> skew_part(const Eigen::MatrixBase<Derived>& m) {
  return (m - m.transpose()) / 2;
}

template <typename Derived>
DenseMatrix<typename Derived::Scalar> sym_part(const Eigen::MatrixBase<Derived>& m) {
  return (m + m.transpose()) / 2;
}

/// Inverse symmetric square root of an SPD matrix via eigendecomposition:
/// returns M with M*c*M = I when no eigenvalue is floored. Eigenvalues below
/// eig_floor are clamped to eig_floor before inversion (floored set when that
/// happens). With the floor disabled (eig_floor <= 0) a non-positive
/// eigenvalue is a rank-deficiency error naming the offending value.
template <typename Scalar>
DenseMatrix<Scalar> sym_inv_sqrt(const DenseMatrix<Scalar>& c, Scalar eig_floor,
                                 bool* floored = nullptr) {
  if (c.rows() != c.cols())
    throw DimensionError("sym_inv_sqrt: matrix is not square");
  const Scalar scale = std::max(Scalar(1), c.cwiseAbs().maxCoeff());
  if ((c - c.transpose()).cwiseAbs().maxCoeff() > Scalar(1e-10) * scale)
    throw Error("sym_inv_sqrt: input is not symmetric within 1e-10");

  Eigen::SelfAdjointEigenSolver<DenseMatrix<Scalar>> eig(sym_part(c));
  DenseVector<Scalar> lam = eig.eigenvalues();
  bool any_floored = false;
  for (Index i = 0; i < lam.size(); ++i) {
    if (eig_floor > Scalar(0)) {
      if (lam[i] < eig_floor) {
        lam[i] = eig_floor;
        any_floored = true;
      }
    } else if (lam[i] <= Scalar(0)) {
      throw NumericalError("sym_inv_sqrt: rank-deficient input, eigenvalue " +
                           std::to_string(lam[i]) + " is not positive");
    }
  }
  if (floored) *floored = any_floored;
  DenseVector<Scalar> inv_sqrt = lam.array().sqrt().inverse();
  return eig.eigenvectors() * inv_sqrt.asDiagonal() * eig.eigenvectors().transpose();
}

template <typename Scalar>
struct WhitenResultT {
  DenseMatrix<Scalar> w0;     // symmetric positive-definite sphering matrix
  DenseMatrix<Scalar> y;      // w0 * (x - row means), (1/T) y y^T = I
  DenseVector<Scalar> means;  // per-channel means removed from x
  bool floored = false;       // covariance eigenvalues hit the floor
};
using WhitenResult = WhitenResultT<double>;

/// Removes per-channel means, then sphere with (cov)^{-1/2} so that
/// (1/T) y y^T = I. eig_floor_rel is relative to the largest covariance
/// eigenvalue; near-rank-deficient inputs are floored and flagged instead of
/// failing, but an all-degenerate covariance (largest eigenvalue <= 0)
/// raises the rank-deficiency error.
template <typename Scalar>
WhitenResultT<Scalar> whiten(const DenseMatrix<Scalar>& x,
                             Scalar eig_floor_rel = Scalar(1e-10)) {
  validate_signal(x);
  WhitenResultT<Scalar> r;
  r.means = x.rowwise().mean();
  DenseMatrix<Scalar> xc = x.colwise() - r.means;
  DenseMatrix<Scalar> cov =
      sym_part(DenseMatrix<Scalar>(xc * xc.transpose() / Scalar(x.cols())));
  Eigen::SelfAdjointEigenSolver<DenseMatrix<Scalar>> probe(cov,
                                                           Eigen::EigenvaluesOnly);
  const Scalar lam_max = probe.eigenvalues().maxCoeff();
  if (!(lam_max > Scalar(0)))
    throw NumericalError("whiten: covariance is rank deficient, largest eigenvalue " +
                         std::to_string(lam_max));
  r.w0 = sym_inv_sqrt<Scalar>(cov, eig_floor_rel * lam_max, &r.floored);
  r.y = r.w0 * xc;
  return r;
}

namespace detail {

// Pade(13,13) numerator/denominator split, evaluated Higham-style.
template <typename Scalar>
void expm_pade13(const DenseMatrix<Scalar>& a, DenseMatrix<Scalar>& u,
                 DenseMatrix<Scalar>& v) {
  static const double b[] = {64764752532480000., 32382376266240000.,
                             7771770303897600.,  1187353796428800.,
                             129060195264000.,   10559470521600.,
                             670442572800.,      33522128640.,
                             1323241920.,        40840800.,
                             960960.,            16380.,
                             182.,               1.};
  const Index n = a.rows();
  const DenseMatrix<Scalar> id = DenseMatrix<Scalar>::Identity(n, n);
  const DenseMatrix<Scalar> a2 = a * a;
  const DenseMatrix<Scalar> a4 = a2 * a2;
  const DenseMatrix<Scalar> a6 = a2 * a4;
  u = a * (a6 * (Scalar(b[13]) * a6 + Scalar(b[11]) * a4 + Scalar(b[9]) * a2) +
           Scalar(b[7]) * a6 + Scalar(b[5]) * a4 + Scalar(b[3]) * a2 +
           Scalar(b[1]) * id);
  v = a6 * (Scalar(b[12]) * a6 + Scalar(b[10]) * a4 + Scalar(b[8]) * a2) +
      Scalar(b[6]) * a6 + Scalar(b[4]) * a4 + Scalar(b[2]) * a2 + Scalar(b[0]) * id;
}

}  // namespace detail

/// Matrix exponential of a skew-symmetric matrix: scaling-and-squaring with a
/// fixed-order (13,13) rational approximant. The result is orthogonal with
/// determinant +1; every solver iterate relies on that, so the accuracy
/// target is 1e-12 relative.
template <typename Derived>
DenseMatrix<typename Derived::Scalar> expm_skew(const Eigen::MatrixBase<Derived>& e) {
  using Scalar = typename Derived::Scalar;
  if (e.rows() != e.cols()) throw DimensionError("expm_skew: matrix is not square");
  if (!e.allFinite()) throw NumericalError("expm_skew: non-finite entries");

  DenseMatrix<Scalar> a = e;
  const Scalar norm1 = a.cwiseAbs().colwise().sum().maxCoeff();
  if (norm1 == Scalar(0)) return DenseMatrix<Scalar>::Identity(e.rows(), e.cols());
  constexpr double theta13 = 5.371920351148152;
  int squarings = 0;
  if (norm1 > Scalar(theta13)) {
    squarings = std::max(0, int(std::ceil(std::log2(double(norm1) / theta13))));
    a /= Scalar(std::pow(2.0, squarings));
  }
  DenseMatrix<Scalar> u, v;
  detail::expm_pade13(a, u, v);
  DenseMatrix<Scalar> q = (v - u).partialPivLu().solve(v + u);
  for (int i = 0; i < squarings; ++i) q = q * q;
  return q;
}

/// Orthogonal polar factor (cc^T)^{-1/2} c, computed as U V^T from the SVD.
/// Requires c invertible: smallest singular value > 1e-12 * largest.
template <typename Scalar>
DenseMatrix<Scalar> polar_factor(const DenseMatrix<Scalar>& c) {
  if (c.rows() != c.cols()) throw DimensionError("polar_factor: matrix is not square");
  Eigen::JacobiSVD<DenseMatrix<Scalar>> svd(
      c, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  if (!(sv.minCoeff() > Scalar(1e-12) * sv.maxCoeff()))
    throw NumericalError("polar_factor: singular matrix, smallest/largest "
                         "singular value ratio " +
                         std::to_string(sv.minCoeff() / sv.maxCoeff()));
  return svd.matrixU() * svd.matrixV().transpose();
}

/// Snaps a near-orthogonal matrix back onto the group (polar projection).
/// Counters the floating-point drift of repeated exponential updates.
template <typename Scalar>
DenseMatrix<Scalar> reproject_orthogonal(const DenseMatrix<Scalar>& q) {
  const Index n = q.rows();
  const Scalar dev =
      (q * q.transpose() - DenseMatrix<Scalar>::Identity(n, n)).norm();
  if (!(dev < Scalar(0.5)))
    throw NumericalError("reproject_orthogonal: input too far from orthogonal, "
                         "||qq^T - I|| = " + std::to_string(dev));
  return polar_factor(q);
}

}  // namespace picardo
