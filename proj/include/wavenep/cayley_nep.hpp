// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>

#include <Eigen/SparseLU>

#include "wavenep/alpha.hpp"
#include "wavenep/cayley.hpp"
#include "wavenep/problem.hpp"
#include "wavenep/waveguide_system.hpp"

namespace wavenep {

/// The Cayley-transformed waveguide NEP
///   Mtilde(lambda) = diag((1-lambda)^2 I, (1-lambda) I) * M(gamma(lambda)),
/// a polynomial of degree two in the interior blocks, with the boundary
/// symbol handled through the alpha derivative table. Provides both the
/// generic Taylor step (materializing full vectors) and the compressed step
/// working on the basis factorization directly.
class CayleyNep : public CompactStepNep {
 public:
  CayleyNep(const WaveguideSystem& system, const CayleyShift& shift, Eigen::Index max_depth)
      : system_(system),
        shift_(shift),
        alpha_(shift.gamma0, system.matrices().geometry.kappa_minus,
               system.matrices().geometry.kappa_plus, system.grid().n_z, max_depth,
               system.matrices().stencil.d0) {
    const WaveguideMatrices& m = system.matrices();
    const Complex g0 = shift.gamma0;
    const Complex g0c = std::conj(g0);

    // Interior blocks of Mtilde and its first two derivatives at lambda = 0.
    fa_[0] = m.a[0] + g0 * m.a[1] + (g0 * g0) * m.a[2];
    fa_[1] = -2.0 * m.a[0] + (g0c - g0) * m.a[1] + (2.0 * g0 * g0c) * m.a[2];
    fa_[2] = 2.0 * m.a[0] - 2.0 * g0c * m.a[1] + (2.0 * g0c * g0c) * m.a[2];
    fc1_[0] = m.c1[0] + g0 * m.c1[1] + (g0 * g0) * m.c1[2];
    fc1_[1] = -2.0 * m.c1[0] + (g0c - g0) * m.c1[1] + (2.0 * g0 * g0c) * m.c1[2];
    fc1_[2] = 2.0 * m.c1[0] - 2.0 * g0c * m.c1[1] + (2.0 * g0c * g0c) * m.c1[2];

    fa_[0].makeCompressed();
    lu_q_.compute(fa_[0]);
    if (lu_q_.info() != Eigen::Success)
      throw std::runtime_error("CayleyNep: singular interior block Q(gamma0)");

    // Dense boundary symbol Ptilde(0) = blkdiag(R diag(alpha_{-,.,0}) R^-1,
    // R diag(alpha_{+,.,0}) R^-1).
    const Eigen::Index nz = system.grid().n_z;
    const Matrix r = system.dtn_minus().fourier().dense_r();
    const Matrix r_inv = r.inverse();
    Matrix p0 = Matrix::Zero(2 * nz, 2 * nz);
    p0.topLeftCorner(nz, nz) = r * alpha_.diagonal(0).head(nz).asDiagonal() * r_inv;
    p0.bottomRightCorner(nz, nz) = r * alpha_.diagonal(0).tail(nz).asDiagonal() * r_inv;

    // Schur complement on the boundary dofs: S = Ptilde(0) - C2t Q^-1 C1.
    q_inv_c1_ = lu_q_.solve(Matrix(fc1_[0]));
    Matrix schur = p0 - m.c2t * q_inv_c1_;
    lu_schur_.compute(schur);
    if (schur.fullPivLu().isInvertible() == false)
      throw std::runtime_error("CayleyNep: singular Schur complement");
  }

  const CayleyShift& shift() const { return shift_; }
  const WaveguideSystem& system() const { return system_; }
  const AlphaTable& alpha_table() const { return alpha_; }

  Eigen::Index dimension() const override { return system_.dimension(); }

  /// Solve Mtilde(0) y = rhs through the boundary Schur complement.
  Vector solve_m0(const Vector& rhs) const {
    const Eigen::Index ni = system_.grid().interior_size();
    const Eigen::Index nb = system_.grid().boundary_size();
    const Vector t = lu_q_.solve(Vector(rhs.head(ni)));
    const Vector yb = lu_schur_.solve(Vector(rhs.tail(nb) - system_.matrices().c2t * t));
    Vector y(rhs.size());
    y.head(ni) = t - q_inv_c1_ * yb;
    y.tail(nb) = yb;
    return y;
  }

  /// Generic Taylor step from full vectors y_2..y_{k+1}: applies the interior
  /// derivative blocks to y_2, y_3 and the boundary derivative symbols to all
  /// boundary parts through FFTs.
  Vector solve_step(const Matrix& y_block) const override {
    const Eigen::Index k = y_block.cols();
    const Eigen::Index ni = system_.grid().interior_size();
    const Eigen::Index nz = system_.grid().n_z;
    Matrix boundary = y_block.bottomRows(2 * nz);
    Vector y2 = y_block.col(0);
    Vector y3 = k >= 2 ? Vector(y_block.col(1)) : Vector(Vector::Zero(y_block.rows()));
    return solve_from_parts(y2, y3, boundary, k);
  }

  /// Compressed Taylor step: only y_2 and y_3 are materialized in full; the
  /// remaining terms need just the trailing boundary rows of Z_k against the
  /// last coefficient block.
  Vector solve_step_compact(const BasisTensor& basis, Eigen::Index k) const override {
    const Eigen::Index nz = system_.grid().n_z;
    const Matrix& last = basis.column(k);  // k x k, rows i, cols l
    auto z = basis.z();
    const Eigen::Index zc = basis.z_cols();
    Vector y2 = z * last.row(0).head(zc).transpose();
    Vector y3 = k >= 2 ? Vector(z * last.row(1).head(zc).transpose() / 2.0)
                       : Vector(Vector::Zero(z.rows()));
    // Boundary parts of all y_{i+1}: trailing 2*n_z rows of Z_k times the
    // coefficient block, scaled by 1/i per column.
    Matrix boundary = z.bottomRows(2 * nz) * last.leftCols(zc).transpose();
    for (Eigen::Index i = 1; i <= k; ++i) boundary.col(i - 1) /= static_cast<double>(i);
    return solve_from_parts(y2, y3, boundary, k);
  }

  /// Mtilde(lambda) * w.
  Vector evaluate(Complex lambda, const Vector& w) const override {
    const Complex gamma = cayley_inverse(lambda, shift_);
    Vector out = system_.evaluate(gamma, w);
    const Complex one_minus = Complex(1.0, 0.0) - lambda;
    const Eigen::Index ni = system_.grid().interior_size();
    out.head(ni) *= one_minus * one_minus;
    out.tail(out.size() - ni) *= one_minus;
    return out;
  }

 private:
  /// Shared tail of both step variants: assemble the right-hand side
  ///   z1 + z2 = sum_i Mtilde^{(i)}(0) y_{i+1}
  /// from y_2, y_3 (full) and the boundary columns [y_{2,b} .. y_{k+1,b}],
  /// then solve -Mtilde(0) y_1 = z1 + z2.
  Vector solve_from_parts(const Vector& y2, const Vector& y3, const Matrix& boundary,
                          Eigen::Index k) const {
    const Eigen::Index ni = system_.grid().interior_size();
    const Eigen::Index nz = system_.grid().n_z;
    if (k > alpha_.depth())
      throw std::runtime_error("CayleyNep: alpha table depth exceeded; rebuild with larger depth");
    const PeriodicFourier& fourier = system_.dtn_minus().fourier();

    Vector rhs = Vector::Zero(dimension());
    rhs.head(ni) = fa_[1] * y2.head(ni) + fc1_[1] * y2.tail(2 * nz) + fa_[2] * y3.head(ni) +
                   fc1_[2] * y3.tail(2 * nz);
    rhs.tail(2 * nz) = -(system_.matrices().c2t * y2.head(ni));

    Vector coeff_minus = Vector::Zero(nz);
    Vector coeff_plus = Vector::Zero(nz);
    for (Eigen::Index i = 1; i <= k; ++i) {
      const auto d = alpha_.diagonal(i);
      coeff_minus += d.head(nz).cwiseProduct(fourier.to_coeffs(Vector(boundary.col(i - 1).head(nz))));
      coeff_plus += d.tail(nz).cwiseProduct(fourier.to_coeffs(Vector(boundary.col(i - 1).tail(nz))));
    }
    rhs.segment(ni, nz) += fourier.from_coeffs(coeff_minus);
    rhs.tail(nz) += fourier.from_coeffs(coeff_plus);
    return -solve_m0(rhs);
  }

  const WaveguideSystem& system_;
  CayleyShift shift_;
  AlphaTable alpha_;
  std::array<SparseMatrix, 3> fa_;
  std::array<SparseMatrix, 3> fc1_;
  Eigen::SparseLU<SparseMatrix> lu_q_;
  Eigen::PartialPivLU<Matrix> lu_schur_;
  Matrix q_inv_c1_;
};

}  // namespace wavenep
