// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>
#include <utility>

#include "wavenep/iar.hpp"
#include "wavenep/problem.hpp"
#include "wavenep/ritz.hpp"

namespace wavenep {

/// Scaled last-column access: [y_tilde_2 ... y_tilde_{k+1}] = Z A_k^T with
/// A_k = [a_{i,k,l}]; callers divide column i-1 by (j-1) = i to get y_j.
inline Matrix tiar_y_block(const BasisTensor& basis, Eigen::Index k) {
  const Matrix& last = basis.column(k);  // k x k, rows i, cols l
  const Eigen::Index zc = basis.z_cols();
  return basis.z() * last.leftCols(zc).transpose();  // column i-1 holds y_tilde_{i+1}
}

struct TiarOrthogonalization {
  /// Expansion coefficients of y_1 over [z_1..z_kz (z_next)]; size z_cols when
  /// no new direction appears, z_cols + 1 otherwise.
  Vector t;
  Vector z_next;    // empty when y_1 already lies in span(Z)
  bool saturated{false};
};

/// Gram-Schmidt of y_1 against z_1..z_kz with one unconditional
/// reorthogonalization pass. The new basis vector's phase is fixed so that its
/// largest-magnitude entry is real positive. A y_1 inside span(Z) is not a
/// breakdown of the iteration: the coefficient columns keep growing with the
/// orthonormal factor frozen.
inline TiarOrthogonalization tiar_orthogonalize(const BasisTensor& basis, const Vector& y1,
                                                double saturation_tol = kBreakdownTol) {
  const Eigen::Index kz = basis.z_cols();
  auto z = basis.z();
  TiarOrthogonalization out;
  Vector r = y1;
  Vector t_head = z.adjoint() * r;
  r -= z * t_head;
  Vector dt = z.adjoint() * r;
  r -= z * dt;
  t_head += dt;
  const double rem = r.norm();
  if (rem < saturation_tol * y1.norm() || kz == basis.rows()) {
    out.saturated = true;
    out.t = std::move(t_head);
    return out;
  }
  Vector z_next = r / rem;
  Eigen::Index imax = 0;
  z_next.cwiseAbs().maxCoeff(&imax);
  const Complex phase = z_next(imax) / std::abs(z_next(imax));
  z_next /= phase;
  out.t.resize(kz + 1);
  out.t.head(kz) = t_head;
  out.t(kz) = rem * phase;
  out.z_next = std::move(z_next);
  return out;
}

/// G = [g_{i,l}] of size (k+1)x(k+1): first row t, remaining rows the scaled
/// last tensor column, last column zero below the first row.
inline Matrix tiar_build_g(const BasisTensor& basis, const Vector& t, Eigen::Index k) {
  Matrix g = Matrix::Zero(k + 1, k + 1);
  g.row(0).head(t.size()) = t.transpose();
  const Matrix& last = basis.column(k);
  for (Eigen::Index i = 2; i <= k + 1; ++i)
    g.row(i - 1).head(k) = last.row(i - 2) / static_cast<double>(i - 1);
  return g;
}

/// h_j = sum_{l,i} conj(a_{i,j,l}) g_{i,l}: Frobenius inner product of each
/// coefficient block with the matching part of G.
inline Vector tiar_h(const BasisTensor& basis, const Matrix& g) {
  const Eigen::Index k = basis.cols();
  Vector h(k);
  for (Eigen::Index j = 1; j <= k; ++j) {
    const Matrix& block = basis.column(j);  // j x j
    h(j - 1) = (block.conjugate().cwiseProduct(g.topLeftCorner(j, j))).sum();
  }
  return h;
}

/// F = G - sum_j h_j * [a-block_j; 0]; the orthogonal remainder in compressed
/// coordinates. beta = ||F||_fro equals ||y_perp||.
inline Matrix tiar_f(const BasisTensor& basis, const Matrix& g, const Vector& h) {
  const Eigen::Index k = basis.cols();
  Matrix f = g;
  for (Eigen::Index j = 1; j <= k; ++j) {
    const Matrix& block = basis.column(j);
    f.topLeftCorner(block.rows(), block.cols()) -= h(j - 1) * block;
  }
  return f;
}

struct TiarResult {
  HessenbergState hess;
  BasisTensor basis;
  RitzReport ritz;
};

/// Tensor infinite Arnoldi method. Equivalent to iar_run in exact arithmetic;
/// basis storage is k*n + k^3 scalars at step k instead of k^2*n.
inline TiarResult tiar_run(const NepProblem& problem, const Vector& x1, Eigen::Index m,
                           const CayleyShift* shift = nullptr,
                           const IterationObserver& observer = {}, PhaseTimes* phases = nullptr) {
  const Eigen::Index n = problem.dimension();
  if (x1.size() != n) throw std::invalid_argument("tiar_run: starting vector size mismatch");
  const double x1_norm = x1.norm();
  if (x1_norm == 0.0) throw std::invalid_argument("tiar_run: starting vector is zero");

  TiarResult result{HessenbergState{}, BasisTensor(n, m + 1), RitzReport{}};
  result.hess.h = Matrix::Zero(m + 1, m);

  {
    Vector z1 = x1 / x1_norm;
    Eigen::Index imax = 0;
    z1.cwiseAbs().maxCoeff(&imax);
    const Complex phase = z1(imax) / std::abs(z1(imax));
    z1 /= phase;
    result.basis.push_z(z1);
    Matrix first(1, 1);
    first(0, 0) = phase;
    result.basis.push_column(std::move(first));
  }

  PhaseTimes local;
  auto stamp = std::chrono::steady_clock::now();
  const auto* compact = dynamic_cast<const CompactStepNep*>(&problem);
  for (Eigen::Index k = 1; k <= m; ++k) {
    detail::tick(stamp);
    Vector y1;
    if (compact != nullptr) {
      y1 = compact->solve_step_compact(result.basis, k);
      local.y_solve += detail::tick(stamp);
    } else {
      Matrix y_block = tiar_y_block(result.basis, k);
      for (Eigen::Index i = 1; i <= k; ++i) y_block.col(i - 1) /= static_cast<double>(i);
      local.y_access += detail::tick(stamp);
      y1 = problem.solve_step(y_block);
      local.y_solve += detail::tick(stamp);
    }

    const TiarOrthogonalization orth = tiar_orthogonalize(result.basis, y1);
    Matrix g = tiar_build_g(result.basis, orth.t, k);
    Vector h = tiar_h(result.basis, g);
    Matrix f = tiar_f(result.basis, g, h);
    // Unconditional second pass over the compressed Gram-Schmidt.
    Vector dh = tiar_h(result.basis, f);
    f = tiar_f(result.basis, f, dh);
    h += dh;
    local.orthogonalization += detail::tick(stamp);

    const double beta = f.norm();
    result.hess.h.col(k - 1).head(k) = h;
    result.hess.h(k, k - 1) = beta;
    result.hess.iterations = k;

    const BasisTensor& basis_ref = result.basis;
    RitzVectorBuilder builder = [&basis_ref](const Eigen::Ref<const Vector>& s) {
      Vector c = Vector::Zero(basis_ref.z_cols());
      for (Eigen::Index j = 1; j <= s.size(); ++j)
        for (Eigen::Index l = 1; l <= std::min(j, basis_ref.z_cols()); ++l)
          c(l - 1) += basis_ref.coeff(1, j, l) * s(j - 1);
      return Vector(basis_ref.z() * c);
    };
    const double y_scale = std::sqrt(g.squaredNorm());
    if (beta < kBreakdownTol * y_scale) {
      result.hess.breakdown = true;
      if (observer) observer(k, result.hess, builder);
      break;
    }
    if (!orth.saturated) result.basis.push_z(orth.z_next);
    result.basis.push_column(f / beta);
    if (observer) observer(k, result.hess, builder);
  }

  detail::tick(stamp);
  result.ritz = ritz_values(result.hess, result.hess.iterations, shift);
  local.hessenberg_eig += detail::tick(stamp);
  if (phases != nullptr) *phases = local;
  return result;
}

/// Ritz vector in problem coordinates: w = Z * c with c_l = sum_j a_{1,j,l} s_j.
inline Vector tiar_ritz_vector(const TiarResult& result, Eigen::Index pair_index) {
  const Eigen::Index k = result.ritz.eigenvectors.rows();
  const Eigen::Index zc = result.basis.z_cols();
  Vector c = Vector::Zero(zc);
  const auto& s = result.ritz.eigenvectors.col(pair_index);
  for (Eigen::Index j = 1; j <= k; ++j)
    for (Eigen::Index l = 1; l <= std::min(j, zc); ++l)
      c(l - 1) += result.basis.coeff(1, j, l) * s(j - 1);
  return result.basis.z() * c;
}

}  // namespace wavenep
