// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <chrono>
#include <functional>
#include <stdexcept>

#include "wavenep/problem.hpp"
#include "wavenep/ritz.hpp"

namespace wavenep {

inline constexpr double kBreakdownTol = 1e-12;

/// Builds a Ritz vector in problem coordinates from a Hessenberg eigenvector.
using RitzVectorBuilder = std::function<Vector(const Eigen::Ref<const Vector>&)>;

/// Invoked after each completed iteration; the builder maps Hessenberg
/// eigenvectors of the leading k x k block to problem-space Ritz vectors.
using IterationObserver =
    std::function<void(Eigen::Index k, const HessenbergState&, const RitzVectorBuilder&)>;

/// Result of the reference infinite Arnoldi iteration. The basis matrix is
/// stored explicitly, block upper triangular; logical column j spans rows
/// 0..n*j-1.
struct IarResult {
  HessenbergState hess;
  Matrix basis;
  RitzReport ritz;
};

/// Taylor-version infinite Arnoldi method. Serves as the oracle for the
/// tensor-compressed solver; memory grows as O(m^2 n).
namespace detail {
inline double tick(std::chrono::steady_clock::time_point& t) {
  const auto now = std::chrono::steady_clock::now();
  const double dt = std::chrono::duration<double>(now - t).count();
  t = now;
  return dt;
}
}  // namespace detail

inline IarResult iar_run(const NepProblem& problem, const Vector& x1, Eigen::Index m,
                         const CayleyShift* shift = nullptr,
                         const IterationObserver& observer = {}, PhaseTimes* phases = nullptr) {
  const Eigen::Index n = problem.dimension();
  if (x1.size() != n) throw std::invalid_argument("iar_run: starting vector size mismatch");
  const double x1_norm = x1.norm();
  if (x1_norm == 0.0) throw std::invalid_argument("iar_run: starting vector is zero");

  IarResult result;
  result.basis = Matrix::Zero(n * (m + 1), m + 1);
  result.hess.h = Matrix::Zero(m + 1, m);
  result.basis.col(0).head(n) = x1 / x1_norm;

  PhaseTimes local;
  auto stamp = std::chrono::steady_clock::now();
  Vector y(n * (m + 1));
  Matrix y_block(n, m);
  for (Eigen::Index k = 1; k <= m; ++k) {
    detail::tick(stamp);
    // Step 2: y_j = q_{j-1,k} / (j-1).
    for (Eigen::Index i = 1; i <= k; ++i)
      y_block.col(i - 1) =
          result.basis.col(k - 1).segment((i - 1) * n, n) / static_cast<double>(i);
    local.y_access += detail::tick(stamp);
    // Step 3: y_1 from the Taylor-coefficient relation.
    y.head(n) = problem.solve_step(y_block.leftCols(k));
    local.y_solve += detail::tick(stamp);
    for (Eigen::Index i = 1; i <= k; ++i) y.segment(i * n, n) = y_block.col(i - 1);

    // Steps 5-7: Gram-Schmidt with one unconditional reorthogonalization pass.
    const Eigen::Index rows = n * k;  // extension row block of underline(Q) is zero
    auto q_head = result.basis.topLeftCorner(rows, k);
    const double y_scale = y.head(n * (k + 1)).norm();
    Vector h = q_head.adjoint() * y.head(rows);
    y.head(rows) -= q_head * h;
    Vector dh = q_head.adjoint() * y.head(rows);
    y.head(rows) -= q_head * dh;
    h += dh;
    local.orthogonalization += detail::tick(stamp);

    const double beta = y.head(n * (k + 1)).norm();
    result.hess.h.col(k - 1).head(k) = h;
    result.hess.h(k, k - 1) = beta;
    result.hess.iterations = k;

    RitzVectorBuilder builder = [&result, n, k](const Eigen::Ref<const Vector>& s) {
      Vector w = Vector::Zero(n);
      for (Eigen::Index j = 0; j < k && j < s.size(); ++j)
        w += s(j) * result.basis.col(j).head(n);
      return w;
    };
    if (beta < kBreakdownTol * y_scale) {
      result.hess.breakdown = true;
      if (observer) observer(k, result.hess, builder);
      break;
    }
    result.basis.col(k).head(n * (k + 1)) = y.head(n * (k + 1)) / beta;
    if (observer) observer(k, result.hess, builder);
  }

  detail::tick(stamp);
  result.ritz = ritz_values(result.hess, result.hess.iterations, shift);
  local.hessenberg_eig += detail::tick(stamp);
  if (phases != nullptr) *phases = local;
  return result;
}

/// Ritz vector in problem coordinates: the first block row of Q_m applied to
/// the Hessenberg eigenvector.
inline Vector iar_ritz_vector(const IarResult& result, Eigen::Index n, Eigen::Index pair_index) {
  Vector w = Vector::Zero(n);
  const auto& s = result.ritz.eigenvectors.col(pair_index);
  for (Eigen::Index j = 0; j < s.size(); ++j) w += s(j) * result.basis.col(j).head(n);
  return w;
}

}  // namespace wavenep
