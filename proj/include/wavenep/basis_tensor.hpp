// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cstddef>
#include <vector>

#include "wavenep/types.hpp"

namespace wavenep {

/// Compressed representation of the block upper-triangular Arnoldi basis:
/// q_{i,j} = sum_l coeff(i,j,l) * z_l with Z orthonormal. Column j only has
/// support for i <= j and l <= min(j, z_cols); once Z spans the whole problem
/// space it stops growing while the coefficient columns continue (the Krylov
/// space of the companion operator is larger than the problem space).
class BasisTensor {
 public:
  BasisTensor(Eigen::Index n, Eigen::Index max_cols)
      : z_(Matrix::Zero(n, std::min(n, max_cols))), z_cols_(0) {
    col_data_.reserve(static_cast<std::size_t>(max_cols));
  }

  Eigen::Index rows() const { return z_.rows(); }
  /// Number of logical basis columns (the Arnoldi iteration count + 1).
  Eigen::Index cols() const { return static_cast<Eigen::Index>(col_data_.size()); }
  /// Number of orthonormal directions actually stored (<= min(cols, n)).
  Eigen::Index z_cols() const { return z_cols_; }

  /// Orthonormal factor, n x z_cols.
  Eigen::Ref<const Matrix> z() const { return z_.leftCols(z_cols_); }
  Eigen::Ref<Matrix> z_mutable() { return z_.leftCols(z_cols_); }

  void push_z(const Vector& z_new) {
    z_.col(z_cols_) = z_new;
    ++z_cols_;
  }

  /// Coefficient block of column j (1-based), as the j x j matrix [a_{i,j,l}]
  /// with row index i and column index l; entries with l > z_cols at the time
  /// the column was created are structural zeros.
  const Matrix& column(Eigen::Index j) const { return col_data_[static_cast<std::size_t>(j - 1)]; }

  void push_column(Matrix block) { col_data_.push_back(std::move(block)); }

  Complex coeff(Eigen::Index i, Eigen::Index j, Eigen::Index l) const {
    const Matrix& b = column(j);
    if (i > b.rows() || l > b.cols()) return Complex(0.0, 0.0);
    return b(i - 1, l - 1);
  }

  /// Logical storage of the factorization at step k: k*n for Z plus k^3 for
  /// the coefficient cube (the saturated-Z case stores less).
  std::size_t logical_storage_count() const {
    const std::size_t k = static_cast<std::size_t>(cols());
    return k * static_cast<std::size_t>(rows()) + k * k * k;
  }

  /// Reconstruct the stacked basis matrix Q_k ((n*k) x k). For small
  /// cross-check instances only.
  Matrix reconstruct_basis() const {
    const Eigen::Index n = rows();
    const Eigen::Index k = cols();
    Matrix q = Matrix::Zero(n * k, k);
    for (Eigen::Index j = 1; j <= k; ++j)
      for (Eigen::Index i = 1; i <= j; ++i) {
        Vector block = Vector::Zero(n);
        for (Eigen::Index l = 1; l <= std::min(j, z_cols_); ++l)
          block += coeff(i, j, l) * z_.col(l - 1);
        q.block((i - 1) * n, j - 1, n, 1) = block;
      }
    return q;
  }

 private:
  Matrix z_;
  Eigen::Index z_cols_;
  std::vector<Matrix> col_data_;
};

}  // namespace wavenep
