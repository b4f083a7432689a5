// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>

#include "wavenep/geometry.hpp"
#include "wavenep/types.hpp"

namespace wavenep {

/// Uniform tensor grid on the strip: n_x interior node columns in x, n_z
/// z-levels (periodic). Interior dofs are ordered z-fastest; the two boundary
/// node columns (x = x_minus, x = x_plus) are separate dof blocks.
struct DiscretizationGrid {
  Eigen::Index n_x;
  Eigen::Index n_z;
  double h_x;
  double h_z;
  Eigen::Index p;  // n_z = 2p + 1

  DiscretizationGrid(const WaveguideGeometry& geometry, Eigen::Index nx, Eigen::Index nz)
      : n_x(nx), n_z(nz) {
    if (nx < 1) throw std::invalid_argument("DiscretizationGrid: n_x must be positive");
    if (nz < 1 || nz % 2 == 0)
      throw std::invalid_argument("DiscretizationGrid: n_z must be odd and positive");
    h_x = (geometry.x_plus - geometry.x_minus) / static_cast<double>(nx + 1);
    h_z = 1.0 / static_cast<double>(nz);
    p = (nz - 1) / 2;
    x_minus_ = geometry.x_minus;
  }

  Eigen::Index interior_size() const { return n_x * n_z; }
  Eigen::Index boundary_size() const { return 2 * n_z; }
  Eigen::Index total_size() const { return interior_size() + boundary_size(); }

  /// Node coordinates: x_i = x_minus + i*h_x (i = 0..n_x+1), z_j = j*h_z
  /// (j = 1..n_z; z_{n_z} = 1 is identified with z = 0).
  double x_node(Eigen::Index i) const { return x_minus_ + static_cast<double>(i) * h_x; }
  double z_node(Eigen::Index j) const { return static_cast<double>(j) * h_z; }

  /// Interior dof index, z-fastest: (i,j) with i = 1..n_x, j = 1..n_z.
  Eigen::Index interior_index(Eigen::Index i, Eigen::Index j) const {
    return (i - 1) * n_z + (j - 1);
  }
  /// Dof indices of the two boundary node columns in the stacked layout
  /// [u_interior; u_minus; u_plus].
  Eigen::Index boundary_minus_index(Eigen::Index j) const { return interior_size() + (j - 1); }
  Eigen::Index boundary_plus_index(Eigen::Index j) const {
    return interior_size() + n_z + (j - 1);
  }

 private:
  double x_minus_;
};

}  // namespace wavenep
