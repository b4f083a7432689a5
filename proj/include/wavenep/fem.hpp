// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "wavenep/geometry.hpp"
#include "wavenep/grid.hpp"
#include "wavenep/types.hpp"

namespace wavenep {

/// One-sided second-order difference constants for the normal derivative at
/// the strip boundaries: u_x ~ d0*u(x_b) + d1*u(x_b -+ h) + d2*u(x_b -+ 2h).
struct BoundaryStencil {
  double d0, d1, d2;
};

/// Discretized blocks of the waveguide eigenvalue problem. Q(gamma) = A0 +
/// gamma*A1 + gamma^2*A2 acts on interior dofs, C1(gamma) couples interior
/// rows to the 2*n_z boundary dofs, C2t carries the one-sided stencil rows.
/// The full_* matrices keep the assembled bilinear forms over all dofs for
/// diagnostics and naive-reference evaluations.
struct WaveguideMatrices {
  WaveguideGeometry geometry;
  DiscretizationGrid grid;
  BoundaryStencil stencil;

  std::array<SparseMatrix, 3> a;    // interior x interior: A0, A1, A2
  std::array<SparseMatrix, 3> c1;   // interior x boundary: C1_0, C1_1, C1_2
  SparseMatrix c2t;                 // boundary x interior stencil rows

  SparseMatrix full_a, full_b, full_c;  // all-dof forms a, b, c
  SparseMatrix full_grad;               // gradient part of form a (no kappa term)

  std::array<double, 3> a_norm;    // Frobenius norms, cached for the residual scale
  std::array<double, 3> c1_norm;
  double c2t_norm{0.0};
};

namespace detail {

/// Bilinear shape functions on [xa, xa+hx] x [za, za+hz]; local node order
/// (left,lo), (right,lo), (left,hi), (right,hi).
inline void shape_eval(double xi, double zeta, double hx, double hz, std::array<double, 4>& val,
                       std::array<double, 4>& dx, std::array<double, 4>& dz) {
  val = {(1 - xi) * (1 - zeta), xi * (1 - zeta), (1 - xi) * zeta, xi * zeta};
  dx = {-(1 - zeta) / hx, (1 - zeta) / hx, -zeta / hx, zeta / hx};
  dz = {-(1 - xi) / hz, -xi / hz, (1 - xi) / hz, xi / hz};
}

}  // namespace detail

/// Ritz-Galerkin assembly of the three bilinear forms with bilinear elements
/// on the uniform grid (periodic in z). The kappa^2-weighted mass term is
/// integrated exactly by splitting each element at region boundaries; all
/// integrals use 2x2 Gauss quadrature, which is exact for the bi-quadratic
/// integrands.
inline WaveguideMatrices assemble_fem(const WaveguideGeometry& geometry,
                                      const DiscretizationGrid& grid) {
  geometry.validate();
  if (grid.n_x < 2)
    throw std::invalid_argument("assemble_fem: n_x >= 2 required by the boundary stencil");
  const Eigen::Index n_x = grid.n_x;
  const Eigen::Index n_z = grid.n_z;
  const Eigen::Index ni = grid.interior_size();
  const Eigen::Index nt = grid.total_size();
  const double hx = grid.h_x;
  const double hz = grid.h_z;

  using Triplet = Eigen::Triplet<Complex>;
  std::vector<Triplet> trip_grad, trip_kmass, trip_b, trip_c;
  trip_grad.reserve(static_cast<std::size_t>(16 * (n_x + 1) * n_z));
  trip_kmass.reserve(trip_grad.capacity());
  trip_b.reserve(trip_grad.capacity());
  trip_c.reserve(trip_grad.capacity());

  const double gauss = 0.5 / std::sqrt(3.0);
  const std::array<double, 2> gp = {0.5 - gauss, 0.5 + gauss};  // on the unit interval

  std::array<double, 4> val, dx, dz;
  for (Eigen::Index ex = 0; ex <= n_x; ++ex) {
    const double xa = grid.x_node(ex);
    for (Eigen::Index ez = 0; ez < n_z; ++ez) {
      const double za = static_cast<double>(ez) * hz;
      // Global dofs of the four element nodes; x-columns 0 and n_x+1 are the
      // boundary dof blocks, the lower z-node of the ez = 0 element wraps to
      // z-level n_z.
      const Eigen::Index j_lo = (ez == 0) ? n_z : ez;
      const Eigen::Index j_hi = ez + 1;
      auto dof = [&](Eigen::Index i, Eigen::Index j) {
        if (i == 0) return grid.boundary_minus_index(j);
        if (i == n_x + 1) return grid.boundary_plus_index(j);
        return grid.interior_index(i, j);
      };
      const std::array<Eigen::Index, 4> nodes = {dof(ex, j_lo), dof(ex + 1, j_lo),
                                                 dof(ex, j_hi), dof(ex + 1, j_hi)};

      // Constant-coefficient terms over the whole element.
      std::array<std::array<double, 4>, 4> loc_grad{}, loc_b{}, loc_c{};
      for (double gx : gp)
        for (double gz : gp) {
          detail::shape_eval(gx, gz, hx, hz, val, dx, dz);
          const double w = 0.25 * hx * hz;
          for (int r = 0; r < 4; ++r)
            for (int c = 0; c < 4; ++c) {
              loc_grad[r][c] += w * (dx[c] * dx[r] + dz[c] * dz[r]);
              loc_b[r][c] += w * 2.0 * dz[c] * val[r];
              loc_c[r][c] += w * val[c] * val[r];
            }
        }

      // kappa^2-weighted mass: integrate over the intersection with each
      // region so the piecewise-constant coefficient is handled exactly.
      std::array<std::array<double, 4>, 4> loc_kmass{};
      double covered = 0.0;
      for (const Region& reg : geometry.regions) {
        const double x0 = std::max(xa, reg.x0), x1 = std::min(xa + hx, reg.x1);
        const double z0 = std::max(za, reg.z0), z1 = std::min(za + hz, reg.z1);
        if (x1 - x0 <= 0.0 || z1 - z0 <= 0.0) continue;
        covered += (x1 - x0) * (z1 - z0);
        const double k2 = reg.kappa * reg.kappa;
        for (double gx : gp)
          for (double gz : gp) {
            const double x = x0 + gx * (x1 - x0);
            const double z = z0 + gz * (z1 - z0);
            detail::shape_eval((x - xa) / hx, (z - za) / hz, hx, hz, val, dx, dz);
            const double w = 0.25 * (x1 - x0) * (z1 - z0) * k2;
            for (int r = 0; r < 4; ++r)
              for (int c = 0; c < 4; ++c) loc_kmass[r][c] += w * val[c] * val[r];
          }
      }
      if (std::abs(covered - hx * hz) > 1e-10 * hx * hz)
        throw std::invalid_argument("assemble_fem: regions do not tile an element");

      for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) {
          trip_grad.emplace_back(nodes[r], nodes[c], Complex(loc_grad[r][c], 0.0));
          trip_kmass.emplace_back(nodes[r], nodes[c], Complex(loc_kmass[r][c], 0.0));
          trip_b.emplace_back(nodes[r], nodes[c], Complex(loc_b[r][c], 0.0));
          trip_c.emplace_back(nodes[r], nodes[c], Complex(loc_c[r][c], 0.0));
        }
    }
  }

  WaveguideMatrices out{geometry, grid,
                        BoundaryStencil{-3.0 / (2.0 * hx), 2.0 / hx, -1.0 / (2.0 * hx)},
                        {}, {}, {}, {}, {}, {}, {}, {}, {}, 0.0};

  SparseMatrix kmass(nt, nt);
  out.full_grad.resize(nt, nt);
  out.full_b.resize(nt, nt);
  out.full_c.resize(nt, nt);
  out.full_grad.setFromTriplets(trip_grad.begin(), trip_grad.end());
  kmass.setFromTriplets(trip_kmass.begin(), trip_kmass.end());
  out.full_b.setFromTriplets(trip_b.begin(), trip_b.end());
  out.full_c.setFromTriplets(trip_c.begin(), trip_c.end());
  out.full_a = -out.full_grad + kmass;

  const std::array<const SparseMatrix*, 3> forms = {&out.full_a, &out.full_b, &out.full_c};
  for (int i = 0; i < 3; ++i) {
    out.a[static_cast<std::size_t>(i)] = forms[static_cast<std::size_t>(i)]->block(0, 0, ni, ni);
    out.c1[static_cast<std::size_t>(i)] =
        forms[static_cast<std::size_t>(i)]->block(0, ni, ni, 2 * n_z);
    out.a_norm[static_cast<std::size_t>(i)] = out.a[static_cast<std::size_t>(i)].norm();
    out.c1_norm[static_cast<std::size_t>(i)] = out.c1[static_cast<std::size_t>(i)].norm();
  }

  std::vector<Triplet> trip_c2t;
  trip_c2t.reserve(static_cast<std::size_t>(4 * n_z));
  for (Eigen::Index j = 1; j <= n_z; ++j) {
    trip_c2t.emplace_back(j - 1, grid.interior_index(1, j), Complex(out.stencil.d1, 0.0));
    trip_c2t.emplace_back(j - 1, grid.interior_index(2, j), Complex(out.stencil.d2, 0.0));
    trip_c2t.emplace_back(n_z + j - 1, grid.interior_index(n_x, j), Complex(out.stencil.d1, 0.0));
    trip_c2t.emplace_back(n_z + j - 1, grid.interior_index(n_x - 1, j),
                          Complex(out.stencil.d2, 0.0));
  }
  out.c2t.resize(2 * n_z, ni);
  out.c2t.setFromTriplets(trip_c2t.begin(), trip_c2t.end());
  out.c2t_norm = out.c2t.norm();

  return out;
}

/// Q(gamma) = A0 + gamma*A1 + gamma^2*A2 as an assembled sparse matrix.
inline SparseMatrix q_matrix(const WaveguideMatrices& m, Complex gamma) {
  return m.a[0] + gamma * m.a[1] + (gamma * gamma) * m.a[2];
}

/// C1(gamma) = C1_0 + gamma*C1_1 + gamma^2*C1_2.
inline SparseMatrix c1_matrix(const WaveguideMatrices& m, Complex gamma) {
  return m.c1[0] + gamma * m.c1[1] + (gamma * gamma) * m.c1[2];
}

}  // namespace wavenep
