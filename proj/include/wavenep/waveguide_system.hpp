// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>

#include "wavenep/dtn.hpp"
#include "wavenep/fem.hpp"
#include "wavenep/geometry.hpp"
#include "wavenep/grid.hpp"
#include "wavenep/types.hpp"

namespace wavenep {

/// Assembled waveguide problem: FEM blocks plus the two exterior DtN
/// operators. Immutable after construction; the FFT buffers inside the DtN
/// operators make the apply methods non-reentrant per instance.
class WaveguideSystem {
 public:
  WaveguideSystem(const WaveguideGeometry& geometry, const DiscretizationGrid& grid)
      : m_(assemble_fem(geometry, grid)),
        dtn_minus_(geometry.kappa_minus, grid.n_z),
        dtn_plus_(geometry.kappa_plus, grid.n_z) {}

  WaveguideSystem(const WaveguideSystem&) = delete;
  WaveguideSystem& operator=(const WaveguideSystem&) = delete;

  const WaveguideMatrices& matrices() const { return m_; }
  const DtnOperator& dtn_minus() const { return dtn_minus_; }
  const DtnOperator& dtn_plus() const { return dtn_plus_; }
  const DiscretizationGrid& grid() const { return m_.grid; }
  Eigen::Index dimension() const { return m_.grid.total_size(); }

  /// M(gamma) * w with the layout w = [u_interior; u_minus; u_plus].
  Vector evaluate(Complex gamma, const Vector& w) const {
    const Eigen::Index ni = m_.grid.interior_size();
    const Eigen::Index nz = m_.grid.n_z;
    if (w.size() != dimension())
      throw std::invalid_argument("WaveguideSystem::evaluate: dimension mismatch");
    const auto u = w.head(ni);
    const auto ub = w.tail(2 * nz);
    Vector out(dimension());
    const Complex g2 = gamma * gamma;
    out.head(ni) = m_.a[0] * u + gamma * (m_.a[1] * u) + g2 * (m_.a[2] * u) + m_.c1[0] * ub +
                   gamma * (m_.c1[1] * ub) + g2 * (m_.c1[2] * ub);
    // Bottom rows: stencil coupling plus P(gamma) = blkdiag(R Lambda_- R^-1,
    // R Lambda_+ R^-1) with Lambda = L + d0*I.
    out.tail(2 * nz) = m_.c2t * u;
    out.segment(ni, nz) +=
        dtn_minus_.apply(gamma, Vector(ub.head(nz))) + m_.stencil.d0 * ub.head(nz);
    out.tail(nz) += dtn_plus_.apply(gamma, Vector(ub.tail(nz))) + m_.stencil.d0 * ub.tail(nz);
    return out;
  }

  /// Scale factor of the relative residual: a gamma-dependent sum of block
  /// norms (Frobenius for the sparse blocks, absolute values for the diagonal
  /// boundary data).
  double residual_scale(Complex gamma) const {
    const double ag = std::abs(gamma);
    double scale = std::abs(m_.stencil.d0) * 2.0 + m_.c2t_norm;
    double pw = 1.0;
    for (int i = 0; i < 3; ++i) {
      scale += pw * (m_.a_norm[static_cast<std::size_t>(i)] +
                     m_.c1_norm[static_cast<std::size_t>(i)]);
      pw *= ag;
    }
    scale += dtn_minus_.s_values(gamma).cwiseAbs().sum();
    scale += dtn_plus_.s_values(gamma).cwiseAbs().sum();
    return scale;
  }

  /// Relative residual E(w, gamma) = ||M(gamma)w|| / (||w|| * scale(gamma)).
  double residual(Complex gamma, const Vector& w) const {
    const double wn = w.norm();
    if (wn == 0.0) return 0.0;
    return evaluate(gamma, w).norm() / (wn * residual_scale(gamma));
  }

 private:
  WaveguideMatrices m_;
  DtnOperator dtn_minus_;
  DtnOperator dtn_plus_;
};

}  // namespace wavenep
