// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "wavenep/cayley.hpp"
#include "wavenep/types.hpp"

namespace wavenep {

/// Taylor data of one Fourier mode of the transformed boundary symbol
/// phi(lambda) = (1 - lambda) * (s_j(gamma(lambda)) + d0): f_l are the Taylor
/// coefficients of sqrt(a*lambda^2 + b*lambda + c) and alpha_l = phi^{(l)}(0)
/// are the derivatives entering the Taylor-coefficient step.
struct AlphaSequence {
  Complex a, b, c;
  double w{0.0};
  std::vector<Complex> f;      // Taylor coefficients, index l = 0..l_max
  std::vector<Complex> alpha;  // derivatives phi^{(l)}(0)
};

/// Three-term recurrence for the Taylor coefficients of the square root of
/// the quadratic a*lambda^2 + b*lambda + c obtained by composing the signed
/// square root of beta_j with the inverse Cayley map.
inline AlphaSequence alpha_recursion(Complex gamma0, double kappa, long j, Eigen::Index l_max,
                                     double d0) {
  if (gamma0.real() == 0.0)
    throw std::domain_error("alpha_recursion: gamma0 on the imaginary axis (degenerate branch)");
  AlphaSequence out;
  const Complex g0c = std::conj(gamma0);
  const double tpj = 2.0 * pi * static_cast<double>(j);
  const Complex itpj(0.0, 2.0 * tpj);  // 4*pi*i*j
  out.a = g0c * g0c - itpj * g0c - tpj * tpj + kappa * kappa;
  out.b = 2.0 * gamma0 * g0c + itpj * (g0c - gamma0) + 2.0 * tpj * tpj - 2.0 * kappa * kappa;
  out.c = itpj * gamma0 - tpj * tpj + kappa * kappa + gamma0 * gamma0;
  if (out.c == Complex(0.0, 0.0))
    throw std::domain_error("alpha_recursion: c = beta_j(gamma0) vanishes");
  out.w = gamma0.real() * (gamma0.imag() + tpj) >= 0.0 ? 1.0 : -1.0;

  out.f.resize(static_cast<std::size_t>(l_max) + 1);
  const Complex sqrt_c = std::sqrt(out.c);
  out.f[0] = sqrt_c;
  if (l_max >= 1) out.f[1] = out.b / (2.0 * sqrt_c);
  for (Eigen::Index l = 2; l <= l_max; ++l) {
    const double dl = static_cast<double>(l);
    out.f[static_cast<std::size_t>(l)] =
        -(2.0 * out.a * (dl - 3.0) * out.f[static_cast<std::size_t>(l - 2)] +
          out.b * (2.0 * dl - 3.0) * out.f[static_cast<std::size_t>(l - 1)]) /
        (2.0 * dl * out.c);
  }

  out.alpha.resize(out.f.size());
  const Complex iw(0.0, out.w);
  out.alpha[0] = iw * out.f[0] + d0;
  if (l_max >= 1) out.alpha[1] = iw * out.f[1] - d0;
  double factorial = 1.0;
  for (Eigen::Index l = 2; l <= l_max; ++l) {
    factorial *= static_cast<double>(l);
    out.alpha[static_cast<std::size_t>(l)] = iw * out.f[static_cast<std::size_t>(l)] * factorial;
  }
  return out;
}

/// alpha derivatives for every Fourier mode of both exterior sides, arranged
/// so column l is the diagonal of D_l = diag(alpha_{-,-p..p,l},
/// alpha_{+,-p..p,l}) acting on the stacked boundary coefficients.
class AlphaTable {
 public:
  AlphaTable(Complex gamma0, double kappa_minus, double kappa_plus, Eigen::Index n_z,
             Eigen::Index l_max, double d0)
      : table_(2 * n_z, l_max + 1) {
    const Eigen::Index p = (n_z - 1) / 2;
    for (Eigen::Index j = -p; j <= p; ++j) {
      const AlphaSequence minus = alpha_recursion(gamma0, kappa_minus, j, l_max, d0);
      const AlphaSequence plus = alpha_recursion(gamma0, kappa_plus, j, l_max, d0);
      for (Eigen::Index l = 0; l <= l_max; ++l) {
        table_(j + p, l) = minus.alpha[static_cast<std::size_t>(l)];
        table_(n_z + j + p, l) = plus.alpha[static_cast<std::size_t>(l)];
      }
    }
  }

  Eigen::Index depth() const { return table_.cols() - 1; }
  /// Stacked diagonal of D_l (length 2*n_z, minus side first).
  Eigen::Ref<const Vector> diagonal(Eigen::Index l) const { return table_.col(l); }

 private:
  Matrix table_;
};

}  // namespace wavenep
