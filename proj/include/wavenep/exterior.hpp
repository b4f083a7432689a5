// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <vector>

#include "wavenep/dtn.hpp"
#include "wavenep/types.hpp"

namespace wavenep {

/// Per-mode diagnostic of the exterior solution w_k(x) = g_k * exp(i *
/// sign(Im beta_k) * sqrt(beta_k) * x) on the outward half-plane.
struct ExteriorModeReport {
  long k{0};
  Complex beta;
  Complex s;
  double ode_residual{0.0};   // |s^2 + beta|, the ODE w'' + beta w = 0 plugged in
  double decay_rate{0.0};     // Im(sign * sqrt(beta)); positive means decay
  bool decays{false};         // |w_k| strictly decreasing on the sample points
  double dtn_residual{0.0};   // |w_k'(0) - s_k * w_k(0)|
};

/// Verifies, mode by mode, that the chosen square-root branch produces
/// decaying exterior solutions satisfying the DtN relation. Throws the
/// degenerate-branch error of s_coeff for inadmissible gamma.
inline std::vector<ExteriorModeReport> exterior_check(Complex gamma, double kappa,
                                                      const std::vector<long>& modes,
                                                      const std::vector<double>& x_samples) {
  std::vector<ExteriorModeReport> reports;
  reports.reserve(modes.size());
  for (long k : modes) {
    ExteriorModeReport r;
    r.k = k;
    r.beta = beta_coeff(gamma, kappa, k);
    r.s = s_coeff(gamma, kappa, k);
    r.ode_residual = std::abs(r.s * r.s + r.beta);
    const Complex root = (r.beta.imag() > 0.0 ? 1.0 : -1.0) * std::sqrt(r.beta);
    r.decay_rate = root.imag();
    r.decays = r.decay_rate > 0.0;
    // Compare log-magnitudes: exp(-rate * x) underflows for the strongly
    // evanescent high-order modes.
    for (std::size_t i = 0; i + 1 < x_samples.size() && r.decays; ++i) {
      const double e0 = -r.decay_rate * x_samples[i];
      const double e1 = -r.decay_rate * x_samples[i + 1];
      if (!(x_samples[i] < x_samples[i + 1]) || !(e1 < e0)) r.decays = false;
    }
    // w'(0) = i * sign * sqrt(beta) * w(0); the DtN entry must reproduce it.
    r.dtn_residual = std::abs(Complex(0.0, 1.0) * root - r.s);
    reports.push_back(r);
  }
  return reports;
}

}  // namespace wavenep
