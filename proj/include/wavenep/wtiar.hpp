// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "wavenep/cayley_nep.hpp"
#include "wavenep/iar.hpp"
#include "wavenep/tiar.hpp"

namespace wavenep {

/// Computes the untransformed relative residual E(w, gamma) for every Ritz
/// pair with a back-mapped gamma and sorts the report by it.
inline void attach_waveguide_residuals(const WaveguideSystem& system, TiarResult& result) {
  for (std::size_t i = 0; i < result.ritz.pairs.size(); ++i) {
    RitzPair& p = result.ritz.pairs[i];
    if (!p.gamma || p.mu_is_zero) continue;
    const Vector w = tiar_ritz_vector(result, static_cast<Eigen::Index>(i));
    p.residual = system.residual(*p.gamma, w);
  }
  sort_ritz_report(result.ritz);
}

inline void attach_waveguide_residuals(const WaveguideSystem& system, IarResult& result) {
  for (std::size_t i = 0; i < result.ritz.pairs.size(); ++i) {
    RitzPair& p = result.ritz.pairs[i];
    if (!p.gamma || p.mu_is_zero) continue;
    const Vector w = iar_ritz_vector(result, system.dimension(), static_cast<Eigen::Index>(i));
    p.residual = system.residual(*p.gamma, w);
  }
  sort_ritz_report(result.ritz);
}

/// Waveguide-specialized tensor infinite Arnoldi run: TIAR on the Cayley
/// NEP with the compressed step, Ritz values back-mapped to gamma and scored
/// by the untransformed residual.
inline TiarResult wtiar_run(const CayleyNep& nep, const Vector& x1, Eigen::Index m,
                            const IterationObserver& observer = {},
                            PhaseTimes* phases = nullptr) {
  TiarResult result = tiar_run(nep, x1, m, &nep.shift(), observer, phases);
  attach_waveguide_residuals(nep.system(), result);
  return result;
}

}  // namespace wavenep
