// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <stdexcept>

#include "wavenep/types.hpp"

namespace wavenep {

/// Shift defining the Moebius map lambda = (gamma - gamma0) / (gamma + conj(gamma0)).
/// The map sends the imaginary axis (where the branch-point singularities of
/// the waveguide problem live) to the unit circle and gamma0 to the origin.
struct CayleyShift {
  Complex gamma0;

  explicit CayleyShift(Complex g0) : gamma0(g0) {
    if (g0.real() == 0.0)
      throw std::invalid_argument("CayleyShift: Re(gamma0) must be nonzero");
    const double q = g0.imag() / (2.0 * pi);
    if (q == std::round(q))
      throw std::invalid_argument("CayleyShift: Im(gamma0) must not be a multiple of 2*pi");
  }
};

inline Complex cayley_forward(Complex gamma, const CayleyShift& shift) {
  const Complex denom = gamma + std::conj(shift.gamma0);
  if (denom == Complex(0.0, 0.0))
    throw std::domain_error("cayley_forward: pole at gamma = -conj(gamma0)");
  return (gamma - shift.gamma0) / denom;
}

inline Complex cayley_inverse(Complex lambda, const CayleyShift& shift) {
  const Complex denom = Complex(1.0, 0.0) - lambda;
  if (denom == Complex(0.0, 0.0))
    throw std::domain_error("cayley_inverse: pole at lambda = 1");
  return (shift.gamma0 + lambda * std::conj(shift.gamma0)) / denom;
}

}  // namespace wavenep
