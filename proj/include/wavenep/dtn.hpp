// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include <fftw3.h>

#include "wavenep/types.hpp"

namespace wavenep {

/// beta_k(gamma) = (gamma + 2*i*pi*k)^2 + kappa^2.
inline Complex beta_coeff(Complex gamma, double kappa, long k) {
  const Complex shifted = gamma + Complex(0.0, 2.0 * pi * static_cast<double>(k));
  return shifted * shifted + kappa * kappa;
}

/// Signed branch s_k(gamma) = sign(Im beta_k) * i * sqrt(beta_k) (principal
/// square root). The sign choice selects the exterior solution branch that
/// decays away from the strip.
inline Complex s_coeff(Complex gamma, double kappa, long k) {
  const Complex beta = beta_coeff(gamma, kappa, k);
  if (beta.imag() == 0.0)
    throw std::domain_error("s_coeff: degenerate branch, Im(beta) = 0 (gamma on the singular set)");
  const double sign = beta.imag() > 0.0 ? 1.0 : -1.0;
  return sign * Complex(0.0, 1.0) * std::sqrt(beta);
}

/// Discrete Fourier factor R with columns exp(2*pi*i*j*z_k), j = -p..p and
/// grid z_k = k/n_z (k = 1..n_z), applied through FFTW. Coefficient vectors
/// are indexed by j + p. Methods are not internally synchronized; use one
/// instance per thread.
class PeriodicFourier {
 public:
  explicit PeriodicFourier(Eigen::Index n_z) : n_(n_z), p_((n_z - 1) / 2), buf_(n_z) {
    if (n_z < 1 || n_z % 2 == 0)
      throw std::invalid_argument("PeriodicFourier: n_z must be odd and positive");
    auto* raw = reinterpret_cast<fftw_complex*>(buf_.data());
    forward_ = fftw_plan_dft_1d(static_cast<int>(n_), raw, raw, FFTW_FORWARD, FFTW_ESTIMATE);
    backward_ = fftw_plan_dft_1d(static_cast<int>(n_), raw, raw, FFTW_BACKWARD, FFTW_ESTIMATE);
  }
  ~PeriodicFourier() {
    fftw_destroy_plan(forward_);
    fftw_destroy_plan(backward_);
  }
  PeriodicFourier(const PeriodicFourier&) = delete;
  PeriodicFourier& operator=(const PeriodicFourier&) = delete;

  Eigen::Index size() const { return n_; }
  Eigen::Index p() const { return p_; }

  /// c = R^{-1} g: Fourier coefficients c_j (stored at j + p) of grid values.
  Vector to_coeffs(const Vector& g) const {
    check(g);
    for (Eigen::Index k = 1; k <= n_; ++k) buf_[static_cast<std::size_t>(k % n_)] = g(k - 1);
    fftw_execute(forward_);
    Vector c(n_);
    for (Eigen::Index j = -p_; j <= p_; ++j)
      c(j + p_) = buf_[static_cast<std::size_t>((j + n_) % n_)] / static_cast<double>(n_);
    return c;
  }

  /// g = R c: grid values from Fourier coefficients.
  Vector from_coeffs(const Vector& c) const {
    check(c);
    std::fill(buf_.begin(), buf_.end(), Complex(0.0, 0.0));
    for (Eigen::Index j = -p_; j <= p_; ++j) buf_[static_cast<std::size_t>((j + n_) % n_)] = c(j + p_);
    fftw_execute(backward_);
    Vector g(n_);
    for (Eigen::Index k = 1; k <= n_; ++k) g(k - 1) = buf_[static_cast<std::size_t>(k % n_)];
    return g;
  }

  /// R * diag(d) * R^{-1} * g with d indexed by j + p.
  Vector apply_diagonal(const Vector& d, const Vector& g) const {
    return from_coeffs(Vector(d.cwiseProduct(to_coeffs(g))));
  }

  /// Dense construction of R, for cross-checks on small sizes.
  Matrix dense_r() const {
    Matrix r(n_, n_);
    for (Eigen::Index k = 1; k <= n_; ++k)
      for (Eigen::Index j = -p_; j <= p_; ++j)
        r(k - 1, j + p_) =
            std::exp(Complex(0.0, 2.0 * pi * static_cast<double>(j * k) / static_cast<double>(n_)));
    return r;
  }

 private:
  void check(const Vector& v) const {
    if (v.size() != n_) throw std::invalid_argument("PeriodicFourier: size mismatch");
  }
  Eigen::Index n_;
  Eigen::Index p_;
  mutable std::vector<Complex> buf_;
  fftw_plan forward_;
  fftw_plan backward_;
};

/// One-sided Dirichlet-to-Neumann operator of the exterior half-plane:
/// T(gamma) = R * diag(s_{-p..p}(gamma)) * R^{-1} on the n_z boundary values.
class DtnOperator {
 public:
  DtnOperator(double kappa, Eigen::Index n_z) : kappa_(kappa), fourier_(n_z) {
    if (!(kappa > 0.0)) throw std::invalid_argument("DtnOperator: kappa must be positive");
  }

  double kappa() const { return kappa_; }
  Eigen::Index size() const { return fourier_.size(); }
  const PeriodicFourier& fourier() const { return fourier_; }

  /// Diagonal entries s_j(gamma), j = -p..p (indexed j + p).
  Vector s_values(Complex gamma) const {
    const Eigen::Index p = fourier_.p();
    Vector s(fourier_.size());
    for (Eigen::Index j = -p; j <= p; ++j) s(j + p) = s_coeff(gamma, kappa_, j);
    return s;
  }

  /// R * L(gamma) * R^{-1} * g.
  Vector apply(Complex gamma, const Vector& g) const {
    return fourier_.apply_diagonal(s_values(gamma), g);
  }

 private:
  double kappa_;
  PeriodicFourier fourier_;
};

}  // namespace wavenep
