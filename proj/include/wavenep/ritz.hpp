// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <vector>

#include <Eigen/Eigenvalues>

#include "wavenep/cayley.hpp"
#include "wavenep/types.hpp"

namespace wavenep {

/// Optional wall-time breakdown of a solver run, in seconds.
struct PhaseTimes {
  double y_access{0.0};          // materializing/scaling the y block
  double y_solve{0.0};           // Taylor-coefficient solve for y_1
  double orthogonalization{0.0}; // Gram-Schmidt (compressed or explicit)
  double hessenberg_eig{0.0};    // Ritz extraction
};

/// Rectangular Hessenberg matrix accumulated across iterations.
struct HessenbergState {
  Matrix h;                  // (k+1) x k
  Eigen::Index iterations{0};
  bool breakdown{false};
};

struct RitzPair {
  Complex mu;                    // eigenvalue of the leading square Hessenberg block
  Complex approximation;         // 1/mu
  std::optional<Complex> gamma;  // back-mapped through the inverse Cayley transform
  double residual{std::numeric_limits<double>::quiet_NaN()};
  Eigen::Index iteration{0};
  bool mu_is_zero{false};        // infinite approximation, excluded from use
};

struct RitzReport {
  std::vector<RitzPair> pairs;
  /// Ritz vectors in the compressed coordinates (columns match pairs order).
  Matrix eigenvectors;
};

/// Eigen-decomposition of the leading m x m part of H. Approximations are
/// 1/mu_i; with a shift also gamma_i = cayley_inverse(1/mu_i).
inline RitzReport ritz_values(const HessenbergState& hess, Eigen::Index m,
                              const CayleyShift* shift = nullptr) {
  m = std::min(m, hess.iterations);
  Eigen::ComplexEigenSolver<Matrix> eig(hess.h.topLeftCorner(m, m));
  RitzReport report;
  report.eigenvectors = eig.eigenvectors();
  report.pairs.reserve(static_cast<std::size_t>(m));
  for (Eigen::Index i = 0; i < m; ++i) {
    RitzPair p;
    p.mu = eig.eigenvalues()(i);
    p.iteration = m;
    if (std::abs(p.mu) < 1e4 * std::numeric_limits<double>::min()) {
      p.mu_is_zero = true;
      p.approximation = Complex(std::numeric_limits<double>::infinity(), 0.0);
    } else {
      p.approximation = Complex(1.0, 0.0) / p.mu;
      if (shift != nullptr) p.gamma = cayley_inverse(p.approximation, *shift);
    }
    report.pairs.push_back(p);
  }
  return report;
}

/// Sort pairs by ascending residual, ties broken by |Re gamma| (distance of the
/// back-mapped value to the imaginary axis). NaN residuals sort last.
inline void sort_ritz_report(RitzReport& report) {
  std::vector<Eigen::Index> order(report.pairs.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<Eigen::Index>(i);
  auto key_res = [&](Eigen::Index i) {
    double r = report.pairs[static_cast<std::size_t>(i)].residual;
    return std::isnan(r) ? std::numeric_limits<double>::infinity() : r;
  };
  auto key_axis = [&](Eigen::Index i) {
    const RitzPair& p = report.pairs[static_cast<std::size_t>(i)];
    const Complex v = p.gamma ? *p.gamma : p.approximation;
    return std::abs(v.real());
  };
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
    if (key_res(a) != key_res(b)) return key_res(a) < key_res(b);
    return key_axis(a) < key_axis(b);
  });
  RitzReport sorted;
  sorted.eigenvectors.resize(report.eigenvectors.rows(), report.eigenvectors.cols());
  for (std::size_t i = 0; i < order.size(); ++i) {
    sorted.pairs.push_back(report.pairs[static_cast<std::size_t>(order[i])]);
    sorted.eigenvectors.col(static_cast<Eigen::Index>(i)) = report.eigenvectors.col(order[i]);
  }
  report = std::move(sorted);
}

}  // namespace wavenep
