// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <utility>
#include <vector>

#include "wavenep/problem.hpp"

namespace wavenep {

/// Matrix polynomial M(lambda) = sum_i lambda^i B_i with dense coefficients.
/// M^{(i)}(0) = i! * B_i, so the Taylor step has a short closed form. Mainly a
/// test fixture for solver equivalence checks.
class PolynomialNep : public NepProblem {
 public:
  explicit PolynomialNep(std::vector<Matrix> coefficients)
      : coeffs_(std::move(coefficients)) {
    if (coeffs_.empty()) throw std::invalid_argument("PolynomialNep: no coefficients");
    n_ = coeffs_.front().rows();
    for (const Matrix& b : coeffs_)
      if (b.rows() != n_ || b.cols() != n_)
        throw std::invalid_argument("PolynomialNep: coefficient size mismatch");
    lu_.compute(coeffs_.front());
    if (std::abs(lu_.determinant()) == 0.0)
      throw std::invalid_argument("PolynomialNep: B_0 is singular");
  }

  Eigen::Index dimension() const override { return n_; }
  Eigen::Index degree() const { return static_cast<Eigen::Index>(coeffs_.size()) - 1; }
  const Matrix& coefficient(Eigen::Index i) const { return coeffs_[static_cast<std::size_t>(i)]; }

  Vector solve_step(const Matrix& y_block) const override {
    const Eigen::Index k = y_block.cols();
    Vector rhs = Vector::Zero(n_);
    double factorial = 1.0;
    for (Eigen::Index i = 1; i <= std::min(k, degree()); ++i) {
      factorial *= static_cast<double>(i);
      rhs += factorial * (coeffs_[static_cast<std::size_t>(i)] * y_block.col(i - 1));
    }
    return -lu_.solve(rhs);
  }

  Vector evaluate(Complex lambda, const Vector& w) const override {
    Vector out = Vector::Zero(n_);
    Complex power(1.0, 0.0);
    for (const Matrix& b : coeffs_) {
      out += power * (b * w);
      power *= lambda;
    }
    return out;
  }

 private:
  std::vector<Matrix> coeffs_;
  Eigen::Index n_;
  Eigen::PartialPivLU<Matrix> lu_;
};

}  // namespace wavenep
