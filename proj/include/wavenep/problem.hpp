// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "wavenep/basis_tensor.hpp"
#include "wavenep/types.hpp"

namespace wavenep {

/// A nonlinear eigenvalue problem M(lambda)w = 0, exposed through the two
/// actions the solvers need: the Taylor-coefficient step producing y_1 and the
/// evaluation M(lambda)w for residuals. Problems are immutable after
/// construction and safe to share across threads.
class NepProblem {
 public:
  virtual ~NepProblem() = default;

  virtual Eigen::Index dimension() const = 0;

  /// Given the block Y = [y_2 ... y_{k+1}] (n x k), return
  ///   y_1 = -M(0)^{-1} sum_{i=1}^{k} M^{(i)}(0) y_{i+1}.
  virtual Vector solve_step(const Matrix& y_block) const = 0;

  /// M(lambda) * w.
  virtual Vector evaluate(Complex lambda, const Vector& w) const = 0;
};

/// Problems that can produce y_1 directly from the compressed basis without
/// materializing the full vectors y_2,...,y_{k+1}. The tensor solver uses this
/// path when available.
class CompactStepNep : public NepProblem {
 public:
  /// y_1 from the factorization after k completed columns.
  virtual Vector solve_step_compact(const BasisTensor& basis, Eigen::Index k) const = 0;
};

/// Hides the compact-step capability of a problem so a solver exercises the
/// generic full-vector path; used to cross-check the compressed step.
class GenericStepAdapter : public NepProblem {
 public:
  explicit GenericStepAdapter(const NepProblem& inner) : inner_(inner) {}
  Eigen::Index dimension() const override { return inner_.dimension(); }
  Vector solve_step(const Matrix& y_block) const override { return inner_.solve_step(y_block); }
  Vector evaluate(Complex lambda, const Vector& w) const override {
    return inner_.evaluate(lambda, w);
  }

 private:
  const NepProblem& inner_;
};

}  // namespace wavenep
