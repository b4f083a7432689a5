#include <catch2/catch_amalgamated.hpp>

#include <random>

#include <wavenep/iar.hpp>
#include <wavenep/polynomial_nep.hpp>
#include <wavenep/tiar.hpp>

using namespace wavenep;

namespace {

std::mt19937& rng() {
  static std::mt19937 gen(20240817u);
  return gen;
}

Matrix random_matrix(Eigen::Index n) {
  std::normal_distribution<double> dist(0.0, 1.0);
  Matrix m(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) m(i, j) = Complex(dist(rng()), dist(rng()));
  return m;
}

Vector random_vector(Eigen::Index n) {
  std::normal_distribution<double> dist(0.0, 1.0);
  Vector v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = Complex(dist(rng()), dist(rng()));
  return v;
}

PolynomialNep random_poly(Eigen::Index n, Eigen::Index degree) {
  std::vector<Matrix> coeffs;
  coeffs.push_back(random_matrix(n) + 3.0 * Matrix::Identity(n, n));  // keep B_0 invertible
  for (Eigen::Index d = 1; d <= degree; ++d) coeffs.push_back(0.5 * random_matrix(n));
  return PolynomialNep(std::move(coeffs));
}

}  // namespace

TEST_CASE("polynomial Taylor step matches the closed form", "[core]") {
  const Eigen::Index n = 12;
  PolynomialNep nep = random_poly(n, 3);
  const Eigen::Index k = 6;
  Matrix y_block(n, k);
  for (Eigen::Index j = 0; j < k; ++j) y_block.col(j) = random_vector(n);

  Vector rhs = Vector::Zero(n);
  double factorial = 1.0;
  for (Eigen::Index i = 1; i <= 3; ++i) {
    factorial *= static_cast<double>(i);
    rhs += factorial * (nep.coefficient(i) * y_block.col(i - 1));
  }
  const Vector expected = -nep.coefficient(0).partialPivLu().solve(rhs);
  const Vector got = nep.solve_step(y_block);
  CHECK((got - expected).norm() < 1e-12 * expected.norm());

  SECTION("step is linear in the inputs") {
    Matrix y2(n, k);
    for (Eigen::Index j = 0; j < k; ++j) y2.col(j) = random_vector(n);
    const Complex a(0.7, -0.3), b(-1.1, 0.2);
    const Vector lhs = nep.solve_step(a * y_block + b * y2);
    const Vector sum = a * nep.solve_step(y_block) + b * nep.solve_step(y2);
    CHECK((lhs - sum).norm() < 1e-11 * (1.0 + sum.norm()));
  }
}

TEST_CASE("IAR Ritz values converge to reciprocal companion eigenvalues", "[core]") {
  const Eigen::Index n = 8;
  const Eigen::Index degree = 3;
  PolynomialNep nep = random_poly(n, degree);

  // mu = 1/lambda solves the reversed polynomial; its block companion matrix
  // has eigenvalues mu directly comparable to the Ritz values.
  Matrix companion = Matrix::Zero(n * degree, n * degree);
  Eigen::PartialPivLU<Matrix> lu(nep.coefficient(0));
  for (Eigen::Index d = 1; d <= degree; ++d)
    companion.block(0, (d - 1) * n, n, n) = -lu.solve(nep.coefficient(d));
  companion.block(n, 0, n * (degree - 1), n * (degree - 1)) =
      Matrix::Identity(n * (degree - 1), n * (degree - 1));
  Eigen::ComplexEigenSolver<Matrix> eig(companion);

  std::vector<Complex> mus(eig.eigenvalues().data(),
                           eig.eigenvalues().data() + eig.eigenvalues().size());
  std::sort(mus.begin(), mus.end(),
            [](Complex a, Complex b) { return std::abs(a) > std::abs(b); });

  const Vector x1 = random_vector(n);
  IarResult result = iar_run(nep, x1, 40);
  REQUIRE(result.hess.iterations == 40);

  for (int t = 0; t < 3; ++t) {
    double best = 1e300;
    for (const RitzPair& p : result.ritz.pairs)
      best = std::min(best, std::abs(p.mu - mus[static_cast<std::size_t>(t)]));
    INFO("companion eigenvalue " << t << ": " << mus[static_cast<std::size_t>(t)]);
    CHECK(best < 1e-8 * std::abs(mus[static_cast<std::size_t>(t)]));
  }

  SECTION("a converged Ritz pair has a small NEP residual") {
    // Pick the Ritz value nearest the dominant mu and verify M(1/mu) w ~ 0.
    Eigen::Index best_i = 0;
    double best = 1e300;
    for (std::size_t i = 0; i < result.ritz.pairs.size(); ++i) {
      const double d = std::abs(result.ritz.pairs[i].mu - mus[0]);
      if (d < best) {
        best = d;
        best_i = static_cast<Eigen::Index>(i);
      }
    }
    const RitzPair& p = result.ritz.pairs[static_cast<std::size_t>(best_i)];
    const Vector w = iar_ritz_vector(result, n, best_i);
    CHECK(nep.evaluate(p.approximation, w).norm() < 1e-8 * w.norm());
  }
}

TEST_CASE("TIAR reproduces the IAR Hessenberg matrix", "[core]") {
  for (int rep = 0; rep < 3; ++rep) {
    const Eigen::Index n = 25 + 5 * rep;
    PolynomialNep nep = random_poly(n, 2 + rep % 2);
    const Vector x1 = random_vector(n);
    const Eigen::Index m = 25;
    IarResult iar = iar_run(nep, x1, m);
    TiarResult tiar = tiar_run(nep, x1, m);
    REQUIRE(iar.hess.iterations == tiar.hess.iterations);
    const double rel =
        (iar.hess.h - tiar.hess.h).norm() / iar.hess.h.norm();
    INFO("instance " << rep << " relative H difference " << rel);
    CHECK(rel < 1e-10);
  }
}

TEST_CASE("tensor basis reconstruction matches the explicit IAR basis", "[core]") {
  const Eigen::Index n = 30;
  const Eigen::Index m = 12;
  PolynomialNep nep = random_poly(n, 3);
  const Vector x1 = random_vector(n);
  IarResult iar = iar_run(nep, x1, m);
  TiarResult tiar = tiar_run(nep, x1, m);

  const Matrix q_tensor = tiar.basis.reconstruct_basis();
  const Matrix q_iar = iar.basis.topLeftCorner(n * (m + 1), m + 1);
  REQUIRE(q_tensor.rows() <= q_iar.rows());
  const Matrix q_ref = iar.basis.topLeftCorner(q_tensor.rows(), q_tensor.cols());
  CHECK((q_tensor - q_ref).norm() < 1e-10 * q_ref.norm());

  SECTION("reconstructed basis is orthonormal") {
    const Matrix gram = q_tensor.adjoint() * q_tensor;
    CHECK((gram - Matrix::Identity(gram.rows(), gram.cols())).norm() < 1e-12 * gram.rows());
  }

  SECTION("storage accounting is k*n + k^3") {
    const std::size_t k = static_cast<std::size_t>(tiar.basis.cols());
    CHECK(tiar.basis.logical_storage_count() == k * static_cast<std::size_t>(n) + k * k * k);
  }
}

TEST_CASE("Z stays orthonormal over a long run past saturation", "[core]") {
  const Eigen::Index n = 30;
  const Eigen::Index m = 100;
  PolynomialNep nep = random_poly(n, 3);
  const Vector x1 = random_vector(n);
  TiarResult result = tiar_run(nep, x1, m);
  REQUIRE(result.hess.iterations == m);
  CHECK(!result.hess.breakdown);
  // Z saturates at n directions while the coefficient columns keep growing.
  CHECK(result.basis.z_cols() == n);
  CHECK(result.basis.cols() == m + 1);
  const auto z = result.basis.z();
  const Matrix gram = z.adjoint() * z;
  const double worst = (gram - Matrix::Identity(gram.rows(), gram.cols())).norm();
  INFO("||Z^H Z - I|| = " << worst);
  CHECK(worst < 1e-12 * static_cast<double>(m));

  SECTION("IAR agrees with TIAR across the saturation point") {
    IarResult iar = iar_run(nep, x1, 40);
    TiarResult tiar = tiar_run(nep, x1, 40);
    REQUIRE(iar.hess.iterations == 40);
    REQUIRE(tiar.hess.iterations == 40);
    CHECK((iar.hess.h - tiar.hess.h).norm() < 1e-10 * iar.hess.h.norm());
  }
}

TEST_CASE("tensor coefficients vanish outside the triangular support", "[core]") {
  const Eigen::Index n = 10;
  PolynomialNep nep = random_poly(n, 2);
  TiarResult result = tiar_run(nep, random_vector(n), 8);
  for (Eigen::Index j = 1; j <= result.basis.cols(); ++j) {
    const Matrix& block = result.basis.column(j);
    CHECK(block.rows() == j);
    CHECK(block.cols() == j);
    // Implicit zeros outside the stored block.
    CHECK(result.basis.coeff(j + 1, j, 1) == Complex(0.0, 0.0));
    CHECK(result.basis.coeff(1, j, j + 1) == Complex(0.0, 0.0));
  }
}

TEST_CASE("scalar linear problem: exact eigenvalue with Z saturated at one column", "[core]") {
  // M(lambda) = 1 - lambda has the single eigenvalue lambda = 1. The
  // orthonormal factor saturates immediately (n = 1) while the iteration keeps
  // producing valid Hessenberg columns.
  std::vector<Matrix> coeffs(2, Matrix::Ones(1, 1));
  coeffs[1](0, 0) = Complex(-1.0, 0.0);
  PolynomialNep nep(coeffs);
  Vector x1 = Vector::Ones(1);

  IarResult iar = iar_run(nep, x1, 6);
  TiarResult tiar = tiar_run(nep, x1, 6);
  REQUIRE(iar.hess.iterations == 6);
  REQUIRE(tiar.hess.iterations == 6);
  CHECK(tiar.basis.z_cols() == 1);
  CHECK((iar.hess.h - tiar.hess.h).norm() < 1e-12);

  double best = 1e300;
  for (const RitzPair& p : tiar.ritz.pairs)
    if (!p.mu_is_zero) best = std::min(best, std::abs(p.approximation - Complex(1.0, 0.0)));
  CHECK(best < 1e-10);
}

TEST_CASE("invalid starting vectors are rejected", "[core]") {
  PolynomialNep nep = random_poly(5, 2);
  CHECK_THROWS_AS(iar_run(nep, Vector::Zero(5), 3), std::invalid_argument);
  CHECK_THROWS_AS(tiar_run(nep, Vector::Zero(5), 3), std::invalid_argument);
  CHECK_THROWS_AS(iar_run(nep, Vector::Ones(4), 3), std::invalid_argument);
  CHECK_THROWS_AS(tiar_run(nep, Vector::Ones(6), 3), std::invalid_argument);
}
