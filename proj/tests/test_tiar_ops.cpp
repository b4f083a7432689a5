#include <catch2/catch_amalgamated.hpp>

#include <random>

#include <wavenep/polynomial_nep.hpp>
#include <wavenep/tiar.hpp>

using namespace wavenep;

namespace {

std::mt19937& rng() {
  static std::mt19937 gen(7140123u);
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

/// Fixture: a partially-run tensor factorization plus the equivalent dense
/// quantities, against which each compressed operation is checked.
struct Fixture {
  Eigen::Index n{14};
  Eigen::Index k{7};
  PolynomialNep nep;
  TiarResult run;
  Matrix q;  // reconstructed dense basis, (n*k) x k

  Fixture()
      : nep([this] {
          std::vector<Matrix> coeffs;
          coeffs.push_back(random_matrix(n) + 3.0 * Matrix::Identity(n, n));
          coeffs.push_back(0.5 * random_matrix(n));
          coeffs.push_back(0.5 * random_matrix(n));
          return coeffs;
        }()),
        run(tiar_run(nep, random_vector(n), k - 1)) {
    REQUIRE(run.basis.cols() == k);
    q = run.basis.reconstruct_basis();
  }
};

}  // namespace

TEST_CASE_METHOD(Fixture, "tiar_y_block equals the stacked basis column", "[tiar-ops]") {
  const Matrix y = tiar_y_block(run.basis, k);
  REQUIRE(y.cols() == k);
  for (Eigen::Index i = 1; i <= k; ++i) {
    const Vector expected = q.block((i - 1) * n, k - 1, n, 1);
    CHECK((y.col(i - 1) - expected).norm() < 1e-12 * (1.0 + expected.norm()));
  }
}

TEST_CASE_METHOD(Fixture, "tiar_orthogonalize decomposes y1 exactly", "[tiar-ops]") {
  const Vector y1 = random_vector(n);
  const TiarOrthogonalization orth = tiar_orthogonalize(run.basis, y1);
  REQUIRE(!orth.saturated);
  const Vector rebuilt = run.basis.z() * orth.t.head(k) + orth.z_next * orth.t(k);
  CHECK((rebuilt - y1).norm() < 1e-12 * y1.norm());

  SECTION("the new direction is a unit vector orthogonal to Z") {
    CHECK(std::abs(orth.z_next.norm() - 1.0) < 1e-13);
    CHECK((run.basis.z().adjoint() * orth.z_next).norm() < 1e-13);
  }

  SECTION("phase convention: largest entry real positive") {
    Eigen::Index imax = 0;
    orth.z_next.cwiseAbs().maxCoeff(&imax);
    CHECK(std::abs(orth.z_next(imax).imag()) < 1e-13);
    CHECK(orth.z_next(imax).real() > 0.0);
  }

  SECTION("a vector inside span(Z) reports saturation with a valid t") {
    const Vector inside = run.basis.z() * random_vector(k);
    const TiarOrthogonalization b = tiar_orthogonalize(run.basis, inside);
    CHECK(b.saturated);
    REQUIRE(b.t.size() == k);
    CHECK((run.basis.z() * b.t - inside).norm() < 1e-10 * inside.norm());
  }
}

TEST_CASE_METHOD(Fixture, "tiar_build_g matches the expansion of the stacked y", "[tiar-ops]") {
  const Vector y1 = random_vector(n);
  const TiarOrthogonalization orth = tiar_orthogonalize(run.basis, y1);
  const Matrix g = tiar_build_g(run.basis, orth.t, k);

  REQUIRE(g.rows() == k + 1);
  REQUIRE(g.cols() == k + 1);
  // Row 1 carries the y1 coefficients, rows i >= 2 the scaled copy of the
  // previous basis column, and the trailing column is zero below row 1.
  CHECK((g.row(0).transpose() - orth.t).norm() < 1e-14);
  for (Eigen::Index i = 2; i <= k + 1; ++i) {
    CHECK(g(i - 1, k) == Complex(0.0, 0.0));
    const auto expected = run.basis.column(k).row(i - 2) / static_cast<double>(i - 1);
    CHECK((g.row(i - 1).head(k) - expected).norm() < 1e-14);
  }

  // Dense meaning: the stacked vector y = [y1; y_2 ... y_{k+1}] must equal
  // (I (x) [Z z_next]) vec-by-rows of G.
  Matrix z_ext(n, k + 1);
  z_ext.leftCols(k) = run.basis.z();
  z_ext.col(k) = orth.z_next;
  Vector y_stack = Vector::Zero(n * (k + 1));
  y_stack.head(n) = y1;
  for (Eigen::Index i = 2; i <= k + 1; ++i)
    y_stack.segment((i - 1) * n, n) =
        q.block((i - 2) * n, k - 1, n, 1) / static_cast<double>(i - 1);
  Vector y_from_g = Vector::Zero(n * (k + 1));
  for (Eigen::Index i = 1; i <= k + 1; ++i)
    y_from_g.segment((i - 1) * n, n) = z_ext * g.row(i - 1).transpose();
  CHECK((y_from_g - y_stack).norm() < 1e-12 * y_stack.norm());
}

TEST_CASE_METHOD(Fixture, "tiar_h equals the dense Gram-Schmidt coefficients", "[tiar-ops]") {
  const Vector y1 = random_vector(n);
  const TiarOrthogonalization orth = tiar_orthogonalize(run.basis, y1);
  const Matrix g = tiar_build_g(run.basis, orth.t, k);
  const Vector h = tiar_h(run.basis, g);

  // Dense h_j = q_j^H y over the stacked vectors.
  Vector y_stack = Vector::Zero(n * (k + 1));
  y_stack.head(n) = y1;
  for (Eigen::Index i = 2; i <= k + 1; ++i)
    y_stack.segment((i - 1) * n, n) =
        q.block((i - 2) * n, k - 1, n, 1) / static_cast<double>(i - 1);
  for (Eigen::Index j = 1; j <= k; ++j) {
    Vector qj = Vector::Zero(n * (k + 1));
    qj.head(n * k) = q.col(j - 1);
    const Complex dense = qj.adjoint() * y_stack;
    CHECK(std::abs(h(j - 1) - dense) < 1e-12 * (1.0 + std::abs(dense)));
  }
}

TEST_CASE_METHOD(Fixture, "tiar_f is the compressed orthogonal remainder", "[tiar-ops]") {
  const Vector y1 = random_vector(n);
  const TiarOrthogonalization orth = tiar_orthogonalize(run.basis, y1);
  const Matrix g = tiar_build_g(run.basis, orth.t, k);
  const Vector h = tiar_h(run.basis, g);
  const Matrix f = tiar_f(run.basis, g, h);

  // Dense remainder y - sum h_j q_j; its norm must equal ||F||_F.
  Vector y_stack = Vector::Zero(n * (k + 1));
  y_stack.head(n) = y1;
  for (Eigen::Index i = 2; i <= k + 1; ++i)
    y_stack.segment((i - 1) * n, n) =
        q.block((i - 2) * n, k - 1, n, 1) / static_cast<double>(i - 1);
  Vector remainder = y_stack;
  for (Eigen::Index j = 1; j <= k; ++j)
    remainder.head(n * k) -= h(j - 1) * q.col(j - 1);
  CHECK(std::abs(f.norm() - remainder.norm()) < 1e-11 * (1.0 + remainder.norm()));

  // Element meaning: block i of the remainder equals [Z z_next] * f.row(i).
  Matrix z_ext(n, k + 1);
  z_ext.leftCols(k) = run.basis.z();
  z_ext.col(k) = orth.z_next;
  for (Eigen::Index i = 1; i <= k + 1; ++i) {
    const Vector block = z_ext * f.row(i - 1).transpose();
    CHECK((block - remainder.segment((i - 1) * n, n)).norm() <
          1e-11 * (1.0 + remainder.norm()));
  }
}
