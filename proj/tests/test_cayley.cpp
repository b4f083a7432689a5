#include <catch2/catch_amalgamated.hpp>

#include <wavenep/cayley.hpp>

using namespace wavenep;

TEST_CASE("shift validation rejects degenerate parameters", "[cayley]") {
  CHECK_THROWS_AS(CayleyShift(Complex(0.0, 1.0)), std::invalid_argument);
  CHECK_THROWS_AS(CayleyShift(Complex(-1.0, 0.0)), std::invalid_argument);
  CHECK_THROWS_AS(CayleyShift(Complex(-1.0, 2.0 * pi)), std::invalid_argument);
  CHECK_THROWS_AS(CayleyShift(Complex(-1.0, -4.0 * pi)), std::invalid_argument);
  CHECK_NOTHROW(CayleyShift(Complex(-3.0, pi)));
  CHECK_NOTHROW(CayleyShift(Complex(2.0, -0.5)));
}

TEST_CASE("forward and inverse are mutually inverse", "[cayley]") {
  const CayleyShift shift(Complex(-3.0, pi));
  const std::vector<Complex> samples = {
      {-0.5, -1.2}, {2.0, 3.0}, {-10.0, 0.3}, {-0.01, -4.97}, {1e-8, 5.0}};
  for (const Complex g : samples) {
    const Complex lam = cayley_forward(g, shift);
    const Complex back = cayley_inverse(lam, shift);
    CHECK(std::abs(back - g) < 1e-12 * (1.0 + std::abs(g)));
  }
  for (const Complex lam : {Complex(0.3, 0.4), Complex(-0.9, 0.1), Complex(2.0, -1.0)}) {
    const Complex g = cayley_inverse(lam, shift);
    CHECK(std::abs(cayley_forward(g, shift) - lam) < 1e-12 * (1.0 + std::abs(lam)));
  }
}

TEST_CASE("gamma0 maps to the origin and the axis to the unit circle", "[cayley]") {
  const CayleyShift shift(Complex(-2.5, -1.0));
  CHECK(std::abs(cayley_forward(shift.gamma0, shift)) == 0.0);
  for (double t : {-20.0, -3.0, 0.0, 0.7, 15.0}) {
    const Complex lam = cayley_forward(Complex(0.0, t), shift);
    CHECK(std::abs(std::abs(lam) - 1.0) < 1e-12);
  }
}

TEST_CASE("left half-plane maps inside the unit disk for Re(gamma0) < 0", "[cayley]") {
  const CayleyShift shift(Complex(-3.0, -pi));
  CHECK(std::abs(cayley_forward(Complex(-1.0, 2.0), shift)) < 1.0);
  CHECK(std::abs(cayley_forward(Complex(-7.0, -5.0), shift)) < 1.0);
  CHECK(std::abs(cayley_forward(Complex(0.5, 1.0), shift)) > 1.0);
  CHECK(std::abs(cayley_forward(Complex(3.0, -2.0), shift)) > 1.0);
}

TEST_CASE("poles of the Moebius map throw", "[cayley]") {
  const CayleyShift shift(Complex(-3.0, pi));
  CHECK_THROWS_AS(cayley_forward(-std::conj(shift.gamma0), shift), std::domain_error);
  CHECK_THROWS_AS(cayley_inverse(Complex(1.0, 0.0), shift), std::domain_error);
}
