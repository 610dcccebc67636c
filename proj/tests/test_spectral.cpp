#include "splitkdv/field.h"

#include "doctest.h"
#include "test_helpers.h"

#include <cmath>
#include <numbers>

using namespace splitkdv;
using splitkdv::testing::random_band_limited;
using splitkdv::testing::white_noise;

namespace {
constexpr double kPi = std::numbers::pi;

RealField sampled(const GridPtr& grid, double (*fn)(double)) {
  ArrayXd values(grid->size());
  for (int j = 0; j < grid->size(); ++j) values[j] = fn(grid->nodes()[j]);
  return RealField(grid, std::move(values));
}
}  // namespace

TEST_CASE("grid layout and wavenumbers") {
  auto grid = make_grid(2.0 * kPi, 8);
  CHECK(grid->nodes()[0] == 0.0);
  CHECK(grid->spacing() == doctest::Approx(kPi / 4.0));
  // FFT storage order: 0,1,2,3,-4,-3,-2,-1
  CHECK(grid->mode_number(3) == 3);
  CHECK(grid->mode_number(4) == -4);
  CHECK(grid->mode_number(7) == -1);
  CHECK(grid->wavenumbers()[1] == doctest::Approx(1.0));
  CHECK(grid->wavenumbers()[7] == doctest::Approx(-1.0));
  // antisymmetric except the Nyquist entry
  for (int m = 1; m < 4; ++m)
    CHECK(grid->wavenumbers()[grid->storage_index(-m)] ==
          doctest::Approx(-grid->wavenumbers()[m]));
  CHECK(grid->wavenumbers()[grid->nyquist_index()] == doctest::Approx(-4.0));
  CHECK_THROWS_AS(make_grid(2.0 * kPi, 7), std::invalid_argument);
  CHECK_THROWS_AS(make_grid(-1.0, 8), std::invalid_argument);
}

TEST_CASE("constant field transforms to its mean") {
  auto grid = make_grid(5.0, 16);
  const RealField f(grid, ArrayXd::Constant(16, 3.25));
  const Spectrum s = to_spectrum(f);
  CHECK(s.coeffs()[0].real() == doctest::Approx(3.25).epsilon(1e-14));
  for (int j = 1; j < 16; ++j) CHECK(std::abs(s.coeffs()[j]) <= 1e-14);
}

TEST_CASE("pure sine mode has coefficients -i/2 and +i/2") {
  const double length = 4.0;
  auto grid = make_grid(length, 32);
  ArrayXd values(32);
  for (int j = 0; j < 32; ++j) values[j] = std::sin(2.0 * kPi * grid->nodes()[j] / length);
  const Spectrum s = to_spectrum(RealField(grid, values));
  CHECK(std::abs(s.coeff_for_mode(1).real()) <= 1e-14);
  CHECK(s.coeff_for_mode(1).imag() == doctest::Approx(-0.5));
  CHECK(s.coeff_for_mode(-1).imag() == doctest::Approx(0.5));
  CHECK(s.symmetry_defect() <= 1e-12);
}

TEST_CASE("round trip on white noise is exact to 1e-12") {
  auto grid = make_grid(3.0, 128);
  for (unsigned seed : {1234u, 99u, 2026u, 7u, 31u}) {
    const RealField f = white_noise(grid, seed);
    const RealField back = from_spectrum(to_spectrum(f));
    CHECK((back.values() - f.values()).abs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("derivative basics") {
  auto grid = make_grid(2.0 * kPi, 64);

  SUBCASE("constant differentiates to zero") {
    const RealField c(grid, ArrayXd::Constant(64, -2.0));
    for (int order : {1, 2, 3}) CHECK(derivative(c, order).max_abs() <= 1e-13);
  }

  SUBCASE("third derivative of sin is -cos") {
    const RealField f = sampled(grid, [](double x) { return std::sin(x); });
    const RealField d3 = derivative(f, 3);
    for (int j = 0; j < 64; ++j)
      CHECK(d3.values()[j] == doctest::Approx(-std::cos(grid->nodes()[j])).epsilon(1e-10));
  }

  SUBCASE("order zero is the identity, bitwise") {
    const RealField f = white_noise(grid, 7);
    const RealField same = derivative(f, 0);
    CHECK((same.values() == f.values()).all());
  }

  SUBCASE("order out of range") {
    const RealField f = white_noise(grid, 8);
    CHECK_THROWS_AS(derivative(f, 10), std::invalid_argument);
  }

  SUBCASE("linearity") {
    const RealField f = random_band_limited(grid, 20, 21);
    const RealField g = random_band_limited(grid, 20, 22);
    for (int order : {1, 2, 3}) {
      const RealField lhs = derivative(2.5 * f + (-1.25) * g, order);
      const RealField rhs = 2.5 * derivative(f, order) + (-1.25) * derivative(g, order);
      const double scale = std::max(1.0, rhs.max_abs());
      CHECK((lhs - rhs).max_abs() <= 1e-12 * scale);
    }
  }
}

TEST_CASE("dealiased product") {
  SUBCASE("one times g returns the truncation of g") {
    auto grid = make_grid(2.0 * kPi, 24);
    const RealField ones(grid, ArrayXd::Constant(24, 1.0));
    const RealField g = random_band_limited(grid, 8, 3);  // band-limited within N/3
    CHECK((dealiased_product(ones, g) - g).max_abs() <= 1e-13);
  }

  SUBCASE("sin^2 = (1 - cos 2x)/2") {
    auto grid = make_grid(2.0 * kPi, 16);
    const RealField f = sampled(grid, [](double x) { return std::sin(x); });
    const RealField p = dealiased_product(f, f);
    for (int j = 0; j < 16; ++j) {
      const double expected = 0.5 * (1.0 - std::cos(2.0 * grid->nodes()[j]));
      CHECK(p.values()[j] == doctest::Approx(expected).epsilon(1e-10));
    }
  }

  SUBCASE("band-limited inputs match the brute-force convolution") {
    const int n = 32;
    auto grid = make_grid(1.0, n);
    const RealField f = random_band_limited(grid, n / 3, 41);
    const RealField g = random_band_limited(grid, n / 3, 42);
    const Spectrum sf = to_spectrum(f);
    const Spectrum sg = to_spectrum(g);

    // exact convolution over signed modes; inputs vanish for |m| > N/3 so no
    // aliasing can occur and the product spectrum is supported on |m| <= 2N/3
    const Spectrum sp = to_spectrum(dealiased_product(f, g));
    for (int m = -n / 2; m < n / 2; ++m) {
      std::complex<double> exact(0.0, 0.0);
      for (int p = -n / 3; p <= n / 3; ++p) {
        const int q = m - p;
        if (q < -n / 2 || q >= n / 2) continue;
        exact += sf.coeff_for_mode(p) * sg.coeff_for_mode(q);
      }
      if (3 * std::abs(m) > n) exact = 0.0;  // the 2/3 rule re-truncates
      CHECK(std::abs(sp.coeff_for_mode(m) - exact) <= 1e-13);
    }
  }
}

TEST_CASE("sobolev norms") {
  auto grid = make_grid(2.0 * kPi, 64);

  SUBCASE("zero field has zero norm") {
    CHECK(sobolev_norm(RealField::zero(grid), 0) == 0.0);
    CHECK(sobolev_norm(RealField::zero(grid), 5) == 0.0);
  }

  SUBCASE("sin has H^0 norm sqrt(pi) and H^1 norm sqrt(2 pi)") {
    const RealField f = sampled(grid, [](double x) { return std::sin(x); });
    CHECK(sobolev_norm(f, 0) == doctest::Approx(std::sqrt(kPi)).epsilon(1e-12));
    CHECK(sobolev_norm(f, 1) == doctest::Approx(std::sqrt(2.0 * kPi)).epsilon(1e-12));
  }

  SUBCASE("monotone in the norm index") {
    for (unsigned seed : {99u, 100u, 101u}) {
      const RealField f = random_band_limited(grid, 20, seed);
      for (int s = 0; s < 12; ++s) CHECK(sobolev_norm(f, s + 1) >= sobolev_norm(f, s));
    }
  }

  SUBCASE("norm index out of range") {
    CHECK_THROWS_AS(sobolev_norm(RealField::zero(grid), 13), std::invalid_argument);
  }
}

TEST_CASE("inner products") {
  auto grid = make_grid(2.0 * kPi, 64);
  const RealField f = sampled(grid, [](double x) { return std::sin(x); });
  const RealField g = sampled(grid, [](double x) { return std::cos(x); });

  SUBCASE("l2_inner(f, f) equals the squared H^0 norm") {
    CHECK(l2_inner(f, f) == doctest::Approx(sobolev_norm(f, 0) * sobolev_norm(f, 0)));
  }

  SUBCASE("sin and cos are orthogonal") { CHECK(std::abs(l2_inner(f, g)) <= 1e-12); }

  SUBCASE("bilinear under scaling") {
    CHECK(l2_inner(2.0 * f, g) == doctest::Approx(2.0 * l2_inner(f, g)).epsilon(1e-12));
    CHECK(l2_inner(2.0 * f, 2.0 * f) == doctest::Approx(4.0 * l2_inner(f, f)).epsilon(1e-12));
  }

  SUBCASE("Parseval against the physical quadrature") {
    for (unsigned seed : {5u, 6u, 7u, 8u}) {
      const RealField h = white_noise(grid, seed);
      const double spectral = l2_inner(h, h);
      const double quadrature = grid->length() / grid->size() * h.values().square().sum();
      CHECK(std::abs(spectral - quadrature) <= 1e-10 * spectral);
    }
  }

  SUBCASE("integration by parts and (f, f_xxx) = 0") {
    const RealField a = random_band_limited(grid, 20, 11);
    const RealField b = random_band_limited(grid, 20, 12);
    const double lhs = l2_inner(derivative(a, 1), b);
    const double rhs = -l2_inner(a, derivative(b, 1));
    CHECK(std::abs(lhs - rhs) <= 1e-10 * std::max(1.0, std::abs(rhs)));
    for (int k : {0, 1, 2}) {
      const double pairing = sobolev_inner(a, derivative(a, 3), k);
      const double scale = sobolev_norm(a, k + 3);
      CHECK(std::abs(pairing) <= 1e-10 * scale * scale);
    }
  }

  SUBCASE("grid mismatch is rejected") {
    auto other = make_grid(2.0 * kPi, 32);
    CHECK_THROWS_AS(l2_inner(f, RealField::zero(other)), std::invalid_argument);
  }
}
