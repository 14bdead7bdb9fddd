#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numbers>
#include <random>

#include "epdyn/numerics.hpp"
#include "oracles.hpp"

using namespace epdyn;
constexpr double pi = std::numbers::pi;

TEST_CASE("bessel_j against libstdc++ and a long-double series") {
  CHECK(bessel_j(0, 0.0) == 1.0);
  CHECK(bessel_j(1, 0.0) == 0.0);
  CHECK(bessel_j(1, 2.0) == doctest::Approx(oracle::bessel_series(1, 2.0)).epsilon(1e-14));
  CHECK(bessel_j(1, 2.0) == doctest::Approx(0.5767248077568734).epsilon(1e-12));
  double worst = 0;
  for (double z = 0.01; z < 200.0; z *= 1.013) {
    for (int n = 0; n < 2; ++n) {
      const double ref = n ? oracle::j1(z) : oracle::j0(z);
      worst = std::max(worst, std::fabs(bessel_j(n, z) - ref));
    }
  }
  CHECK(worst < 1e-13);
  // relative accuracy away from zeros
  for (double z : {0.5, 3.0, 11.9, 12.0, 12.1, 40.0}) {
    CHECK(bessel_j(0, z) == doctest::Approx(oracle::j0(z)).epsilon(1e-12));
    CHECK(bessel_j(1, z) == doctest::Approx(oracle::j1(z)).epsilon(1e-12));
  }
  // odd symmetry of J1, even of J0
  CHECK(bessel_j(1, -3.3) == doctest::Approx(-bessel_j(1, 3.3)));
  CHECK(bessel_j(0, -3.3) == doctest::Approx(bessel_j(0, 3.3)));
  double j0, j1;
  bessel_j01(7.5, j0, j1);
  CHECK(j0 == bessel_j(0, 7.5));
  CHECK(j1 == bessel_j(1, 7.5));
}

TEST_CASE("bessel_asymptotic") {
  const double z = 9.0 * pi / 4.0;
  CHECK(bessel_asymptotic(0, z) == doctest::Approx(std::sqrt(2.0 / (pi * z))).epsilon(1e-14));
  CHECK(std::fabs(bessel_asymptotic(0, 10.0) / bessel_j(0, 10.0) - 1.0) < 0.01);
  // the leading form misses 3/(8z) sqrt(2/(pi z)) sin(z - 3pi/4); at z = 50 that is ~0.4% of J1
  const double z50 = 50.0, amp = std::sqrt(2.0 / (pi * z50));
  CHECK(std::fabs(bessel_asymptotic(1, z50) - bessel_j(1, z50)) < 1.05 * 3.0 / (8.0 * z50) * amp * std::fabs(std::sin(z50 - 0.75 * pi)));
  CHECK(std::fabs(bessel_asymptotic(1, z50) / bessel_j(1, z50) - 1.0) < 0.005);
  CHECK_THROWS_AS(bessel_asymptotic(0, 1.5), Error);
  CHECK_THROWS_AS(bessel_j(2, 1.0), Error);

  // envelope of the error shrinks with z: compare the max error over successive windows
  double prev = 1e9;
  for (double a = 2.0; a < 100.0; a += 14.0) {
    double m = 0;
    for (double x = a; x < a + 14.0; x += 0.01) m = std::max(m, std::fabs(bessel_asymptotic(0, x) - bessel_j(0, x)));
    CHECK(m < prev);
    prev = m;
  }
}

TEST_CASE("contour integration: residues and analytic integrands") {
  auto unit_ccw = ContourSpec::circle(0.0, 1.0, Orientation::Counterclockwise);
  CHECK(unit_ccw.closed());
  auto r = integrate_contour([](Complex z) { return 1.0 / z; }, unit_ccw);
  CHECK(std::abs(r.value - 2.0 * pi * kI) < 1e-10);
  CHECK(r.abs_error_estimate >= 0.0);
  CHECK(r.evaluations > 0);

  r = integrate_contour([](Complex) { return Complex(1.0); }, ContourSpec::circle(0.3, 0.7, Orientation::Counterclockwise));
  CHECK(std::abs(r.value) < 1e-10);
  r = integrate_contour([](Complex z) { return z; }, ContourSpec::circle(0.0, 2.0, Orientation::Counterclockwise));
  CHECK(std::abs(r.value) < 1e-10);

  // clockwise flips the sign
  r = integrate_contour([](Complex z) { return 1.0 / z; }, ContourSpec::circle(0.0, 1.0, Orientation::Clockwise));
  CHECK(std::abs(r.value + 2.0 * pi * kI) < 1e-10);

  // residue theorem regardless of radius and centre
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int k = 0; k < 20; ++k) {
    const Complex a(u(rng), u(rng));
    const double rad = 0.5 + 2.0 * std::fabs(u(rng));
    const Complex c = a + 0.4 * rad * Complex(u(rng), u(rng));
    auto res = integrate_contour([a](Complex z) { return 1.0 / (z - a); },
                                 ContourSpec::circle(c, rad, Orientation::Counterclockwise, 16));
    CHECK(std::abs(res.value - 2.0 * pi * kI) < 1e-10);
  }

  // square polyline around a pole
  auto sq = ContourSpec::polyline({{1, 1}, {-1, 1}, {-1, -1}, {1, -1}}, true);
  r = integrate_contour([](Complex z) { return 1.0 / (z - 0.2); }, sq);
  CHECK(std::abs(r.value - 2.0 * pi * kI) < 1e-10);
}

TEST_CASE("contour integration: oscillatory integrand against trapezoid oracle") {
  // e^{i(z + 1/z) t} / (z - 2) on the unit circle: an essential singularity inside
  const double t = 40.0;
  auto f = [t](Complex z) { return std::exp(kI * (z + 1.0 / z) * t) / (z - 2.0); };
  auto r = integrate_contour(f, ContourSpec::circle(0.0, 1.0, Orientation::Counterclockwise, 200));
  const auto ref = oracle::circle_trapezoid(f, 0.0, 1.0, 4000, false);
  CHECK(std::abs(r.value - ref) < 1e-10);
}

TEST_CASE("quadrature budget and closure errors") {
  QuadratureOptions o;
  o.max_evals = 50;
  o.abs_tol = 1e-14;
  auto nasty = [](Complex z) { return std::exp(kI * 500.0 * (z + 1.0 / z)); };
  CHECK_THROWS_AS(integrate_contour(nasty, ContourSpec::circle(0.0, 1.0, Orientation::Counterclockwise), o), Error);
  o.throw_on_budget = false;
  auto r = integrate_contour(nasty, ContourSpec::circle(0.0, 1.0, Orientation::Counterclockwise), o);
  CHECK_FALSE(r.converged);

  ContourSpec open = ContourSpec::polyline({{0, 0}, {1, 0}});
  open.orientation = Orientation::Counterclockwise;
  CHECK_THROWS_AS(integrate_contour([](Complex) { return Complex(1.0); }, open), Error);
}

TEST_CASE("integrate_real against Gauss-Legendre oracle") {
  auto f = [](double x) { return std::exp(Complex(0.0, 3.0 * x)) * bessel_j(1, 2.0 * x); };
  const auto r = integrate_real(f, 0.0, 10.0);
  const auto ref = oracle::gauss_legendre([](double x) { return std::exp(oracle::C(0.0, 3.0 * x)) * oracle::j1(2 * x); },
                                          0.0, 10.0, 400);
  CHECK(std::abs(r.value - ref) < 1e-10);
}

TEST_CASE("quartic_roots") {
  auto r = quartic_roots(1.0, -5.0, 4.0);
  std::vector<double> re;
  for (auto z : r) {
    CHECK(std::fabs(z.imag()) < 1e-14);
    re.push_back(z.real());
  }
  std::sort(re.begin(), re.end());
  CHECK(re[0] == doctest::Approx(-2.0));
  CHECK(re[1] == doctest::Approx(-1.0));
  CHECK(re[2] == doctest::Approx(1.0));
  CHECK(re[3] == doctest::Approx(2.0));

  for (auto z : quartic_roots(1.0, 0.0, 1.0)) CHECK(std::abs(std::pow(z, 4) + 1.0) < 1e-14);
  CHECK_THROWS_AS(quartic_roots(0.0, 1.0, 1.0), Error);

  // Model II coefficients at g = 0.1, V = 0.00501260
  const double g = 0.1, V = 0.00501260, g2 = g * g;
  const double c4 = 1 - g2, c2 = g2 * g2 + (g2 - 2) * V * V, c0 = std::pow(V, 4);
  for (auto E : quartic_roots(c4, c2, c0)) {
    const auto p = c4 * std::pow(E, 4) + c2 * E * E + c0;
    const double scale = std::max({std::abs(c4 * std::pow(E, 4)), std::abs(c2 * E * E), c0});
    CHECK(std::abs(p) < 1e-10 * scale);
  }

  std::mt19937 rng(11);
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  int bad = 0;
  for (int k = 0; k < 1000; ++k) {
    double a = u(rng), b = u(rng), c = u(rng);
    if (std::fabs(a) < 1e-3) a = 1.0;
    for (auto E : quartic_roots(a, b, c)) {
      const auto p = a * std::pow(E, 4) + b * E * E + c;
      const double scale = std::max({std::abs(a * std::pow(E, 4)), std::abs(b * E * E), std::fabs(c)});
      if (!(std::abs(p) < 1e-10 * scale)) ++bad;
    }
  }
  CHECK(bad == 0);
}

TEST_CASE("loglog_slope") {
  std::vector<double> t, p, c;
  for (int k = 0; k <= 50; ++k) {
    const double x = 10.0 * std::pow(10.0, k / 50.0);
    t.push_back(x);
    p.push_back(1.0 / (x * x * x));
    c.push_back(0.3);
  }
  CHECK(loglog_slope(t, p, 10.0, 100.0) == doctest::Approx(-3.0).epsilon(1e-6));
  CHECK(std::fabs(loglog_slope(t, c, 10.0, 100.0)) < 1e-12);
  CHECK_THROWS_AS(loglog_slope(t, p, 10.0, 11.0), Error);  // too few samples
  auto z = p;
  z[10] = 0.0;
  CHECK_THROWS_AS(loglog_slope(t, z, 10.0, 100.0), Error);
  try {
    loglog_slope(t, z, 10.0, 100.0);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NonpositiveProbability);
  }
}

TEST_CASE("error categories") {
  CHECK(category_of(ErrorKind::InvalidParameter) == ErrorCategory::Validation);
  CHECK(category_of(ErrorKind::BudgetExceeded) == ErrorCategory::Numerical);
  CHECK(category_of(ErrorKind::StepTooCoarse) == ErrorCategory::Numerical);
  CHECK(std::string(kind_name(ErrorKind::NearEP)) == "NearEP");
  CHECK_THROWS_AS(require_finite(Complex(NAN, 0.0), "x"), Error);
}
