#pragma once
// Independent reference implementations used only by the tests.
#include <cmath>
#include <complex>
#include <functional>

namespace oracle {

using C = std::complex<double>;

inline double j0(double z) { return std::cyl_bessel_j(0.0, z); }
inline double j1(double z) { return std::cyl_bessel_j(1.0, z); }

// Power series for J_n in long double, fine for z below ~20.
inline double bessel_series(int n, double z) {
  long double x = z / 2.0L, term = 1.0L, sum = 0.0L;
  for (int k = 1; k <= n; ++k) term *= x / k;
  for (int k = 0; k < 200; ++k) {
    sum += term;
    term *= -x * x / ((k + 1.0L) * (k + 1.0L + n));
    if (std::fabs(static_cast<double>(term)) < 1e-30) break;
  }
  return static_cast<double>(sum);
}

// Composite 8-point Gauss-Legendre.
inline C gauss_legendre(const std::function<C(double)>& f, double a, double b, int panels) {
  static const double x[4] = {0.1834346424956498, 0.5255324099163290, 0.7966664774136267, 0.9602898564975363};
  static const double w[4] = {0.3626837833783620, 0.3137066458778873, 0.2223810344533745, 0.1012285362903763};
  const double h = (b - a) / panels;
  C s = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double m = a + (p + 0.5) * h, r = 0.5 * h;
    for (int k = 0; k < 4; ++k) s += w[k] * r * (f(m - r * x[k]) + f(m + r * x[k]));
  }
  return s;
}

// Closed-contour trapezoid on a circle (spectrally accurate for analytic integrands).
inline C circle_trapezoid(const std::function<C(C)>& f, C c, double r, int n, bool clockwise) {
  C s = 0.0;
  const double pi = std::acos(-1.0);
  for (int k = 0; k < n; ++k) {
    const double th = 2 * pi * k / n;
    const C z = c + r * std::exp(C(0, th));
    s += f(z) * C(0, 1) * (z - c);
  }
  s *= 2 * pi / n;
  return clockwise ? -s : s;
}

}  // namespace oracle
