#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <string>
#include <vector>

#include "epdyn/errors.hpp"

namespace epdyn {

using Complex = std::complex<double>;
inline constexpr Complex kI{0.0, 1.0};

inline bool is_finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

// Throws NonFinite instead of letting NaN/Inf leak out of an operation.
inline Complex require_finite(Complex z, const char* what) {
  if (!is_finite(z)) fail(ErrorKind::NonFinite, std::string("non-finite value in ") + what);
  return z;
}
inline double require_finite(double x, const char* what) {
  if (!std::isfinite(x)) fail(ErrorKind::NonFinite, std::string("non-finite value in ") + what);
  return x;
}

// ---- Bessel functions of the first kind, orders 0 and 1 ----

double bessel_j(int order, double z);
// J0 and J1 at once (the hot path of the time-domain integrals).
void bessel_j01(double z, double& j0, double& j1);
// Leading large-argument forms; valid for z >= 2.
double bessel_asymptotic(int order, double z);

// ---- adaptive Gauss-Kronrod quadrature ----

// Hard cap on integrand evaluations; EPDYN_MAX_EVALS overrides the default.
long default_max_evals();

struct QuadratureOptions {
  double abs_tol = 1e-10;
  double rel_tol = 0.0;
  long max_evals = 0;   // 0 -> default_max_evals()
  int min_panels = 1;   // initial uniform subdivision of each segment
  bool throw_on_budget = true;
};

struct QuadratureResult {
  Complex value{0.0, 0.0};
  double abs_error_estimate = 0.0;
  long evaluations = 0;
  bool converged = true;
};

enum class Orientation { Counterclockwise, Clockwise, Open };

// One smooth piece s in [0,1] -> z(s), with derivative dz/ds.
struct ContourSegment {
  std::function<Complex(double)> z;
  std::function<Complex(double)> dz;
  int panels = 1;  // initial panels for this piece (oscillation hint)
};

struct ContourSpec {
  std::vector<ContourSegment> segments;
  Orientation orientation = Orientation::Open;

  Complex start() const;
  Complex end() const;
  bool closed(double tol = 1e-12) const;

  static ContourSpec circle(Complex center, double radius, Orientation o, int panels = 8);
  static ContourSpec polyline(const std::vector<Complex>& pts, bool close = false, int panels = 1);
};

using ComplexFn = std::function<Complex(Complex)>;

QuadratureResult integrate_contour(const ComplexFn& f, const ContourSpec& c,
                                   const QuadratureOptions& opt = {});

// Complex-valued integrand on a real interval.
QuadratureResult integrate_real(const std::function<Complex(double)>& f, double a, double b,
                                const QuadratureOptions& opt = {});

// ---- polynomials ----

// Roots of c4 E^4 + c2 E^2 + c0 as {+r1, -r1, +r2, -r2}.
std::array<Complex, 4> quartic_roots(double c4, double c2, double c0);

// ---- fitting ----

// Least-squares slope of log p against log t for samples with t in [t_lo, t_hi].
double loglog_slope(const std::vector<double>& t, const std::vector<double>& p, double t_lo,
                    double t_hi);

// Same fit, returning (slope, intercept) of log y = slope*log t + intercept.
std::pair<double, double> loglog_fit(const std::vector<double>& t, const std::vector<double>& y,
                                     double t_lo, double t_hi);

}  // namespace epdyn
