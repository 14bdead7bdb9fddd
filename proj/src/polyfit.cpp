#include <cmath>

#include "epdyn/numerics.hpp"

namespace epdyn {

std::array<Complex, 4> quartic_roots(double c4, double c2, double c0) {
  if (c4 == 0.0) fail(ErrorKind::DegenerateLeadingCoefficient, "quartic_roots: leading coefficient is zero");
  require_finite(c2, "quartic_roots");
  require_finite(c0, "quartic_roots");
  // y = E^2 solves c4 y^2 + c2 y + c0 = 0; cancellation-free quadratic formula
  const Complex disc = std::sqrt(Complex(c2 * c2 - 4.0 * c4 * c0, 0.0));
  const Complex sc2 = c2 >= 0 ? Complex(c2) + disc : Complex(c2) - disc;
  const Complex qq = -0.5 * sc2;
  Complex y1, y2;
  if (std::abs(qq) == 0.0) {
    y1 = y2 = 0.0;
  } else {
    y1 = qq / c4;
    y2 = c0 / qq;
  }
  const Complex r1 = std::sqrt(y1), r2 = std::sqrt(y2);
  return {r1, -r1, r2, -r2};
}

std::pair<double, double> loglog_fit(const std::vector<double>& t, const std::vector<double>& y, double t_lo,
                                     double t_hi) {
  if (!(t_lo < t_hi)) fail(ErrorKind::InvalidParameter, "loglog_slope: need t_lo < t_hi");
  if (t.size() != y.size()) fail(ErrorKind::InvalidParameter, "loglog_slope: size mismatch");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (size_t i = 0; i < t.size(); ++i) {
    if (t[i] < t_lo || t[i] > t_hi) continue;
    if (!(t[i] > 0)) fail(ErrorKind::InvalidParameter, "loglog_slope: times must be positive");
    if (!(y[i] > 0)) fail(ErrorKind::NonpositiveProbability, "loglog_slope: non-positive value in window");
    const double x = std::log(t[i]), v = std::log(y[i]);
    sx += x;
    sy += v;
    sxx += x * x;
    sxy += x * v;
    ++n;
  }
  if (n < 10) fail(ErrorKind::InsufficientSamples, "loglog_slope: fewer than 10 samples in window");
  const double mx = sx / n, my = sy / n;
  const double vxx = sxx / n - mx * mx, vxy = sxy / n - mx * my;
  if (!(vxx > 0)) fail(ErrorKind::InsufficientSamples, "loglog_slope: degenerate time window");
  const double slope = vxy / vxx;
  return {slope, my - slope * mx};
}

double loglog_slope(const std::vector<double>& t, const std::vector<double>& p, double t_lo, double t_hi) {
  return loglog_fit(t, p, t_lo, t_hi).first;
}

}  // namespace epdyn
