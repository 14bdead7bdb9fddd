#include <cmath>
#include <numbers>

#include "epdyn/numerics.hpp"

// J0/J1 in three regimes:
//   |z| < 12   power series in long double
//   12..35     Miller backward recurrence, normalised by J0 + 2 sum J2k = 1
//   |z| >= 35  Hankel expansion, phases built from sin z / cos z
// The Hankel remainder at z = 12 is ~e^{-2z} ~ 4e-11, far above the 1e-12 target,
// hence the middle band.

namespace epdyn {
namespace {

constexpr double kSeriesMax = 12.0;
constexpr double kHankelMin = 35.0;

void series01(double x, double& j0, double& j1) {
  long double h = 0.5L * x, h2 = h * h;
  long double t0 = 1.0L, t1 = h, s0 = 1.0L, s1 = h;
  for (int k = 1; k < 80; ++k) {
    t0 *= -h2 / (static_cast<long double>(k) * k);
    t1 *= -h2 / (static_cast<long double>(k) * (k + 1));
    s0 += t0;
    s1 += t1;
    if (std::fabs(t0) < 1e-22L * std::fabs(s0) + 1e-30L && std::fabs(t1) < 1e-22L * std::fabs(s1) + 1e-30L)
      break;
  }
  j0 = static_cast<double>(s0);
  j1 = static_cast<double>(s1);
}

void miller01(double x, double& j0, double& j1) {
  int n = static_cast<int>(x + 30.0 + 10.0 * std::cbrt(x));
  if (n % 2) ++n;
  long double xl = x, jp1 = 0.0L, jn = 1e-30L, norm = 0.0L;
  long double r0 = 0.0L, r1 = 0.0L;
  for (int k = n; k >= 1; --k) {
    long double jm1 = (2.0L * k / xl) * jn - jp1;
    jp1 = jn;
    jn = jm1;  // now J_{k-1}
    if ((k - 1) % 2 == 0 && k - 1 > 0) norm += 2.0L * jn;
    if (k - 1 == 1) r1 = jn;
    if (std::fabs(jn) > 1e250L) {  // rescale to stay in range
      jn *= 1e-250L;
      jp1 *= 1e-250L;
      norm *= 1e-250L;
      r1 *= 1e-250L;
    }
  }
  r0 = jn;
  norm += r0;
  j0 = static_cast<double>(r0 / norm);
  j1 = static_cast<double>(r1 / norm);
}

// P and Q of the Hankel expansion for order nu.
void hankel_pq(int nu, double x, double& P, double& Q) {
  const double mu = 4.0 * nu * nu;
  double term = 1.0;
  P = 1.0;
  Q = 0.0;
  double prev = 1e300;
  for (int k = 1; k < 60; ++k) {
    const double odd = 2.0 * k - 1.0;
    term *= (mu - odd * odd) / (k * 8.0 * x);
    if (std::fabs(term) > prev) break;  // asymptotic series started to diverge
    prev = std::fabs(term);
    switch (k % 4) {
      case 1: Q += term; break;
      case 2: P -= term; break;
      case 3: Q -= term; break;
      case 0: P += term; break;
    }
    if (std::fabs(term) < 1e-18) break;
  }
}

void hankel01(double x, double& j0, double& j1) {
  const double amp = std::sqrt(2.0 / (std::numbers::pi * x));
  const double c = std::cos(x), s = std::sin(x);
  const double r = std::numbers::sqrt2 / 2.0;
  // chi0 = x - pi/4, chi1 = x - 3pi/4
  const double c0 = r * (c + s), s0 = r * (s - c);
  const double c1 = r * (s - c), s1 = -r * (c + s);
  double P, Q;
  hankel_pq(0, x, P, Q);
  j0 = amp * (P * c0 - Q * s0);
  hankel_pq(1, x, P, Q);
  j1 = amp * (P * c1 - Q * s1);
}

}  // namespace

void bessel_j01(double z, double& j0, double& j1) {
  require_finite(z, "bessel_j");
  const double x = std::fabs(z);
  if (x < kSeriesMax)
    series01(x, j0, j1);
  else if (x < kHankelMin)
    miller01(x, j0, j1);
  else
    hankel01(x, j0, j1);
  if (z < 0) j1 = -j1;
}

double bessel_j(int order, double z) {
  if (order != 0 && order != 1) fail(ErrorKind::DomainError, "bessel_j: order must be 0 or 1");
  double j0, j1;
  bessel_j01(z, j0, j1);
  return order == 0 ? j0 : j1;
}

double bessel_asymptotic(int order, double z) {
  if (order != 0 && order != 1) fail(ErrorKind::DomainError, "bessel_asymptotic: order must be 0 or 1");
  if (!(z >= 2.0)) fail(ErrorKind::DomainError, "bessel_asymptotic requires z >= 2");
  const double phase = z - std::numbers::pi / 4.0 - (order == 1 ? std::numbers::pi / 2.0 : 0.0);
  return std::sqrt(2.0 / (std::numbers::pi * z)) * std::cos(phase);
}

}  // namespace epdyn
