#include "epdyn/bessel_core.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "epdyn/time_kernel.hpp"

namespace epdyn {

const char* to_string(IntegralRoute r) {
  switch (r) {
    case IntegralRoute::LambdaContour: return "lambda_contour";
    case IntegralRoute::EnergyContour: return "energy_contour";
    case IntegralRoute::BesselTimeDomain: return "bessel_time";
  }
  return "?";
}

GapParams GapParams::from_lambda(Complex lambda_n) {
  require_finite(lambda_n, "GapParams");
  if (std::abs(lambda_n) == 0.0) fail(ErrorKind::DomainError, "lambda_n must be nonzero");
  GapParams gp;
  gp.lambda_n = lambda_n;
  gp.E_n = -lambda_n - 1.0 / lambda_n;
  gp.delta_n = -(gp.E_n + 2.0);
  gp.s = std::abs(lambda_n) < 1.0 ? 1 : -1;
  return gp;
}

double contour_radius(double t, double max_inner) {
  double eta = 1e-3;
  if (t > 0) eta = std::min(eta, 0.5 / t);
  if (max_inner > 0.0 && max_inner < 1.0) eta = std::min(eta, 0.5 * (1.0 - max_inner));
  return 1.0 - eta;
}

int contour_panels(double t) { return std::max(32, static_cast<int>(std::ceil(4.0 * t)) + 16); }

namespace {

void check_off_cut(const GapParams& gp) {
  if (std::fabs(std::abs(gp.lambda_n) - 1.0) < 1e-12)
    fail(ErrorKind::DomainError, "E_n lies on the continuum; I(lambda_n, t) is undefined there");
}

Complex lambda_route(const GapParams& gp, double t, const QuadratureOptions& qopt) {
  const double r = contour_radius(t, gp.s > 0 ? std::abs(gp.lambda_n) : 0.0);
  auto c = ContourSpec::circle(0.0, r, Orientation::Clockwise, contour_panels(t));
  const Complex ln = gp.lambda_n;
  auto f = [=](Complex l) {
    const Complex il = 1.0 / l;
    return (il - l) * std::exp(kI * (l + il) * t) / (l - ln);
  };
  return integrate_contour(f, c, qopt).value / (2.0 * std::numbers::pi * kI);
}

Complex energy_route(const GapParams& gp, double t, const QuadratureOptions& qopt) {
  // (1/pi) int_{-2}^{2} e^{-iEt} sqrt(1-E^2/4)/(E-E_n) dE with E = -2 cos k
  const Complex En = gp.E_n;
  auto f = [=](double k) {
    const double c = std::cos(k), s = std::sin(k);
    return std::exp(kI * (2.0 * t * c)) * (s * s) / (-2.0 * c - En);
  };
  QuadratureOptions o = qopt;
  o.min_panels = std::max(o.min_panels, contour_panels(t) / 2);
  return integrate_real(f, 0.0, std::numbers::pi, o).value * (2.0 / std::numbers::pi);
}

}  // namespace

namespace {

void check_grid(const std::vector<double>& times) {
  for (size_t i = 0; i < times.size(); ++i) {
    if (!(times[i] >= 0.0) || !std::isfinite(times[i])) fail(ErrorKind::InvalidParameter, "times must be finite and >= 0");
    if (i && times[i] < times[i - 1]) fail(ErrorKind::InvalidParameter, "times must be ascending");
  }
}

// I and (optionally) dI/dlambda_n at complex E with Im E <= 0 or on the forward part of an anti-resonance:
//   I = e^{-iEt} lambda^s - i B1,   dI = s lambda^{s-1} e^{-iEt} + E'(lambda)(-i t I + B0)
void forward_values(Complex E, Complex lambda, int s, const std::vector<double>& times, bool deriv,
                    std::vector<Complex>& I, std::vector<Complex>& dI) {
  const Complex ls = s > 0 ? lambda : 1.0 / lambda;
  const Complex dls = s > 0 ? Complex(1.0) : -1.0 / (lambda * lambda);
  const Complex Ep = -1.0 + 1.0 / (lambda * lambda);
  const auto B1 = propagate_forward({E}, times, 1);
  std::vector<std::vector<Complex>> B0;
  if (deriv) B0 = propagate_forward({E}, times, 0);
  I.resize(times.size());
  dI.resize(deriv ? times.size() : 0);
  for (size_t i = 0; i < times.size(); ++i) {
    const Complex ph = std::exp(-kI * E * times[i]);
    I[i] = ph * ls - kI * B1[0][i];
    if (deriv) dI[i] = dls * ph + Ep * (-kI * times[i] * I[i] + B0[0][i]);
  }
}

void time_route(const GapParams& gp, const std::vector<double>& times, const TimeRouteOptions& topt, bool deriv,
                std::vector<Complex>& I, std::vector<Complex>& dI) {
  check_off_cut(gp);
  check_grid(times);
  I.assign(times.size(), 0.0);
  dI.assign(deriv ? times.size() : 0, 0.0);
  if (times.empty()) return;
  const Complex E = gp.E_n, lam = gp.lambda_n;
  const double im = E.imag();
  const double scale = std::max(1.0, std::abs(E));

  if (im > 1e-12 * scale) {
    if (!topt.allow_anti_resonance)
      fail(ErrorKind::RouteValidity, "time route requested for an anti-resonance without the reversed tau integration");
    // forward form while the growth e^{Im E t} is harmless, then the tail form
    //   I = i int_t^inf e^{iE(t'-t)} J1(2t')/t' dt'
    std::vector<double> fw, bw;
    for (double t : times) (im * t <= 2.0 ? fw : bw).push_back(t);
    std::vector<Complex> fI, fdI;
    if (!fw.empty()) forward_values(E, lam, gp.s, fw, deriv, fI, fdI);
    std::copy(fI.begin(), fI.end(), I.begin());
    if (deriv) std::copy(fdI.begin(), fdI.end(), dI.begin());
    if (!bw.empty()) {
      const Complex Ep = -1.0 + 1.0 / (lam * lam);
      const auto S1 = propagate_backward(E, bw, 1);
      std::vector<Complex> S0;
      if (deriv) S0 = propagate_backward(E, bw, 0);
      for (size_t i = 0; i < bw.size(); ++i) {
        const size_t k = fw.size() + i;
        I[k] = kI * S1[i];
        if (deriv) dI[k] = Ep * (-S0[i] + bw[i] * S1[i]);
      }
    }
    return;
  }
  if (std::fabs(im) <= 1e-12 * scale) {
    // real E_n: E_n - i eps, one Richardson step eps -> eps/2
    std::vector<Complex> I1, d1, I2, d2;
    forward_values(Complex(E.real(), -topt.eps), lam, gp.s, times, deriv, I1, d1);
    forward_values(Complex(E.real(), -0.5 * topt.eps), lam, gp.s, times, deriv, I2, d2);
    for (size_t i = 0; i < times.size(); ++i) {
      I[i] = 2.0 * I2[i] - I1[i];
      if (deriv) dI[i] = 2.0 * d2[i] - d1[i];
    }
    return;
  }
  forward_values(E, lam, gp.s, times, deriv, I, dI);
}

}  // namespace

std::vector<Complex> integral_I_series(const GapParams& gp, const std::vector<double>& times,
                                       const TimeRouteOptions& topt) {
  std::vector<Complex> I, dI;
  time_route(gp, times, topt, false, I, dI);
  return I;
}

std::vector<Complex> integral_I_derivative_series(const GapParams& gp, const std::vector<double>& times,
                                                  const TimeRouteOptions& topt) {
  std::vector<Complex> I, dI;
  time_route(gp, times, topt, true, I, dI);
  return dI;
}

std::vector<Complex> pole_parts_time_domain(const std::vector<PolePart>& parts, const std::vector<double>& times,
                                            const TimeRouteOptions& topt) {
  std::vector<Complex> out(times.size(), 0.0);
  for (const auto& pp : parts) {
    std::vector<Complex> I, dI;
    time_route(GapParams::from_lambda(pp.lambda), times, topt, pp.double_coeff != 0.0, I, dI);
    for (size_t i = 0; i < times.size(); ++i) {
      out[i] += pp.simple_coeff * I[i];
      if (!dI.empty()) out[i] += pp.double_coeff * dI[i];
    }
  }
  return out;
}

Complex integral_I(const GapParams& gp, double t, IntegralRoute route, const QuadratureOptions& qopt,
                   const TimeRouteOptions& topt) {
  check_off_cut(gp);
  if (!(t >= 0.0) || !std::isfinite(t)) fail(ErrorKind::InvalidParameter, "t must be finite and >= 0");
  switch (route) {
    case IntegralRoute::LambdaContour: return lambda_route(gp, t, qopt);
    case IntegralRoute::EnergyContour: return energy_route(gp, t, qopt);
    case IntegralRoute::BesselTimeDomain: return integral_I_series(gp, {t}, topt)[0];
  }
  fail(ErrorKind::InvalidParameter, "unknown route");
}

Complex k_integral(int l, double t) {
  if (l < 0 || l > kMaxKOrder) fail(ErrorKind::UnimplementedOrder, "k_integral: order " + std::to_string(l) + " not implemented");
  if (!(t >= 0.0) || !std::isfinite(t)) fail(ErrorKind::InvalidParameter, "t must be finite and >= 0");
  double j0, j1;
  bessel_j01(2.0 * t, j0, j1);
  const Complex i = kI;
  const double t2 = t * t, t3 = t2 * t, t4 = t3 * t, t5 = t4 * t, t6 = t5 * t;
  Complex c{0.0, 0.0}, P, Q;
  switch (l) {
    case 0: c = -i; P = i; Q = -1.0; break;
    case 1: c = 0.5; P = -i * t - 0.5; Q = t; break;
    case 2: P = -i * t2 / 3.0; Q = t2 / 3.0 + i * t / 3.0; break;
    case 3: P = -i * t3 / 5.0 - t2 / 10.0; Q = t3 / 5.0 + i * t2 / 5.0 + t / 10.0; break;
    case 4:
      P = -i * t4 / 7.0 - 4.0 * t3 / 35.0 + 2.0 * i * t2 / 35.0;
      Q = t4 / 7.0 + 6.0 * i * t3 / 35.0 + 4.0 * t2 / 35.0 - 2.0 * i * t / 35.0;
      break;
    case 5:
      P = -i * t5 / 9.0 - 5.0 * t4 / 42.0 + 2.0 * i * t3 / 21.0 + t2 / 21.0;
      Q = t5 / 9.0 + 10.0 * i * t4 / 63.0 + t3 / 7.0 - 2.0 * i * t2 / 21.0 - t / 21.0;
      break;
    default:
      P = -i * t6 / 11.0 - 4.0 * t5 / 33.0 + 10.0 * i * t4 / 77.0 + 8.0 * t3 / 77.0 - 4.0 * i * t2 / 77.0;
      Q = t6 / 11.0 + 5.0 * i * t5 / 33.0 + 40.0 * t4 / 231.0 - 12.0 * i * t3 / 77.0 - 8.0 * t2 / 77.0 +
          4.0 * i * t / 77.0;
      break;
  }
  return c + std::exp(-2.0 * i * t) * (P * j0 + Q * j1);
}

Complex i_series(const GapParams& gp, double t, int l_max) {
  if (l_max < 0) fail(ErrorKind::InvalidParameter, "l_max must be >= 0");
  Complex sum{0.0, 0.0}, w{1.0, 0.0};
  const Complex step = -kI * gp.delta_n;
  for (int l = 0; l <= l_max; ++l) {
    if (l > 0) w *= step / double(l);
    sum += w * k_integral(l, t);
  }
  return std::exp(-kI * gp.E_n * t) * (gp.lambda_pow_s() - kI * sum);
}

std::vector<Complex> cumulative_bessel_integral(Complex E, const std::vector<double>& times, int power) {
  // undo the propagation factor of the forward kernel
  const auto B = propagate_forward({E}, times, power);
  std::vector<Complex> out(times.size());
  for (size_t i = 0; i < times.size(); ++i) out[i] = std::exp(kI * E * times[i]) * B[0][i];
  return out;
}

}  // namespace epdyn
