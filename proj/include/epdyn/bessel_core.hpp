#pragma once

#include <vector>

#include "epdyn/numerics.hpp"

namespace epdyn {

// I(lambda_n, t) = (1/2 pi i) oint_C dlambda (-lambda + 1/lambda) e^{i(lambda+1/lambda)t} / (lambda - lambda_n),
// C clockwise just inside the unit circle.
enum class IntegralRoute { LambdaContour, EnergyContour, BesselTimeDomain };
const char* to_string(IntegralRoute r);

struct GapParams {
  Complex E_n;
  Complex lambda_n;
  Complex delta_n;  // -(E_n + 2)
  int s;            // +1 iff |lambda_n| < 1

  static GapParams from_lambda(Complex lambda_n);
  Complex lambda_pow_s() const { return s > 0 ? lambda_n : 1.0 / lambda_n; }
};

struct TimeRouteOptions {
  // Anti-resonances use the reversed tau integration (tail form); off -> RouteValidity error.
  bool allow_anti_resonance = true;
  // Real E_n: E_n - i eps with one Richardson step eps -> eps/2.
  double eps = 1e-10;
};

Complex integral_I(const GapParams& gp, double t, IntegralRoute route, const QuadratureOptions& qopt = {},
                   const TimeRouteOptions& topt = {});

// Time-domain I on an ascending grid, sharing the cumulative Bessel integrals.
std::vector<Complex> integral_I_series(const GapParams& gp, const std::vector<double>& times,
                                       const TimeRouteOptions& topt = {});

// d I(lambda_n, t) / d lambda_n on the same grid (double poles at an exceptional point).
std::vector<Complex> integral_I_derivative_series(const GapParams& gp, const std::vector<double>& times,
                                                  const TimeRouteOptions& topt = {});

// Principal part simple/(lambda - p) + dbl/(lambda - p)^2 of a contour integrand factor.
struct PolePart {
  Complex lambda;
  Complex simple_coeff;
  Complex double_coeff{0.0, 0.0};
};

// sum over parts of simple * I(p, t) + dbl * dI/dp(p, t), by the time route.
std::vector<Complex> pole_parts_time_domain(const std::vector<PolePart>& parts, const std::vector<double>& times,
                                            const TimeRouteOptions& topt = {});

// Contour radius: 1 - min(1e-3, 1/(2t)), pulled further in only to keep |lambda| < 1 poles enclosed.
double contour_radius(double t, double max_inner_pole_modulus = 0.0);

// Oscillation-aware panel count for the unit-circle contour at time t.
int contour_panels(double t);

// K_l(t) = int_0^t e^{-2it'} J1(2t') t'^{l-1} dt', closed forms for l <= 6.
inline constexpr int kMaxKOrder = 6;
Complex k_integral(int l, double t);

// e^{-iE_n t}[lambda^s - i sum_{l<=l_max} (-i Delta_n)^l / l! K_l(t)]
Complex i_series(const GapParams& gp, double t, int l_max);

// Cumulative C(t_k) = int_0^{t_k} e^{iEt'} J1(2t') w(t') dt' on an ascending grid, w(t') = t'^{-power}
// (power in {0,1}); J1(2t')/t' -> 1 at t' = 0.
// Only sensible while |e^{iEt}| stays moderate; the propagated forms in time_kernel.hpp are the stable ones.
std::vector<Complex> cumulative_bessel_integral(Complex E, const std::vector<double>& times, int power);

}  // namespace epdyn
