#pragma once

#include <cstdint>
#include <utility>
#include <variant>
#include <vector>

#include "epdyn/bessel_core.hpp"
#include "epdyn/model_one.hpp"
#include "epdyn/model_two.hpp"

namespace epdyn {

enum class Method {
  ContourExact,
  FiniteChainOracle,
  Zeno,
  Ep2aPole,
  Ep2aNearThreshold,
  Ep2aLongTime,
  Ep2bPole,
  Ep2bLongTime,
};
const char* to_string(Method m);
Method method_from_string(const std::string& s);
// Exact methods promise unitarity; the rest are approximations.
bool is_exact(Method m);

using ModelParams = std::variant<ModelOneParams, ModelTwoParams>;

// Per-point flags (bit set).
enum PointFlag : std::uint32_t {
  kFlagNone = 0,
  kFlagBudget = 1u << 0,      // quadrature budget hit; value is the best estimate reached
  kFlagTimeDomain = 1u << 1,  // evaluated through the Bessel time representation
  kFlagNonUnitary = 1u << 2,  // approximation known to break unitarity
};

struct SurvivalSeries {
  std::vector<double> times;
  std::vector<Complex> amplitude;
  std::vector<double> probability;
  std::vector<double> err_est;  // absolute error estimate on A; NaN where none is available
  std::vector<std::uint32_t> flags;
  Method method = Method::ContourExact;
  ModelParams params;

  size_t size() const { return times.size(); }
  double max_probability() const;
  size_t failed_points() const;
};

struct SurvivalOptions {
  double abs_tol = 1e-12;        // on each contour integral
  double contour_t_max = 2.0e4;  // beyond this the time representation of the same integral is used
  bool force_time_domain = false;
  SpectrumOptions spectrum{};
  TimeRouteOptions time_route{};
};

// ---- exact amplitudes ----

SurvivalSeries amplitude_contour_m1(const ModelOneParams& p, const std::vector<double>& times,
                                    const SurvivalOptions& opt = {});
SurvivalSeries amplitude_contour_m2(const ModelTwoParams& p, const std::vector<double>& times,
                                    const SurvivalOptions& opt = {});

// Truncated chain of n_sites (impurity sites come on top). Needs n_sites >= 2 max(t) + 50 unless the
// light-cone check is switched off (closed-system use).
SurvivalSeries amplitude_finite_chain(const ModelParams& p, int n_sites, const std::vector<double>& times,
                                      bool enforce_light_cone = true);
// The tridiagonal Hamiltonian behind it: (diagonal, off-diagonal).
std::pair<std::vector<double>, std::vector<double>> chain_hamiltonian(const ModelParams& p, int n_sites);
inline constexpr int kLightConeMargin = 50;

// The rational integrand factor S(lambda) of A(t) = (1/2 pi i) oint (-lambda + 1/lambda) e^{i(lambda+1/lambda)t} S(lambda).
Complex integrand_factor_m1(const ModelOneParams& p, Complex lambda);
Complex integrand_factor_m2(const ModelTwoParams& p, Complex lambda);
// Same factor as a sum over the spectrum, sum_j c_j / (lambda - lambda_j).
Complex pole_sum_factor_m1(const ModelOneParams& p, Complex lambda);
Complex pole_sum_factor_m2(const ModelTwoParams& p, Complex lambda);

// ---- approximations ----

double zeno(const ModelOneParams& p, double t);
double zeno(const ModelTwoParams& p, double t);

// Half-residue of the coalesced pole; |A_P(0)|^2 > 1 for every g.
Complex ep2a_pole(double g, double t);
// Its small-g expansion.
Complex ep2a_pole_small_g(double g, double t);

struct AmplitudeProbability {
  Complex amplitude;
  double probability;
};

AmplitudeProbability ep2a_near_threshold(double g, double t);
double ep2a_longtime(double g, double t);
AmplitudeProbability ep2b_pole(double g, double t);
// Linear-in-t prefactor c of A_P = (1 + c t) e^{-Gamma t / 2}.
double ep2b_pole_slope(double g);
Complex ep2b_longtime(double g, double t);
// Coefficient C in A ~ t^{-3/2} cos(2t + pi/4) C / (2 sqrt(pi)).
Complex ep2b_longtime_coefficient(double g);

// Evaluate an approximation on a grid (Model I methods use p.g; Ep2a* assume eps_d at the EP).
SurvivalSeries approximation_series(Method m, const ModelParams& p, const std::vector<double>& times);

struct Timescales {
  double t_zeno;
  double t_ep;
  std::pair<double, double> t_ep_edges{0.0, 0.0};  // Model II only
  double gamma_bar = 0.0;                          // Model II only
};

Timescales timescales(const ModelOneParams& p);
Timescales timescales(const ModelTwoParams& p);

double loglog_slope(const SurvivalSeries& s, double t_lo, double t_hi);

// Grids.
std::vector<double> log_grid(double t_min, double t_max, int n);
std::vector<double> linear_grid(double t_min, double t_max, int n);

}  // namespace epdyn
