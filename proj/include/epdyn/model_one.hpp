#pragma once

#include <array>

#include "epdyn/spectral.hpp"

namespace epdyn {

// Single impurity (energy eps_d) side-coupled with strength g to a semi-infinite chain, hopping b = 1.
struct ModelOneParams {
  double g = 0.5;
  double eps_d = 0.0;
};

// 0 < g < 1 and finite eps_d. allow_decoupled admits g = 0 (used by the dynamics).
void validate(const ModelOneParams& p, bool allow_decoupled = false);

struct SpectrumM1 {
  // points[0] = "+" root, points[1] = "-" root (E_- is the resonance in the oscillatory regime)
  std::array<SpectralPoint, 2> points;
  bool at_exceptional_point = false;
  bool near_exceptional_point = false;
};

SpectrumM1 discrete_spectrum(const ModelOneParams& p, const SpectrumOptions& opt = {});

// lambda_+-, principal branch, for complex eps_d (used by the parametric loops).
std::array<Complex, 2> lambda_pm(double g, Complex eps_d);

Classification classify(const ModelOneParams& p, const SpectralPoint& s, const SpectrumOptions& opt = {});
// The parameter-range table; returned unordered.
std::array<Classification, 2> classify_by_range(const ModelOneParams& p);

enum class EpBranch { Lower, Upper };

struct EpLocation {
  double eps_bar;
  double E_bar;
  double lambda_bar;
};

EpLocation ep_location(double g, EpBranch which = EpBranch::Lower);

// Delta_EP = -2 - E_bar at the lower EP, evaluated without cancellation.
double delta_ep(double g);

GepSystem build_gep(const ModelOneParams& p, double beta_cap = 1e6);

struct JordanData {
  double g;
  double eps_bar;
  double lambda_bar;
  double energy_bar;
  Complex mu;
  Eigen::Vector2cd psi_ep, phi_ep;
  Eigen::Matrix2cd F, G, R, R_tilde;
};

JordanData jordan_form(double g);

enum class PuiseuxOrder { Half, One, ThreeHalves };

// Branch [0] carries +i delta^{1/2}, branch [1] carries -i delta^{1/2}.
struct PuiseuxResult {
  std::array<Complex, 2> lambda;
  std::array<Complex, 2> norm_sq;
};

PuiseuxResult puiseux(double g, double delta, PuiseuxOrder order);

}  // namespace epdyn
