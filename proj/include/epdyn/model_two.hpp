#pragma once

#include <array>

#include "epdyn/spectral.hpp"

namespace epdyn {

// Two-site qubit (d_A, d_B; intra coupling V) whose d_B site couples with g to a semi-infinite chain.
struct ModelTwoParams {
  double g = 0.5;
  double V = 0.5;
};

void validate(const ModelTwoParams& p);

struct SpectralPointM2 : SpectralPoint {
  int s = 1;       // sign of the overall lambda root (s = + pair coalesces at +lambda_bar_B)
  int branch = 1;  // sign in front of the inner discriminant
};

struct SpectrumM2 {
  std::array<SpectralPointM2, 4> points;
  bool at_exceptional_point = false;
  bool near_exceptional_point = false;
  double max_dispersion_residual = 0.0;
};

// Quartic p(E) = (1-g^2)E^4 + [g^4 + (g^2-2)V^2]E^2 + V^4.
std::array<double, 3> quartic_coefficients(const ModelTwoParams& p);
Complex quartic_value(const ModelTwoParams& p, Complex E);
// Inner discriminant g^4 + 2(g^2-2)V^2 + V^4, evaluated in factored form.
double inner_discriminant(double g, double V);

SpectrumM2 quartic_spectrum(const ModelTwoParams& p, const SpectrumOptions& opt = {});

// The four lambda roots {s=+,+; s=+,-; s=-,+; s=-,-} straight from the closed form.
std::array<Complex, 4> lambda_roots_m2(double g, double V);

// <d_A|psi>^2 for an eigenvalue lambda.
Complex dA_weight(const ModelTwoParams& p, Complex lambda);

struct Ep2bData {
  double V_bar;
  Complex E_bar;
  Complex lambda_bar;
  double gamma_bar;
};

struct EpLocationsM2 {
  double ep2a;
  Ep2bData ep2b;
};

EpLocationsM2 ep_locations_m2(double g);

GepSystem build_gep_m2(const ModelTwoParams& p, double norm_cap = 1e6);

// V = V_bar_B + delta. lambda[s][b]: s = 0 -> +, 1 -> -; b = 0 -> upper sign, 1 -> lower sign.
struct NearEp2bExpansion {
  std::array<std::array<Complex, 2>, 2> lambda;
  std::array<Complex, 2> dA2;  // independent of s
};

NearEp2bExpansion near_ep2b_expansion(double g, double delta, bool include_order_delta = false);

// O(delta) coefficient of <d_A|psi>^2 (upper-sign branch), by Richardson extrapolation of exact values.
Complex ep2b_dA2_delta_coefficient(double g);

}  // namespace epdyn
