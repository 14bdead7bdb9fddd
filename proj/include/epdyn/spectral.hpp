#pragma once

#include <Eigen/Dense>
#include <vector>

#include "epdyn/numerics.hpp"

namespace epdyn {

enum class Classification { Bound, VirtualBound, Resonance, AntiResonance, Coalesced };
const char* to_string(Classification c);

// One discrete solution: lambda = e^{ik}, E = -lambda - 1/lambda.
struct SpectralPoint {
  Complex lambda;
  Complex energy;
  Complex k;
  Classification classification;
};

// Per-point rule: complex E decides by the sign of Im E, real E by |lambda| (physical sheet iff |lambda| < 1).
Classification classify_point(Complex lambda, Complex energy, double real_tol = 1e-12);

Complex k_of_lambda(Complex lambda);

struct SpectrumOptions {
  double delta_tol = 1e-12;  // |eps_d - eps_bar| below this routes to the Jordan form
  double near_band = 1e-6;   // warning band around the EP
};

using MatrixC = Eigen::MatrixXcd;
using VectorC = Eigen::VectorXcd;

struct Eigenpair {
  Complex lambda;
  VectorC right;  // Psi_j
  VectorC left;   // Psi~_j (row vector stored as a column: the transpose of Psi_j)
};

// F - lambda G linear pencil with G-biorthonormalised eigenvectors.
// U holds right eigenvectors as columns; U_tilde = U^{-1} G^{-1}.
struct GepSystem {
  MatrixC F, G;
  std::vector<Eigenpair> eigenpairs;
  std::vector<Complex> norms;  // the scalar normalisation of each eigenvector
  MatrixC U, U_tilde;
};

// max_ij |<Psi~_i|G|Psi_j> - delta_ij|
double biorthonormality_residual(const GepSystem& s);
// max_ij |<Psi~_i|F|Psi_j> - lambda_j delta_ij|
double diagonalization_residual(const GepSystem& s);
// max_j |(F - lambda_j G) Psi_j|
double eigen_residual(const GepSystem& s);

}  // namespace epdyn
