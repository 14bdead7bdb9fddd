#include "epdyn/spectral.hpp"

#include <algorithm>

namespace epdyn {

const char* to_string(Classification c) {
  switch (c) {
    case Classification::Bound: return "bound";
    case Classification::VirtualBound: return "virtual_bound";
    case Classification::Resonance: return "resonance";
    case Classification::AntiResonance: return "anti_resonance";
    case Classification::Coalesced: return "coalesced";
  }
  return "?";
}

Classification classify_point(Complex lambda, Complex energy, double real_tol) {
  const double scale = std::max(1.0, std::abs(energy));
  if (energy.imag() < -real_tol * scale) return Classification::Resonance;
  if (energy.imag() > real_tol * scale) return Classification::AntiResonance;
  return std::abs(lambda) < 1.0 ? Classification::Bound : Classification::VirtualBound;
}

Complex k_of_lambda(Complex lambda) { return -kI * std::log(lambda); }

double biorthonormality_residual(const GepSystem& s) {
  double r = 0;
  const auto n = s.eigenpairs.size();
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      const Complex v = s.eigenpairs[i].left.transpose() * s.G * s.eigenpairs[j].right;
      r = std::max(r, std::abs(v - (i == j ? 1.0 : 0.0)));
    }
  return r;
}

double diagonalization_residual(const GepSystem& s) {
  double r = 0;
  const auto n = s.eigenpairs.size();
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      const Complex v = s.eigenpairs[i].left.transpose() * s.F * s.eigenpairs[j].right;
      r = std::max(r, std::abs(v - (i == j ? s.eigenpairs[j].lambda : 0.0)));
    }
  return r;
}

double eigen_residual(const GepSystem& s) {
  double r = 0;
  for (const auto& e : s.eigenpairs) r = std::max(r, (s.F * e.right - e.lambda * (s.G * e.right)).norm());
  return r;
}

}  // namespace epdyn
