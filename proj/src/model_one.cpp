#include "epdyn/model_one.hpp"

#include <cmath>
#include <string>

namespace epdyn {

void validate(const ModelOneParams& p, bool allow_decoupled) {
  if (!std::isfinite(p.g) || !std::isfinite(p.eps_d))
    fail(ErrorKind::InvalidParameter, "parameters must be finite");
  const bool ok = allow_decoupled ? (p.g >= 0.0 && p.g < 1.0) : (p.g > 0.0 && p.g < 1.0);
  if (!ok) fail(ErrorKind::InvalidParameter, allow_decoupled ? "g must lie in [0,1)" : "g must lie in (0,1)");
}

std::array<Complex, 2> lambda_pm(double g, Complex eps) {
  const double q = 1.0 - g * g, sq = std::sqrt(q);
  // (eps - 2 sqrt q)(eps + 2 sqrt q) keeps the discriminant accurate next to either EP
  const Complex root = std::sqrt((eps - 2.0 * sq) * (eps + 2.0 * sq));
  const Complex a = -eps - root, b = -eps + root;
  // lambda_+ lambda_- = 1/q; form the small root from the large one
  if (std::abs(a) >= std::abs(b)) {
    const Complex lp = a / (2.0 * q);
    return {lp, std::abs(a) == 0.0 ? lp : 1.0 / (q * lp)};
  }
  const Complex lm = b / (2.0 * q);
  return {1.0 / (q * lm), lm};
}

SpectrumM1 discrete_spectrum(const ModelOneParams& p, const SpectrumOptions& opt) {
  validate(p);
  const double g2 = p.g * p.g, sq = std::sqrt(1.0 - g2);
  SpectrumM1 out;
  const double d = std::min(std::fabs(p.eps_d + 2.0 * sq), std::fabs(p.eps_d - 2.0 * sq));
  out.at_exceptional_point = d < opt.delta_tol;
  out.near_exceptional_point = d < opt.near_band;
  const auto lam = lambda_pm(p.g, p.eps_d);
  for (int j = 0; j < 2; ++j) {
    SpectralPoint& s = out.points[j];
    s.lambda = require_finite(lam[j], "discrete_spectrum");
    s.energy = p.eps_d - g2 * s.lambda;
    s.k = k_of_lambda(s.lambda);
    s.classification = out.at_exceptional_point ? Classification::Coalesced : classify_point(s.lambda, s.energy);
  }
  return out;
}

Classification classify(const ModelOneParams& p, const SpectralPoint& s, const SpectrumOptions& opt) {
  const double sq = std::sqrt(1.0 - p.g * p.g);
  if (std::fabs(std::fabs(p.eps_d) - 2.0 * sq) < opt.delta_tol) return Classification::Coalesced;
  return classify_point(s.lambda, s.energy);
}

std::array<Classification, 2> classify_by_range(const ModelOneParams& p) {
  validate(p);
  const double g2 = p.g * p.g, sq = std::sqrt(1.0 - g2), e = std::fabs(p.eps_d);
  if (e < 2.0 * sq) return {Classification::Resonance, Classification::AntiResonance};
  if (e == 2.0 * sq) return {Classification::Coalesced, Classification::Coalesced};
  if (e < 2.0 - g2) return {Classification::VirtualBound, Classification::VirtualBound};
  return {Classification::Bound, Classification::VirtualBound};
}

EpLocation ep_location(double g, EpBranch which) {
  validate(ModelOneParams{g, 0.0});
  const double g2 = g * g, sq = std::sqrt(1.0 - g2);
  const double s = which == EpBranch::Lower ? 1.0 : -1.0;
  return {-s * 2.0 * sq, -s * (2.0 - g2) / sq, s / sq};
}

double delta_ep(double g) {
  const double sq = std::sqrt(1.0 - g * g), d = g * g / (1.0 + sq);  // d = 1 - sqrt(q)
  return d * d / sq;
}

GepSystem build_gep(const ModelOneParams& p, double beta_cap) {
  const auto spec = discrete_spectrum(p);
  if (spec.at_exceptional_point)
    fail(ErrorKind::NearEP, "build_gep: parameters sit on an exceptional point; use jordan_form");
  const double g2 = p.g * p.g, q = 1.0 - g2;
  GepSystem s;
  s.F = MatrixC(2, 2);
  s.F << 0.0, 1.0, 1.0, p.eps_d;
  s.G = MatrixC::Zero(2, 2);
  s.G(0, 0) = 1.0;
  s.G(1, 1) = g2 - 1.0;
  s.U = MatrixC(2, 2);
  for (int j = 0; j < 2; ++j) {
    const Complex lam = spec.points[j].lambda;
    const Complex beta = std::sqrt(1.0 / (1.0 - q * lam * lam));
    if (!is_finite(beta) || std::abs(beta) > beta_cap)
      fail(ErrorKind::NearEP, "build_gep: eigenvector norm exceeds conditioning cap (|beta| = " +
                                  std::to_string(std::abs(beta)) + ")");
    VectorC v(2);
    v << beta, beta * lam;
    s.eigenpairs.push_back({lam, v, v});
    s.norms.push_back(beta);
    s.U.col(j) = v;
  }
  s.U_tilde = s.U.inverse() * s.G.inverse();
  return s;
}

JordanData jordan_form(double g) {
  const auto ep = ep_location(g, EpBranch::Lower);
  JordanData j;
  j.g = g;
  j.eps_bar = ep.eps_bar;
  j.lambda_bar = ep.lambda_bar;
  j.energy_bar = ep.E_bar;
  j.mu = std::sqrt(Complex(2.0 / ep.eps_bar, 0.0));
  j.psi_ep << j.mu, j.mu * ep.lambda_bar;
  j.phi_ep << 1.0 / (2.0 * j.mu), 1.0 / (j.mu * ep.eps_bar);
  j.F << 0.0, 1.0, 1.0, ep.eps_bar;
  j.G << 1.0, 0.0, 0.0, g * g - 1.0;
  j.R.col(0) = j.psi_ep;
  j.R.col(1) = j.phi_ep;
  j.R_tilde = j.R.inverse() * j.G.inverse();
  return j;
}

PuiseuxResult puiseux(double g, double delta, PuiseuxOrder order) {
  validate(ModelOneParams{g, 0.0});
  if (!(delta > 0.0)) fail(ErrorKind::DomainError, "puiseux: delta must be positive");
  const double lb = 1.0 / std::sqrt(1.0 - g * g);
  const double x = std::sqrt(lb * delta);  // (lambda_bar delta)^{1/2}
  PuiseuxResult r;
  for (int b = 0; b < 2; ++b) {
    const double sg = b == 0 ? 1.0 : -1.0;
    Complex u = kI * sg * x;
    Complex n = kI * sg / (2.0 * x);
    if (order != PuiseuxOrder::Half) {
      u += -0.5 * x * x;
      n += 0.5;
    }
    if (order == PuiseuxOrder::ThreeHalves) {
      u += -kI * sg * x * x * x / 8.0;
      n += -3.0 * kI * sg * x / 16.0;
    }
    r.lambda[b] = lb * (1.0 + u);
    r.norm_sq[b] = n;
  }
  return r;
}

}  // namespace epdyn
