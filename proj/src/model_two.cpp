#include "epdyn/model_two.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace epdyn {
namespace {

struct Consts {
  double g2, q, s;  // s = sqrt(1 - g^2)
  double one_minus_s;
};

Consts consts(double g) {
  const double g2 = g * g, q = 1.0 - g2, s = std::sqrt(q);
  return {g2, q, s, g2 / (1.0 + s)};
}

}  // namespace

void validate(const ModelTwoParams& p) {
  if (!std::isfinite(p.g) || !std::isfinite(p.V)) fail(ErrorKind::InvalidParameter, "parameters must be finite");
  if (!(p.g > 0.0 && p.g < 1.0)) fail(ErrorKind::InvalidParameter, "g must lie in (0,1)");
  if (!(p.V > 0.0)) fail(ErrorKind::InvalidParameter, "V must be positive");
}

std::array<double, 3> quartic_coefficients(const ModelTwoParams& p) {
  const double g2 = p.g * p.g, v2 = p.V * p.V;
  return {1.0 - g2, g2 * g2 + (g2 - 2.0) * v2, v2 * v2};
}

Complex quartic_value(const ModelTwoParams& p, Complex E) {
  const auto c = quartic_coefficients(p);
  const Complex e2 = E * E;
  return (c[0] * e2 + c[1]) * e2 + c[2];
}

double inner_discriminant(double g, double V) {
  const auto k = consts(g);
  const double va = 1.0 + k.s, vb = k.one_minus_s;
  return (V - va) * (V + va) * (V - vb) * (V + vb);
}

std::array<Complex, 4> lambda_roots_m2(double g, double V) {
  const auto k = consts(g);
  const Complex rd = std::sqrt(Complex(inner_discriminant(g, V), 0.0));
  const double base = V * V + k.g2 - 2.0;
  std::array<Complex, 4> out;
  int i = 0;
  for (int a : {1, -1})
    for (int b : {1, -1}) out[i++] = double(a) * std::sqrt((base + double(b) * rd) / (2.0 * k.q));
  return out;
}

Complex dA_weight(const ModelTwoParams& p, Complex l) {
  const double g2 = p.g * p.g, v2 = p.V * p.V;
  const Complex l2 = l * l;
  const Complex den = 1.0 + (1.0 + g2 + v2) * l2 - (1.0 - 2.0 * g2 + v2) * l2 * l2 - (1.0 - g2) * l2 * l2 * l2;
  return v2 * l2 / den;
}

SpectrumM2 quartic_spectrum(const ModelTwoParams& p, const SpectrumOptions& opt) {
  validate(p);
  const auto c = quartic_coefficients(p);
  const auto E = quartic_roots(c[0], c[1], c[2]);
  const auto L = lambda_roots_m2(p.g, p.V);
  // assignment of E roots to lambda roots by minimal total dispersion residual
  std::array<int, 4> perm{0, 1, 2, 3}, best{};
  double best_cost = INFINITY;
  do {
    double cost = 0;
    for (int j = 0; j < 4; ++j) cost += std::abs(E[perm[j]] + L[j] + 1.0 / L[j]);
    if (cost < best_cost) {
      best_cost = cost;
      best = perm;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));

  const auto ep = ep_locations_m2(p.g);
  const double d = std::min(std::fabs(p.V - ep.ep2a), std::fabs(p.V - ep.ep2b.V_bar));
  SpectrumM2 out;
  out.at_exceptional_point = d < opt.delta_tol;
  out.near_exceptional_point = d < opt.near_band;
  for (int j = 0; j < 4; ++j) {
    auto& s = out.points[j];
    s.lambda = require_finite(L[j], "quartic_spectrum");
    s.energy = E[best[j]];
    s.k = k_of_lambda(s.lambda);
    s.classification = out.at_exceptional_point ? Classification::Coalesced : classify_point(s.lambda, s.energy);
    const double im = s.lambda.imag(), re = s.lambda.real();
    s.s = (im > 0 || (im == 0 && re > 0)) ? 1 : -1;
    out.max_dispersion_residual = std::max(out.max_dispersion_residual, std::abs(s.energy + s.lambda + 1.0 / s.lambda));
  }
  // branch label inside each s pair: upper sign has s*Re(lambda) > 0 (larger |lambda| on ties)
  for (int sv : {1, -1}) {
    std::vector<int> idx;
    for (int j = 0; j < 4; ++j)
      if (out.points[j].s == sv) idx.push_back(j);
    if (idx.size() != 2) {
      for (int j : idx) out.points[j].branch = 1;
      continue;
    }
    auto key = [&](int j) {
      const Complex l = out.points[j].lambda;
      return std::make_pair(sv * l.real(), std::abs(l));
    };
    const bool first_upper = key(idx[0]) > key(idx[1]);
    out.points[idx[0]].branch = first_upper ? 1 : -1;
    out.points[idx[1]].branch = first_upper ? -1 : 1;
  }
  return out;
}

EpLocationsM2 ep_locations_m2(double g) {
  validate(ModelTwoParams{g, 1.0});
  const auto k = consts(g);
  EpLocationsM2 r;
  r.ep2a = 1.0 + k.s;
  r.ep2b.V_bar = k.one_minus_s;
  // sqrt((2-g^2)/s - 2) = (1 - s)/s^{1/2}
  const double eb = k.one_minus_s / std::sqrt(k.s);
  r.ep2b.E_bar = Complex(0.0, eb);
  r.ep2b.lambda_bar = Complex(0.0, 1.0 / std::sqrt(k.s));
  r.ep2b.gamma_bar = 2.0 * eb;
  return r;
}

GepSystem build_gep_m2(const ModelTwoParams& p, double norm_cap) {
  const auto spec = quartic_spectrum(p);
  if (spec.at_exceptional_point)
    fail(ErrorKind::NearEP, "build_gep_m2: parameters sit on an exceptional point");
  const double g2 = p.g * p.g;
  GepSystem s;
  s.F = MatrixC::Zero(4, 4);
  s.F(0, 2) = s.F(2, 0) = 1.0;
  s.F(1, 3) = s.F(3, 1) = 1.0;
  s.F(2, 3) = s.F(3, 2) = -p.V;
  s.G = MatrixC::Zero(4, 4);
  s.G.diagonal() << 1.0, 1.0, -1.0, g2 - 1.0;
  s.U = MatrixC(4, 4);
  for (int j = 0; j < 4; ++j) {
    const Complex lam = spec.points[j].lambda;
    const Complex a = std::sqrt(dA_weight(p, lam));
    if (!is_finite(a) || std::abs(a) > norm_cap)
      fail(ErrorKind::NearEP, "build_gep_m2: eigenvector norm exceeds conditioning cap");
    const Complex b = a * (1.0 + lam * lam) / (p.V * lam);
    VectorC v(4);
    v << a, b, lam * a, lam * b;
    s.eigenpairs.push_back({lam, v, v});
    s.norms.push_back(a);
    s.U.col(j) = v;
  }
  s.U_tilde = s.U.inverse() * s.G.inverse();
  return s;
}

NearEp2bExpansion near_ep2b_expansion(double g, double delta, bool include_order_delta) {
  validate(ModelTwoParams{g, 1.0});
  if (!(delta > 0.0)) fail(ErrorKind::DomainError, "near_ep2b_expansion: delta must be positive");
  const auto k = consts(g);
  const Complex lb = ep_locations_m2(g).ep2b.lambda_bar;
  const double w = -k.one_minus_s / k.s;            // 1 - 1/s
  const Complex c1 = std::sqrt(Complex(0.5 * w, 0.0));
  const double c2 = 0.25 * w;
  const Complex r = std::sqrt(Complex(-k.s * k.one_minus_s, 0.0));  // sqrt(q - s)
  const Complex c3 = 1.0 / (4.0 * std::sqrt(2.0) * r);
  const double x = 3.0 / k.s + 2.0 - 2.0 * k.s - k.q;
  const double sd = std::sqrt(delta);
  NearEp2bExpansion e;
  for (int si = 0; si < 2; ++si)
    for (int bi = 0; bi < 2; ++bi) {
      const double sg = si == 0 ? 1.0 : -1.0, b = bi == 0 ? 1.0 : -1.0;
      e.lambda[si][bi] = sg * lb * (1.0 - b * c1 * sd + c2 * delta + b * c3 * delta * sd);
    }
  Complex cd[2] = {0.0, 0.0};
  if (include_order_delta) {
    const Complex up = ep2b_dA2_delta_coefficient(g);
    cd[0] = up;
    cd[1] = std::conj(up);
  }
  for (int bi = 0; bi < 2; ++bi) {
    const double b = bi == 0 ? 1.0 : -1.0;
    e.dA2[bi] = 0.25 * (1.0 - b * r / std::sqrt(2.0 * delta) + b * x * r / (4.0 * std::sqrt(2.0) * k.g2) * sd) +
                cd[bi] * delta;
  }
  return e;
}

Complex ep2b_dA2_delta_coefficient(double g) {
  const auto ep = ep_locations_m2(g);
  auto c_of = [&](double d) {
    const auto e = near_ep2b_expansion(g, d, false);
    const auto roots = lambda_roots_m2(g, ep.ep2b.V_bar + d);
    const Complex target = e.lambda[0][0];
    Complex best = roots[0];
    for (auto z : roots)
      if (std::abs(z - target) < std::abs(best - target)) best = z;
    return (dA_weight(ModelTwoParams{g, ep.ep2b.V_bar + d}, best) - e.dA2[0]) / d;
  };
  // remainder runs in powers of delta^{1/2}: two Richardson sweeps
  const double d0 = 1e-4 * ep.ep2b.V_bar;
  const Complex a = c_of(d0), b = c_of(d0 / 2.0), c = c_of(d0 / 4.0);
  const double r2 = std::sqrt(2.0);
  const Complex ab = (r2 * b - a) / (r2 - 1.0), bc = (r2 * c - b) / (r2 - 1.0);
  return (2.0 * bc - ab) / (2.0 - 1.0);
}

}  // namespace epdyn
