#include "epdyn/time_kernel.hpp"

#include <algorithm>
#include <array>
#include <numbers>

namespace epdyn {
namespace {

constexpr int kNodes = 24;

struct Rule {
  std::array<double, kNodes> x, w;
};

// Gauss-Legendre nodes by Newton iteration on P_n.
const Rule& rule() {
  static const Rule r = [] {
    Rule q{};
    const int n = kNodes;
    for (int i = 0; i < n; ++i) {
      double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5)), dp = 0.0;
      for (int it = 0; it < 100; ++it) {
        double p0 = 1.0, p1 = z;
        for (int k = 2; k <= n; ++k) {
          const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
          p0 = p1;
          p1 = p2;
        }
        dp = n * (z * p1 - p0) / (z * z - 1.0);
        const double dz = p1 / dp;
        z -= dz;
        if (std::fabs(dz) < 1e-16) break;
      }
      q.x[i] = z;
      q.w[i] = 2.0 / ((1.0 - z * z) * dp * dp);
    }
    return q;
  }();
  return r;
}

inline double sample(double t, int power) {
  const double j1 = bessel_j(1, 2.0 * t);
  return power == 0 ? j1 : j1 / t;
}

void check_args(const std::vector<double>& times, int power) {
  if (power != 0 && power != 1) fail(ErrorKind::InvalidParameter, "kernel power must be 0 or 1");
  for (size_t i = 0; i < times.size(); ++i) {
    if (!(times[i] >= 0.0) || !std::isfinite(times[i])) fail(ErrorKind::InvalidParameter, "times must be finite and >= 0");
    if (i && times[i] < times[i - 1]) fail(ErrorKind::InvalidParameter, "times must be ascending");
  }
}

void charge(double length, double h) {
  const double evals = (length / h + 1.0) * kNodes;
  if (evals > double(default_max_evals()))
    fail(ErrorKind::BudgetExceeded, "time-domain kernel needs ~" + std::to_string(long(evals)) +
                                        " Bessel evaluations (raise EPDYN_MAX_EVALS)");
}

}  // namespace

double kernel_panel_length(const std::vector<Complex>& energies) {
  double w = 2.0;
  for (auto e : energies) w = std::max(w, std::abs(e) + 2.0);
  // (omega h / 2)^{2n} / (2n)! stays far below roundoff for omega h <= 12
  return std::min(3.0, 12.0 / w);
}

std::vector<std::vector<Complex>> propagate_forward(const std::vector<Complex>& energies,
                                                    const std::vector<double>& times, int power) {
  check_args(times, power);
  const size_t ne = energies.size();
  std::vector<std::vector<Complex>> out(ne, std::vector<Complex>(times.size()));
  if (times.empty() || ne == 0) return out;
  const auto& R = rule();
  const double h = kernel_panel_length(energies);
  charge(times.back(), h);

  // fixed-panel weights w_j (h/2) e^{-iE h(1-x_j)/2} and panel propagator e^{-iEh}
  std::vector<std::array<Complex, kNodes>> kw(ne);
  std::vector<Complex> step(ne), B(ne, 0.0);
  for (size_t e = 0; e < ne; ++e) {
    step[e] = std::exp(-kI * energies[e] * h);
    for (int j = 0; j < kNodes; ++j)
      kw[e][j] = R.w[j] * 0.5 * h * std::exp(-kI * energies[e] * (0.5 * h * (1.0 - R.x[j])));
  }
  std::array<double, kNodes> f{};
  double x = 0.0;
  for (size_t k = 0; k < times.size(); ++k) {
    const double tk = times[k];
    while (x + h <= tk) {
      for (int j = 0; j < kNodes; ++j) f[j] = sample(x + 0.5 * h * (1.0 + R.x[j]), power);
      for (size_t e = 0; e < ne; ++e) {
        Complex acc = 0.0;
        for (int j = 0; j < kNodes; ++j) acc += kw[e][j] * f[j];
        B[e] = step[e] * B[e] + acc;
      }
      x += h;
    }
    const double r = tk - x;
    if (r > 0.0) {
      for (int j = 0; j < kNodes; ++j) f[j] = sample(x + 0.5 * r * (1.0 + R.x[j]), power);
      for (size_t e = 0; e < ne; ++e) {
        const Complex E = energies[e];
        Complex acc = 0.0;
        for (int j = 0; j < kNodes; ++j) acc += R.w[j] * std::exp(-kI * E * (0.5 * r * (1.0 - R.x[j]))) * f[j];
        B[e] = std::exp(-kI * E * r) * B[e] + 0.5 * r * acc;
      }
      x = tk;
    }
    for (size_t e = 0; e < ne; ++e) out[e][k] = B[e];
  }
  return out;
}

std::vector<Complex> propagate_backward(Complex E, const std::vector<double>& times, int power) {
  check_args(times, power);
  if (!(E.imag() > 0.0)) fail(ErrorKind::RouteValidity, "backward propagation needs Im E > 0");
  std::vector<Complex> out(times.size());
  if (times.empty()) return out;
  const auto& R = rule();
  const double h = kernel_panel_length({E});
  // the e^{-Im E (t'-t)} envelope has fallen below e^{-40} at the truncation point
  const double span = 40.0 / E.imag();
  const double start = times.back() + span;
  charge(start - times.front(), h);

  std::array<Complex, kNodes> kw;
  for (int j = 0; j < kNodes; ++j) kw[j] = R.w[j] * 0.5 * h * std::exp(kI * E * (0.5 * h * (1.0 + R.x[j])));
  const Complex step = std::exp(kI * E * h);
  std::array<double, kNodes> f{};
  Complex S = 0.0;
  double x = start;
  for (size_t kk = times.size(); kk-- > 0;) {
    const double tk = times[kk];
    while (x - h >= tk) {
      const double a = x - h;
      Complex acc = 0.0;
      for (int j = 0; j < kNodes; ++j) acc += kw[j] * sample(a + 0.5 * h * (1.0 + R.x[j]), power);
      S = step * S + acc;
      x = a;
    }
    const double r = x - tk;
    if (r > 0.0) {
      for (int j = 0; j < kNodes; ++j) f[j] = sample(tk + 0.5 * r * (1.0 + R.x[j]), power);
      Complex acc = 0.0;
      for (int j = 0; j < kNodes; ++j) acc += R.w[j] * std::exp(kI * E * (0.5 * r * (1.0 + R.x[j]))) * f[j];
      S = std::exp(kI * E * r) * S + 0.5 * r * acc;
      x = tk;
    }
    out[kk] = S;
  }
  return out;
}

}  // namespace epdyn
