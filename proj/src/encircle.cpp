#include "epdyn/encircle.hpp"

#include <cmath>
#include <numbers>

namespace epdyn {

const char* to_string(Direction d) { return d == Direction::Clockwise ? "cw" : "ccw"; }

Direction direction_from_string(const std::string& s) {
  if (s == "cw" || s == "clockwise") return Direction::Clockwise;
  if (s == "ccw" || s == "counterclockwise") return Direction::Counterclockwise;
  fail(ErrorKind::InvalidParameter, "direction must be cw or ccw");
}

std::string to_string(const SignedLabel& s) {
  return std::string(s.sign > 0 ? "+" : "-") + (s.label == Branch::Plus ? "Psi+" : "Psi-");
}

namespace {

double lambda_bar(double g) {
  validate(ModelOneParams{g, 0.0});
  return ep_location(g, EpBranch::Lower).lambda_bar;
}

// Express v as +-psi_plus or +-psi_minus of the reference state.
SignedLabel identify(const Eigen::Vector2cd& v, const ThetaState& ref, double& residual) {
  double best = INFINITY;
  SignedLabel out{1, Branch::Plus};
  for (Branch b : {Branch::Plus, Branch::Minus})
    for (int sg : {1, -1}) {
      const auto& w = b == Branch::Plus ? ref.psi_plus : ref.psi_minus;
      const double r = (v - double(sg) * w).cwiseAbs().maxCoeff();
      if (r < best) {
        best = r;
        out = {sg, b};
      }
    }
  residual = std::max(residual, best);
  return out;
}

}  // namespace

ThetaState theta_eigvecs(double g, double theta) {
  const double lb = lambda_bar(g);
  const double c = std::cos(theta), s = std::sin(theta);
  ThetaState st;
  st.theta = theta;
  st.psi_minus << c, kI * lb * s;
  st.psi_plus << s, -kI * lb * c;
  st.lambda_minus_ratio = {kI * s, Complex(c)};
  st.lambda_plus_ratio = {-kI * c, Complex(s)};
  return st;
}

Complex xi_of_theta(double g, double theta) {
  // (lambda_+ + lambda_-)/2 = i lambda_bar (tan th - cot th)/2 = -i lambda_bar cot 2th
  const double lb = lambda_bar(g);
  return -kI * lb * std::cos(2.0 * theta) / std::sin(2.0 * theta);
}

Complex eps_of_xi(double g, Complex xi) { return -2.0 * (1.0 - g * g) * xi; }

ExchangeReport encircle_once(double g, Direction d, double theta) {
  const double step = d == Direction::Counterclockwise ? std::numbers::pi / 2 : -std::numbers::pi / 2;
  const auto a = theta_eigvecs(g, theta), b = theta_eigvecs(g, theta + step);
  ExchangeReport r{d, {}, {}, 0.0};
  r.minus_to = identify(b.psi_minus, a, r.residual);
  r.plus_to = identify(b.psi_plus, a, r.residual);
  return r;
}

std::vector<std::array<SignedLabel, 2>> revolution_cycle(double g, Direction d, int n_loops, double theta) {
  if (n_loops < 1) fail(ErrorKind::InvalidParameter, "n_loops must be >= 1");
  const double step = d == Direction::Counterclockwise ? std::numbers::pi / 2 : -std::numbers::pi / 2;
  const auto ref = theta_eigvecs(g, theta);
  std::vector<std::array<SignedLabel, 2>> out;
  double res = 0.0;
  for (int k = 1; k <= n_loops; ++k) {
    const auto st = theta_eigvecs(g, theta + k * step);
    out.push_back({identify(st.psi_plus, ref, res), identify(st.psi_minus, ref, res)});
  }
  if (res > 1e-12) fail(ErrorKind::NonFinite, "revolution_cycle: loop image is not a signed eigenvector");
  return out;
}

LambdaTrace trace_lambda_loop(double g, const LoopSpec& loop) {
  validate(ModelOneParams{g, 0.0});
  if (!(loop.radius > 0.0) || !std::isfinite(loop.radius)) fail(ErrorKind::InvalidParameter, "loop radius must be > 0");
  if (loop.steps < 16) fail(ErrorKind::InvalidParameter, "loop needs at least 16 steps");
  const double q = 1.0 - g * g;
  const double dir = loop.direction == Direction::Counterclockwise ? 1.0 : -1.0;
  LambdaTrace tr;
  // branch points of lambda_+- in the xi plane: +-lambda_bar
  const double lb = ep_location(g, EpBranch::Lower).lambda_bar;
  tr.encloses_both_eps = std::fabs(lb - loop.center) < loop.radius && std::fabs(-lb - loop.center) < loop.radius;
  for (int k = 0; k <= loop.steps; ++k) {
    const double d = dir * 2.0 * std::numbers::pi * k / loop.steps;
    const Complex xi = loop.center + loop.radius * std::polar(1.0, d);
    const auto r = lambda_pm(g, -2.0 * q * xi);
    tr.delta.push_back(d);
    tr.xi.push_back(xi);
    if (k == 0) {
      tr.branch[0].push_back(r[0]);
      tr.branch[1].push_back(r[1]);
      continue;
    }
    const Complex p0 = tr.branch[0].back(), p1 = tr.branch[1].back();
    const double keep = std::abs(r[0] - p0) + std::abs(r[1] - p1);
    const double swap = std::abs(r[1] - p0) + std::abs(r[0] - p1);
    if (std::min(keep, swap) > kContinuationAmbiguity * std::max(keep, swap))
      fail(ErrorKind::StepTooCoarse, "trace_lambda_loop: continuation ambiguous at step " + std::to_string(k) +
                                         "; increase steps");
    tr.branch[0].push_back(keep <= swap ? r[0] : r[1]);
    tr.branch[1].push_back(keep <= swap ? r[1] : r[0]);
  }
  const Complex s0 = tr.branch[0].front(), e0 = tr.branch[0].back(), s1 = tr.branch[1].front();
  tr.swapped = std::abs(e0 - s1) < std::abs(e0 - s0);
  return tr;
}

}  // namespace epdyn
