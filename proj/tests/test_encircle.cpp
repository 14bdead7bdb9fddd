#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numbers>
#include <random>

#include "epdyn/encircle.hpp"

using namespace epdyn;
constexpr double pi = std::numbers::pi;

namespace {

// Parity of the winding of the discriminant xi^2 - lambda_bar^2 along the sampled loop.
bool odd_winding(const LambdaTrace& tr, double lb) {
  double total = 0;
  for (size_t k = 1; k < tr.xi.size(); ++k) {
    const Complex a = tr.xi[k - 1] * tr.xi[k - 1] - lb * lb, b = tr.xi[k] * tr.xi[k] - lb * lb;
    total += std::arg(b / a);
  }
  const long w = std::lround(total / (2 * pi));
  return w % 2 != 0;
}

double lbar(double g) { return ep_location(g).lambda_bar; }

}  // namespace

TEST_CASE("theta-parameterised eigenvectors") {
  const double g = 0.6, lb = lbar(g);
  auto s = theta_eigvecs(g, 0.0);
  CHECK(std::abs(s.psi_minus(0) - 1.0) < 1e-15);
  CHECK(std::abs(s.psi_minus(1)) < 1e-15);
  CHECK(std::abs(s.psi_plus(0)) < 1e-15);
  CHECK(std::abs(s.psi_plus(1) + kI * lb) < 1e-15);
  s = theta_eigvecs(g, pi / 4);
  CHECK(std::abs(s.psi_minus(0) - std::sqrt(0.5)) < 1e-15);
  CHECK(std::abs(s.psi_minus(1) - kI * lb * std::sqrt(0.5)) < 1e-15);

  // lambda_+ lambda_- = lambda_bar^2 = 1/(1-g^2) for every theta, including theta = pi/2
  for (double th : {0.1, 0.7, pi / 2, 2.0, 3.0}) {
    const auto t = theta_eigvecs(g, th);
    const Complex prod_num = t.lambda_minus_ratio[0] * t.lambda_plus_ratio[0];
    const Complex prod_den = t.lambda_minus_ratio[1] * t.lambda_plus_ratio[1];
    CHECK(std::abs(prod_num - prod_den) < 1e-14);
    // lambda_+(theta) = lambda_-(theta + pi/2)
    const auto u = theta_eigvecs(g, th + pi / 2);
    CHECK(std::abs(t.lambda_plus_ratio[0] * u.lambda_minus_ratio[1] - u.lambda_minus_ratio[0] * t.lambda_plus_ratio[1]) < 1e-14);
  }
  CHECK(lb * lb == doctest::Approx(1.0 / (1 - g * g)));
}

TEST_CASE("theta states solve the generalized eigenproblem with the complex eps_d they imply") {
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> ug(0.05, 0.95), ut(0.05, pi / 2 - 0.05);
  double worst = 0;
  for (int k = 0; k < 200; ++k) {
    const double g = ug(rng), th = ut(rng), lb = lbar(g);
    const auto st = theta_eigvecs(g, th);
    const Complex eps = eps_of_xi(g, xi_of_theta(g, th));
    Eigen::Matrix2cd F, G;
    F << 0.0, 1.0, 1.0, eps;
    G << 1.0, 0.0, 0.0, g * g - 1.0;
    const Complex lm = lb * st.lambda_minus_ratio[0] / st.lambda_minus_ratio[1];
    const Complex lp = lb * st.lambda_plus_ratio[0] / st.lambda_plus_ratio[1];
    worst = std::max(worst, ((F - lm * G) * st.psi_minus).norm() / st.psi_minus.norm());
    worst = std::max(worst, ((F - lp * G) * st.psi_plus).norm() / st.psi_plus.norm());
    // and the pair matches the model's own roots at that eps_d
    const auto r = lambda_pm(g, eps);
    const double m = std::min(std::abs(r[0] - lm) + std::abs(r[1] - lp), std::abs(r[1] - lm) + std::abs(r[0] - lp));
    CHECK(m < 1e-9 * lb);
  }
  CHECK(worst < 1e-10);
}

TEST_CASE("one loop exchanges the eigenvectors") {
  const double g = 0.6, lb = lbar(g);
  auto r = encircle_once(g, Direction::Counterclockwise);
  CHECK(r.minus_to == SignedLabel{-1, Branch::Plus});
  CHECK(r.plus_to == SignedLabel{1, Branch::Minus});
  CHECK(r.residual < 1e-12);
  const auto half = theta_eigvecs(g, pi / 2);
  CHECK(std::abs(half.psi_minus(0)) < 1e-15);
  CHECK(std::abs(half.psi_minus(1) - kI * lb) < 1e-15);

  r = encircle_once(g, Direction::Clockwise);
  CHECK(r.minus_to == SignedLabel{1, Branch::Plus});
  CHECK(r.plus_to == SignedLabel{-1, Branch::Minus});
  CHECK(r.residual < 1e-12);

  // ccw then cw is the identity, from an arbitrary starting angle
  const double th0 = 0.37;
  const auto a = theta_eigvecs(g, th0), b = theta_eigvecs(g, th0 + pi / 2 - pi / 2);
  CHECK((a.psi_minus - b.psi_minus).norm() < 1e-14);
  CHECK((a.psi_plus - b.psi_plus).norm() < 1e-14);
  CHECK(encircle_once(g, Direction::Counterclockwise, th0).minus_to == SignedLabel{-1, Branch::Plus});
}

TEST_CASE("four-revolution cycle") {
  for (double g : {0.1, 0.6, 0.9}) {
    const auto c = revolution_cycle(g, Direction::Counterclockwise, 4);
    REQUIRE(c.size() == 4);
    CHECK(c[0][0] == SignedLabel{1, Branch::Minus});
    CHECK(c[0][1] == SignedLabel{-1, Branch::Plus});
    CHECK(c[1][0] == SignedLabel{-1, Branch::Plus});
    CHECK(c[1][1] == SignedLabel{-1, Branch::Minus});
    CHECK(c[2][0] == SignedLabel{-1, Branch::Minus});
    CHECK(c[2][1] == SignedLabel{1, Branch::Plus});
    CHECK(c[3][0] == SignedLabel{1, Branch::Plus});
    CHECK(c[3][1] == SignedLabel{1, Branch::Minus});

    const auto w = revolution_cycle(g, Direction::Clockwise, 4);
    CHECK(w[0][0] == SignedLabel{-1, Branch::Minus});
    CHECK(w[0][1] == SignedLabel{1, Branch::Plus});
    CHECK(w[1][0] == SignedLabel{-1, Branch::Plus});
    CHECK(w[1][1] == SignedLabel{-1, Branch::Minus});
    CHECK(w[3][0] == SignedLabel{1, Branch::Plus});
    CHECK(w[3][1] == SignedLabel{1, Branch::Minus});
  }
  // period four
  const auto c8 = revolution_cycle(0.6, Direction::Counterclockwise, 8);
  for (int k = 0; k < 4; ++k) CHECK(c8[k] == c8[k + 4]);
  CHECK_THROWS_AS(revolution_cycle(0.6, Direction::Counterclockwise, 0), Error);
  CHECK(to_string(SignedLabel{-1, Branch::Plus}) == "-Psi+");
  CHECK(direction_from_string("cw") == Direction::Clockwise);
  CHECK_THROWS_AS(direction_from_string("up"), Error);
}

TEST_CASE("eigenvalue loops in the xi plane") {
  for (double g : {0.3, 0.6}) {
    const double lb = lbar(g);
    for (auto dir : {Direction::Counterclockwise, Direction::Clockwise}) {
      const auto one = trace_lambda_loop(g, {lb, 0.5 * lb, dir, 256});
      CHECK(one.swapped);
      CHECK(odd_winding(one, lb));
      CHECK_FALSE(one.encloses_both_eps);
      // each branch ends where the other began
      CHECK(std::abs(one.branch[0].back() - one.branch[1].front()) < 1e-10);

      const auto both = trace_lambda_loop(g, {0.0, 1.5 * lb, dir, 256});
      CHECK_FALSE(both.swapped);
      CHECK_FALSE(odd_winding(both, lb));
      CHECK(both.encloses_both_eps);
      CHECK(std::abs(both.branch[0].back() - both.branch[0].front()) < 1e-10);

      const auto none = trace_lambda_loop(g, {3.0 * lb, 0.5 * lb, dir, 256});
      CHECK_FALSE(none.swapped);
      CHECK_FALSE(odd_winding(none, lb));

      // swap detection survives doubling the step count
      for (const auto& l : {LoopSpec{lb, 0.5 * lb, dir, 64}, LoopSpec{0.0, 1.5 * lb, dir, 64}}) {
        auto l2 = l;
        l2.steps *= 2;
        CHECK(trace_lambda_loop(g, l).swapped == trace_lambda_loop(g, l2).swapped);
      }
    }
  }
  // the loop is closed and starts at delta = 0
  const double lb = lbar(0.6);
  const auto tr = trace_lambda_loop(0.6, {lb, 0.5 * lb, Direction::Clockwise, 32});
  CHECK(tr.delta.size() == 33);
  CHECK(tr.delta.back() == doctest::Approx(-2 * pi));
  CHECK(std::abs(tr.xi.front() - tr.xi.back()) < 1e-14);

  // a shrinking loop shrinks the traces onto lambda_bar
  for (double chi : {1e-2, 1e-4}) {
    const auto t = trace_lambda_loop(0.6, {lb, chi * lb, Direction::Counterclockwise, 64});
    double spread = 0;
    for (int b = 0; b < 2; ++b)
      for (auto z : t.branch[b]) spread = std::max(spread, std::abs(std::abs(z) - lb));
    CHECK(spread < 3 * std::sqrt(chi) * lb);
  }

  CHECK_THROWS_AS(trace_lambda_loop(0.6, {lb, 0.5 * lb, Direction::Counterclockwise, 8}), Error);
  CHECK_THROWS_AS(trace_lambda_loop(0.6, {lb, 0.0, Direction::Counterclockwise, 64}), Error);
  CHECK_THROWS_AS(trace_lambda_loop(1.2, {lb, 0.5, Direction::Counterclockwise, 64}), Error);
}

TEST_CASE("too few steps are caught by the continuation check") {
  const double lb = lbar(0.6);
  // a loop skimming the branch point with coarse steps cannot be followed unambiguously
  bool thrown = false;
  try {
    trace_lambda_loop(0.6, {lb + 0.02 * lb, 0.021 * lb, Direction::Counterclockwise, 16});
  } catch (const Error& e) {
    thrown = e.kind() == ErrorKind::StepTooCoarse;
  }
  CHECK(thrown);
}
