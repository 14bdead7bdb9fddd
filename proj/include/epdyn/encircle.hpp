#pragma once

#include <array>
#include <string>
#include <vector>

#include "epdyn/model_one.hpp"

// Quasi-static parametric encirclement of the lower EP2A of model I. Nothing here evolves a state in
// time: parameters are stepped around the exceptional point and the eigenpairs are followed.
namespace epdyn {

enum class Direction { Clockwise, Counterclockwise };
const char* to_string(Direction d);
Direction direction_from_string(const std::string& s);

enum class Branch { Plus, Minus };

struct SignedLabel {
  int sign;  // +1 / -1
  Branch label;
  bool operator==(const SignedLabel&) const = default;
};
std::string to_string(const SignedLabel& s);

struct ThetaState {
  double theta;
  Eigen::Vector2cd psi_minus;  // [cos th, i lambda_bar sin th]
  Eigen::Vector2cd psi_plus;   // [sin th, -i lambda_bar cos th]
  // lambda_-/lambda_bar = i sin/cos and lambda_+/lambda_bar = -i cos/sin, kept as (num, den) pairs
  std::array<Complex, 2> lambda_minus_ratio;
  std::array<Complex, 2> lambda_plus_ratio;
};

ThetaState theta_eigvecs(double g, double theta);

// xi_d(theta) from lambda_+ + lambda_- = 2 xi_d and the complex eps_d = -2(1-g^2) xi_d it implies.
Complex xi_of_theta(double g, double theta);
Complex eps_of_xi(double g, Complex xi);

// One loop around the EP: theta -> theta +- pi/2.
struct ExchangeReport {
  Direction direction;
  SignedLabel minus_to;  // image of Psi_-
  SignedLabel plus_to;   // image of Psi_+
  double residual;       // max |image - sign * target|
};

ExchangeReport encircle_once(double g, Direction d, double theta = 0.0);

// n loops; each entry is {image of Psi_+, image of Psi_-} after k = 1..n loops.
std::vector<std::array<SignedLabel, 2>> revolution_cycle(double g, Direction d, int n_loops, double theta = 0.0);

struct LoopSpec {
  double center;  // lambda_bar_A for a loop around one EP; 0 with radius > lambda_bar_A takes in both
  double radius;  // chi
  Direction direction = Direction::Counterclockwise;
  int steps = 256;
};

struct LambdaTrace {
  std::vector<double> delta;
  std::vector<Complex> xi;
  std::array<std::vector<Complex>, 2> branch;
  bool swapped = false;
  bool encloses_both_eps = false;
};

// xi_d = lambda_bar + chi e^{i delta}, delta from 0 to +2 pi (counterclockwise) or -2 pi (clockwise);
// lambda_+- followed by nearest-neighbour continuation.
LambdaTrace trace_lambda_loop(double g, const LoopSpec& loop);

// Ratio of the near to the far candidate distance above which a continuation step is rejected.
inline constexpr double kContinuationAmbiguity = 0.5;

}  // namespace epdyn
