#pragma once

#include "epdyn/model_one.hpp"

namespace epdyn {

// (E - H_eff(E))^{-1} against -lambda [1 0] U (Lambda - lambda)^{-1} U~ [0 1]^T.
struct ResolventSample {
  Complex E;
  Complex lambda;  // physical-sheet root of lambda^2 + E lambda + 1 = 0
  Complex lhs;
  Complex rhs;
  double abs_diff() const { return std::abs(lhs - rhs); }
};

// |lambda| < 1 root; BranchAmbiguity when E sits on the band (|lambda| = 1 within tol).
Complex physical_lambda(Complex E, double tol = 1e-12);

ResolventSample resolvent_identity_check(const ModelOneParams& p, Complex E);

// Pole-sum and rational forms of the integrand factor at one contour point.
struct IntegrandSample {
  Complex lambda;
  Complex pole_sum;
  Complex direct;
};
IntegrandSample integrand_identity_check(const ModelOneParams& p, Complex lambda);

}  // namespace epdyn
