#include "epdyn/gep_identity.hpp"

#include "epdyn/survival.hpp"

namespace epdyn {

Complex physical_lambda(Complex E, double tol) {
  require_finite(E, "physical_lambda");
  // lambda_1 lambda_2 = 1: take the larger-modulus root accurately, invert it for the other
  const Complex r = std::sqrt((E - 2.0) * (E + 2.0));
  const Complex a = (-E - r) / 2.0, b = (-E + r) / 2.0;
  const Complex big = std::abs(a) >= std::abs(b) ? a : b;
  const Complex small = 1.0 / big;
  if (std::fabs(std::abs(small) - 1.0) < tol)
    fail(ErrorKind::BranchAmbiguity, "E lies on the continuum [-2, 2]; the physical branch is ambiguous");
  return small;
}

ResolventSample resolvent_identity_check(const ModelOneParams& p, Complex E) {
  validate(p);
  ResolventSample s;
  s.E = E;
  s.lambda = physical_lambda(E);
  // H_eff(E) = eps_d + g^2 Sigma(E), Sigma = -lambda on the physical sheet
  s.lhs = 1.0 / (E - p.eps_d + p.g * p.g * s.lambda);
  const auto sys = build_gep(p);
  Eigen::Matrix2cd D = Eigen::Matrix2cd::Zero();
  for (int j = 0; j < 2; ++j) D(j, j) = 1.0 / (sys.eigenpairs[j].lambda - s.lambda);
  const MatrixC M = sys.U * D * sys.U_tilde;
  s.rhs = -s.lambda * M(0, 1);
  require_finite(s.lhs, "resolvent lhs");
  require_finite(s.rhs, "resolvent rhs");
  return s;
}

IntegrandSample integrand_identity_check(const ModelOneParams& p, Complex lambda) {
  return {lambda, pole_sum_factor_m1(p, lambda), integrand_factor_m1(p, lambda)};
}

}  // namespace epdyn
