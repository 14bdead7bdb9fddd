#pragma once

#include <vector>

#include "epdyn/numerics.hpp"

namespace epdyn {

// Propagated Bessel convolutions on an ascending grid, f(t') = J1(2t') t'^{-power}, power in {0,1}.
//
//   forward:  B_E(t_k) = int_0^{t_k} e^{-iE(t_k - t')} f(t') dt'     (bounded for Im E <= 0)
//   backward: S_E(t_k) = int_{t_k}^inf e^{iE(t' - t_k)} f(t') dt'    (bounded for Im E > 0)
//
// Composite 24-point Gauss-Legendre panels sized to the fastest phase in the integrand; the
// Bessel samples are shared by all energies of one call. Evaluation count is charged against
// default_max_evals() (BudgetExceeded when the grid needs more).
std::vector<std::vector<Complex>> propagate_forward(const std::vector<Complex>& energies,
                                                    const std::vector<double>& times, int power);

std::vector<Complex> propagate_backward(Complex E, const std::vector<double>& times, int power = 1);

// Panel length used for a set of energies.
double kernel_panel_length(const std::vector<Complex>& energies);

}  // namespace epdyn
