#pragma once

#include <vector>

namespace rbcs {

/// Orthonormal Hermite functions psi_0(x) .. psi_{n_max}(x), by the
/// three-term recurrence
///   psi_{n+1} = sqrt(2/(n+1)) x psi_n - sqrt(n/(n+1)) psi_{n-1}.
/// The Gaussian envelope is carried as a separate exponent during the
/// recurrence, so large |x| only underflows values that really are below
/// the double range.
std::vector<double> hermite_functions(int n_max, double x);

/// Laguerre functions l_k(t) = L_k(t) e^{-t/2}, k = 0 .. n_max, orthonormal
/// on [0, inf). Same rescaling scheme.
std::vector<double> laguerre_functions(int n_max, double t);

}  // namespace rbcs
