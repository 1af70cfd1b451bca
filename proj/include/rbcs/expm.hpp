#pragma once

#include "rbcs/fock.hpp"

namespace rbcs {

/// exp(A) by scaling and squaring with diagonal Pade approximants of
/// degree 3, 5, 7, 9 or 13, chosen from the 1-norm of A.
Matrix expm(const Matrix& A);

Operator expm(const Operator& A);

}  // namespace rbcs
