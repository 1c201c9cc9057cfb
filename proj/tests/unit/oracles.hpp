#pragma once

// Independent eigenvalue oracle for small symmetric matrices: builds the
// characteristic polynomial by the Faddeev-LeVerrier recurrence and finds
// its (all-real) roots by derivative interlacing plus bisection. Shares no
// code with the eigensolver under test.

#include <vector>

#include "liftspec/linalg.hpp"

namespace oracle {

// Monic characteristic polynomial of det(xI - M): coefficients c[0..n]
// with c[0] = 1, highest degree first. pre: 1 <= dim <= 8.
std::vector<double> char_poly(const liftspec::SymmetricMatrix& m);

// All real roots of a monic polynomial with exclusively real roots, sorted
// nondecreasing, with multiplicity. Near-multiple roots (both a root and a
// critical point) are resolved to the critical point.
std::vector<double> real_roots(const std::vector<double>& coeffs);

}  // namespace oracle
