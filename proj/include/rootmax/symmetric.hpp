#pragma once

#include <span>

#include "rootmax/common.hpp"

namespace rootmax {

// Elementary symmetric polynomials (e_0, ..., e_n) of the input values,
// e_0 = 1, via the incremental recurrence e_k += z * e_{k-1} applied one
// value at a time. O(n^2), numerically transparent at the sizes in use.
cvec elementary_symmetric(std::span<const cplx> values);

// |Vandermonde(z)|^2 = prod_{i<j} |z_i - z_j|^2; equals 1 for fewer than two
// values (empty product).
double vandermonde_abs2(std::span<const cplx> values);

}  // namespace rootmax
