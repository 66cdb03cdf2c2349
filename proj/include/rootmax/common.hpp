#pragma once

#include <complex>
#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace rootmax {

using cplx = std::complex<double>;
using cvec = std::vector<cplx>;

// Error raised when a numerical routine fails to converge. Carries the best
// iterate so the caller can inspect or reproduce the failure.
class convergence_error : public std::runtime_error {
 public:
  convergence_error(std::string msg, cvec best, std::vector<double> residuals,
                    int iterations)
      : std::runtime_error(std::move(msg)),
        best_iterate(std::move(best)),
        residuals(std::move(residuals)),
        iterations(iterations) {}

  cvec best_iterate;
  std::vector<double> residuals;
  int iterations = 0;
};

// Raised when two independent evaluation routes disagree beyond tolerance.
class cross_validation_error : public std::runtime_error {
 public:
  cross_validation_error(std::string msg, double first, double second)
      : std::runtime_error(std::move(msg)), first(first), second(second) {}

  double first = 0.0;
  double second = 0.0;
};

inline bool is_finite(cplx z) {
  return std::isfinite(z.real()) && std::isfinite(z.imag());
}

inline void require_finite(std::span<const cplx> values, const char* what) {
  for (cplx z : values) {
    if (!is_finite(z)) {
      throw std::invalid_argument(std::string(what) +
                                  ": non-finite entry in input");
    }
  }
}

inline void require(bool cond, const char* msg) {
  if (!cond) throw std::invalid_argument(msg);
}

}  // namespace rootmax
