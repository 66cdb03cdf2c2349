#pragma once

#include <span>

#include "rootmax/common.hpp"
#include "rootmax/rng.hpp"

namespace rootmax {

// Degree-n complex polynomial stored coefficient-low-first:
// coefficients[k] multiplies z^k. The leading coefficient must be nonzero.
class Polynomial {
 public:
  explicit Polynomial(cvec coefficients) : coeffs_(std::move(coefficients)) {
    require(coeffs_.size() >= 2, "Polynomial: degree must be >= 1");
    require_finite(coeffs_, "Polynomial");
    require(coeffs_.back() != cplx(0.0),
            "Polynomial: leading coefficient must be nonzero");
  }

  std::size_t degree() const { return coeffs_.size() - 1; }
  const cvec& coefficients() const { return coeffs_; }

 private:
  cvec coeffs_;
};

// Roots of a solved polynomial together with the scaled backward-error
// residuals |P(z_i)| / (sum_k |a_k| max(1,|z_i|)^k) and the sweep count.
struct RootSet {
  cvec roots;
  std::vector<double> residuals;
  int iterations = 0;
};

// Random polynomial of degree n with i.i.d. standard complex Gaussian
// coefficients, E|G_k|^2 = 1. The (probability-zero) event of a vanishing
// leading coefficient is resampled away.
Polynomial sample_kac(std::size_t n, RngStream& rng);

inline constexpr double kRootTolDefault = 1e-10;
inline constexpr int kRootMaxIterDefault = 200;
inline constexpr std::size_t kRootDegreeCap = 4096;

// All roots by Aberth-Ehrlich simultaneous iteration, started from Bini-style
// guesses on Newton-polygon circles. Deterministic given the inputs.
// Convergence is per-root scaled backward error; failure to converge within
// max_iter throws convergence_error carrying the best iterate.
RootSet find_roots(const Polynomial& p, double tol = kRootTolDefault,
                   int max_iter = kRootMaxIterDefault);

// Largest root modulus. Ties (probability zero) resolve to the first index.
double max_modulus(const RootSet& r);

// Fraction of samples <= y for each grid point; the grid must be ascending.
std::vector<std::pair<double, double>> empirical_cdf(
    std::span<const double> samples, std::span<const double> grid);

}  // namespace rootmax
