#pragma once

#include <optional>

#include "rootmax/common.hpp"
#include "rootmax/linalg.hpp"
#include "rootmax/rng.hpp"

namespace rootmax {

// Covariance matrices of the degree-n Gaussian polynomial
// P(z) = sum_{t=0}^n G_t z^t (so n+1 coefficients) and its derivative:
//   A[i,j] = E[P(z_i) conj(P(z_j))]   = S(x)
//   B[i,j] = E[P(z_i) conj(P'(z_j))]  = z_i S'(x)
//   C[i,j] = E[P'(z_i) conj(P'(z_j))] = S'(x) + x S''(x)
// with x = z_i conj(z_j) and S(x) = sum_{t=0}^n x^t. This is the one place
// the coefficient-count convention is pinned: the index n is the polynomial
// degree, so S has n+1 terms, which is what makes the k=1, n=1 correlation
// equal 1/(pi (1+|z|^2)^2) exactly.
struct CovarianceTriple {
  ComplexMatrix A, B, C;
};

CovarianceTriple covariance_triple(const cvec& z, std::size_t n);

inline constexpr std::size_t kRhoPointCap = 8;

// k-point correlation function (Lebesgue density) of the roots of the
// degree-n Gaussian polynomial:
//   rho_k = per(C - B A^{-1} B*) / det(pi A).
// Capped at k = 8 by the permanent cost; coincident points make A singular.
double rho_finite(const cvec& z, std::size_t n);

// Limiting correlation det(g_inf(z_i conj z_j)) with g_inf(x) = 1/(1-x)^2,
// a density with respect to (dz/pi)^k; multiply rho_finite by pi^k to match.
double rho_limit(const cvec& z);

// Quadrature grid on the disk D(t) for the measure dz/pi: Gauss-Legendre in
// radius, trapezoid (equispaced) in angle. Total weight is t^2.
struct NystromGrid {
  double t = 0.0;
  std::vector<double> radial_nodes;
  std::vector<double> radial_weights;  // GL weights for integral_0^t dr
  std::size_t angular = 0;
  cvec points;                  // flattened, radius-major
  std::vector<double> weights;  // per-point weights, sum = t^2
};

NystromGrid make_nystrom_grid(double t, std::size_t radial,
                              std::size_t angular);

struct FredholmResult {
  double det = 0.0;
  std::vector<double> eigenvalues;  // positive spectrum, descending
};

// Fredholm determinant det(I - B) of the kernel B(z,w) = (1 - z conj(w))^-2
// on L^2(D(t), dz/pi), via the symmetrized Nystrom matrix
// W^{1/2} K W^{1/2}. The kernel is angularly diagonal, so the discrete
// operator splits into one small radial block per Fourier mode; the exact
// spectrum is { t^{2k} : k >= 1 } and the determinant is
// prod_{k>=1} (1 - t^{2k}).
FredholmResult fredholm_bergman(double t, const NystromGrid& grid);

// Reference path: assembles the full grid matrix and takes det(I - G) by LU.
// Identical discretization, no mode splitting; for small grids.
double fredholm_bergman_reference(double t, const NystromGrid& grid);

// Applies the discretized operator to samples of f on the grid points.
cvec nystrom_apply(const NystromGrid& grid, const cvec& f);

struct GapSeries {
  double value = 0.0;
  double std_error = 0.0;
  std::vector<double> terms;  // signed term k at index k
};

inline constexpr int kGapKCap = 4;

// Truncated inclusion-exclusion for P(rho <= y), y > 1:
//   sum_{k <= k_max} (-1)^k / k! * integral_{D(1/y)^k} rho_k,
// with the k-dimensional integrals estimated by Monte Carlo over uniform
// points in D(1/y)^k. order = n uses the finite-n correlations; no order
// uses the limiting kernel.
GapSeries gap_probability_series(double y, std::optional<std::size_t> order,
                                 int k_max, std::size_t mc_points,
                                 const RngStream& rng, bool parallel = true);

}  // namespace rootmax
