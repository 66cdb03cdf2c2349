#pragma once

#include <optional>

#include "rootmax/common.hpp"
#include "rootmax/rmt.hpp"
#include "rootmax/rng.hpp"

namespace rootmax {

// Limiting law of the maximum root modulus:
// G(y) = prod_{k>=1} (1 - y^{-2k}) for y > 1, and 0 otherwise. The product
// is truncated once the dropped log-tail is below tol.
double limit_cdf(double y, double tol = 1e-12);

// Sum of divisors of d.
long long divisor_sigma(long long d);

// S(s) = 2 sum_{d>=1} sigma(d) s^{-2d} for s > 1, truncated with a
// sigma(d) <= d^2 tail bound below tol. Satisfies
// -log G(y) = integral_y^inf S(s) ds / s.
double frak_S(double s, double tol = 1e-12);

inline constexpr int kQuadratureKCap = 4;
inline constexpr std::size_t kQuadratureNodesDefault = 64;

// J_k(y) = (1-y^2)^{-k} integral over [0,1]^k of
//          prod_{m<j} |1 - y^2 e^{2 i pi (theta_m - theta_j)}|^{-2},
// by the tensor-product trapezoid rule (spectrally accurate: the integrand
// is analytic and periodic). J_0 = 1. Cost nodes^(k-1) after factoring out
// translation invariance; k is capped at 4.
double quadrature_J(int k, double y,
                    std::size_t nodes_per_dim = kQuadratureNodesDefault);

// Naive full nodes^k sum without the translation reduction; serial reference
// for the OpenMP kernel above.
double quadrature_J_reference(int k, double y, std::size_t nodes_per_dim);

enum class FMethod { quadrature, series, both };

// Partial sum of F(y) = sum_k (-1)^{k(k+1)/2} / (k! (k+1)!) * J_k(y) with
// the per-term breakdown retained.
struct FValue {
  double y = 0.0;
  double value = 0.0;
  std::vector<double> contributions;  // term k at index k
  int truncation_k = 0;
  double tail_estimate = 0.0;
};

// Evaluates F(y) to k_max terms. J_k comes from quadrature (k <= 4), the
// Schur-expansion series, or both; with FMethod::both every term that both
// routes can reach is cross-checked to 1e-7 and a disagreement raises
// cross_validation_error. Terms past the quadrature cap fall back to the
// series in both mode.
FValue eval_F(double y, int k_max, FMethod method);

// Rare-event estimate of P(rho_n <= y) through the exact ensemble identity
//   P(rho_n <= y) = y^{n(n+1)} E[ eta_n(y)^{-(n+1)} ]
// (change of variables z -> y z in the root density, which turns the
// coefficient-norm denominator into eta over the unit-disk ensemble). All
// products are accumulated in log space. rescaled = n^{n+1} y^{-n(n+1)}
// p_hat is reported alongside for deviation studies.
struct LdpEstimate {
  std::size_t n = 0;
  double y = 0.0;
  std::size_t num_samples = 0;
  double p_hat = 0.0;      // may underflow to 0 for large n; see log fields
  double std_error = 0.0;  // same scale as p_hat
  double rescaled = 0.0;
  double log_p_hat = 0.0;
  double log_std_error = 0.0;
  double log_rescaled = 0.0;
};

LdpEstimate ldp_estimator(std::size_t n, double y, std::size_t num_samples,
                          const RngStream& rng, SampleMethod sampler,
                          bool parallel = true);

struct McEstimate {
  double value = 0.0;
  double std_error = 0.0;
};

inline constexpr double kDirectMcBudget = 1e9;  // n * num_samples cap

// Plain Monte Carlo estimate of P(rho_n <= y) by solving Kac polynomials.
McEstimate direct_mc_prob(std::size_t n, double y, std::size_t num_samples,
                          const RngStream& rng, bool parallel = true);

// E prod_l |det(u_l I - M_n)|^2 for the truncated ensemble:
//   det(g_{n+k}(u_i conj(u_j))) / |Vandermonde(u)|^2 * n! / (n+k)!.
// The u points must be pairwise distinct (the singularity is removable; use
// a small separation instead of coincident points).
double moment_formula(std::size_t n, const cvec& u);

// Monte Carlo counterpart of moment_formula over ensemble samples.
McEstimate mc_moment(std::size_t n, const cvec& u, std::size_t num_samples,
                     const RngStream& rng, SampleMethod sampler,
                     bool parallel = true);

}  // namespace rootmax
