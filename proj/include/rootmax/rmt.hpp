#pragma once

#include "rootmax/common.hpp"
#include "rootmax/linalg.hpp"
#include "rootmax/rng.hpp"

namespace rootmax {

// Order-n reproducing kernel function g_n(x) = sum_{j=0}^{n-1} (j+1) x^j.
// The kernel of the n-point eigenvalue process on the unit disk is
// R_n(u, v) = g_n(u * conj(v)) with respect to the measure dz/pi.
struct KernelG {
  std::size_t n;
  explicit KernelG(std::size_t order) : n(order) {
    require(n >= 1, "KernelG: order must be >= 1");
  }
};

// Horner evaluation of g_n. Away from x = 1 it agrees with the closed form
// (1 - (n+1) x^n + n x^{n+1}) / (1-x)^2.
cplx g_eval(KernelG k, cplx x);

// Haar-distributed unitary via QR of a complex Ginibre matrix with the
// R-diagonal phase normalization.
ComplexMatrix haar_unitary(std::size_t m, RngStream& rng);

// Characteristic polynomial x^n + c[0] x^{n-1} + ... + c[n-1] of a square
// matrix by the Faddeev-LeVerrier recurrence, O(n^4). Accuracy degrades for
// large n; callers cap n accordingly.
cvec faddeev_leverrier(const ComplexMatrix& m);

enum class SampleMethod { truncation, dpp };

// n points in the open unit disk distributed as the eigenvalues of a
// truncated Haar unitary, i.e. with density |Vandermonde|^2 / pi^n on D^n.
struct EnsembleSample {
  cvec points;
  SampleMethod method = SampleMethod::truncation;
  std::size_t n = 0;
};

inline constexpr std::size_t kTruncationCap = 256;
inline constexpr std::size_t kDppProposalCap = 1000000;

// Eigenvalues of the top-left n x n block of a Haar CUE(n+1) matrix, found
// through the characteristic polynomial (Faddeev-LeVerrier) and the Aberth
// solver. The char-poly route is capped at n = 256; use sample_dpp beyond.
EnsembleSample sample_truncation(std::size_t n, RngStream& rng);

// Same law by the sequential projection-DPP sampler for the kernel g_n:
// each point is proposed from the unconditional single-point mixture and
// accepted with ratio (reduced kernel diagonal) / (full kernel diagonal).
EnsembleSample sample_dpp(std::size_t n, RngStream& rng);

// eta_n(y) = sum_{k=0}^n y^{2k} |e_k(points)|^2
//          = integral_0^1 prod_k |1 - y e^{2 i pi theta} z_k|^2 dtheta.
// Always >= 1 since e_0 = 1.
double eta(const EnsembleSample& sample, double y);

}  // namespace rootmax
