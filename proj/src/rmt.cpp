#include "rootmax/rmt.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "rootmax/polyroots.hpp"
#include "rootmax/symmetric.hpp"

namespace rootmax {

cplx g_eval(KernelG k, cplx x) {
  require(is_finite(x), "g_eval: non-finite argument");
  cplx acc(double(k.n));
  for (std::size_t j = k.n - 1; j-- > 0;) {
    acc = acc * x + cplx(double(j + 1));
  }
  return acc;
}

ComplexMatrix haar_unitary(std::size_t m, RngStream& rng) {
  require(m >= 1, "haar_unitary: dimension must be >= 1");
  ComplexMatrix g(m, m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) g(i, j) = rng.complex_gaussian();
  }
  return qr_unitary_phase_fixed(g);
}

cvec faddeev_leverrier(const ComplexMatrix& m) {
  require(m.square(), "faddeev_leverrier: matrix not square");
  const std::size_t n = m.rows();
  cvec c(n);
  ComplexMatrix b = m;
  cplx tr(0.0);
  for (std::size_t i = 0; i < n; ++i) tr += b(i, i);
  c[0] = -tr;
  for (std::size_t k = 2; k <= n; ++k) {
    for (std::size_t i = 0; i < n; ++i) b(i, i) += c[k - 2];
    b = matmul(m, b);
    tr = cplx(0.0);
    for (std::size_t i = 0; i < n; ++i) tr += b(i, i);
    c[k - 1] = -tr / double(k);
  }
  return c;
}

namespace {

// Points drifting onto the unit circle by roundoff are pulled just inside so
// downstream 1/(1 - |z|^2) expressions stay finite.
void clamp_to_disk(cvec& points) {
  constexpr double kEdge = 1.0 - 1e-14;
  for (cplx& z : points) {
    double az = std::abs(z);
    if (az >= kEdge) z *= kEdge / az;
  }
}

}  // namespace

EnsembleSample sample_truncation(std::size_t n, RngStream& rng) {
  require(n >= 1, "sample_truncation: n must be >= 1");
  require(n <= kTruncationCap,
          "sample_truncation: char-poly route capped at n = 256");
  ComplexMatrix u = haar_unitary(n + 1, rng);
  ComplexMatrix block(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) block(i, j) = u(i, j);
  }
  cvec c = faddeev_leverrier(block);

  // det(xI - M) = x^n + c[0] x^{n-1} + ... + c[n-1].
  cvec coeffs(n + 1);
  coeffs[n] = cplx(1.0);
  for (std::size_t k = 0; k < n; ++k) coeffs[n - 1 - k] = c[k];

  EnsembleSample out;
  out.n = n;
  out.method = SampleMethod::truncation;
  try {
    out.points =
        find_roots(Polynomial(std::move(coeffs)), kRootTolDefault, 400).roots;
  } catch (const convergence_error& e) {
    throw convergence_error(
        "sample_truncation: root solve failed (seed=" +
            std::to_string(rng.seed()) +
            ", stream=" + std::to_string(rng.stream()) + "): " + e.what(),
        e.best_iterate, e.residuals, e.iterations);
  }
  clamp_to_disk(out.points);
  return out;
}

EnsembleSample sample_dpp(std::size_t n, RngStream& rng) {
  require(n >= 1, "sample_dpp: n must be >= 1");
  const KernelG kernel{n};

  // Feature map phi_j(z) = sqrt(j+1) z^j, orthonormal on (D, dz/pi); the
  // kernel diagonal is K(z,z) = g_n(|z|^2).
  auto features = [&](cplx z, cvec& phi) {
    cplx p(1.0);
    for (std::size_t j = 0; j < n; ++j) {
      phi[j] = std::sqrt(double(j + 1)) * p;
      p *= z;
    }
  };

  std::vector<cvec> basis;  // Gram-Schmidt-reduced accepted feature vectors
  basis.reserve(n);
  EnsembleSample out;
  out.n = n;
  out.method = SampleMethod::dpp;
  out.points.reserve(n);

  cvec phi(n);
  for (std::size_t i = 0; i < n; ++i) {
    bool accepted = false;
    for (std::size_t attempt = 0; attempt < kDppProposalCap; ++attempt) {
      // Unconditional single-point mixture: j uniform in 0..n-1, then
      // radius^2 = U^{1/(j+1)} and a uniform angle, which samples the density
      // (1/n) sum_j (j+1) |z|^{2j} / pi exactly.
      std::size_t j = std::size_t(rng.uniform() * double(n));
      if (j >= n) j = n - 1;
      double r = std::pow(rng.uniform_pos(), 0.5 / double(j + 1));
      double th = 2.0 * std::numbers::pi * rng.uniform();
      cplx z = r * cplx(std::cos(th), std::sin(th));

      features(z, phi);
      double full = std::real(g_eval(kernel, cplx(std::norm(z))));
      double reduced = full;
      for (const cvec& e : basis) {
        cplx dot(0.0);
        for (std::size_t t = 0; t < n; ++t) dot += phi[t] * std::conj(e[t]);
        reduced -= std::norm(dot);
      }
      if (reduced <= 0.0) continue;  // numerically in the span already
      if (rng.uniform() * full <= reduced) {
        cvec v = phi;
        for (const cvec& e : basis) {
          cplx dot(0.0);
          for (std::size_t t = 0; t < n; ++t) dot += phi[t] * std::conj(e[t]);
          for (std::size_t t = 0; t < n; ++t) v[t] -= dot * e[t];
        }
        double vnorm = 0.0;
        for (const cplx& c : v) vnorm += std::norm(c);
        vnorm = std::sqrt(vnorm);
        if (vnorm < 1e-12) continue;
        for (cplx& c : v) c /= vnorm;
        basis.push_back(std::move(v));
        out.points.push_back(z);
        accepted = true;
        break;
      }
    }
    if (!accepted) {
      throw convergence_error(
          "sample_dpp: rejection cap hit (seed=" + std::to_string(rng.seed()) +
              ", stream=" + std::to_string(rng.stream()) + ")",
          out.points, {}, int(kDppProposalCap));
    }
  }
  clamp_to_disk(out.points);
  return out;
}

double eta(const EnsembleSample& sample, double y) {
  require(y > 0.0 && y <= 1.0, "eta: y must be in (0, 1]");
  require(sample.points.size() == sample.n && sample.n >= 1,
          "eta: malformed sample");
  cvec e = elementary_symmetric(sample.points);
  double y2 = y * y;
  double acc = 0.0;
  double pow = 1.0;
  for (std::size_t k = 0; k < e.size(); ++k) {
    acc += pow * std::norm(e[k]);
    pow *= y2;
  }
  return acc;
}

}  // namespace rootmax
