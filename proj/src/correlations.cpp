#include "rootmax/correlations.hpp"

#include <cmath>
#include <numbers>

#include "rootmax/parallel.hpp"

namespace rootmax {

CovarianceTriple covariance_triple(const cvec& z, std::size_t n) {
  require(n >= 1, "covariance_triple: n must be >= 1");
  require(!z.empty(), "covariance_triple: need at least one point");
  require_finite(z, "covariance_triple");
  const std::size_t k = z.size();
  CovarianceTriple out{ComplexMatrix(k, k), ComplexMatrix(k, k),
                       ComplexMatrix(k, k)};
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      cplx x = z[i] * std::conj(z[j]);
      // S, S', S'' of S(x) = sum_{t=0}^n x^t in one Horner pass.
      cplx s(1.0), ds(0.0), dds(0.0);
      for (std::size_t t = 0; t < n; ++t) {
        dds = dds * x + 2.0 * ds;
        ds = ds * x + s;
        s = s * x + cplx(1.0);
      }
      out.A(i, j) = s;
      out.B(i, j) = z[i] * ds;
      out.C(i, j) = ds + x * dds;
    }
  }
  return out;
}

double rho_finite(const cvec& z, std::size_t n) {
  require(!z.empty(), "rho_finite: need at least one point");
  if (z.size() > kRhoPointCap) {
    throw std::length_error("rho_finite: k capped at 8 (permanent cost)");
  }
  const std::size_t k = z.size();
  CovarianceTriple cov = covariance_triple(z, n);
  LuFactor fa = lu_factor(cov.A);
  if (fa.singular) {
    throw std::invalid_argument(
        "rho_finite: covariance is singular (coincident points?)");
  }
  // Conditional covariance of P' given P = 0 is C - B* A^{-1} B (note the
  // adjoint on the left: B[i,j] = E[P(z_i) conj P'(z_j)], so Cov(P', P) is
  // B*). The opposite order fails the exact k=2 oracle rho_2 = 0 at n=1.
  ComplexMatrix m = cov.C;
  cvec col(k), sol(k);
  for (std::size_t j = 0; j < k; ++j) {
    for (std::size_t i = 0; i < k; ++i) col[i] = cov.B(i, j);
    sol = lu_solve(fa, col);  // column j of A^{-1} B
    for (std::size_t i = 0; i < k; ++i) {
      cplx acc(0.0);
      for (std::size_t l = 0; l < k; ++l) {
        acc += std::conj(cov.B(l, i)) * sol[l];
      }
      m(i, j) -= acc;
    }
  }
  double num = std::real(permanent(m));
  double den = std::real(fa.det()) * std::pow(std::numbers::pi, double(k));
  return num / den;
}

double rho_limit(const cvec& z) {
  require(!z.empty(), "rho_limit: need at least one point");
  require_finite(z, "rho_limit");
  for (const cplx& p : z) {
    if (std::abs(p) >= 1.0) {
      throw std::domain_error("rho_limit: points must lie inside the disk");
    }
  }
  const std::size_t k = z.size();
  ComplexMatrix g(k, k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      cplx d = cplx(1.0) - z[i] * std::conj(z[j]);
      g(i, j) = cplx(1.0) / (d * d);
    }
  }
  return std::real(determinant(g));
}

NystromGrid make_nystrom_grid(double t, std::size_t radial,
                              std::size_t angular) {
  if (!(t > 0.0 && t < 1.0)) {
    throw std::domain_error("make_nystrom_grid: t must be in (0, 1)");
  }
  require(radial >= 2 && angular >= 4, "make_nystrom_grid: grid too small");
  NystromGrid g;
  g.t = t;
  g.angular = angular;
  Quadrature gl = gauss_legendre(radial);
  g.radial_nodes.resize(radial);
  g.radial_weights.resize(radial);
  for (std::size_t a = 0; a < radial; ++a) {
    g.radial_nodes[a] = 0.5 * t * (gl.nodes[a] + 1.0);
    g.radial_weights[a] = 0.5 * t * gl.weights[a];
  }
  g.points.reserve(radial * angular);
  g.weights.reserve(radial * angular);
  for (std::size_t a = 0; a < radial; ++a) {
    // dz/pi = 2 r dr dtheta with theta in units of full turns.
    double w = 2.0 * g.radial_nodes[a] * g.radial_weights[a] / double(angular);
    for (std::size_t b = 0; b < angular; ++b) {
      double th = 2.0 * std::numbers::pi * double(b) / double(angular);
      g.points.push_back(g.radial_nodes[a] *
                         cplx(std::cos(th), std::sin(th)));
      g.weights.push_back(w);
    }
  }
  return g;
}

FredholmResult fredholm_bergman(double t, const NystromGrid& grid) {
  if (!(t > 0.0 && t < 1.0)) {
    throw std::domain_error("fredholm_bergman: t must be in (0, 1)");
  }
  require(std::abs(grid.t - t) < 1e-12,
          "fredholm_bergman: grid was built for a different t");
  require(grid.radial_nodes.size() >= 16 && grid.angular >= 32,
          "fredholm_bergman: need at least a 16 x 32 grid");

  const std::size_t nr = grid.radial_nodes.size();
  const std::size_t na = grid.angular;
  std::vector<double> c(nr);
  for (std::size_t a = 0; a < nr; ++a) {
    c[a] = std::sqrt(2.0 * grid.radial_nodes[a] * grid.radial_weights[a]);
  }

  // The kernel expands as sum_k (k+1) (r r')^k e^{i k (alpha - beta)}; on the
  // equispaced angular grid the big matrix is block-circulant, so the DFT
  // splits it exactly into one real symmetric radial block per mode m, with
  // frequencies k = m, m + na, ... aliased together.
  FredholmResult out;
  out.det = 1.0;
  std::vector<double> all_eigs;
  std::vector<double> block(nr * nr);
  double log_det = 0.0;
  for (std::size_t m = 0; m < na; ++m) {
    for (std::size_t a = 0; a < nr; ++a) {
      for (std::size_t b = a; b < nr; ++b) {
        double rho = grid.radial_nodes[a] * grid.radial_nodes[b];
        double sum = 0.0;
        double rpow = std::pow(rho, double(m));
        double step = std::pow(rho, double(na));
        for (std::size_t k = m; ; k += na) {
          double term = double(k + 1) * rpow;
          sum += term;
          if (term < 1e-22) break;
          rpow *= step;
        }
        block[a * nr + b] = block[b * nr + a] = c[a] * c[b] * sum;
      }
    }
    std::vector<double> eig = symmetric_eigenvalues(block, nr);
    for (double lambda : eig) {
      log_det += std::log1p(-lambda);
      if (lambda > 1e-16) all_eigs.push_back(lambda);
    }
  }
  out.det = std::exp(log_det);
  std::sort(all_eigs.begin(), all_eigs.end(), std::greater<double>());
  out.eigenvalues = std::move(all_eigs);
  return out;
}

double fredholm_bergman_reference(double t, const NystromGrid& grid) {
  if (!(t > 0.0 && t < 1.0)) {
    throw std::domain_error("fredholm_bergman_reference: t must be in (0,1)");
  }
  const std::size_t n = grid.points.size();
  require(n <= 2048, "fredholm_bergman_reference: grid too large");
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      cplx d = cplx(1.0) - grid.points[i] * std::conj(grid.points[j]);
      cplx kij = cplx(1.0) / (d * d);
      m(i, j) = ((i == j) ? cplx(1.0) : cplx(0.0)) -
                std::sqrt(grid.weights[i] * grid.weights[j]) * kij;
    }
  }
  return std::real(determinant(m));
}

cvec nystrom_apply(const NystromGrid& grid, const cvec& f) {
  const std::size_t n = grid.points.size();
  require(f.size() == n, "nystrom_apply: sample size mismatch");
  cvec out(n, cplx(0.0));
  for (std::size_t i = 0; i < n; ++i) {
    cplx acc(0.0);
    for (std::size_t j = 0; j < n; ++j) {
      cplx d = cplx(1.0) - grid.points[i] * std::conj(grid.points[j]);
      acc += grid.weights[j] * f[j] / (d * d);
    }
    out[i] = acc;
  }
  return out;
}

GapSeries gap_probability_series(double y, std::optional<std::size_t> order,
                                 int k_max, std::size_t mc_points,
                                 const RngStream& rng, bool parallel) {
  if (!(y > 1.0)) {
    throw std::domain_error("gap_probability_series: y must be > 1");
  }
  require(k_max >= 0, "gap_probability_series: k_max must be >= 0");
  if (k_max > kGapKCap) {
    throw std::length_error("gap_probability_series: k_max capped at 4");
  }
  require(mc_points >= 100 || k_max == 0,
          "gap_probability_series: need MC points");

  const double t = 1.0 / y;
  GapSeries out;
  out.terms.assign(std::size_t(k_max) + 1, 0.0);
  out.terms[0] = 1.0;
  out.value = 1.0;
  double var_total = 0.0;

  for (int k = 1; k <= k_max; ++k) {
    struct Partial {
      double sum = 0.0;
      double sumsq = 0.0;
    };
    auto chunk_fn = [&](std::size_t c) {
      RngStream local = rng.child(std::size_t(k) * 1000003 + c);
      Partial p;
      std::size_t count = chunk_size(c, mc_points);
      cvec pts = cvec(std::size_t(k));
      for (std::size_t s = 0; s < count; ++s) {
        for (int i = 0; i < k; ++i) {
          pts[std::size_t(i)] = t * local.uniform_disk();
        }
        double rho = order ? rho_finite(pts, *order) : rho_limit(pts);
        p.sum += rho;
        p.sumsq += rho * rho;
      }
      return p;
    };
    auto partials = run_chunks<Partial>(chunk_count(mc_points), chunk_fn,
                                        parallel);
    double sum = 0.0, sumsq = 0.0;
    for (const Partial& p : partials) {
      sum += p.sum;
      sumsq += p.sumsq;
    }
    const double N = double(mc_points);
    double mean = sum / N;
    double var = std::max(0.0, sumsq / N - mean * mean) / N;

    // Uniform proposals on D(t)^k have density (pi t^2)^{-k} w.r.t. Lebesgue;
    // rho_finite is a Lebesgue density while rho_limit is w.r.t. (dz/pi)^k.
    double volume = order ? std::pow(std::numbers::pi * t * t, double(k))
                          : std::pow(t * t, double(k));
    double coeff = volume / std::tgamma(double(k) + 1.0);
    double sign = (k % 2 == 0) ? 1.0 : -1.0;
    out.terms[std::size_t(k)] = sign * coeff * mean;
    out.value += out.terms[std::size_t(k)];
    var_total += coeff * coeff * var;
  }
  out.std_error = std::sqrt(var_total);
  return out;
}

}  // namespace rootmax
