#include "rootmax/deviations.hpp"

#include <cmath>
#include <numbers>

#include "rootmax/linalg.hpp"
#include "rootmax/parallel.hpp"
#include "rootmax/polyroots.hpp"
#include "rootmax/symfunc.hpp"
#include "rootmax/symmetric.hpp"

namespace rootmax {

double limit_cdf(double y, double tol) {
  require(y >= 0.0, "limit_cdf: y must be >= 0");
  require(tol > 0.0, "limit_cdf: tol must be positive");
  if (y <= 1.0) return 0.0;
  const double x = 1.0 / (y * y);
  double log_prod = 0.0;
  double xk = x;
  // -log(1-t) <= t/(1-t); stop once the geometric log-tail is below tol.
  while (xk / ((1.0 - x) * (1.0 - xk)) > tol) {
    log_prod += std::log1p(-xk);
    xk *= x;
    if (xk == 0.0) break;
  }
  return std::exp(log_prod);
}

long long divisor_sigma(long long d) {
  require(d >= 1, "divisor_sigma: d must be >= 1");
  long long total = 0;
  for (long long k = 1; k * k <= d; ++k) {
    if (d % k != 0) continue;
    total += k;
    if (k != d / k) total += d / k;
  }
  return total;
}

double frak_S(double s, double tol) {
  if (!(s > 1.0)) throw std::domain_error("frak_S: s must be > 1");
  require(tol > 0.0, "frak_S: tol must be positive");
  const double x = 1.0 / (s * s);
  // Tail majorant: sum_{d>D} d^2 x^d <= x^{D+1} sum_{j>=0} (D+1+j)^2 x^j,
  // evaluated with the closed forms of sum x^j, sum j x^j, sum j^2 x^j.
  auto tail_bound = [&](long long D) {
    double a = double(D + 1);
    double s0 = 1.0 / (1.0 - x);
    double s1 = x / ((1.0 - x) * (1.0 - x));
    double s2 = x * (1.0 + x) / std::pow(1.0 - x, 3);
    return 2.0 * std::pow(x, a) * (a * a * s0 + 2.0 * a * s1 + s2);
  };
  double total = 0.0;
  double xd = x;
  for (long long d = 1;; ++d) {
    total += 2.0 * double(divisor_sigma(d)) * xd;
    xd *= x;
    if (tail_bound(d) < tol) break;
    require(d < 100000000, "frak_S: truncation did not stabilize");
  }
  return total;
}

namespace {

// Precomputed angular factor w[d] = |1 - y^2 e^{2 i pi d / N}|^{-2}.
std::vector<double> angular_weights(double y, std::size_t nodes) {
  const double q = y * y;
  std::vector<double> w(nodes);
  for (std::size_t d = 0; d < nodes; ++d) {
    double th = 2.0 * std::numbers::pi * double(d) / double(nodes);
    w[d] = 1.0 / ((1.0 - q * std::cos(th)) * (1.0 - q * std::cos(th)) +
                  q * std::sin(th) * q * std::sin(th));
  }
  return w;
}

void check_J_args(int k, double y, std::size_t nodes) {
  if (!(y >= 0.0 && y < 1.0)) {
    throw std::domain_error("quadrature_J: y must be in [0, 1)");
  }
  require(k >= 0, "quadrature_J: k must be >= 0");
  require(nodes >= 8, "quadrature_J: need at least 8 nodes per dimension");
}

// Translation-reduced trapezoid sum for any k >= 0 (the public operation
// caps k at 4; eval_F reuses this for its k = 5, 6 terms at reduced node
// counts). One index is pinned at zero, the remaining k-1 sweep the grid;
// per-leading-index partials are merged in index order, so the result is
// bit-identical for any thread count.
double trapezoid_J(int k, double y, std::size_t nodes) {
  if (k == 0) return 1.0;
  const double pref = std::pow(1.0 - y * y, -double(k));
  if (k == 1) return pref;

  const std::vector<double> w = angular_weights(y, nodes);
  const std::ptrdiff_t N = std::ptrdiff_t(nodes);
  std::vector<double> partial(nodes, 0.0);
  const int free = k - 1;

#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i1 = 0; i1 < N; ++i1) {
    std::vector<std::ptrdiff_t> idx(std::size_t(k), 0);
    idx[1] = i1;
    double acc = 0.0;
    while (true) {
      double prod = 1.0;
      for (int m = 0; m < k; ++m) {
        for (int j = m + 1; j < k; ++j) {
          prod *= w[std::size_t((idx[std::size_t(m)] - idx[std::size_t(j)] +
                                 N) %
                                N)];
        }
      }
      acc += prod;
      int pos = free;
      while (pos >= 2 && ++idx[std::size_t(pos)] == N) {
        idx[std::size_t(pos)] = 0;
        --pos;
      }
      if (pos < 2) break;
    }
    partial[std::size_t(i1)] = acc;
  }

  double sum = 0.0;
  for (double p : partial) sum += p;
  return pref * sum / std::pow(double(nodes), double(k - 1));
}

}  // namespace

double quadrature_J(int k, double y, std::size_t nodes) {
  check_J_args(k, y, nodes);
  if (k > kQuadratureKCap) {
    throw std::length_error("quadrature_J: k is capped at 4 (cost nodes^k)");
  }
  return trapezoid_J(k, y, nodes);
}

double quadrature_J_reference(int k, double y, std::size_t nodes) {
  check_J_args(k, y, nodes);
  if (k > kQuadratureKCap) {
    throw std::length_error("quadrature_J: k is capped at 4 (cost nodes^k)");
  }
  if (k == 0) return 1.0;
  const double pref = std::pow(1.0 - y * y, -double(k));
  if (k == 1) return pref;
  const std::vector<double> w = angular_weights(y, nodes);
  const std::size_t N = nodes;
  std::vector<std::size_t> idx(std::size_t(k), 0);
  double sum = 0.0;
  while (true) {
    double prod = 1.0;
    for (int m = 0; m < k; ++m) {
      for (int j = m + 1; j < k; ++j) {
        prod *= w[(idx[std::size_t(m)] + N - idx[std::size_t(j)]) % N];
      }
    }
    sum += prod;
    int pos = k - 1;
    while (pos >= 0 && ++idx[std::size_t(pos)] == N) {
      idx[std::size_t(pos)] = 0;
      --pos;
    }
    if (pos < 0) break;
  }
  return pref * sum / std::pow(double(N), double(k));
}

namespace {

// Adaptive series evaluation of J_k. The truncation degree doubles until the
// rigorous binomial tail bound certifies abs_tol or the per-k cut cap is hit
// (the Kostka sweep cost grows like sum_w p(w)^2, so k = 4 is kept on a
// short leash; the reported bound stays honest either way).
SeriesJ series_J_adaptive(int k, double y, double abs_tol) {
  const long long cap = k <= 2 ? 192 : (k == 3 ? 128 : 48);
  long long cut = 24;
  while (true) {
    SeriesJ s = cauchy_series_J(k, y, cut);
    if (s.tail_bound < abs_tol || cut >= cap) return s;
    cut = std::min(cut * 2, cap);
  }
}

}  // namespace

FValue eval_F(double y, int k_max, FMethod method) {
  if (!(y >= 0.0 && y < 1.0)) {
    throw std::domain_error("eval_F: y must be in [0, 1)");
  }
  require(k_max >= 0 && k_max <= 12, "eval_F: k_max must be in [0, 12]");
  if (method != FMethod::both && k_max > kQuadratureKCap) {
    throw std::length_error(
        "eval_F: single-route evaluation supports k_max <= 4; method=both "
        "extends to higher k");
  }

  FValue out;
  out.y = y;
  out.truncation_k = k_max;
  out.contributions.assign(std::size_t(k_max) + 1, 0.0);

  double prev_j = 1.0, prev_prev_j = 1.0;
  for (int k = 0; k <= k_max; ++k) {
    double jk;
    if (k == 0) {
      jk = 1.0;
    } else if (method == FMethod::series) {
      jk = series_J_adaptive(k, y, 1e-8).value;
    } else if (k <= kQuadratureKCap) {
      jk = quadrature_J(k, y);
      if (method == FMethod::both) {
        // Cross-validate against the combinatorial series wherever its
        // rigorous tail bound makes the comparison meaningful.
        SeriesJ s = series_J_adaptive(k, y, 1e-8);
        if (s.tail_bound <= 5e-8 && std::abs(jk - s.value) > 1e-7) {
          throw cross_validation_error(
              "eval_F: quadrature and series J_k disagree at k=" +
                  std::to_string(k),
              jk, s.value);
        }
      }
    } else {
      // k >= 5 in both-mode: same trapezoid rule at a node count whose
      // aliasing error is negligible under the 1/(k!(k+1)!) factor.
      std::size_t nodes = k == 5 ? 32 : (k == 6 ? 24 : (k == 7 ? 16 : 10));
      jk = (y == 0.0) ? 1.0 : trapezoid_J(k, y, nodes);
    }
    double sign = (((std::uint64_t(k) * (std::uint64_t(k) + 1)) / 2) % 2 == 0)
                      ? 1.0
                      : -1.0;
    double factor =
        std::exp(-std::lgamma(double(k) + 1.0) - std::lgamma(double(k) + 2.0));
    out.contributions[std::size_t(k)] = sign * factor * jk;
    out.value += out.contributions[std::size_t(k)];
    prev_prev_j = prev_j;
    prev_j = jk;
  }

  // Tail estimate: geometric extrapolation of J_{k_max+1} under the factorial
  // prefactor decay.
  double growth = (prev_prev_j > 0.0) ? std::max(1.0, prev_j / prev_prev_j)
                                      : 1.0;
  out.tail_estimate =
      prev_j * growth *
      std::exp(-std::lgamma(double(k_max) + 2.0) -
               std::lgamma(double(k_max) + 3.0));
  return out;
}

LdpEstimate ldp_estimator(std::size_t n, double y, std::size_t num_samples,
                          const RngStream& rng, SampleMethod sampler,
                          bool parallel) {
  require(n >= 1, "ldp_estimator: n must be >= 1");
  require(num_samples >= 100, "ldp_estimator: need at least 100 samples");
  if (!(y > 0.0 && y < 1.0)) {
    throw std::domain_error("ldp_estimator: y must be in (0, 1)");
  }

  auto chunk_fn = [&](std::size_t c) {
    RngStream local = rng.child(c);
    LogMoments m;
    std::size_t count = chunk_size(c, num_samples);
    for (std::size_t s = 0; s < count; ++s) {
      EnsembleSample sample = (sampler == SampleMethod::truncation)
                                  ? sample_truncation(n, local)
                                  : sample_dpp(n, local);
      double e = eta(sample, y);
      double a = -double(n + 1) * std::log(e);
      // eta >= 1 bounds every weight by 1; a violation means a broken
      // sampler or eta evaluation.
      if (!(a <= 1e-9)) {
        throw std::logic_error("ldp_estimator: weight bound violated");
      }
      m.add(a);
    }
    return m;
  };

  auto partials = run_chunks<LogMoments>(chunk_count(num_samples), chunk_fn,
                                         parallel);
  LogMoments total;
  for (const LogMoments& p : partials) total.merge(p);

  const double log_y = std::log(y);
  const double nn1 = double(n) * double(n + 1);
  const double log_mean = total.log_mean();

  LdpEstimate est;
  est.n = n;
  est.y = y;
  est.num_samples = num_samples;
  est.log_p_hat = nn1 * log_y + log_mean;
  est.log_rescaled = double(n + 1) * std::log(double(n)) + log_mean;
  double d = total.log_mean_sq() - 2.0 * log_mean;
  double log_var_mean;
  if (d <= 0.0) {
    log_var_mean = -std::numeric_limits<double>::infinity();
  } else {
    log_var_mean = 2.0 * log_mean + std::log(std::expm1(d)) -
                   std::log(double(num_samples));
  }
  est.log_std_error = nn1 * log_y + 0.5 * log_var_mean;
  est.p_hat = std::exp(est.log_p_hat);
  est.std_error = std::exp(est.log_std_error);
  est.rescaled = std::exp(est.log_rescaled);
  return est;
}

McEstimate direct_mc_prob(std::size_t n, double y, std::size_t num_samples,
                          const RngStream& rng, bool parallel) {
  require(n >= 1, "direct_mc_prob: n must be >= 1");
  require(num_samples >= 1, "direct_mc_prob: need samples");
  require(y >= 0.0, "direct_mc_prob: y must be >= 0");
  require(double(n) * double(num_samples) <= kDirectMcBudget,
          "direct_mc_prob: n * num_samples exceeds the configured budget");

  auto chunk_fn = [&](std::size_t c) {
    RngStream local = rng.child(c);
    std::size_t hits = 0;
    std::size_t count = chunk_size(c, num_samples);
    for (std::size_t s = 0; s < count; ++s) {
      Polynomial p = sample_kac(n, local);
      if (max_modulus(find_roots(p, kRootTolDefault, 400)) <= y) ++hits;
    }
    return hits;
  };
  auto partials = run_chunks<std::size_t>(chunk_count(num_samples), chunk_fn,
                                          parallel);
  std::size_t hits = 0;
  for (std::size_t h : partials) hits += h;
  double p = double(hits) / double(num_samples);
  return {p, std::sqrt(p * (1.0 - p) / double(num_samples))};
}

double moment_formula(std::size_t n, const cvec& u) {
  require(n >= 1, "moment_formula: n must be >= 1");
  require(!u.empty(), "moment_formula: need at least one point");
  require_finite(u, "moment_formula");
  const std::size_t k = u.size();
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) {
      require(u[i] != u[j],
              "moment_formula: points must be pairwise distinct (the "
              "coincident limit is removable; separate the points slightly)");
    }
  }
  KernelG g{n + k};
  ComplexMatrix gram(k, k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      gram(i, j) = g_eval(g, u[i] * std::conj(u[j]));
    }
  }
  double det = std::real(determinant(gram));
  double ratio = 1.0;  // n! / (n+k)!
  for (std::size_t j = 1; j <= k; ++j) ratio /= double(n + j);
  return det / vandermonde_abs2(u) * ratio;
}

McEstimate mc_moment(std::size_t n, const cvec& u, std::size_t num_samples,
                     const RngStream& rng, SampleMethod sampler,
                     bool parallel) {
  require(n >= 1, "mc_moment: n must be >= 1");
  require(!u.empty(), "mc_moment: need at least one point");
  require(num_samples >= 2, "mc_moment: need samples");
  require_finite(u, "mc_moment");

  struct Partial {
    double sum = 0.0;
    double sumsq = 0.0;
  };
  auto chunk_fn = [&](std::size_t c) {
    RngStream local = rng.child(c);
    Partial p;
    std::size_t count = chunk_size(c, num_samples);
    for (std::size_t s = 0; s < count; ++s) {
      EnsembleSample sample = (sampler == SampleMethod::truncation)
                                  ? sample_truncation(n, local)
                                  : sample_dpp(n, local);
      double w = 1.0;
      for (const cplx& ul : u) {
        for (const cplx& z : sample.points) w *= std::norm(ul - z);
      }
      p.sum += w;
      p.sumsq += w * w;
    }
    return p;
  };
  auto partials = run_chunks<Partial>(chunk_count(num_samples), chunk_fn,
                                      parallel);
  double sum = 0.0, sumsq = 0.0;
  for (const Partial& p : partials) {
    sum += p.sum;
    sumsq += p.sumsq;
  }
  const double N = double(num_samples);
  double mean = sum / N;
  double var = std::max(0.0, sumsq / N - mean * mean);
  return {mean, std::sqrt(var / N)};
}

}  // namespace rootmax
