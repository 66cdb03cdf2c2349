#include "rootmax/polyroots.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace rootmax {

Polynomial sample_kac(std::size_t n, RngStream& rng) {
  require(n >= 1, "sample_kac: degree must be >= 1");
  require(n <= kRootDegreeCap, "sample_kac: degree cap is 4096");
  cvec coeffs(n + 1);
  for (auto& c : coeffs) c = rng.complex_gaussian();
  while (coeffs.back() == cplx(0.0)) coeffs.back() = rng.complex_gaussian();
  return Polynomial(std::move(coeffs));
}

namespace {

struct EvalResult {
  cplx newton;      // P / P'
  double backward;  // |P(z)| / (sum_k |a_k| max(1,|z|)^k)
  bool dp_zero;
};

// Evaluates the Newton correction and the scaled backward error. For |z| > 1
// the reversed polynomial Q(w) = sum a_{n-j} w^j with w = 1/z is used, which
// keeps every intermediate bounded: P = z^n Q(w), P' = z^{n-1}(n Q - w Q').
EvalResult evaluate(const cvec& a, cplx z) {
  const std::size_t n = a.size() - 1;
  double az = std::abs(z);
  EvalResult out{cplx(0.0), 0.0, false};
  if (az <= 1.0) {
    cplx p = a[n], dp(0.0);
    for (std::size_t k = n; k-- > 0;) {
      dp = dp * z + p;
      p = p * z + a[k];
    }
    double scale = 0.0;
    for (const cplx& c : a) scale += std::abs(c);
    out.backward = std::abs(p) / scale;
    if (dp == cplx(0.0)) {
      out.dp_zero = true;
    } else {
      out.newton = p / dp;
    }
  } else {
    cplx w = cplx(1.0) / z;
    cplx q = a[0], dq(0.0);
    for (std::size_t k = 1; k <= n; ++k) {
      dq = dq * w + q;
      q = q * w + a[k];
    }
    double aw = std::abs(w);
    double scale = 0.0, wpow = 1.0;
    for (std::size_t j = 0; j <= n; ++j) {
      scale += std::abs(a[n - j]) * wpow;
      wpow *= aw;
    }
    out.backward = std::abs(q) / scale;
    cplx denom = double(n) * q - w * dq;
    if (denom == cplx(0.0)) {
      out.dp_zero = true;
    } else {
      out.newton = z * q / denom;
    }
  }
  return out;
}

// Bini-style starting points: radii from the upper convex hull of
// (k, log|a_k|) (the coefficient Newton polygon), angles equally spaced per
// hull segment with a fixed offset. Robust for coefficients of widely
// varying moduli and fully deterministic.
cvec initial_guesses(const cvec& a) {
  const std::size_t n = a.size() - 1;
  std::vector<std::pair<double, double>> pts;  // (k, log|a_k|)
  for (std::size_t k = 0; k <= n; ++k) {
    double m = std::abs(a[k]);
    if (m > 0.0) pts.emplace_back(double(k), std::log(m));
  }
  std::vector<std::pair<double, double>> hull;
  for (const auto& p : pts) {
    while (hull.size() >= 2) {
      const auto& p1 = hull[hull.size() - 2];
      const auto& p2 = hull[hull.size() - 1];
      double cross = (p2.first - p1.first) * (p.second - p1.second) -
                     (p2.second - p1.second) * (p.first - p1.first);
      if (cross >= 0.0) {
        hull.pop_back();
      } else {
        break;
      }
    }
    hull.push_back(p);
  }

  cvec guesses;
  guesses.reserve(n);
  for (std::size_t s = 0; s + 1 < hull.size(); ++s) {
    std::size_t m = std::size_t(hull[s + 1].first - hull[s].first);
    double logr = (hull[s].second - hull[s + 1].second) /
                  (hull[s + 1].first - hull[s].first);
    double r = std::exp(std::clamp(logr, -300.0, 300.0));
    for (std::size_t j = 0; j < m; ++j) {
      double th = 2.0 * std::numbers::pi *
                      (double(j) / double(m) + double(s) / double(n)) +
                  0.7;
      guesses.push_back(r * cplx(std::cos(th), std::sin(th)));
    }
  }
  return guesses;
}

}  // namespace

RootSet find_roots(const Polynomial& p, double tol, int max_iter) {
  require(tol > 0.0, "find_roots: tol must be positive");
  require(max_iter >= 1, "find_roots: max_iter must be >= 1");
  require(p.degree() <= kRootDegreeCap, "find_roots: degree cap is 4096");

  // Exact roots at the origin are deflated first.
  cvec a = p.coefficients();
  std::size_t zeros = 0;
  while (zeros < a.size() - 1 && a[zeros] == cplx(0.0)) ++zeros;
  if (zeros > 0) a.erase(a.begin(), a.begin() + std::ptrdiff_t(zeros));

  const std::size_t n = a.size() - 1;
  RootSet result;
  result.roots.assign(zeros, cplx(0.0));
  result.residuals.assign(zeros, 0.0);
  if (n == 0) return result;

  if (n == 1) {
    cplx root = -a[0] / a[1];
    result.roots.push_back(root);
    result.residuals.push_back(evaluate(a, root).backward);
    result.iterations = 1;
    return result;
  }

  cvec z = initial_guesses(a);
  std::vector<bool> done(n, false);
  std::vector<double> res(n, 1.0);
  int sweep = 0;
  std::size_t remaining = n;

  for (sweep = 1; sweep <= max_iter && remaining > 0; ++sweep) {
    for (std::size_t i = 0; i < n; ++i) {
      if (done[i]) continue;
      EvalResult ev = evaluate(a, z[i]);
      res[i] = ev.backward;
      if (ev.backward <= tol) {
        done[i] = true;
        --remaining;
        continue;
      }
      if (ev.dp_zero) {
        // Stationary point; nudge deterministically and retry next sweep.
        z[i] *= cplx(1.0 + 1e-8, 1e-8);
        continue;
      }
      cplx sum(0.0);
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i) continue;
        cplx d = z[i] - z[j];
        if (d == cplx(0.0)) d = cplx(1e-14, 1e-14) * double(i + 1);
        sum += cplx(1.0) / d;
      }
      cplx denom = cplx(1.0) - ev.newton * sum;
      cplx step = (std::abs(denom) < 1e-30) ? ev.newton : ev.newton / denom;
      z[i] -= step;
    }
  }

  if (remaining > 0) {
    cvec best(result.roots);
    best.insert(best.end(), z.begin(), z.end());
    std::vector<double> allres(result.residuals);
    allres.insert(allres.end(), res.begin(), res.end());
    throw convergence_error("find_roots: Aberth iteration did not converge",
                            std::move(best), std::move(allres), sweep - 1);
  }

  result.roots.insert(result.roots.end(), z.begin(), z.end());
  result.residuals.insert(result.residuals.end(), res.begin(), res.end());
  result.iterations = sweep - 1;
  return result;
}

double max_modulus(const RootSet& r) {
  require(!r.roots.empty(), "max_modulus: empty root set");
  double best = std::abs(r.roots[0]);
  for (std::size_t i = 1; i < r.roots.size(); ++i) {
    best = std::max(best, std::abs(r.roots[i]));
  }
  return best;
}

std::vector<std::pair<double, double>> empirical_cdf(
    std::span<const double> samples, std::span<const double> grid) {
  require(!samples.empty(), "empirical_cdf: no samples");
  for (std::size_t i = 1; i < grid.size(); ++i) {
    require(grid[i - 1] <= grid[i], "empirical_cdf: grid must be ascending");
  }
  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());
  std::vector<std::pair<double, double>> out;
  out.reserve(grid.size());
  for (double y : grid) {
    auto it = std::upper_bound(sorted.begin(), sorted.end(), y);
    out.emplace_back(y, double(it - sorted.begin()) / double(sorted.size()));
  }
  return out;
}

}  // namespace rootmax
