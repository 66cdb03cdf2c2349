#include "rootmax/acceptance.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <sstream>

#include "rootmax/correlations.hpp"
#include "rootmax/deviations.hpp"
#include "rootmax/parallel.hpp"
#include "rootmax/polyroots.hpp"
#include "rootmax/rmt.hpp"
#include "rootmax/symfunc.hpp"
#include "rootmax/symmetric.hpp"

namespace rootmax {

namespace {

struct Ctx {
  AcceptanceOptions opt;
  std::ostream* log;
  std::vector<CriterionResult> results;

  void record(const std::string& name, bool pass, const std::string& detail) {
    results.push_back({name, pass, detail});
    (*log) << (pass ? "PASS " : "FAIL ") << name << ": " << detail << "\n"
           << std::flush;
  }
};

std::string fmt(double v) {
  std::ostringstream o;
  o.precision(6);
  o << v;
  return o.str();
}

// Two-sample Kolmogorov-Smirnov distance.
double ks_distance(std::vector<double> a, std::vector<double> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  double d = 0.0;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] <= b[j]) {
      ++i;
    } else {
      ++j;
    }
    d = std::max(d, std::abs(double(i) / double(a.size()) -
                             double(j) / double(b.size())));
  }
  return d;
}

// --- 1. exact n=1 law --------------------------------------------------

void criterion_1(Ctx& c) {
  const std::size_t direct_n = c.opt.quick ? 100000 : 1000000;
  const std::size_t ldp_n = c.opt.quick ? 10000 : 100000;
  bool ok = true;
  std::ostringstream detail;
  int part = 0;
  for (double y : {0.3, 0.5, 0.8}) {
    double exact = y * y / (1.0 + y * y);
    RngStream r1(c.opt.seed, 101 + std::uint64_t(part));
    McEstimate direct = direct_mc_prob(1, y, direct_n, r1);
    bool o1 = std::abs(direct.value - exact) <= 3.0 * direct.std_error;
    RngStream r2(c.opt.seed, 201 + std::uint64_t(part));
    LdpEstimate ldp =
        ldp_estimator(1, y, ldp_n, r2, SampleMethod::truncation);
    bool o2 = std::abs(ldp.p_hat - exact) <= 3.0 * ldp.std_error;
    ok = ok && o1 && o2;
    detail << "y=" << y << " exact=" << fmt(exact)
           << " direct=" << fmt(direct.value) << (o1 ? "" : "(!)")
           << " ldp=" << fmt(ldp.p_hat) << (o2 ? "" : "(!)") << "; ";
    ++part;
  }
  c.record("criterion-1 n=1 exact law", ok, detail.str());
}

// --- 2. fluctuation law ------------------------------------------------

void criterion_2(Ctx& c) {
  const std::size_t n = c.opt.quick ? 64 : 256;
  const std::size_t samples = c.opt.quick ? 400 : 2000;
  RngStream rng(c.opt.seed, 301);
  auto chunk_fn = [&](std::size_t ch) {
    RngStream local = rng.child(ch);
    std::vector<double> vals;
    for (std::size_t s = 0; s < chunk_size(ch, samples); ++s) {
      Polynomial p = sample_kac(n, local);
      vals.push_back(max_modulus(find_roots(p, kRootTolDefault, 400)));
    }
    return vals;
  };
  auto partials = run_chunks<std::vector<double>>(chunk_count(samples),
                                                  chunk_fn, true);
  std::vector<double> rho;
  for (auto& p : partials) rho.insert(rho.end(), p.begin(), p.end());

  std::vector<double> grid;
  for (int i = 0; i <= 39; ++i) grid.push_back(1.05 + 0.05 * i);
  double sup = 0.0, sup_y = 0.0;
  for (const auto& [y, emp] : empirical_cdf(rho, grid)) {
    double diff = std::abs(emp - limit_cdf(y));
    if (diff > sup) {
      sup = diff;
      sup_y = y;
    }
  }
  bool ok = sup <= 0.05;
  c.record("criterion-2 fluctuation law", ok,
           "n=" + std::to_string(n) + " sup|emp-limit|=" + fmt(sup) +
               " at y=" + fmt(sup_y) + " (tol 0.05)");
}

// --- 3. F(y) cross-validation -------------------------------------------

void criterion_3(Ctx& c) {
  bool ok = true;
  std::ostringstream detail;
  double worst = 0.0;
  for (int k : {1, 2, 3}) {
    for (double y : {0.3, 0.5, 0.6}) {
      long long cut = k == 1 ? 60 : (k == 2 ? 90 : 120);
      double jq = quadrature_J(k, y, 64);
      SeriesJ js = cauchy_series_J(k, y, cut);
      double diff = std::abs(jq - js.value);
      worst = std::max(worst, diff);
      if (diff > 1e-7) {
        ok = false;
        detail << "k=" << k << ",y=" << y << " diff=" << fmt(diff) << "; ";
      }
    }
  }
  for (double y : {0.3, 0.5, 0.6}) {
    try {
      eval_F(y, 6, FMethod::both);
    } catch (const std::exception& e) {
      ok = false;
      detail << "eval_F(" << y << ") raised: " << e.what() << "; ";
    }
  }
  c.record("criterion-3 F cross-validation", ok,
           "max |quadrature - series| = " + fmt(worst) +
               " (tol 1e-7); eval_F(y,6,both) consistent. " + detail.str());
}

// --- 4. precise left LDP -------------------------------------------------

void criterion_4(Ctx& c) {
  const double y = 0.6;
  double f = eval_F(y, 6, FMethod::both).value;
  std::vector<std::size_t> ns =
      c.opt.quick ? std::vector<std::size_t>{10, 20}
                  : std::vector<std::size_t>{10, 20, 40};
  const std::size_t samples = c.opt.quick ? 20000 : 100000;
  std::vector<double> rescaled;
  std::ostringstream detail;
  detail << "F(0.6)=" << fmt(f) << "; ";
  for (std::size_t i = 0; i < ns.size(); ++i) {
    RngStream rng(c.opt.seed, 401 + i);
    LdpEstimate est = ldp_estimator(ns[i], y, samples, rng, SampleMethod::dpp);
    rescaled.push_back(est.rescaled);
    detail << "n=" << ns[i] << " rescaled=" << fmt(est.rescaled) << "; ";
  }
  double err_last = std::abs(rescaled.back() - f);
  double err_first = std::abs(rescaled.front() - f);
  bool rel_ok = err_last / f <= (c.opt.quick ? 0.25 : 0.15);
  bool trend_ok = c.opt.quick || err_last < err_first;
  detail << "rel_err(n_max)=" << fmt(err_last / f)
         << (c.opt.quick ? " (quick: trend skipped)" : "");
  c.record("criterion-4 precise left LDP", rel_ok && trend_ok, detail.str());
}

// --- 5. LDP rate ---------------------------------------------------------

void criterion_5(Ctx& c) {
  const std::size_t samples = c.opt.quick ? 5000 : 20000;
  bool ok = true;
  std::ostringstream detail;
  int part = 0;
  for (std::size_t n : {16, 32}) {
    for (double y : {0.5, 0.7}) {
      RngStream rng(c.opt.seed, 501 + std::uint64_t(part++));
      LdpEstimate est = ldp_estimator(n, y, samples, rng, SampleMethod::dpp);
      double lhs = std::abs(est.log_p_hat / double(n * n) + std::log(1.0 / y));
      double bound = 3.0 * std::log(double(n)) / double(n);
      if (lhs > bound) ok = false;
      detail << "n=" << n << ",y=" << y << ": " << fmt(lhs) << "<="
             << fmt(bound) << (lhs <= bound ? "" : "(!)") << "; ";
    }
  }
  c.record("criterion-5 LDP rate", ok, detail.str());
}

// --- 6. moment formula ---------------------------------------------------

void criterion_6(Ctx& c) {
  const std::size_t samples = c.opt.quick ? 10000 : 100000;
  bool ok = true;
  std::ostringstream detail;

  // exact n=1 identity E|u - Lambda|^2 = (1 + 2|u|^2)/2
  for (double x : {0.25, 1.0, 2.56}) {
    cvec u = {cplx(std::sqrt(x), 0.0)};
    double got = moment_formula(1, u);
    double want = (1.0 + 2.0 * x) / 2.0;
    if (std::abs(got - want) > 1e-12) {
      ok = false;
      detail << "n=1 identity failed at x=" << x << "; ";
    }
  }

  int part = 0;
  for (const cvec& u :
       {cvec{cplx(1.3, 0.0)}, cvec{cplx(1.3, 0.0), cplx(0.0, 1.6)}}) {
    double formula = moment_formula(5, u);
    RngStream rng(c.opt.seed, 601 + std::uint64_t(part++));
    McEstimate mc = mc_moment(5, u, samples, rng, SampleMethod::truncation);
    double z = std::abs(mc.value - formula) / mc.std_error;
    if (z > 3.0) ok = false;
    detail << "k=" << u.size() << " formula=" << fmt(formula)
           << " mc=" << fmt(mc.value) << " z=" << fmt(z) << "; ";
  }
  c.record("criterion-6 moment formula", ok, detail.str());
}

// --- 7. Fredholm determinant ---------------------------------------------

void criterion_7(Ctx& c) {
  bool ok = true;
  std::ostringstream detail;
  for (double t : {0.3, 0.5, 0.7}) {
    NystromGrid grid = make_nystrom_grid(t, 64, 128);
    FredholmResult f = fredholm_bergman(t, grid);
    double oracle = 1.0;
    for (int k = 1; k <= 200; ++k) oracle *= 1.0 - std::pow(t, 2.0 * k);
    double diff = std::abs(f.det - oracle);
    bool eig_ok = f.eigenvalues.size() >= 3;
    for (std::size_t i = 0; i < 3 && eig_ok; ++i) {
      eig_ok = std::abs(f.eigenvalues[i] - std::pow(t, 2.0 * double(i + 1))) <=
               1e-8;
    }
    if (diff > 1e-6 || !eig_ok) ok = false;
    detail << "t=" << t << " |det-oracle|=" << fmt(diff)
           << (eig_ok ? " eig ok" : " eig MISMATCH") << "; ";
  }
  c.record("criterion-7 Fredholm determinant", ok, detail.str());
}

// --- 8. sampler equivalence ----------------------------------------------

void criterion_8(Ctx& c) {
  const std::size_t n = 4;
  const std::size_t ks_samples = c.opt.quick ? 3000 : 10000;
  const std::size_t hist_samples = c.opt.quick ? 20000 : 100000;

  auto radii = [&](SampleMethod m, std::uint64_t stream,
                   std::size_t count) {
    RngStream rng(c.opt.seed, stream);
    auto chunk_fn = [&](std::size_t ch) {
      RngStream local = rng.child(ch);
      std::vector<double> out;
      for (std::size_t s = 0; s < chunk_size(ch, count); ++s) {
        EnsembleSample es = m == SampleMethod::truncation
                                ? sample_truncation(n, local)
                                : sample_dpp(n, local);
        for (const cplx& z : es.points) out.push_back(std::abs(z));
      }
      return out;
    };
    auto partials = run_chunks<std::vector<double>>(chunk_count(count),
                                                    chunk_fn, true);
    std::vector<double> all;
    for (auto& p : partials) all.insert(all.end(), p.begin(), p.end());
    return all;
  };

  double ks = ks_distance(radii(SampleMethod::truncation, 801, ks_samples),
                          radii(SampleMethod::dpp, 802, ks_samples));
  bool ks_ok = ks <= 0.03;

  // First-intensity histogram vs (1/n) g_n(r^2) 2r, i.e. bin mass
  // (1/n) sum_{j<n} (r2^{2j+2} - r1^{2j+2}).
  std::vector<double> r = radii(SampleMethod::truncation, 803, hist_samples);
  const int bins = 20;
  std::vector<double> counts(bins, 0.0);
  for (double v : r) {
    int b = std::min(bins - 1, int(v * bins));
    counts[std::size_t(b)] += 1.0;
  }
  double sup = 0.0;
  for (int b = 0; b < bins; ++b) {
    double r1 = double(b) / bins, r2 = double(b + 1) / bins;
    double mass = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      mass += std::pow(r2, 2.0 * double(j) + 2.0) -
              std::pow(r1, 2.0 * double(j) + 2.0);
    }
    mass /= double(n);
    double emp = counts[std::size_t(b)] / double(r.size());
    sup = std::max(sup, std::abs(emp - mass) * bins);  // density units
  }
  bool hist_ok = sup <= 0.05;
  c.record("criterion-8 sampler equivalence", ks_ok && hist_ok,
           "KS=" + fmt(ks) + " (tol 0.03); density sup distance=" + fmt(sup) +
               " (tol 0.05)");
}

// --- 9. correlation oracle ----------------------------------------------

void criterion_9(Ctx& c) {
  bool ok = true;
  std::ostringstream detail;
  RngStream rng(c.opt.seed, 901);
  double worst = 0.0;
  for (int i = 0; i < 20; ++i) {
    cplx z = 2.0 * rng.uniform_disk();  // also exercise |z| > 1
    double got = rho_finite({z}, 1);
    double want = 1.0 / (std::numbers::pi * std::pow(1.0 + std::norm(z), 2));
    worst = std::max(worst, std::abs(got - want));
  }
  if (worst > 1e-12) {
    ok = false;
    detail << "rho_1 mismatch " << fmt(worst) << "; ";
  }

  RngStream rng2(c.opt.seed, 902);
  const std::size_t pts = c.opt.quick ? 50000 : 400000;
  GapSeries gap = gap_probability_series(1.5, std::nullopt, 4, pts, rng2);
  double want = limit_cdf(1.5);
  double rel = std::abs(gap.value - want) / want;
  if (rel > 0.02) ok = false;
  c.record("criterion-9 correlation oracle", ok,
           detail.str() + "max|rho_1 - oracle|=" + fmt(worst) +
               "; gap series=" + fmt(gap.value) + " vs limit_cdf(1.5)=" +
               fmt(want) + " rel=" + fmt(rel) + " (tol 0.02)");
}

// --- 10. root finder -----------------------------------------------------

void criterion_10(Ctx& c) {
  bool ok = true;
  std::ostringstream detail;
  const std::size_t count = c.opt.quick ? 20 : 100;
  RngStream rng(c.opt.seed, 1001);
  double worst = 0.0;
  for (std::size_t s = 0; s < count; ++s) {
    Polynomial p = sample_kac(256, rng);
    RootSet roots = find_roots(p, kRootTolDefault, 400);
    const cvec& a = p.coefficients();
    cplx sum(0.0), prod(1.0);
    for (const cplx& z : roots.roots) {
      sum += z;
      prod *= z;
    }
    cplx want_sum = -a[255] / a[256];
    cplx want_prod = a[0] / a[256];  // (-1)^n a_0 / a_n with n = 256 even
    double rel_sum = std::abs(sum - want_sum) / std::abs(want_sum);
    double rel_prod = std::abs(prod - want_prod) / std::abs(want_prod);
    worst = std::max({worst, rel_sum, rel_prod});
  }
  if (worst > 1e-6) {
    ok = false;
    detail << "Vieta residual " << fmt(worst) << " > 1e-6; ";
  }

  cvec coeffs(17, cplx(0.0));
  coeffs[0] = cplx(-1.0);
  coeffs[16] = cplx(1.0);
  RootSet roots16 = find_roots(Polynomial(coeffs));
  double worst16 = 0.0;
  for (const cplx& z : roots16.roots) {
    double best = 1e300;
    for (int j = 0; j < 16; ++j) {
      double th = 2.0 * std::numbers::pi * j / 16.0;
      best = std::min(best, std::abs(z - cplx(std::cos(th), std::sin(th))));
    }
    worst16 = std::max(worst16, best);
  }
  if (worst16 > 1e-10) {
    ok = false;
    detail << "z^16-1 roots off by " << fmt(worst16) << "; ";
  }
  c.record("criterion-10 root finder", ok,
           detail.str() + "max Vieta rel err=" + fmt(worst) +
               "; z^16-1 max err=" + fmt(worst16));
}

}  // namespace

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options,
                                            std::ostream& log) {
  Ctx c{options, &log, {}};
  criterion_1(c);
  criterion_2(c);
  criterion_3(c);
  criterion_4(c);
  criterion_5(c);
  criterion_6(c);
  criterion_7(c);
  criterion_8(c);
  criterion_9(c);
  criterion_10(c);
  return c.results;
}

bool all_passed(const std::vector<CriterionResult>& results) {
  for (const auto& r : results) {
    if (!r.passed) return false;
  }
  return true;
}

}  // namespace rootmax
