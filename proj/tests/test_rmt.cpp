#include <doctest.h>

#include <cmath>
#include <numbers>

#include "rootmax/polyroots.hpp"
#include "rootmax/rmt.hpp"
#include "rootmax/symmetric.hpp"

using namespace rootmax;

TEST_CASE("g_eval small orders") {
  CHECK(std::abs(g_eval(KernelG{2}, cplx(0.0)) - cplx(1.0)) < 1e-15);
  cplx x(0.37, 0.11);
  CHECK(std::abs(g_eval(KernelG{2}, x) - (cplx(1.0) + 2.0 * x)) < 1e-14);
  CHECK(std::abs(g_eval(KernelG{1}, x) - cplx(1.0)) < 1e-15);
}

TEST_CASE("g_eval Horner matches the closed form") {
  // g_n(x) = sum_{j<n} (j+1) x^j = (1 - (n+1) x^n + n x^{n+1}) / (1-x)^2.
  const std::size_t n = 50;
  for (cplx x : {cplx(0.3), cplx(-0.8, 0.1), cplx(0.2, 0.6)}) {
    cplx closed = (cplx(1.0) - double(n + 1) * std::pow(x, double(n)) +
                   double(n) * std::pow(x, double(n + 1))) /
                  ((cplx(1.0) - x) * (cplx(1.0) - x));
    cplx horner = g_eval(KernelG{n}, x);
    CHECK(std::abs(horner - closed) <= 1e-12 * std::abs(closed));
  }
}

TEST_CASE("haar_unitary basic contracts") {
  RngStream rng(3, 0);
  ComplexMatrix u1 = haar_unitary(1, rng);
  CHECK(std::abs(std::abs(u1(0, 0)) - 1.0) <= 1e-14);

  for (std::size_t m : {2, 8, 32}) {
    ComplexMatrix u = haar_unitary(m, rng);
    double worst = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < m; ++j) {
        cplx dot(0.0);
        for (std::size_t l = 0; l < m; ++l) dot += std::conj(u(l, i)) * u(l, j);
        if (i == j) dot -= cplx(1.0);
        worst = std::max(worst, std::abs(dot));
      }
    }
    CHECK(worst <= 1e-12);
  }
}

TEST_CASE("haar_unitary first entry has E|U00|^2 = 1/m") {
  // Oracle: a Haar column is uniform on the sphere, so |U00|^2 matches the
  // first coordinate of a normalized Gaussian vector.
  const std::size_t m = 8;
  const int reps = 20000;
  RngStream rng(4, 0);
  double haar_acc = 0.0;
  for (int r = 0; r < reps; ++r) {
    haar_acc += std::norm(haar_unitary(m, rng)(0, 0));
  }
  double sphere_acc = 0.0;
  RngStream rng2(4, 1);
  for (int r = 0; r < reps; ++r) {
    double norm2 = 0.0, first = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      double v = std::norm(rng2.complex_gaussian());
      if (i == 0) first = v;
      norm2 += v;
    }
    sphere_acc += first / norm2;
  }
  double exact = 1.0 / double(m);
  // |U00|^2 ~ Beta(1, m-1): sd = sqrt(Var)/sqrt(reps), Var ~ (m-1)/(m^2(m+1)).
  double se = std::sqrt((double(m) - 1.0) /
                        (double(m) * double(m) * (double(m) + 1.0)) /
                        double(reps));
  CHECK(std::abs(haar_acc / reps - exact) <= 3.0 * se);
  CHECK(std::abs(sphere_acc / reps - exact) <= 3.0 * se);
}

TEST_CASE("left invariance of the Haar sample (statistical)") {
  // Multiplying by a fixed unitary must not change the law; compare the mean
  // of |(VU)[0,0]|^2 against 1/m.
  const std::size_t m = 4;
  const int reps = 20000;
  RngStream rng(9, 0);
  RngStream vr(10, 0);
  ComplexMatrix v = haar_unitary(m, vr);
  double acc = 0.0;
  for (int r = 0; r < reps; ++r) {
    ComplexMatrix u = haar_unitary(m, rng);
    cplx dot(0.0);
    for (std::size_t l = 0; l < m; ++l) dot += v(0, l) * u(l, 0);
    acc += std::norm(dot);
  }
  double se = std::sqrt((double(m) - 1.0) /
                        (double(m) * double(m) * (double(m) + 1.0)) /
                        double(reps));
  CHECK(std::abs(acc / reps - 1.0 / double(m)) <= 3.0 * se);
}

TEST_CASE("faddeev_leverrier on known matrices") {
  // diag(1, 2, 3): char poly x^3 - 6x^2 + 11x - 6.
  ComplexMatrix d(3, 3);
  d(0, 0) = cplx(1.0);
  d(1, 1) = cplx(2.0);
  d(2, 2) = cplx(3.0);
  cvec c = faddeev_leverrier(d);
  CHECK(std::abs(c[0] - cplx(-6.0)) < 1e-12);
  CHECK(std::abs(c[1] - cplx(11.0)) < 1e-12);
  CHECK(std::abs(c[2] - cplx(-6.0)) < 1e-12);
}

TEST_CASE("char-poly coefficients close the Vieta loop with the roots") {
  RngStream rng(15, 0);
  const std::size_t n = 12;
  ComplexMatrix u = haar_unitary(n + 1, rng);
  ComplexMatrix block(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) block(i, j) = u(i, j);
  }
  cvec c = faddeev_leverrier(block);
  cvec coeffs(n + 1);
  coeffs[n] = cplx(1.0);
  for (std::size_t k = 0; k < n; ++k) coeffs[n - 1 - k] = c[k];
  RootSet roots = find_roots(Polynomial(coeffs));
  cvec e = elementary_symmetric(roots.roots);
  for (std::size_t k = 1; k <= n; ++k) {
    cplx want = c[k - 1];
    if (k % 2 == 1) want = -want;
    CHECK(std::abs(e[k] - want) <= 1e-8 * (1.0 + std::abs(want)));
  }
}

TEST_CASE("sample_truncation contracts") {
  RngStream bad(1, 0);
  CHECK_THROWS_AS(sample_truncation(0, bad), std::invalid_argument);
  CHECK_THROWS_AS(sample_truncation(kTruncationCap + 1, bad),
                  std::invalid_argument);

  RngStream rng(20, 0);
  for (int rep = 0; rep < 50; ++rep) {
    EnsembleSample s = sample_truncation(8, rng);
    REQUIRE(s.points.size() == 8);
    for (const cplx& z : s.points) CHECK(std::abs(z) < 1.0);
  }
}

TEST_CASE("n=1 truncation is uniform on the disk") {
  RngStream rng(21, 0);
  const int reps = 100000;
  double acc = 0.0;
  for (int r = 0; r < reps; ++r) {
    acc += std::norm(sample_truncation(1, rng).points[0]);
  }
  // |z|^2 uniform on [0,1]: sd = 1/sqrt(12 reps).
  CHECK(std::abs(acc / reps - 0.5) <= 3.0 / std::sqrt(12.0 * reps));
}

TEST_CASE("n=1 dpp is uniform on the disk") {
  RngStream rng(22, 0);
  const int reps = 100000;
  double acc = 0.0;
  for (int r = 0; r < reps; ++r) {
    acc += std::norm(sample_dpp(1, rng).points[0]);
  }
  CHECK(std::abs(acc / reps - 0.5) <= 3.0 / std::sqrt(12.0 * reps));
}

TEST_CASE("sample_dpp rejects n = 0") {
  RngStream rng(1, 1);
  CHECK_THROWS_AS(sample_dpp(0, rng), std::invalid_argument);
}

TEST_CASE("the two samplers agree in law at n = 2 and n = 3") {
  for (std::size_t n : {2, 3}) {
    const std::size_t reps = 10000;
    std::vector<double> a, b;
    RngStream r1(23, n), r2(24, n);
    for (std::size_t s = 0; s < reps; ++s) {
      for (const cplx& z : sample_truncation(n, r1).points) {
        a.push_back(std::abs(z));
      }
      for (const cplx& z : sample_dpp(n, r2).points) b.push_back(std::abs(z));
    }
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
      d = std::max(d, std::abs(double(i) / a.size() - double(j) / b.size()));
    }
    CHECK(d <= 0.03);
  }
}

TEST_CASE("angular marginal is uniform") {
  RngStream rng(24, 0);
  const std::size_t reps = 25000;  // 4 points per sample
  const int sectors = 16;
  std::vector<double> counts(sectors, 0.0);
  std::size_t total = 0;
  for (std::size_t s = 0; s < reps; ++s) {
    for (const cplx& z : sample_dpp(4, rng).points) {
      double th = std::arg(z);
      if (th < 0) th += 2.0 * std::numbers::pi;
      int b = std::min(sectors - 1, int(th / (2.0 * std::numbers::pi) *
                                        sectors));
      counts[std::size_t(b)] += 1.0;
      ++total;
    }
  }
  double worst = 0.0;
  for (double c : counts) {
    worst = std::max(worst, std::abs(c / double(total) - 1.0 / sectors));
  }
  CHECK(worst <= 0.02);
}

TEST_CASE("eta basics and quadrature cross-check") {
  EnsembleSample zeros;
  zeros.n = 3;
  zeros.points = {cplx(0.0), cplx(0.0), cplx(0.0)};
  CHECK(eta(zeros, 0.4) == doctest::Approx(1.0));
  CHECK(eta(zeros, 1.0) == doctest::Approx(1.0));

  RngStream rng(25, 0);
  EnsembleSample s = sample_truncation(10, rng);
  CHECK(eta(s, 1e-9) == doctest::Approx(1.0).epsilon(1e-12));

  // Independent oracle: eta = integral_0^1 prod_k |1 - y e^{2 i pi t} z_k|^2,
  // exact for the 512-node trapezoid rule (trigonometric polynomial).
  for (double y : {0.3, 0.7, 1.0}) {
    double direct = 0.0;
    const int nodes = 512;
    for (int q = 0; q < nodes; ++q) {
      double th = 2.0 * std::numbers::pi * q / nodes;
      cplx w = y * cplx(std::cos(th), std::sin(th));
      double prod = 1.0;
      for (const cplx& z : s.points) prod *= std::norm(cplx(1.0) - w * z);
      direct += prod;
    }
    direct /= nodes;
    CHECK(eta(s, y) == doctest::Approx(direct).epsilon(1e-8));
  }

  // eta >= 1 across samples and y.
  for (int rep = 0; rep < 20; ++rep) {
    EnsembleSample t = sample_dpp(6, rng);
    for (double y : {0.1, 0.5, 0.9, 1.0}) CHECK(eta(t, y) >= 1.0);
  }
}
