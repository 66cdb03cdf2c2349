#include <doctest.h>

#include <cmath>
#include <numbers>

#include "rootmax/symfunc.hpp"

using namespace rootmax;

namespace {

Partition part(std::vector<int> p) { return Partition(std::move(p)); }

// Partition counts by the Euler pentagonal-number recurrence, used as an
// independent oracle for the enumerator.
long long partition_count(int n) {
  std::vector<long long> p(std::size_t(n) + 1, 0);
  p[0] = 1;
  for (int m = 1; m <= n; ++m) {
    long long total = 0;
    for (int k = 1;; ++k) {
      int g1 = k * (3 * k - 1) / 2;
      int g2 = k * (3 * k + 1) / 2;
      if (g1 > m && g2 > m) break;
      long long sign = (k % 2 == 1) ? 1 : -1;
      if (g1 <= m) total += sign * p[std::size_t(m - g1)];
      if (g2 <= m) total += sign * p[std::size_t(m - g2)];
    }
    p[std::size_t(m)] = total;
  }
  return p[std::size_t(n)];
}

}  // namespace

TEST_CASE("partition enumeration") {
  auto p0 = partitions(0, 5);
  REQUIRE(p0.size() == 1);
  CHECK(p0[0].parts.empty());

  auto p42 = partitions(4, 2);
  REQUIRE(p42.size() == 3);
  CHECK(p42[0].parts == std::vector<int>{4});
  CHECK(p42[1].parts == std::vector<int>{3, 1});
  CHECK(p42[2].parts == std::vector<int>{2, 2});

  CHECK((long long)(partitions(20, 20).size()) == partition_count(20));
  CHECK(partition_count(20) == 627);
}

TEST_CASE("Partition validation") {
  CHECK_THROWS_AS(part({1, 2}), std::invalid_argument);
  CHECK_THROWS_AS(part({2, 0}), std::invalid_argument);
}

TEST_CASE("Kostka base cases") {
  CHECK(kostka(part({3, 1}), part({3, 1})) == 1);
  CHECK(kostka(part({2, 1}), part({1, 1, 1})) == 2);
  CHECK(kostka(part({1, 1}), part({2})) == 0);
  CHECK_THROWS_AS(kostka(part({2}), part({1})), std::invalid_argument);
}

TEST_CASE("Kostka of (2,1) with content (1,1,1) by brute force") {
  // All fillings of the 3-cell hook: rows weakly increasing, columns
  // strictly increasing, entries {1,2,3} once each.
  int count = 0;
  for (int a = 1; a <= 3; ++a) {
    for (int b = 1; b <= 3; ++b) {
      for (int c = 1; c <= 3; ++c) {
        if (a == b || a == c || b == c) continue;
        if (a <= b && a < c) ++count;  // shape (2,1): cells (a b / c)
      }
    }
  }
  CHECK(count == 2);
  CHECK(kostka(part({2, 1}), part({1, 1, 1})) == count);
}

TEST_CASE("Kostka dominance and normalization up to weight 12") {
  KostkaTable table;
  for (int w = 1; w <= 12; ++w) {
    for (const Partition& lambda : partitions(w, 6)) {
      CHECK(table.kostka(lambda, lambda) == 1);
      for (const Partition& mu : partitions(w, 6)) {
        if (!dominates(lambda, mu)) {
          CHECK(table.kostka(lambda, mu) == 0);
        }
      }
    }
  }
}

TEST_CASE("Kostka row-sum identity: monomial support of s_lambda") {
  // sum_mu arrangements(mu) K_{lambda mu} = s_lambda(1,...,1), the Weyl
  // dimension product prod_{i<j} (lambda_i - lambda_j + j - i)/(j - i).
  KostkaTable table;
  const int k = 4;
  for (int w = 1; w <= 8; ++w) {
    for (const Partition& lambda : partitions(w, k)) {
      std::vector<int> lam = lambda.parts;
      lam.resize(k, 0);
      double dim = 1.0;
      for (int i = 0; i < k; ++i) {
        for (int j = i + 1; j < k; ++j) {
          dim *= double(lam[std::size_t(i)] - lam[std::size_t(j)] + j - i) /
                 double(j - i);
        }
      }
      // Reconstruct the left side with arrangement multiplicities.
      long long lhs = 0;
      for (const Partition& mu : partitions(w, k)) {
        long long kk = table.kostka(lambda, mu);
        if (kk == 0) continue;
        // arrangements(mu, k) = k! / (prod multiplicities! * zeros!)
        std::vector<int> m = mu.parts;
        m.resize(k, 0);
        long long fact = 1;
        for (int i = 2; i <= k; ++i) fact *= i;
        long long denom = 1;
        int run = 1;
        for (std::size_t i = 1; i <= m.size(); ++i) {
          if (i < m.size() && m[i] == m[i - 1]) {
            ++run;
          } else {
            for (int r = 2; r <= run; ++r) denom *= r;
            run = 1;
          }
        }
        lhs += fact / denom * kk;
      }
      CHECK(double(lhs) == doctest::Approx(dim).epsilon(1e-9));
    }
  }
}

TEST_CASE("torus_schur_norm small cases") {
  CHECK(torus_schur_norm(part({1}), 2) == 2);   // u1 + u2
  CHECK(torus_schur_norm(part({2}), 2) == 3);   // u1^2 + u1 u2 + u2^2
  CHECK(torus_schur_norm(part({1, 1}), 1) == 0);
  CHECK(torus_schur_norm(part({}), 3) == 1);
}

TEST_CASE("torus_schur_norm of (2,1) in 3 variables vs quadrature oracle") {
  // |s_lambda|^2 integrated over the torus via the bialternant ratio
  // det(u_i^{lambda_j + 3 - j}) / det(u_i^{3 - j}) on a shifted trapezoid
  // grid (exact: the integrand is a trigonometric polynomial).
  const int N = 16;
  const double off[3] = {0.11, 0.37, 0.71};
  double acc = 0.0;
  for (int i1 = 0; i1 < N; ++i1) {
    for (int i2 = 0; i2 < N; ++i2) {
      for (int i3 = 0; i3 < N; ++i3) {
        double t1 = 2.0 * std::numbers::pi * (i1 + off[0]) / N;
        double t2 = 2.0 * std::numbers::pi * (i2 + off[1]) / N;
        double t3 = 2.0 * std::numbers::pi * (i3 + off[2]) / N;
        cplx u[3] = {cplx(std::cos(t1), std::sin(t1)),
                     cplx(std::cos(t2), std::sin(t2)),
                     cplx(std::cos(t3), std::sin(t3))};
        // exponents lambda + delta = (4, 2, 0), delta = (2, 1, 0)
        auto det3 = [&](const int e[3]) {
          cplx d(0.0);
          int perm[6][3] = {{0, 1, 2}, {1, 2, 0}, {2, 0, 1},
                            {0, 2, 1}, {2, 1, 0}, {1, 0, 2}};
          for (int p = 0; p < 6; ++p) {
            cplx term = std::pow(u[0], e[perm[p][0]]) *
                        std::pow(u[1], e[perm[p][1]]) *
                        std::pow(u[2], e[perm[p][2]]);
            d += (p < 3) ? term : -term;
          }
          return d;
        };
        int num_exp[3] = {4, 2, 0};
        int den_exp[3] = {2, 1, 0};
        cplx s = det3(num_exp) / det3(den_exp);
        acc += std::norm(s);
      }
    }
  }
  acc /= double(N) * N * N;
  CHECK(torus_schur_norm(part({2, 1}), 3) == doctest::Approx(acc).epsilon(1e-9));
  CHECK(torus_schur_norm(part({2, 1}), 3) == 10);
}

TEST_CASE("cauchy series coefficients at k=2 match the matrix count") {
  // a_n(2) counts 2x2 nonnegative integer matrices with row sums equal to
  // column sums: [[a,b],[c,d]] needs b = c, giving sum_b (n - 2b + 1).
  KostkaTable table;
  for (long long n = 0; n <= 12; ++n) {
    long long expected = 0;
    for (long long b = 0; 2 * b <= n; ++b) expected += n - 2 * b + 1;
    CHECK(cauchy_series_coefficient(n, 2, table) == expected);
  }
}

TEST_CASE("cauchy_series_J geometric case k=1") {
  for (double y : {0.0, 0.3, 0.6}) {
    SeriesJ s = cauchy_series_J(1, y, 64);
    double exact = (y == 0.0) ? 1.0 : 1.0 / (1.0 - y * y);
    CHECK(std::abs(s.value - exact) <= s.tail_bound + 1e-12);
  }
  SeriesJ zero = cauchy_series_J(3, 0.0, 10);
  CHECK(zero.value == doctest::Approx(1.0));
}

TEST_CASE("cauchy_series_J domain and monotonicity") {
  CHECK_THROWS_AS(cauchy_series_J(2, 1.0, 10), std::domain_error);
  CHECK_THROWS_AS(cauchy_series_J(2, -0.1, 10), std::domain_error);

  double prev = 0.0;
  for (long long cut : {4, 8, 16, 32}) {
    double v = cauchy_series_J(2, 0.5, cut).value;
    CHECK(v >= prev);
    prev = v;
  }
  CHECK(cauchy_series_J(2, 0.3, 32).value <=
        cauchy_series_J(2, 0.5, 32).value);
}
