#include "rootmax/symfunc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace rootmax {

namespace {

long long checked_add(long long a, long long b) {
  long long r;
  if (__builtin_add_overflow(a, b, &r)) {
    throw std::overflow_error("symfunc: 64-bit integer overflow");
  }
  return r;
}

long long checked_mul(long long a, long long b) {
  long long r;
  if (__builtin_mul_overflow(a, b, &r)) {
    throw std::overflow_error("symfunc: 64-bit integer overflow");
  }
  return r;
}

void enumerate_rec(long long n, int max_parts, int limit,
                   std::vector<int>& acc, std::vector<Partition>& out) {
  if (n == 0) {
    out.push_back(Partition(acc));
    return;
  }
  if (max_parts == 0) return;
  int hi = int(std::min<long long>(n, limit));
  for (int p = hi; p >= 1; --p) {
    // Remaining weight must fit in the remaining slots.
    if (n - p > (long long)(max_parts - 1) * p) continue;
    acc.push_back(p);
    enumerate_rec(n - p, max_parts - 1, p, acc, out);
    acc.pop_back();
  }
}

// Distinct arrangements of mu (padded with zeros) into k ordered slots:
// k! / (prod_v mult(v)! * (k - len)!), exact with overflow checks.
long long arrangements(const Partition& mu, int k) {
  long long result = 1;
  // multinomial computed as prod of binomials over runs of equal values
  int slots = k;
  std::size_t i = 0;
  auto binom = [](int n, int r) {
    long long b = 1;
    for (int j = 1; j <= r; ++j) {
      b = checked_mul(b, n - r + j);
      b /= j;
    }
    return b;
  };
  while (i < mu.parts.size()) {
    std::size_t j = i;
    while (j < mu.parts.size() && mu.parts[j] == mu.parts[i]) ++j;
    result = checked_mul(result, binom(slots, int(j - i)));
    slots -= int(j - i);
    i = j;
  }
  return result;  // remaining slots all carry the value 0
}

}  // namespace

std::vector<Partition> partitions(long long n, int max_parts) {
  require(n >= 0, "partitions: n must be >= 0");
  require(max_parts >= 0, "partitions: max_parts must be >= 0");
  std::vector<Partition> out;
  std::vector<int> acc;
  if (n == 0) {
    out.push_back(Partition{});
    return out;
  }
  enumerate_rec(n, max_parts, int(std::min<long long>(n, kPartitionPartCap)),
                acc, out);
  return out;
}

bool dominates(const Partition& lambda, const Partition& mu) {
  require(lambda.weight() == mu.weight(), "dominates: weight mismatch");
  long long sl = 0, sm = 0;
  std::size_t len = std::max(lambda.length(), mu.length());
  for (std::size_t i = 0; i < len; ++i) {
    sl += i < lambda.length() ? lambda.parts[i] : 0;
    sm += i < mu.length() ? mu.parts[i] : 0;
    if (sl < sm) return false;
  }
  return true;
}

long long KostkaTable::count(std::vector<int>& shape,
                             const std::vector<int>& content, int t) {
  if (t == 0) return shape.empty() ? 1 : 0;
  // A chain to `shape` with strip sizes content[0..t-1] exists only if shape
  // dominates the sorted content prefix; pruning here keeps the memo small.
  {
    long long ssum = 0, csum = 0;
    std::size_t rows = shape.size();
    for (int i = 0; i < t; ++i) {
      csum += content[std::size_t(i)];  // content is weakly decreasing
      ssum += std::size_t(i) < rows ? shape[std::size_t(i)] : 0;
      if (ssum < csum) return 0;
    }
  }
  Key key{0, 0};
  for (std::size_t i = 0; i < shape.size(); ++i) {
    key.shape |= std::uint64_t(std::uint8_t(shape[i])) << (8 * i);
  }
  for (int i = 0; i < t; ++i) {
    key.content |= std::uint64_t(std::uint8_t(content[std::size_t(i)]))
                   << (8 * i);
  }
  auto it = memo_.find(key);
  if (it != memo_.end()) return it->second;

  // Remove a horizontal strip of size content[t-1] (cells filled with the
  // largest entry): rho interlaces shape, shape_i >= rho_i >= shape_{i+1}.
  long long total = 0;
  int strip = content[std::size_t(t) - 1];
  std::vector<int> rho(shape.size());
  auto dfs = [&](auto&& self, std::size_t row, int remaining) -> void {
    if (row == shape.size()) {
      if (remaining != 0) return;
      std::vector<int> reduced;
      for (int v : rho) {
        if (v > 0) reduced.push_back(v);
      }
      total = checked_add(total, count(reduced, content, t - 1));
      return;
    }
    int lo = row + 1 < shape.size() ? shape[row + 1] : 0;
    int hi = shape[row];
    for (int v = hi; v >= lo; --v) {
      int removed = hi - v;
      if (removed > remaining) break;
      rho[row] = v;
      self(self, row + 1, remaining - removed);
    }
  };
  dfs(dfs, 0, strip);
  memo_.emplace(key, total);
  return total;
}

long long KostkaTable::kostka(const Partition& lambda, const Partition& mu) {
  require(lambda.weight() == mu.weight(),
          "kostka: shape and content weights must match");
  for (int p : lambda.parts) {
    require(p <= kPartitionPartCap, "kostka: part cap is 255");
  }
  require(int(lambda.length()) <= kPartitionLenCap &&
              int(mu.length()) <= kPartitionLenCap,
          "kostka: at most 8 parts supported");
  if (lambda.weight() == 0) return 1;
  if (!dominates(lambda, mu)) return 0;
  if (lambda.length() > mu.length()) return 0;
  std::vector<int> shape = lambda.parts;
  return count(shape, mu.parts, int(mu.length()));
}

long long kostka(const Partition& lambda, const Partition& mu) {
  KostkaTable table;
  return table.kostka(lambda, mu);
}

long long torus_schur_norm(const Partition& lambda, int k,
                           KostkaTable& table) {
  require(k >= 1 && k <= kPartitionLenCap,
          "torus_schur_norm: k must be in [1, 8]");
  if (int(lambda.length()) > k) return 0;
  if (lambda.weight() == 0) return 1;
  long long total = 0;
  for (const Partition& mu : partitions(lambda.weight(), k)) {
    if (!dominates(lambda, mu)) continue;
    long long kn = table.kostka(lambda, mu);
    if (kn == 0) continue;
    total = checked_add(
        total, checked_mul(arrangements(mu, k), checked_mul(kn, kn)));
  }
  return total;
}

long long torus_schur_norm(const Partition& lambda, int k) {
  KostkaTable table;
  return torus_schur_norm(lambda, k, table);
}

long long cauchy_series_coefficient(long long n, int k, KostkaTable& table) {
  long long total = 0;
  for (const Partition& lambda : partitions(n, k)) {
    total = checked_add(total, torus_schur_norm(lambda, k, table));
  }
  return total;
}

SeriesJ cauchy_series_J(int k, double y, long long degree_cut) {
  require(k >= 1 && k <= kPartitionLenCap,
          "cauchy_series_J: k must be in [1, 8]");
  if (!(y >= 0.0 && y < 1.0)) {
    throw std::domain_error("cauchy_series_J: y must be in [0, 1)");
  }
  require(degree_cut >= 0 && degree_cut <= kPartitionPartCap,
          "cauchy_series_J: degree_cut must be in [0, 255]");

  KostkaTable table;
  const double y2 = y * y;
  double value = 0.0;
  double ypow = 1.0;
  for (long long n = 0; n <= degree_cut; ++n) {
    value += ypow * double(cauchy_series_coefficient(n, k, table));
    ypow *= y2;
  }

  // Tail: sum_{n > cut} C(n + m, m) y^{2n} with m = k^2 - 1, bounded by the
  // geometric ratio at n = cut + 1.
  SeriesJ out{value, 0.0, degree_cut};
  if (y2 == 0.0) return out;
  const double m = double(k) * double(k) - 1.0;
  double logb = std::lgamma(double(degree_cut + 1) + m + 1.0) -
                std::lgamma(double(degree_cut) + 2.0) - std::lgamma(m + 1.0) +
                double(degree_cut + 1) * std::log(y2);
  double ratio = y2 * (double(degree_cut) + 2.0 + m) /
                 (double(degree_cut) + 2.0);
  if (ratio >= 1.0) {
    out.tail_bound = std::numeric_limits<double>::infinity();
  } else {
    out.tail_bound = std::exp(logb) / (1.0 - ratio);
  }
  return out;
}

}  // namespace rootmax
