#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "rootmax/common.hpp"

namespace rootmax {

// Integer partition: weakly decreasing positive parts.
struct Partition {
  std::vector<int> parts;

  Partition() = default;
  explicit Partition(std::vector<int> p) : parts(std::move(p)) {
    for (std::size_t i = 0; i < parts.size(); ++i) {
      require(parts[i] > 0, "Partition: parts must be positive");
      require(i == 0 || parts[i - 1] >= parts[i],
              "Partition: parts must be weakly decreasing");
    }
  }

  long long weight() const {
    long long w = 0;
    for (int p : parts) w += p;
    return w;
  }
  std::size_t length() const { return parts.size(); }
  bool operator==(const Partition& o) const { return parts == o.parts; }
};

// All partitions of n with at most max_parts parts, in descending
// lexicographic order ((4), (3,1), (2,2), ...).
std::vector<Partition> partitions(long long n, int max_parts);

// True when lambda dominates mu (prefix sums of lambda are >= those of mu).
// Requires equal weights.
bool dominates(const Partition& lambda, const Partition& mu);

// Kostka numbers have parts capped at 255 and at most 8 rows here; the
// memo key packs a shape and a content prefix into two 8-byte words.
inline constexpr int kPartitionPartCap = 255;
inline constexpr int kPartitionLenCap = 8;

// Memoized Kostka computation: counts semistandard tableaux of shape lambda
// and content mu by peeling horizontal strips off the largest entry. The
// cache is shared across queries so that sweeps over many (lambda, mu) pairs
// reuse subproblems. Exact 64-bit arithmetic with overflow checks.
class KostkaTable {
 public:
  long long kostka(const Partition& lambda, const Partition& mu);
  std::size_t cache_size() const { return memo_.size(); }

 private:
  struct Key {
    std::uint64_t shape;
    std::uint64_t content;
    bool operator==(const Key& o) const {
      return shape == o.shape && content == o.content;
    }
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const {
      std::uint64_t h = k.shape * 0x9E3779B97F4A7C15ULL;
      h ^= k.content + 0x9E3779B97F4A7C15ULL + (h << 6) + (h >> 2);
      return std::size_t(h);
    }
  };
  long long count(std::vector<int>& shape, const std::vector<int>& content,
                  int t);
  std::unordered_map<Key, long long, KeyHash> memo_;
};

// Number of semistandard Young tableaux of shape lambda and content mu.
long long kostka(const Partition& lambda, const Partition& mu);

// L2 norm of the Schur polynomial s_lambda over the k-torus: the sum of its
// squared monomial coefficients in k variables, i.e.
//   sum over mu of (# distinct arrangements of mu into k slots) * K_{lambda
//   mu}^2.
// Returns 0 when lambda has more than k parts (s_lambda vanishes).
long long torus_schur_norm(const Partition& lambda, int k);
long long torus_schur_norm(const Partition& lambda, int k,
                           KostkaTable& table);

// Coefficient of y^{2n} in the torus average of
// prod_{i,j<=k} 1/(1 - y^2 u_i conj(u_j)):
//   a_n(k) = sum over lambda |- n with at most k parts of
//            torus_schur_norm(lambda, k).
long long cauchy_series_coefficient(long long n, int k, KostkaTable& table);

struct SeriesJ {
  double value = 0.0;
  double tail_bound = 0.0;  // rigorous bound on the dropped tail
  long long degree_cut = 0;
};

// Truncated series for J_k(y) = integral over the k-torus of the Cauchy
// product: sum_{n <= degree_cut} y^{2n} a_n(k), with a geometric tail bound
// from a_n(k) <= C(n + k^2 - 1, k^2 - 1) (the complete homogeneous symmetric
// polynomial in the k^2 products u_i conj(u_j) has that many monomials, each
// of modulus one with torus average 0 or 1).
SeriesJ cauchy_series_J(int k, double y, long long degree_cut);

}  // namespace rootmax
