#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace rootmax {

// Thread-count policy. ROOTMAX_THREADS caps the pool; the CLI --threads flag
// overrides the environment. 0 means "hardware default".
void set_thread_cap(int threads);
int thread_cap();

// Monte Carlo work is split into fixed-size chunks that are independent of
// the thread count: chunk c always processes the same sample indices with the
// same derived RNG sub-stream, and partial results are merged in chunk order.
// Running with 1 or N threads therefore produces bit-identical results, and
// the serial path doubles as the reference implementation for the OpenMP one.
inline constexpr std::size_t kChunkSamples = 512;

inline std::size_t chunk_count(std::size_t total) {
  return (total + kChunkSamples - 1) / kChunkSamples;
}

inline std::size_t chunk_begin(std::size_t chunk) {
  return chunk * kChunkSamples;
}

inline std::size_t chunk_size(std::size_t chunk, std::size_t total) {
  std::size_t b = chunk_begin(chunk);
  return (b + kChunkSamples <= total) ? kChunkSamples : total - b;
}

// Evaluates fn(chunk_index) for every chunk and returns the partials in chunk
// order. fn must not touch shared mutable state.
template <class Partial, class ChunkFn>
std::vector<Partial> run_chunks(std::size_t nchunks, ChunkFn&& fn,
                                bool parallel = true) {
  std::vector<Partial> partials(nchunks);
#ifdef _OPENMP
  if (parallel && nchunks > 1) {
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t c = 0; c < std::ptrdiff_t(nchunks); ++c) {
      partials[std::size_t(c)] = fn(std::size_t(c));
    }
    return partials;
  }
#else
  (void)parallel;
#endif
  for (std::size_t c = 0; c < nchunks; ++c) partials[c] = fn(c);
  return partials;
}

// Log-sum-exp accumulator for weights given as logarithms. Tracks both the
// first and second moments so estimators can form standard errors without
// ever leaving log space.
struct LogMoments {
  double max1 = -1e308;
  double sum1 = 0.0;  // sum of exp(a_i - max1)
  double max2 = -1e308;
  double sum2 = 0.0;  // sum of exp(2*a_i - max2)
  std::size_t count = 0;

  void add(double a) {
    add_scaled(a, max1, sum1);
    add_scaled(2.0 * a, max2, sum2);
    ++count;
  }

  // Merge must be called in a fixed order for bitwise reproducibility.
  void merge(const LogMoments& o) {
    merge_scaled(o.max1, o.sum1, max1, sum1);
    merge_scaled(o.max2, o.sum2, max2, sum2);
    count += o.count;
  }

  double log_mean() const {
    return max1 + std::log(sum1) - std::log(double(count));
  }
  double log_mean_sq() const {
    return max2 + std::log(sum2) - std::log(double(count));
  }

 private:
  static void add_scaled(double a, double& mx, double& sum) {
    if (a > mx) {
      sum = sum * std::exp(mx - a) + 1.0;
      mx = a;
    } else {
      sum += std::exp(a - mx);
    }
  }
  static void merge_scaled(double omx, double osum, double& mx, double& sum) {
    if (osum == 0.0) return;
    if (omx > mx) {
      sum = sum * std::exp(mx - omx) + osum;
      mx = omx;
    } else {
      sum += osum * std::exp(omx - mx);
    }
  }
};

}  // namespace rootmax
