// Timing harness comparing the OpenMP kernels against their serial
// reference implementations. Not a correctness test (those live in tests/);
// prints one line per kernel with the speedup.

#include <chrono>
#include <cstdio>
#include <functional>

#include "rootmax/correlations.hpp"
#include "rootmax/deviations.hpp"
#include "rootmax/parallel.hpp"
#include "rootmax/rng.hpp"

namespace {

double time_ms(const std::function<void()>& fn, int reps = 3) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    auto t0 = std::chrono::steady_clock::now();
    fn();
    auto t1 = std::chrono::steady_clock::now();
    best = std::min(
        best, std::chrono::duration<double, std::milli>(t1 - t0).count());
  }
  return best;
}

void report(const char* name, double serial_ms, double parallel_ms,
            double serial_val, double parallel_val) {
  std::printf("%-34s serial %9.2f ms   parallel %9.2f ms   speedup %5.2fx   "
              "|diff| %.3e\n",
              name, serial_ms, parallel_ms, serial_ms / parallel_ms,
              std::abs(serial_val - parallel_val));
}

}  // namespace

int main() {
  using namespace rootmax;

  {
    double vs = 0.0, vp = 0.0;
    double ts = time_ms([&] { vs = quadrature_J_reference(3, 0.6, 96); });
    double tp = time_ms([&] { vp = quadrature_J(3, 0.6, 96); });
    report("quadrature_J k=3 N=96", ts, tp, vs, vp);
  }
  {
    double vs = 0.0, vp = 0.0;
    double ts = time_ms([&] { vs = quadrature_J_reference(4, 0.5, 40); });
    double tp = time_ms([&] { vp = quadrature_J(4, 0.5, 40); });
    report("quadrature_J k=4 N=40", ts, tp, vs, vp);
  }
  {
    RngStream rng(1, 0);
    LdpEstimate es, ep;
    double ts = time_ms(
        [&] { es = ldp_estimator(16, 0.6, 8192, rng, SampleMethod::dpp,
                                 false); },
        1);
    double tp = time_ms(
        [&] { ep = ldp_estimator(16, 0.6, 8192, rng, SampleMethod::dpp,
                                 true); },
        1);
    report("ldp_estimator n=16 dpp 8k", ts, tp, es.log_p_hat, ep.log_p_hat);
  }
  {
    RngStream rng(2, 0);
    McEstimate es, ep;
    double ts = time_ms(
        [&] { es = direct_mc_prob(64, 0.9, 2048, rng, false); }, 1);
    double tp = time_ms(
        [&] { ep = direct_mc_prob(64, 0.9, 2048, rng, true); }, 1);
    report("direct_mc_prob n=64 2k", ts, tp, es.value, ep.value);
  }
  {
    const double t = 0.4;
    NystromGrid grid = make_nystrom_grid(t, 16, 32);
    double vs = 0.0, vp = 0.0;
    double ts = time_ms([&] { vs = fredholm_bergman_reference(t, grid); }, 1);
    double tp = time_ms([&] { vp = fredholm_bergman(t, grid).det; }, 1);
    report("fredholm 16x32 (LU vs modes)", ts, tp, vs, vp);
  }
  return 0;
}
