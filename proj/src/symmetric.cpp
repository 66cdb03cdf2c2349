#include "rootmax/symmetric.hpp"

namespace rootmax {

cvec elementary_symmetric(std::span<const cplx> values) {
  require_finite(values, "elementary_symmetric");
  cvec e(values.size() + 1, cplx(0.0));
  e[0] = cplx(1.0);
  std::size_t used = 0;
  for (cplx z : values) {
    ++used;
    for (std::size_t k = used; k >= 1; --k) e[k] += z * e[k - 1];
  }
  return e;
}

double vandermonde_abs2(std::span<const cplx> values) {
  require_finite(values, "vandermonde_abs2");
  double prod = 1.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    for (std::size_t j = i + 1; j < values.size(); ++j) {
      prod *= std::norm(values[i] - values[j]);
    }
  }
  return prod;
}

}  // namespace rootmax
