#include "rootmax/linalg.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>

namespace rootmax {

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
  require(a.cols() == b.rows(), "matmul: inner dimensions must agree");
  ComplexMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      cplx aik = a(i, k);
      if (aik == cplx(0.0)) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
    }
  }
  return c;
}

LuFactor lu_factor(const ComplexMatrix& m) {
  if (!m.square()) throw std::invalid_argument("lu_factor: matrix not square");
  const std::size_t n = m.rows();
  LuFactor f{m, std::vector<std::size_t>(n), 1, false};
  for (std::size_t i = 0; i < n; ++i) f.perm[i] = i;
  constexpr double kPivotFloor = 1e-300;  // underflow guard

  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    double best = std::abs(f.lu(k, k));
    for (std::size_t i = k + 1; i < n; ++i) {
      double v = std::abs(f.lu(i, k));
      if (v > best) {
        best = v;
        p = i;
      }
    }
    if (best < kPivotFloor) {
      f.singular = true;
      return f;
    }
    if (p != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(f.lu(k, j), f.lu(p, j));
      std::swap(f.perm[k], f.perm[p]);
      f.sign = -f.sign;
    }
    cplx pivot = f.lu(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      cplx l = f.lu(i, k) / pivot;
      f.lu(i, k) = l;
      for (std::size_t j = k + 1; j < n; ++j) f.lu(i, j) -= l * f.lu(k, j);
    }
  }
  return f;
}

cplx LuFactor::det() const {
  if (singular) return cplx(0.0);
  cplx d = cplx(double(sign));
  for (std::size_t k = 0; k < lu.rows(); ++k) d *= lu(k, k);
  return d;
}

cvec lu_solve(const LuFactor& f, const cvec& b) {
  if (f.singular) throw std::invalid_argument("lu_solve: singular matrix");
  const std::size_t n = f.lu.rows();
  require(b.size() == n, "lu_solve: dimension mismatch");
  cvec x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = b[f.perm[i]];
  for (std::size_t i = 1; i < n; ++i) {
    for (std::size_t j = 0; j < i; ++j) x[i] -= f.lu(i, j) * x[j];
  }
  for (std::size_t i = n; i-- > 0;) {
    for (std::size_t j = i + 1; j < n; ++j) x[i] -= f.lu(i, j) * x[j];
    x[i] /= f.lu(i, i);
  }
  return x;
}

cplx determinant(const ComplexMatrix& m) {
  if (!m.square()) {
    throw std::invalid_argument("determinant: matrix not square");
  }
  return lu_factor(m).det();
}

cplx permanent(const ComplexMatrix& m) {
  if (!m.square()) throw std::invalid_argument("permanent: matrix not square");
  const std::size_t n = m.rows();
  if (n > 20) {
    throw std::length_error("permanent: dimension cap is 20 (cost 2^n)");
  }
  if (n == 0) return cplx(1.0);

  // Ryser: per(A) = (-1)^n sum_{S != empty} (-1)^|S| prod_i rowsum_i(S),
  // walking subsets in Gray-code order so each step updates one column.
  cvec rowsum(n, cplx(0.0));
  cplx total(0.0);
  std::uint64_t gray = 0;
  const std::uint64_t limit = (n == 64) ? ~0ULL : ((1ULL << n) - 1);
  for (std::uint64_t g = 1; g <= limit; ++g) {
    std::uint64_t next = g ^ (g >> 1);
    std::uint64_t diff = next ^ gray;
    int j = std::countr_zero(diff);
    bool added = (next & diff) != 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (added) {
        rowsum[i] += m(i, std::size_t(j));
      } else {
        rowsum[i] -= m(i, std::size_t(j));
      }
    }
    gray = next;
    cplx prod(1.0);
    for (std::size_t i = 0; i < n; ++i) prod *= rowsum[i];
    int bits = std::popcount(next);
    if ((std::size_t(bits) & 1) == (n & 1)) {
      total += prod;
    } else {
      total -= prod;
    }
  }
  return total;
}

cplx permanent_reference(const ComplexMatrix& m) {
  if (!m.square()) throw std::invalid_argument("permanent: matrix not square");
  const std::size_t n = m.rows();
  if (n > 9) throw std::length_error("permanent_reference: n > 9");
  if (n == 0) return cplx(1.0);
  std::vector<std::size_t> idx(n);
  for (std::size_t i = 0; i < n; ++i) idx[i] = i;
  cplx total(0.0);
  do {
    cplx prod(1.0);
    for (std::size_t i = 0; i < n; ++i) prod *= m(i, idx[i]);
    total += prod;
  } while (std::next_permutation(idx.begin(), idx.end()));
  return total;
}

ComplexMatrix qr_unitary_phase_fixed(const ComplexMatrix& a) {
  if (!a.square()) throw std::invalid_argument("qr: matrix not square");
  const std::size_t n = a.rows();
  ComplexMatrix r = a;
  ComplexMatrix q = ComplexMatrix::identity(n);

  cvec v(n);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    double xnorm = 0.0;
    for (std::size_t i = k; i < n; ++i) xnorm += std::norm(r(i, k));
    xnorm = std::sqrt(xnorm);
    if (xnorm == 0.0) continue;

    cplx x0 = r(k, k);
    double ax0 = std::abs(x0);
    cplx phase = (ax0 == 0.0) ? cplx(1.0) : x0 / ax0;
    cplx alpha = -phase * xnorm;

    double vnorm2 = 0.0;
    for (std::size_t i = k; i < n; ++i) {
      v[i] = r(i, k);
      if (i == k) v[i] -= alpha;
      vnorm2 += std::norm(v[i]);
    }
    if (vnorm2 == 0.0) continue;

    // Apply H = I - 2 v v* / |v|^2 to R (left) and accumulate into Q (right,
    // via Q <- Q H*), so Q is the product of the reflectors.
    for (std::size_t j = k; j < n; ++j) {
      cplx dot(0.0);
      for (std::size_t i = k; i < n; ++i) dot += std::conj(v[i]) * r(i, j);
      dot *= 2.0 / vnorm2;
      for (std::size_t i = k; i < n; ++i) r(i, j) -= dot * v[i];
    }
    for (std::size_t i = 0; i < n; ++i) {
      cplx dot(0.0);
      for (std::size_t j = k; j < n; ++j) dot += q(i, j) * v[j];
      dot *= 2.0 / vnorm2;
      for (std::size_t j = k; j < n; ++j) q(i, j) -= dot * std::conj(v[j]);
    }
  }

  // Phase fix: scale column j so R[j,j] becomes real positive. Without this
  // step plain QR is not Haar-distributed.
  for (std::size_t j = 0; j < n; ++j) {
    cplx rjj = r(j, j);
    double arjj = std::abs(rjj);
    cplx phase = (arjj == 0.0) ? cplx(1.0) : std::conj(rjj) / arjj;
    for (std::size_t i = 0; i < n; ++i) q(i, j) *= phase;
  }
  return q;
}

std::vector<double> symmetric_eigenvalues(std::vector<double> a,
                                          std::size_t n) {
  require(a.size() == n * n, "symmetric_eigenvalues: size mismatch");
  auto at = [&](std::size_t i, std::size_t j) -> double& {
    return a[i * n + j];
  };
  if (n == 1) return {a[0]};

  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) off += at(i, j) * at(i, j);
    }
    if (off < 1e-26) break;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        double apq = at(p, q);
        if (std::abs(apq) < 1e-300) continue;
        double theta = (at(q, q) - at(p, p)) / (2.0 * apq);
        double t = (theta >= 0 ? 1.0 : -1.0) /
                   (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        double c = 1.0 / std::sqrt(t * t + 1.0);
        double s = t * c;
        for (std::size_t i = 0; i < n; ++i) {
          double aip = at(i, p), aiq = at(i, q);
          at(i, p) = c * aip - s * aiq;
          at(i, q) = s * aip + c * aiq;
        }
        for (std::size_t i = 0; i < n; ++i) {
          double api = at(p, i), aqi = at(q, i);
          at(p, i) = c * api - s * aqi;
          at(q, i) = s * api + c * aqi;
        }
      }
    }
  }
  std::vector<double> eig(n);
  for (std::size_t i = 0; i < n; ++i) eig[i] = at(i, i);
  std::sort(eig.begin(), eig.end(), std::greater<double>());
  return eig;
}

Quadrature gauss_legendre(std::size_t n) {
  require(n >= 1, "gauss_legendre: n >= 1");
  Quadrature q;
  q.nodes.resize(n);
  q.weights.resize(n);
  for (std::size_t i = 0; i < (n + 1) / 2; ++i) {
    // Chebyshev-like initial guess, then Newton on P_n.
    double x = std::cos(std::numbers::pi * (double(i) + 0.75) /
                        (double(n) + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (std::size_t k = 2; k <= n; ++k) {
        double p2 = ((2.0 * double(k) - 1.0) * x * p1 -
                     (double(k) - 1.0) * p0) /
                    double(k);
        p0 = p1;
        p1 = p2;
      }
      dp = double(n) * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    double w = 2.0 / ((1.0 - x * x) * dp * dp);
    q.nodes[i] = -x;
    q.weights[i] = w;
    q.nodes[n - 1 - i] = x;
    q.weights[n - 1 - i] = w;
  }
  return q;
}

}  // namespace rootmax
