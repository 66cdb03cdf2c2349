#pragma once

#include <vector>

#include "rootmax/common.hpp"

namespace rootmax {

// Dense row-major complex matrix. Entries are validated finite on
// construction; dimensions are immutable.
class ComplexMatrix {
 public:
  ComplexMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, cplx(0.0)) {
    require(rows > 0 && cols > 0, "ComplexMatrix: dimensions must be positive");
  }

  ComplexMatrix(std::size_t rows, std::size_t cols, cvec entries)
      : rows_(rows), cols_(cols), data_(std::move(entries)) {
    require(rows > 0 && cols > 0, "ComplexMatrix: dimensions must be positive");
    require(data_.size() == rows * cols,
            "ComplexMatrix: entry count must equal rows*cols");
    require_finite(data_, "ComplexMatrix");
  }

  static ComplexMatrix identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = cplx(1.0);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  cplx& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  cplx operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  const cvec& data() const { return data_; }

 private:
  std::size_t rows_, cols_;
  cvec data_;
};

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b);

// LU factorization with partial pivoting. A pivot below 1e-300 marks the
// matrix as singular (the determinant is reported as exactly 0).
struct LuFactor {
  ComplexMatrix lu;
  std::vector<std::size_t> perm;
  int sign = 1;
  bool singular = false;

  cplx det() const;
};

LuFactor lu_factor(const ComplexMatrix& m);

// Solves A x = b given a factorization of A. Throws on singular A.
cvec lu_solve(const LuFactor& f, const cvec& b);

cplx determinant(const ComplexMatrix& m);

// Exact permanent by Ryser's formula with Gray-code subset iteration.
// Cost 2^n; dimensions above 20 are refused.
cplx permanent(const ComplexMatrix& m);

// Reference permanent by direct permutation expansion, O(n!). Test oracle for
// the Ryser path; refuses n > 9.
cplx permanent_reference(const ComplexMatrix& m);

// Unitary Q from Householder QR of a square matrix, with each column phased
// so the R diagonal is real positive. Applied to a complex Ginibre matrix
// this yields a Haar-distributed unitary.
ComplexMatrix qr_unitary_phase_fixed(const ComplexMatrix& a);

// Eigenvalues of a real symmetric matrix (row-major, size n*n) by cyclic
// Jacobi rotations, returned in descending order.
std::vector<double> symmetric_eigenvalues(std::vector<double> a,
                                          std::size_t n);

// Gauss-Legendre nodes and weights on [-1, 1].
struct Quadrature {
  std::vector<double> nodes;
  std::vector<double> weights;
};
Quadrature gauss_legendre(std::size_t n);

}  // namespace rootmax
