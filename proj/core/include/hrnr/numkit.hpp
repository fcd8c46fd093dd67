#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "hrnr/cmatrix.hpp"

namespace hrnr {

struct IsometryError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Column-orthonormal n x k matrix. Construction measures ||Q*Q - I_k||_F and
// rejects anything above tol, so downstream compressions can trust the frame.
class Isometry {
public:
  explicit Isometry(CMatrix q, double tol = 1e-8);

  const CMatrix& matrix() const { return q_; }
  int n() const { return q_.rows(); }
  int k() const { return q_.cols(); }
  double orthonormality_defect() const { return defect_; }

private:
  CMatrix q_;
  double defect_;
};

// Eigenvalues of a Hermitian matrix, sorted descending. The input is
// symmetrized before iteration; a Hermiticity defect above
// herm_tol * ||h||_F is rejected rather than silently averaged away.
std::vector<double> hermitian_eigenvalues(const CMatrix& h, double herm_tol = 1e-8);

// Iteration core reusing caller-owned storage; h is destroyed in place and
// must already be Hermitian to working precision. Values land in `values`
// (resized to n) sorted descending. Support-function scans call this tens of
// millions of times, hence the no-validation, no-allocation contract.
void hermitian_eigenvalues_inplace(CMatrix& h, std::vector<double>& values);

// Singular values sorted descending, computed by one-sided rotations acting
// on columns. Small singular values keep high relative accuracy, which the
// rank threshold below depends on.
std::vector<double> singular_values(const CMatrix& m);

// Number of singular values above rel_tol * sigma_max. Zero matrix has rank 0.
int svd_rank(const CMatrix& m, double rel_tol = 1e-10);

// Eigenvalues of a general square complex matrix (Hessenberg reduction and
// shifted QR iteration). Order is not meaningful.
std::vector<Complex> complex_eigenvalues(CMatrix a);

Complex lu_determinant(CMatrix a);

// Counter-keyed random stream: the i-th draw depends only on (seed, i), so a
// stream can be replayed or split without carrying mutable state around.
class CounterRng {
public:
  explicit CounterRng(uint64_t seed) : seed_(seed) {}

  uint64_t raw();
  double uniform();  // [0, 1)
  double normal();   // consumes exactly two raw draws per call
  Complex normal_complex();

  uint64_t position() const { return counter_; }

private:
  uint64_t seed_;
  uint64_t counter_ = 0;
};

// Haar-like random isometry from a Gaussian draw followed by two
// orthonormalization passes. Same (n, k, seed) always yields the same frame.
Isometry random_isometry(int n, int k, uint64_t seed);

// Two modified Gram-Schmidt passes over the columns. Columns must be
// numerically independent; a column whose projection residual falls below
// 1e-12 of its original norm is rejected as dependent.
CMatrix orthonormalize_columns(const CMatrix& m);

}  // namespace hrnr
