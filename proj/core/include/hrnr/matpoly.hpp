#pragma once

#include <vector>

#include "hrnr/cmatrix.hpp"
#include "hrnr/numkit.hpp"

namespace hrnr {

struct DegreeError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Scalar polynomial with coefficients stored by ascending power. Construction
// trims exactly-zero trailing coefficients, so the stored lead is nonzero;
// the zero polynomial is stored empty and reports degree -1.
class ScalarPoly {
public:
  ScalarPoly() = default;
  explicit ScalarPoly(std::vector<Complex> coeffs);

  const std::vector<Complex>& coeffs() const { return c_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }

  Complex eval(Complex mu) const;

  // Magnitude scale of the evaluation at mu, for relative residual tests:
  // sum_j |c_j| max(1, |mu|)^j.
  double eval_scale(Complex mu) const;

  // All roots, via the companion matrix with a Newton polish. Zero
  // polynomials and constants are rejected.
  std::vector<Complex> roots() const;

private:
  std::vector<Complex> c_;
};

// Matrix polynomial sum_j A_j lambda^j with square coefficients of one size.
// The stored lead must be nonzero except in the single-coefficient form,
// which may hold an all-zero constant (the zero polynomial, as produced by
// compressions onto isotropic subspaces). lead_trimmed records that a
// transform dropped trailing zero coefficients to restore that shape.
class MatrixPolynomial {
public:
  explicit MatrixPolynomial(std::vector<CMatrix> coeffs, bool lead_trimmed = false);

  const std::vector<CMatrix>& coeffs() const { return a_; }
  const CMatrix& coeff(int j) const { return a_[static_cast<size_t>(j)]; }
  int n() const { return a_.front().rows(); }
  int degree() const { return static_cast<int>(a_.size()) - 1; }
  int effective_degree() const;  // -1 when every coefficient is zero
  bool lead_trimmed() const { return lead_trimmed_; }

  // sum_j ||A_j||_F max(1, |mu|)^j; membership margins scale with this.
  double eval_scale(Complex mu) const;

private:
  std::vector<CMatrix> a_;
  bool lead_trimmed_ = false;
};

// Linear pencil A*lambda - B.
struct Pencil {
  CMatrix a;
  CMatrix b;

  MatrixPolynomial to_polynomial() const;
};

CMatrix evaluate(const MatrixPolynomial& p, Complex mu);

// Substitution lambda -> lambda + a, expanded by binomials.
MatrixPolynomial shift(const MatrixPolynomial& p, Complex a);

// Reversal lambda^m P(1/lambda) at the stored degree m. A zero original
// constant term shrinks the stored degree, flagged via lead_trimmed.
MatrixPolynomial reverse(const MatrixPolynomial& p);

// Coefficientwise compression Q* A_j Q; a vanished lead is trimmed and
// flagged as in reverse.
MatrixPolynomial compress(const MatrixPolynomial& p, const Isometry& q);

// Entry polynomials of the compression: (i, j) holds the scalar polynomial
// with coefficient q_i* A_l q_j at power l, trailing zeros trimmed.
std::vector<std::vector<ScalarPoly>> scalar_entries(const MatrixPolynomial& p,
                                                    const Isometry& q);

// Block companion pencil of a degree >= 1 polynomial. For the pencil
// C(lambda) = A lambda - B: A = blkdiag(I, ..., I, A_m); B carries identity
// blocks on the superdiagonal and (-A_0 ... -A_{m-1}) in the bottom block
// row, so that det C(mu) matches det P(mu) up to a fixed sign.
Pencil companion(const MatrixPolynomial& p);

}  // namespace hrnr
