#include "hrnr/cmatrix.hpp"

#include <cmath>

namespace hrnr {

CMatrix CMatrix::identity(int n) {
  CMatrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Complex& CMatrix::at(int i, int j) {
  if (i < 0 || i >= rows_ || j < 0 || j >= cols_)
    throw DimensionError("CMatrix::at: index out of range");
  return (*this)(i, j);
}

const Complex& CMatrix::at(int i, int j) const {
  if (i < 0 || i >= rows_ || j < 0 || j >= cols_)
    throw DimensionError("CMatrix::at: index out of range");
  return (*this)(i, j);
}

CMatrix& CMatrix::operator+=(const CMatrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_)
    throw DimensionError("matrix addition: shape mismatch");
  for (size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
  return *this;
}

CMatrix& CMatrix::operator-=(const CMatrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_)
    throw DimensionError("matrix subtraction: shape mismatch");
  for (size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
  return *this;
}

CMatrix& CMatrix::operator*=(Complex s) {
  for (auto& x : data_) x *= s;
  return *this;
}

CMatrix operator+(CMatrix a, const CMatrix& b) { return a += b; }
CMatrix operator-(CMatrix a, const CMatrix& b) { return a -= b; }
CMatrix operator*(Complex s, CMatrix a) { return a *= s; }
CMatrix operator*(CMatrix a, Complex s) { return a *= s; }

CMatrix operator*(const CMatrix& a, const CMatrix& b) {
  if (a.cols() != b.rows()) throw DimensionError("matrix product: shape mismatch");
  CMatrix c(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i) {
    for (int k = 0; k < a.cols(); ++k) {
      const Complex aik = a(i, k);
      if (aik == Complex(0.0)) continue;
      for (int j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
    }
  }
  return c;
}

CMatrix adjoint(const CMatrix& a) {
  CMatrix b(a.cols(), a.rows());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) b(j, i) = std::conj(a(i, j));
  return b;
}

Complex trace(const CMatrix& a) {
  if (!a.square()) throw DimensionError("trace: matrix not square");
  Complex t = 0.0;
  for (int i = 0; i < a.rows(); ++i) t += a(i, i);
  return t;
}

double frobenius_norm(const CMatrix& a) {
  double s = 0.0;
  for (const auto& x : a.data()) s += std::norm(x);
  return std::sqrt(s);
}

double max_abs(const CMatrix& a) {
  double m = 0.0;
  for (const auto& x : a.data()) m = std::max(m, std::abs(x));
  return m;
}

bool is_finite(const CMatrix& a) {
  for (const auto& x : a.data())
    if (!std::isfinite(x.real()) || !std::isfinite(x.imag())) return false;
  return true;
}

void ensure_finite(const CMatrix& a, const std::string& what) {
  if (!is_finite(a)) throw NumericError(what + ": non-finite entry");
}

std::pair<CMatrix, CMatrix> hermitian_split(const CMatrix& a) {
  if (!a.square()) throw DimensionError("hermitian_split: matrix not square");
  const int n = a.rows();
  CMatrix h(n, n), s(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const Complex u = a(i, j), v = std::conj(a(j, i));
      h(i, j) = 0.5 * (u + v);
      // (a - a*)/(2i) entrywise; written out to keep h and s exactly Hermitian.
      const Complex d = u - v;
      s(i, j) = Complex(0.5 * d.imag(), -0.5 * d.real());
    }
  }
  return {h, s};
}

bool approx_equal(const CMatrix& a, const CMatrix& b, double tol) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (size_t i = 0; i < a.data().size(); ++i)
    if (std::abs(a.data()[i] - b.data()[i]) > tol) return false;
  return true;
}

}  // namespace hrnr
