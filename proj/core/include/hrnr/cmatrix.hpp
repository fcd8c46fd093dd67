#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace hrnr {

using Complex = std::complex<double>;

struct DimensionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct NumericError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Dense complex matrix, row-major.
class CMatrix {
public:
  CMatrix() = default;
  CMatrix(int rows, int cols)
      : rows_(rows), cols_(cols), data_(static_cast<size_t>(rows) * cols) {
    if (rows < 0 || cols < 0) throw DimensionError("CMatrix: negative dimension");
  }

  static CMatrix identity(int n);
  static CMatrix zero(int rows, int cols) { return CMatrix(rows, cols); }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  Complex& operator()(int i, int j) { return data_[static_cast<size_t>(i) * cols_ + j]; }
  const Complex& operator()(int i, int j) const {
    return data_[static_cast<size_t>(i) * cols_ + j];
  }

  Complex& at(int i, int j);
  const Complex& at(int i, int j) const;

  std::vector<Complex>& data() { return data_; }
  const std::vector<Complex>& data() const { return data_; }

  CMatrix& operator+=(const CMatrix& other);
  CMatrix& operator-=(const CMatrix& other);
  CMatrix& operator*=(Complex s);

private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<Complex> data_;
};

CMatrix operator+(CMatrix a, const CMatrix& b);
CMatrix operator-(CMatrix a, const CMatrix& b);
CMatrix operator*(Complex s, CMatrix a);
CMatrix operator*(CMatrix a, Complex s);
CMatrix operator*(const CMatrix& a, const CMatrix& b);

CMatrix adjoint(const CMatrix& a);
Complex trace(const CMatrix& a);
double frobenius_norm(const CMatrix& a);
double max_abs(const CMatrix& a);
bool is_finite(const CMatrix& a);

// Throws NumericError when any entry is NaN or infinite.
void ensure_finite(const CMatrix& a, const std::string& what);

// Hermitian and skew parts scaled so that a = part1 + i*part2 with both
// results exactly Hermitian entrywise: part1 = (a+a*)/2, part2 = (a-a*)/(2i).
std::pair<CMatrix, CMatrix> hermitian_split(const CMatrix& a);

bool approx_equal(const CMatrix& a, const CMatrix& b, double tol);

}  // namespace hrnr
