#include "hrnr/matpoly.hpp"

#include <cmath>
#include <utility>

namespace hrnr {

ScalarPoly::ScalarPoly(std::vector<Complex> coeffs) : c_(std::move(coeffs)) {
  for (const Complex& c : c_) {
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
      throw NumericError("scalar polynomial coefficient is not finite");
    }
  }
  while (!c_.empty() && c_.back() == Complex(0.0, 0.0)) {
    c_.pop_back();
  }
}

Complex ScalarPoly::eval(Complex mu) const {
  Complex acc(0.0, 0.0);
  for (size_t j = c_.size(); j-- > 0;) {
    acc = acc * mu + c_[j];
  }
  return acc;
}

double ScalarPoly::eval_scale(Complex mu) const {
  const double base = std::max(1.0, std::abs(mu));
  double acc = 0.0;
  double pw = 1.0;
  for (const Complex& c : c_) {
    acc += std::abs(c) * pw;
    pw *= base;
  }
  return acc;
}

std::vector<Complex> ScalarPoly::roots() const {
  const int d = degree();
  if (d < 1) {
    throw DegreeError("roots require degree >= 1");
  }
  const Complex lead = c_.back();
  CMatrix comp(d, d);
  for (int i = 1; i < d; ++i) {
    comp(i, i - 1) = Complex(1.0, 0.0);
  }
  for (int i = 0; i < d; ++i) {
    comp(i, d - 1) = -c_[static_cast<size_t>(i)] / lead;
  }
  std::vector<Complex> rts = complex_eigenvalues(comp);
  // Two Newton steps tighten companion eigenvalues; bail out of a step when
  // the derivative underflows or the correction stops being local.
  for (Complex& r : rts) {
    for (int step = 0; step < 2; ++step) {
      Complex p(0.0, 0.0);
      Complex dp(0.0, 0.0);
      for (size_t j = c_.size(); j-- > 0;) {
        dp = dp * r + p;
        p = p * r + c_[j];
      }
      if (std::abs(dp) < 1e-300) break;
      const Complex delta = p / dp;
      if (!std::isfinite(delta.real()) || !std::isfinite(delta.imag())) break;
      if (std::abs(delta) > 0.5 * (1.0 + std::abs(r))) break;
      r -= delta;
    }
  }
  return rts;
}

MatrixPolynomial::MatrixPolynomial(std::vector<CMatrix> coeffs, bool lead_trimmed)
    : a_(std::move(coeffs)), lead_trimmed_(lead_trimmed) {
  if (a_.empty()) {
    throw DegreeError("matrix polynomial needs at least one coefficient");
  }
  const int n = a_.front().rows();
  for (const CMatrix& c : a_) {
    if (c.rows() != c.cols() || c.rows() != n) {
      throw DimensionError("matrix polynomial coefficients must be square of one size");
    }
    ensure_finite(c, "matrix polynomial coefficient");
  }
  if (a_.size() > 1 && frobenius_norm(a_.back()) == 0.0) {
    throw DegreeError("matrix polynomial lead coefficient is zero");
  }
}

int MatrixPolynomial::effective_degree() const {
  for (size_t j = a_.size(); j-- > 0;) {
    if (frobenius_norm(a_[j]) > 0.0) return static_cast<int>(j);
  }
  return -1;
}

double MatrixPolynomial::eval_scale(Complex mu) const {
  const double base = std::max(1.0, std::abs(mu));
  double acc = 0.0;
  double pw = 1.0;
  for (const CMatrix& c : a_) {
    acc += frobenius_norm(c) * pw;
    pw *= base;
  }
  return acc;
}

MatrixPolynomial Pencil::to_polynomial() const {
  if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows()) {
    throw DimensionError("pencil blocks must be square of equal size");
  }
  return MatrixPolynomial({Complex(-1.0, 0.0) * b, a});
}

CMatrix evaluate(const MatrixPolynomial& p, Complex mu) {
  if (!std::isfinite(mu.real()) || !std::isfinite(mu.imag())) {
    throw NumericError("evaluation point is not finite");
  }
  const auto& a = p.coeffs();
  CMatrix acc = a.back();
  for (size_t j = a.size() - 1; j-- > 0;) {
    acc = mu * acc + a[j];
  }
  return acc;
}

MatrixPolynomial shift(const MatrixPolynomial& p, Complex alpha) {
  const int m = p.degree();
  const int n = p.n();
  std::vector<CMatrix> out(static_cast<size_t>(m) + 1, CMatrix(n, n));
  for (int i = 0; i <= m; ++i) {
    // A_i (lambda + alpha)^i contributes C(i,j) alpha^(i-j) A_i to power j.
    Complex pw(1.0, 0.0);
    double binom = 1.0;
    for (int j = i; j >= 0; --j) {
      out[static_cast<size_t>(j)] += (binom * pw) * p.coeff(i);
      pw *= alpha;
      binom = binom * j / static_cast<double>(i - j + 1);
    }
  }
  return MatrixPolynomial(std::move(out));
}

namespace {

MatrixPolynomial trimmed(std::vector<CMatrix> coeffs) {
  bool dropped = false;
  while (coeffs.size() > 1 && frobenius_norm(coeffs.back()) == 0.0) {
    coeffs.pop_back();
    dropped = true;
  }
  return MatrixPolynomial(std::move(coeffs), dropped);
}

}  // namespace

MatrixPolynomial reverse(const MatrixPolynomial& p) {
  std::vector<CMatrix> out(p.coeffs().rbegin(), p.coeffs().rend());
  return trimmed(std::move(out));
}

MatrixPolynomial compress(const MatrixPolynomial& p, const Isometry& q) {
  if (q.n() != p.n()) {
    throw DimensionError("compression isometry rows must match the polynomial size");
  }
  const CMatrix& qm = q.matrix();
  const CMatrix qa = adjoint(qm);
  std::vector<CMatrix> out;
  out.reserve(p.coeffs().size());
  for (const CMatrix& c : p.coeffs()) {
    out.push_back(qa * (c * qm));
  }
  return trimmed(std::move(out));
}

std::vector<std::vector<ScalarPoly>> scalar_entries(const MatrixPolynomial& p,
                                                    const Isometry& q) {
  if (q.n() != p.n()) {
    throw DimensionError("isometry rows must match the polynomial size");
  }
  const CMatrix& qm = q.matrix();
  const int n = p.n();
  const int k = q.k();
  const int m = p.degree();
  std::vector<std::vector<std::vector<Complex>>> c(
      static_cast<size_t>(k),
      std::vector<std::vector<Complex>>(
          static_cast<size_t>(k),
          std::vector<Complex>(static_cast<size_t>(m) + 1)));
  for (int l = 0; l <= m; ++l) {
    const CMatrix aq = p.coeff(l) * qm;
    for (int i = 0; i < k; ++i) {
      for (int j = 0; j < k; ++j) {
        Complex acc(0.0, 0.0);
        for (int r = 0; r < n; ++r) {
          acc += std::conj(qm(r, i)) * aq(r, j);
        }
        c[static_cast<size_t>(i)][static_cast<size_t>(j)][static_cast<size_t>(l)] = acc;
      }
    }
  }
  std::vector<std::vector<ScalarPoly>> out(static_cast<size_t>(k));
  for (int i = 0; i < k; ++i) {
    out[static_cast<size_t>(i)].reserve(static_cast<size_t>(k));
    for (int j = 0; j < k; ++j) {
      out[static_cast<size_t>(i)].emplace_back(
          std::move(c[static_cast<size_t>(i)][static_cast<size_t>(j)]));
    }
  }
  return out;
}

Pencil companion(const MatrixPolynomial& p) {
  const int m = p.degree();
  if (m < 1) {
    throw DegreeError("companion pencil requires degree >= 1");
  }
  const int n = p.n();
  const int nn = n * m;
  CMatrix a(nn, nn);
  CMatrix b(nn, nn);
  for (int blk = 0; blk < m - 1; ++blk) {
    for (int i = 0; i < n; ++i) {
      a(blk * n + i, blk * n + i) = Complex(1.0, 0.0);
      b(blk * n + i, (blk + 1) * n + i) = Complex(1.0, 0.0);
    }
  }
  const CMatrix& lead = p.coeff(m);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      a((m - 1) * n + i, (m - 1) * n + j) = lead(i, j);
    }
  }
  for (int blk = 0; blk < m; ++blk) {
    const CMatrix& c = p.coeff(blk);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        b((m - 1) * n + i, blk * n + j) = -c(i, j);
      }
    }
  }
  return {std::move(a), std::move(b)};
}

}  // namespace hrnr
