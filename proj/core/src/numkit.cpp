#include "hrnr/numkit.hpp"

#include <algorithm>
#include <cmath>

namespace hrnr {

namespace {

constexpr double kTiny = 1e-300;

// Plane rotation diagonalizing the Hermitian 2x2 [[a, g], [conj(g), b]].
// Returns (c, s, t) with c real, s complex, unitary V = [[c, s], [-conj(s), c]]
// and V* M V diagonal; t is the real tangent, so the diagonal moves to
// a - t*|g| and b + t*|g|.
struct PlaneRotation {
  double c;
  Complex s;
  double t;
};

PlaneRotation hermitian_plane_rotation(double a, double b, Complex g) {
  const double ag = std::abs(g);
  const Complex u = g / ag;  // caller guarantees ag > 0
  const double tau = (b - a) / (2.0 * ag);
  const double sgn = tau >= 0.0 ? 1.0 : -1.0;
  const double t = sgn / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
  const double c = 1.0 / std::sqrt(1.0 + t * t);
  return {c, t * c * u, t};
}

}  // namespace

Isometry::Isometry(CMatrix q, double tol) : q_(std::move(q)) {
  ensure_finite(q_, "Isometry");
  if (q_.rows() < q_.cols() || q_.cols() < 1)
    throw DimensionError("Isometry: need n >= k >= 1");
  CMatrix gram = adjoint(q_) * q_;
  for (int i = 0; i < gram.rows(); ++i) gram(i, i) -= 1.0;
  defect_ = frobenius_norm(gram);
  if (defect_ > tol)
    throw IsometryError("Isometry: orthonormality defect " + std::to_string(defect_) +
                        " exceeds tolerance");
}

void hermitian_eigenvalues_inplace(CMatrix& a, std::vector<double>& values) {
  const int n = a.rows();
  values.resize(n);
  for (int i = 0; i < n; ++i) values[i] = a(i, i).real();

  if (n > 1) {
    double scale = 0.0;
    for (const auto& x : a.data()) scale += std::norm(x);
    const double stop2 = 1e-28 * (scale + kTiny);
    for (int sweep = 0; sweep < 40; ++sweep) {
      double off2 = 0.0;
      for (int p = 0; p < n; ++p)
        for (int q = p + 1; q < n; ++q) off2 += std::norm(a(p, q));
      if (off2 <= stop2) break;

      for (int p = 0; p < n - 1; ++p) {
        for (int q = p + 1; q < n; ++q) {
          const Complex g = a(p, q);
          const double ag = std::abs(g);
          if (ag <= 1e-18 * (std::abs(values[p]) + std::abs(values[q]) + kTiny)) continue;
          const auto [c, s, t] = hermitian_plane_rotation(values[p], values[q], g);
          const Complex sc = std::conj(s);

          values[p] -= t * ag;
          values[q] += t * ag;
          a(p, q) = 0.0;
          a(q, p) = 0.0;
          for (int r = 0; r < n; ++r) {
            if (r == p || r == q) continue;
            const Complex arp = a(r, p), arq = a(r, q);
            a(r, p) = c * arp - sc * arq;
            a(r, q) = s * arp + c * arq;
            a(p, r) = std::conj(a(r, p));
            a(q, r) = std::conj(a(r, q));
          }
        }
      }
    }
  }

  std::sort(values.begin(), values.end(), std::greater<double>());
}

std::vector<double> hermitian_eigenvalues(const CMatrix& h, double herm_tol) {
  ensure_finite(h, "hermitian_eigenvalues");
  if (!h.square()) throw DimensionError("hermitian_eigenvalues: matrix not square");
  if (h.rows() == 0) return {};

  const double scale = frobenius_norm(h);
  CMatrix defect = h - adjoint(h);
  if (frobenius_norm(defect) > 2.0 * herm_tol * (scale + kTiny))
    throw NumericError("hermitian_eigenvalues: matrix not Hermitian within tolerance");

  CMatrix a = hermitian_split(h).first;
  std::vector<double> values;
  hermitian_eigenvalues_inplace(a, values);
  return values;
}

std::vector<double> singular_values(const CMatrix& m) {
  ensure_finite(m, "singular_values");
  CMatrix w = m.rows() >= m.cols() ? m : adjoint(m);
  const int r = w.rows(), c = w.cols();
  if (c == 0) return {};

  for (int sweep = 0; sweep < 60; ++sweep) {
    bool converged = true;
    for (int p = 0; p < c - 1; ++p) {
      for (int q = p + 1; q < c; ++q) {
        double npp = 0.0, nqq = 0.0;
        Complex g = 0.0;
        for (int i = 0; i < r; ++i) {
          npp += std::norm(w(i, p));
          nqq += std::norm(w(i, q));
          g += std::conj(w(i, p)) * w(i, q);
        }
        if (npp * nqq == 0.0) continue;
        const double ag = std::abs(g);
        if (ag <= 1e-15 * std::sqrt(npp * nqq)) continue;
        converged = false;
        const auto [cc, s, t] = hermitian_plane_rotation(npp, nqq, g);
        const Complex sc = std::conj(s);
        for (int i = 0; i < r; ++i) {
          const Complex wp = w(i, p), wq = w(i, q);
          w(i, p) = cc * wp - sc * wq;
          w(i, q) = s * wp + cc * wq;
        }
      }
    }
    if (converged) break;
  }

  std::vector<double> sv(c);
  for (int j = 0; j < c; ++j) {
    double s = 0.0;
    for (int i = 0; i < r; ++i) s += std::norm(w(i, j));
    sv[j] = std::sqrt(s);
  }
  std::sort(sv.begin(), sv.end(), std::greater<double>());
  return sv;
}

int svd_rank(const CMatrix& m, double rel_tol) {
  const auto sv = singular_values(m);
  if (sv.empty() || sv.front() == 0.0) return 0;
  const double cut = rel_tol * sv.front();
  int rank = 0;
  for (double s : sv)
    if (s > cut) ++rank;
  return rank;
}

namespace {

// Householder similarity reduction to upper Hessenberg form, in place.
void hessenberg_reduce(CMatrix& a) {
  const int n = a.rows();
  for (int k = 0; k < n - 2; ++k) {
    double colnorm = 0.0;
    for (int i = k + 1; i < n; ++i) colnorm += std::norm(a(i, k));
    colnorm = std::sqrt(colnorm);
    if (colnorm <= kTiny) continue;

    Complex alpha = a(k + 1, k);
    const double aa = std::abs(alpha);
    const Complex phase = aa > 0.0 ? alpha / aa : Complex(1.0);
    const Complex beta = -phase * colnorm;

    std::vector<Complex> v(n, 0.0);
    for (int i = k + 1; i < n; ++i) v[i] = a(i, k);
    v[k + 1] -= beta;
    double vnorm2 = 0.0;
    for (int i = k + 1; i < n; ++i) vnorm2 += std::norm(v[i]);
    if (vnorm2 <= kTiny) continue;

    // a <- (I - 2vv*/v*v) a (I - 2vv*/v*v)
    for (int j = 0; j < n; ++j) {
      Complex dot = 0.0;
      for (int i = k + 1; i < n; ++i) dot += std::conj(v[i]) * a(i, j);
      dot *= 2.0 / vnorm2;
      for (int i = k + 1; i < n; ++i) a(i, j) -= dot * v[i];
    }
    for (int i = 0; i < n; ++i) {
      Complex dot = 0.0;
      for (int j = k + 1; j < n; ++j) dot += a(i, j) * v[j];
      dot *= 2.0 / vnorm2;
      for (int j = k + 1; j < n; ++j) a(i, j) -= dot * std::conj(v[j]);
    }
    a(k + 1, k) = beta;
    for (int i = k + 2; i < n; ++i) a(i, k) = 0.0;
  }
}

struct Givens {
  double c;
  Complex s;
};

// G * (f, g)^T = (r, 0)^T with G = [[c, s], [-conj(s), c]], c real.
Givens make_givens(Complex f, Complex g) {
  const double af = std::abs(f), agg = std::abs(g);
  if (agg == 0.0) return {1.0, 0.0};
  if (af == 0.0) return {0.0, 1.0};
  const double d = std::hypot(af, agg);
  return {af / d, (f / af) * std::conj(g) / d};
}

}  // namespace

std::vector<Complex> complex_eigenvalues(CMatrix a) {
  ensure_finite(a, "complex_eigenvalues");
  if (!a.square()) throw DimensionError("complex_eigenvalues: matrix not square");
  const int n = a.rows();
  std::vector<Complex> eig(n);
  if (n == 0) return eig;

  hessenberg_reduce(a);
  const double scale = frobenius_norm(a) + kTiny;

  int m = n - 1;
  int stuck = 0;
  int total = 0;
  while (m >= 0) {
    if (++total > 80 * n) throw NumericError("complex_eigenvalues: iteration failed");
    if (m == 0) {
      eig[0] = a(0, 0);
      break;
    }
    if (std::abs(a(m, m - 1)) <=
        1e-16 * (std::abs(a(m - 1, m - 1)) + std::abs(a(m, m)) + 1e-30 * scale)) {
      eig[m] = a(m, m);
      --m;
      stuck = 0;
      continue;
    }

    int l = m;
    while (l > 0 && std::abs(a(l, l - 1)) >
                        1e-16 * (std::abs(a(l - 1, l - 1)) + std::abs(a(l, l)) + 1e-30 * scale))
      --l;

    Complex shift;
    if (++stuck % 16 == 0) {
      shift = a(m, m) + Complex(1.0, 0.5) * std::abs(a(m, m - 1));
    } else {
      const Complex p = a(m - 1, m - 1), b = a(m - 1, m);
      const Complex cq = a(m, m - 1), d = a(m, m);
      const Complex half = 0.5 * (p + d);
      const Complex disc = std::sqrt(half * half - (p * d - b * cq));
      const Complex r1 = half + disc, r2 = half - disc;
      shift = std::abs(r1 - d) <= std::abs(r2 - d) ? r1 : r2;
    }

    for (int i = l; i <= m; ++i) a(i, i) -= shift;
    std::vector<Givens> rots(m - l);
    for (int i = l; i < m; ++i) {
      const Givens gv = make_givens(a(i, i), a(i + 1, i));
      rots[i - l] = gv;
      for (int j = i; j <= m; ++j) {
        const Complex x = a(i, j), y = a(i + 1, j);
        a(i, j) = gv.c * x + gv.s * y;
        a(i + 1, j) = -std::conj(gv.s) * x + gv.c * y;
      }
    }
    for (int i = l; i < m; ++i) {
      const Givens gv = rots[i - l];
      // Columns i, i+1 of the triangular factor are zero below row i+1, so
      // the rotation reaches every populated row of the block above that.
      const int bot = std::min(i + 1, m);
      for (int r = l; r <= bot; ++r) {
        const Complex x = a(r, i), y = a(r, i + 1);
        a(r, i) = gv.c * x + std::conj(gv.s) * y;
        a(r, i + 1) = -gv.s * x + gv.c * y;
      }
    }
    for (int i = l; i <= m; ++i) a(i, i) += shift;
  }
  return eig;
}

Complex lu_determinant(CMatrix a) {
  ensure_finite(a, "lu_determinant");
  if (!a.square()) throw DimensionError("lu_determinant: matrix not square");
  const int n = a.rows();
  Complex det = 1.0;
  for (int k = 0; k < n; ++k) {
    int piv = k;
    double best = std::abs(a(k, k));
    for (int i = k + 1; i < n; ++i) {
      const double v = std::abs(a(i, k));
      if (v > best) {
        best = v;
        piv = i;
      }
    }
    if (best == 0.0) return 0.0;
    if (piv != k) {
      for (int j = 0; j < n; ++j) std::swap(a(k, j), a(piv, j));
      det = -det;
    }
    det *= a(k, k);
    for (int i = k + 1; i < n; ++i) {
      const Complex f = a(i, k) / a(k, k);
      for (int j = k + 1; j < n; ++j) a(i, j) -= f * a(k, j);
    }
  }
  return det;
}

uint64_t CounterRng::raw() {
  // SplitMix64 finalizer over seed + golden-ratio stride; stateless per index.
  uint64_t z = seed_ + (++counter_) * 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double CounterRng::uniform() {
  return static_cast<double>(raw() >> 11) * 0x1.0p-53;
}

double CounterRng::normal() {
  const double u1 = (static_cast<double>(raw() >> 11) + 1.0) * 0x1.0p-53;
  const double u2 = static_cast<double>(raw() >> 11) * 0x1.0p-53;
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925287 * u2);
}

Complex CounterRng::normal_complex() {
  const double re = normal();
  const double im = normal();
  return {re, im};
}

Isometry random_isometry(int n, int k, uint64_t seed) {
  if (n < k || k < 1) throw DimensionError("random_isometry: need n >= k >= 1");
  CounterRng rng(seed);
  CMatrix q(n, k);
  for (int j = 0; j < k; ++j) {
    for (int attempt = 0;; ++attempt) {
      if (attempt > 64) throw NumericError("random_isometry: degenerate draw");
      std::vector<Complex> v(n);
      double orig = 0.0;
      for (int i = 0; i < n; ++i) {
        v[i] = rng.normal_complex();
        orig += std::norm(v[i]);
      }
      orig = std::sqrt(orig);
      // Two projection passes keep the Gram defect near roundoff.
      for (int pass = 0; pass < 2; ++pass) {
        for (int p = 0; p < j; ++p) {
          Complex dot = 0.0;
          for (int i = 0; i < n; ++i) dot += std::conj(q(i, p)) * v[i];
          for (int i = 0; i < n; ++i) v[i] -= dot * q(i, p);
        }
      }
      double norm = 0.0;
      for (int i = 0; i < n; ++i) norm += std::norm(v[i]);
      norm = std::sqrt(norm);
      if (norm > 1e-8 * (orig + 1.0)) {
        for (int i = 0; i < n; ++i) q(i, j) = v[i] / norm;
        break;
      }
    }
  }
  return Isometry(std::move(q));
}

CMatrix orthonormalize_columns(const CMatrix& m) {
  const int n = m.rows();
  const int k = m.cols();
  if (n < k || k < 1) {
    throw DimensionError("orthonormalize_columns: need rows >= cols >= 1");
  }
  CMatrix q = m;
  for (int j = 0; j < k; ++j) {
    double orig = 0.0;
    for (int i = 0; i < n; ++i) orig += std::norm(q(i, j));
    orig = std::sqrt(orig);
    for (int pass = 0; pass < 2; ++pass) {
      for (int p = 0; p < j; ++p) {
        Complex dot = 0.0;
        for (int i = 0; i < n; ++i) dot += std::conj(q(i, p)) * q(i, j);
        for (int i = 0; i < n; ++i) q(i, j) -= dot * q(i, p);
      }
    }
    double norm = 0.0;
    for (int i = 0; i < n; ++i) norm += std::norm(q(i, j));
    norm = std::sqrt(norm);
    if (norm <= 1e-12 * (orig + 1.0)) {
      throw NumericError("orthonormalize_columns: dependent column");
    }
    for (int i = 0; i < n; ++i) q(i, j) /= norm;
  }
  return q;
}

}  // namespace hrnr
