#include "hrnr/sylvester.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

namespace hrnr {

namespace {

struct EntryRef {
  int i;
  int j;
  int deg;
  const ScalarPoly* poly;
};

std::vector<EntryRef> nonzero_entries(const std::vector<std::vector<ScalarPoly>>& polys) {
  std::vector<EntryRef> out;
  for (size_t i = 0; i < polys.size(); ++i) {
    for (size_t j = 0; j < polys[i].size(); ++j) {
      const ScalarPoly& p = polys[i][j];
      if (!p.is_zero()) {
        out.push_back({static_cast<int>(i), static_cast<int>(j), p.degree(), &p});
      }
    }
  }
  return out;
}

// Writes shifted copy r of poly into the band starting at column offset,
// coefficients highest power first.
void write_band_row(CMatrix& m, int row, int offset, const ScalarPoly& p) {
  const int d = p.degree();
  for (int c = 0; c <= d; ++c) {
    m(row, offset + c) = p.coeffs()[static_cast<size_t>(d - c)];
  }
}

}  // namespace

SylvesterRecord build_sylvester(const std::vector<std::vector<ScalarPoly>>& polys) {
  std::vector<EntryRef> live = nonzero_entries(polys);
  if (live.empty()) {
    throw DegenerateAllZero("every entry polynomial is zero");
  }

  int sigma = 0;
  for (const EntryRef& e : live) sigma = std::max(sigma, e.deg);
  size_t lead_pos = 0;
  while (live[lead_pos].deg != sigma) ++lead_pos;
  const EntryRef lead = live[lead_pos];
  live.erase(live.begin() + static_cast<long>(lead_pos));
  std::stable_sort(live.begin(), live.end(),
                   [](const EntryRef& a, const EntryRef& b) { return a.deg > b.deg; });

  const int tau = live.empty() ? sigma : live.front().deg;

  SylvesterRecord rec;
  rec.sigma = sigma;
  rec.tau = tau;
  rec.lead_i = lead.i;
  rec.lead_j = lead.j;

  // A family of nonzero constants has no resultant rows and common divisor
  // degree zero.
  if (sigma == 0) {
    rec.matrix = CMatrix(1, 1);
    rec.rank = 0;
    rec.delta = 0;
    return rec;
  }

  const int rows = tau + static_cast<int>(live.size()) * sigma;
  const int cols = sigma + tau;
  CMatrix m(rows, cols);
  for (int t = 0; t < tau; ++t) {
    write_band_row(m, t, t, *lead.poly);
  }
  int row = tau;
  for (const EntryRef& e : live) {
    for (int t = 0; t < sigma; ++t) {
      write_band_row(m, row + t, t + (tau - e.deg), *e.poly);
    }
    row += sigma;
  }
  rec.rank = svd_rank(m);
  rec.delta = tau + sigma - rec.rank;
  rec.matrix = std::move(m);
  return rec;
}

namespace {

const ScalarPoly* lowest_degree_entry(const std::vector<std::vector<ScalarPoly>>& entries) {
  const ScalarPoly* lowest = nullptr;
  for (const auto& row : entries) {
    for (const ScalarPoly& p : row) {
      if (!p.is_zero() && (lowest == nullptr || p.degree() < lowest->degree())) {
        lowest = &p;
      }
    }
  }
  return lowest;
}

}  // namespace

CommonRootsResult common_roots(const MatrixPolynomial& l, int k,
                               const Isometry& q, double tol) {
  if (q.k() != k) {
    throw DimensionError("common_roots: isometry column count must equal k");
  }
  const std::vector<std::vector<ScalarPoly>> entries = scalar_entries(l, q);
  CommonRootsResult out;
  const ScalarPoly* lowest = lowest_degree_entry(entries);
  if (lowest == nullptr) {
    out.all_of_c = true;
    return out;
  }
  if (lowest->degree() == 0) {
    return out;  // a nonzero constant entry never vanishes
  }
  const MatrixPolynomial compressed = compress(l, q);
  for (const Complex& rho : lowest->roots()) {
    // An entry far below the largest entry's scale is zero at the family
    // scale; holding it to its own scale would veto every numerically
    // converged joint zero over rounding dust.
    double family = 0.0;
    for (const auto& row : entries) {
      for (const ScalarPoly& p : row) {
        if (!p.is_zero()) family = std::max(family, p.eval_scale(rho));
      }
    }
    double max_rel = 0.0;
    bool ok = true;
    for (const auto& row : entries) {
      for (const ScalarPoly& p : row) {
        if (p.is_zero()) continue;
        const double scale = p.eval_scale(rho);
        if (scale <= tol * family) continue;
        const double val = std::abs(p.eval(rho));
        if (val > tol * scale) {
          ok = false;
          break;
        }
        max_rel = std::max(max_rel, val / scale);
      }
      if (!ok) break;
    }
    if (!ok) continue;
    const double mat_norm = frobenius_norm(evaluate(compressed, rho));
    const double mat_scale = l.eval_scale(rho);
    if (mat_norm <= tol * mat_scale) {
      out.roots.push_back({rho, max_rel, mat_norm / mat_scale});
    }
  }
  return out;
}

namespace {

// L(rho) and dL/dlambda(rho) in one Horner sweep.
void eval_with_derivative(const MatrixPolynomial& l, Complex rho, CMatrix* val,
                          CMatrix* der) {
  const int n = l.n();
  CMatrix v = l.coeff(l.degree());
  CMatrix d(n, n);
  for (int j = l.degree() - 1; j >= 0; --j) {
    d = rho * d + v;
    v = rho * v + l.coeff(j);
  }
  *val = std::move(v);
  *der = std::move(d);
}

// Row-major dense solve with partial pivoting; a is destroyed.
bool solve_real(std::vector<double>& a, int n, std::vector<double>& rhs) {
  for (int col = 0; col < n; ++col) {
    int piv = col;
    for (int r = col + 1; r < n; ++r) {
      if (std::abs(a[static_cast<size_t>(r) * n + col]) >
          std::abs(a[static_cast<size_t>(piv) * n + col])) {
        piv = r;
      }
    }
    if (std::abs(a[static_cast<size_t>(piv) * n + col]) < 1e-300) return false;
    if (piv != col) {
      for (int c = 0; c < n; ++c) {
        std::swap(a[static_cast<size_t>(piv) * n + c], a[static_cast<size_t>(col) * n + c]);
      }
      std::swap(rhs[static_cast<size_t>(piv)], rhs[static_cast<size_t>(col)]);
    }
    const double diag = a[static_cast<size_t>(col) * n + col];
    for (int r = col + 1; r < n; ++r) {
      const double f = a[static_cast<size_t>(r) * n + col] / diag;
      if (f == 0.0) continue;
      for (int c = col; c < n; ++c) {
        a[static_cast<size_t>(r) * n + c] -= f * a[static_cast<size_t>(col) * n + c];
      }
      rhs[static_cast<size_t>(r)] -= f * rhs[static_cast<size_t>(col)];
    }
  }
  for (int r = n - 1; r >= 0; --r) {
    double acc = rhs[static_cast<size_t>(r)];
    for (int c = r + 1; c < n; ++c) {
      acc -= a[static_cast<size_t>(r) * n + c] * rhs[static_cast<size_t>(c)];
    }
    rhs[static_cast<size_t>(r)] = acc / a[static_cast<size_t>(r) * n + r];
  }
  return true;
}

struct RefineOutcome {
  bool ok = false;
  CMatrix q{1, 1};
  Complex rho;
};

double compression_residual(const MatrixPolynomial& l, const CMatrix& q, Complex rho) {
  const CMatrix m = evaluate(l, rho);
  return frobenius_norm(adjoint(q) * (m * q));
}

// Damped least-squares descent on the residual Q*L(rho)Q over (Q, rho), with
// Q pulled back to the isometry manifold after every step. The system is
// underdetermined, so steps are minimum-norm through the J J^T form.
RefineOutcome refine_pair(const MatrixPolynomial& l, const CMatrix& q0,
                          Complex rho0, double tol) {
  const int n = q0.rows();
  const int k = q0.cols();
  const int nf = 2 * k * k;
  const int nv = 2 * n * k + 2;
  RefineOutcome out;
  out.q = q0;
  out.rho = rho0;
  double res = compression_residual(l, out.q, out.rho);
  double lm = 1e-8;
  for (int iter = 0; iter < 60; ++iter) {
    if (res <= 0.1 * tol * l.eval_scale(out.rho)) {
      out.ok = true;
      return out;
    }
    CMatrix m(n, n), md(n, n);
    eval_with_derivative(l, out.rho, &m, &md);
    const CMatrix mq = m * out.q;
    const CMatrix qm = adjoint(out.q) * m;
    const CMatrix b = adjoint(out.q) * mq;
    const CMatrix bd = adjoint(out.q) * (md * out.q);

    std::vector<double> f(static_cast<size_t>(nf));
    for (int i = 0; i < k; ++i) {
      for (int j = 0; j < k; ++j) {
        f[static_cast<size_t>(2 * (i * k + j))] = b(i, j).real();
        f[static_cast<size_t>(2 * (i * k + j) + 1)] = b(i, j).imag();
      }
    }
    std::vector<double> jac(static_cast<size_t>(nf) * nv, 0.0);
    auto put = [&](int row, int col, double v) {
      jac[static_cast<size_t>(row) * nv + col] = v;
    };
    for (int r = 0; r < n; ++r) {
      for (int c = 0; c < k; ++c) {
        const int col_re = 2 * (r * k + c);
        const int col_im = col_re + 1;
        for (int i = 0; i < k; ++i) {
          for (int j = 0; j < k; ++j) {
            const Complex t1 = (i == c) ? mq(r, j) : Complex(0.0, 0.0);
            const Complex t2 = (j == c) ? qm(i, r) : Complex(0.0, 0.0);
            const Complex d_re = t1 + t2;
            const Complex d_im = Complex(0.0, 1.0) * (t2 - t1);
            const int row_re = 2 * (i * k + j);
            put(row_re, col_re, d_re.real());
            put(row_re + 1, col_re, d_re.imag());
            put(row_re, col_im, d_im.real());
            put(row_re + 1, col_im, d_im.imag());
          }
        }
      }
    }
    for (int i = 0; i < k; ++i) {
      for (int j = 0; j < k; ++j) {
        const int row_re = 2 * (i * k + j);
        put(row_re, nv - 2, bd(i, j).real());
        put(row_re + 1, nv - 2, bd(i, j).imag());
        const Complex im_dir = Complex(0.0, 1.0) * bd(i, j);
        put(row_re, nv - 1, im_dir.real());
        put(row_re + 1, nv - 1, im_dir.imag());
      }
    }

    bool advanced = false;
    for (int attempt = 0; attempt < 10; ++attempt) {
      std::vector<double> gram(static_cast<size_t>(nf) * nf, 0.0);
      for (int r1 = 0; r1 < nf; ++r1) {
        for (int r2 = 0; r2 < nf; ++r2) {
          double acc = 0.0;
          for (int c = 0; c < nv; ++c) {
            acc += jac[static_cast<size_t>(r1) * nv + c] * jac[static_cast<size_t>(r2) * nv + c];
          }
          gram[static_cast<size_t>(r1) * nf + r2] = acc;
        }
      }
      for (int r = 0; r < nf; ++r) {
        gram[static_cast<size_t>(r) * nf + r] += lm * (1.0 + gram[static_cast<size_t>(r) * nf + r]);
      }
      std::vector<double> y(static_cast<size_t>(nf));
      for (int r = 0; r < nf; ++r) y[static_cast<size_t>(r)] = -f[static_cast<size_t>(r)];
      if (!solve_real(gram, nf, y)) {
        lm *= 10.0;
        continue;
      }
      std::vector<double> x(static_cast<size_t>(nv), 0.0);
      for (int c = 0; c < nv; ++c) {
        double acc = 0.0;
        for (int r = 0; r < nf; ++r) {
          acc += jac[static_cast<size_t>(r) * nv + c] * y[static_cast<size_t>(r)];
        }
        x[static_cast<size_t>(c)] = acc;
      }
      CMatrix qt = out.q;
      for (int r = 0; r < n; ++r) {
        for (int c = 0; c < k; ++c) {
          qt(r, c) += Complex(x[static_cast<size_t>(2 * (r * k + c))],
                              x[static_cast<size_t>(2 * (r * k + c) + 1)]);
        }
      }
      const Complex rhot =
          out.rho + Complex(x[static_cast<size_t>(nv - 2)], x[static_cast<size_t>(nv - 1)]);
      bool usable = true;
      try {
        qt = orthonormalize_columns(qt);
      } catch (const NumericError&) {
        usable = false;
      }
      const double rest = usable ? compression_residual(l, qt, rhot)
                                 : std::numeric_limits<double>::infinity();
      if (rest < res) {
        out.q = std::move(qt);
        out.rho = rhot;
        res = rest;
        lm = std::max(lm / 3.0, 1e-12);
        advanced = true;
        break;
      }
      lm *= 10.0;
      if (lm > 1e12) return out;
    }
    if (!advanced) return out;
  }
  return out;
}

}  // namespace

ProbeResult nonemptiness_probe(const MatrixPolynomial& l, int k, int n_samples,
                               std::uint64_t seed, double tol) {
  if (k < 1 || k > l.n()) {
    throw DimensionError("nonemptiness_probe requires 1 <= k <= n");
  }
  if (n_samples < 1) {
    throw std::invalid_argument("nonemptiness_probe requires n_samples >= 1");
  }
  ProbeResult out;
  out.samples = n_samples;
  for (int s = 0; s < n_samples; ++s) {
    const std::uint64_t sub =
        seed + (static_cast<std::uint64_t>(s) + 1) * 0x9E3779B97F4A7C15ULL;
    const Isometry q0 = random_isometry(l.n(), k, sub);
    const CommonRootsResult direct = common_roots(l, k, q0, tol);
    if (direct.all_of_c) {
      out.all_of_c_seen = true;
      continue;
    }
    bool found = false;
    for (const CertifiedRoot& c : direct.roots) {
      out.hits.push_back({c.root, q0.matrix(), c.max_entry_residual, c.matrix_residual, s});
      found = true;
    }
    if (found) continue;
    const std::vector<std::vector<ScalarPoly>> entries = scalar_entries(l, q0);
    const ScalarPoly* lowest = lowest_degree_entry(entries);
    if (lowest == nullptr || lowest->degree() < 1) continue;
    std::vector<Complex> starts = lowest->roots();
    if (starts.size() > 3) starts.resize(3);
    for (const Complex& rho0 : starts) {
      const RefineOutcome ref = refine_pair(l, q0.matrix(), rho0, tol);
      if (!ref.ok) continue;
      const Isometry qr(ref.q);
      const CommonRootsResult cert = common_roots(l, k, qr, tol);
      if (cert.all_of_c) {
        out.all_of_c_seen = true;
        break;
      }
      for (const CertifiedRoot& c : cert.roots) {
        out.hits.push_back({c.root, qr.matrix(), c.max_entry_residual, c.matrix_residual, s});
      }
      if (!cert.roots.empty()) break;
    }
  }
  return out;
}

}  // namespace hrnr
