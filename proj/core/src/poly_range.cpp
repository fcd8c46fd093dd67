#include "hrnr/poly_range.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <string>
#include <unordered_map>
#include <utility>

#include "hrnr/numkit.hpp"

namespace hrnr {

Complex RegionGrid::cell_center(int ix, int iy) const {
  const double dx = (window.x_max - window.x_min) / nx;
  const double dy = (window.y_max - window.y_min) / ny;
  return Complex(window.x_min + (ix + 0.5) * dx, window.y_min + (iy + 0.5) * dy);
}

NotAJointTuple::NotAJointTuple(double defect)
    : std::runtime_error("compressed coefficients are not all scalar, defect " +
                         std::to_string(defect)),
      defect_(defect) {}

namespace {

constexpr double kPi = 3.14159265358979323846;

void check_raster(const GridWindow& w, int nx, int ny) {
  if (!std::isfinite(w.x_min) || !std::isfinite(w.x_max) ||
      !std::isfinite(w.y_min) || !std::isfinite(w.y_max)) {
    throw GridError("window bounds must be finite");
  }
  if (!(w.x_min < w.x_max) || !(w.y_min < w.y_max)) {
    throw GridError("window must satisfy x_min < x_max and y_min < y_max");
  }
  if (nx < 2 || ny < 2) {
    throw GridError("raster needs nx >= 2 and ny >= 2");
  }
}

}  // namespace

MemberResult member(const MatrixPolynomial& l, int k, Complex mu,
                    const MemberOptions& opts) {
  MemberOptions o = opts;
  if (o.margin <= 0.0) {
    o.margin = 1e-8 * (1.0 + l.eval_scale(mu));
  }
  return member_zero(evaluate(l, mu), k, o);
}

RegionGrid grid_scan(const MatrixPolynomial& l, int k, const GridWindow& window,
                     int nx, int ny, const MemberOptions& opts) {
  check_raster(window, nx, ny);
  RegionGrid g;
  g.window = window;
  g.nx = nx;
  g.ny = ny;
  g.k = k;
  g.member_opts = opts;
  g.cells.resize(static_cast<size_t>(nx) * ny);
  for (int iy = 0; iy < ny; ++iy) {
    for (int ix = 0; ix < nx; ++ix) {
      g.cells[static_cast<size_t>(iy) * nx + ix] =
          member(l, k, g.cell_center(ix, iy), opts).status;
    }
  }
  return g;
}

std::vector<Ternary> line_scan(const MatrixPolynomial& l, int k, Complex z_start,
                               Complex z_end, int samples,
                               const MemberOptions& opts) {
  if (samples < 2) {
    throw GridError("line_scan needs samples >= 2");
  }
  std::vector<Ternary> out;
  out.reserve(static_cast<size_t>(samples));
  const Complex step = z_end - z_start;
  for (int j = 0; j < samples; ++j) {
    const double t = static_cast<double>(j) / (samples - 1);
    out.push_back(member(l, k, z_start + t * step, opts).status);
  }
  return out;
}

ComponentLabels components(const RegionGrid& grid) {
  const int nx = grid.nx;
  const int ny = grid.ny;
  ComponentLabels out;
  out.labels.assign(grid.cells.size(), 0);
  std::vector<int> stack;
  for (int start = 0; start < nx * ny; ++start) {
    if (grid.cells[static_cast<size_t>(start)] == Ternary::Out ||
        out.labels[static_cast<size_t>(start)] != 0) {
      continue;
    }
    const int label = ++out.count;
    out.labels[static_cast<size_t>(start)] = label;
    stack.assign(1, start);
    while (!stack.empty()) {
      const int idx = stack.back();
      stack.pop_back();
      const int cx = idx % nx;
      const int cy = idx / nx;
      for (int dy = -1; dy <= 1; ++dy) {
        for (int dx = -1; dx <= 1; ++dx) {
          const int mx = cx + dx;
          const int my = cy + dy;
          if (mx < 0 || mx >= nx || my < 0 || my >= ny) continue;
          const int nidx = my * nx + mx;
          if (grid.cells[static_cast<size_t>(nidx)] != Ternary::Out &&
              out.labels[static_cast<size_t>(nidx)] == 0) {
            out.labels[static_cast<size_t>(nidx)] = label;
            stack.push_back(nidx);
          }
        }
      }
    }
  }
  return out;
}

BoundednessResult boundedness_check(const MatrixPolynomial& l, int k,
                                    const MemberOptions& opts) {
  BoundednessResult out;
  const MemberResult lead = member_zero(l.coeff(l.degree()), k, opts);
  if (lead.status != Ternary::Out) {
    return out;
  }
  double lower_norms = 0.0;
  for (int j = 0; j < l.degree(); ++j) {
    lower_norms += frobenius_norm(l.coeff(j));
  }
  out.bounded = true;
  out.theta = lead.witness_theta;
  out.separation = -lead.certificate;
  out.radius = std::max(1.0, lower_norms / out.separation);
  return out;
}

RegionGrid montecarlo_region(const MatrixPolynomial& l, int k, int n_samples,
                             const GridWindow& window, int nx, int ny,
                             std::uint64_t seed) {
  check_raster(window, nx, ny);
  if (n_samples < 1) {
    throw GridError("montecarlo_region needs n_samples >= 1");
  }
  if (k < 1 || k > l.n()) {
    throw DimensionError("montecarlo_region needs 1 <= k <= n");
  }
  RegionGrid g;
  g.window = window;
  g.nx = nx;
  g.ny = ny;
  g.k = k;
  g.mc_samples = n_samples;
  g.mc_seed = seed;
  // Coarse angular sampling without refinement only weakens OUT detection:
  // the sampled minimum never undershoots the true one, so every OUT mark
  // is a certificate and the IN raster stays a superset.
  g.member_opts.n_theta = 24;
  g.member_opts.refine_tol = 0.0;
  g.member_opts.early_exit_out = true;
  g.cells.assign(static_cast<size_t>(nx) * ny, Ternary::In);

  std::vector<Complex> centers(g.cells.size());
  std::vector<int> active(g.cells.size());
  for (int iy = 0; iy < ny; ++iy) {
    for (int ix = 0; ix < nx; ++ix) {
      centers[static_cast<size_t>(iy) * nx + ix] = g.cell_center(ix, iy);
      active[static_cast<size_t>(iy) * nx + ix] = iy * nx + ix;
    }
  }
  const int cdim = l.n() - k + 1;
  const int n_theta = std::max(g.member_opts.n_theta, 4);
  std::vector<double> cs(static_cast<size_t>(n_theta));
  std::vector<double> sn(static_cast<size_t>(n_theta));
  for (int t = 0; t < n_theta; ++t) {
    const double theta = 2.0 * kPi * t / n_theta;
    cs[static_cast<size_t>(t)] = std::cos(theta);
    sn[static_cast<size_t>(t)] = std::sin(theta);
  }
  CMatrix w(cdim, cdim);
  std::vector<double> diag;

  // A cell drops out once some sampled direction certifies the compressed
  // value far from zero: lambda_max(Re(e^{i theta} b(z))) < -margin. The top
  // eigenvalue of any 2x2 principal minor bounds lambda_max from below, so a
  // direction whose best minor already clears -margin cannot certify the cell
  // and skips the eigensolve; a Gershgorin row bound below -margin certifies
  // it without one. The surviving raster matches the unskipped computation.
  auto knocked_out = [&](const CMatrix& bm) {
    ensure_finite(bm, "montecarlo_region sample");
    const double margin = 1e-8 * (1.0 + frobenius_norm(bm));
    const auto [hre, him] = hermitian_split(bm);
    for (int t = 0; t < n_theta; ++t) {
      const double c = cs[static_cast<size_t>(t)];
      const double s = sn[static_cast<size_t>(t)];
      for (int i = 0; i < cdim; ++i) {
        for (int j = 0; j < cdim; ++j) {
          w(i, j) = c * hre(i, j) - s * him(i, j);
        }
      }
      double lower = w(0, 0).real();
      double upper = -std::numeric_limits<double>::infinity();
      for (int p = 0; p < cdim; ++p) {
        const double dp = w(p, p).real();
        double row = dp;
        for (int q = 0; q < cdim; ++q) {
          if (q == p) continue;
          row += std::abs(w(p, q));
        }
        upper = std::max(upper, row);
        for (int q = p + 1; q < cdim; ++q) {
          const double dq = w(q, q).real();
          const double rad = std::hypot(0.5 * (dp - dq), std::abs(w(p, q)));
          lower = std::max(lower, 0.5 * (dp + dq) + rad);
        }
      }
      if (lower >= -margin) continue;
      if (upper < -margin) return true;
      hermitian_eigenvalues_inplace(w, diag);
      if (diag[0] < -margin) return true;
    }
    return false;
  };

  std::vector<int> still;
  for (int s = 0; s < n_samples && !active.empty(); ++s) {
    const std::uint64_t sub =
        seed + (static_cast<std::uint64_t>(s) + 1) * 0x9E3779B97F4A7C15ULL;
    const Isometry m = random_isometry(l.n(), cdim, sub);
    const MatrixPolynomial b = compress(l, m);
    still.clear();
    for (const int idx : active) {
      if (knocked_out(evaluate(b, centers[static_cast<size_t>(idx)]))) {
        g.cells[static_cast<size_t>(idx)] = Ternary::Out;
      } else {
        still.push_back(idx);
      }
    }
    active.swap(still);
  }
  return g;
}

namespace {

// Lattice-edge key on the cell-center lattice: cell index shifted, low bit 0
// for the edge toward +x, 1 for the edge toward +y.
int edge_key(int nx, int ix, int iy, int vertical) {
  return ((iy * nx + ix) << 1) | vertical;
}

Complex edge_midpoint(const RegionGrid& grid, int key) {
  const int vertical = key & 1;
  const int node = key >> 1;
  const int ix = node % grid.nx;
  const int iy = node / grid.nx;
  const double dx = (grid.window.x_max - grid.window.x_min) / grid.nx;
  const double dy = (grid.window.y_max - grid.window.y_min) / grid.ny;
  if (vertical) {
    return Complex(grid.window.x_min + (ix + 0.5) * dx,
                   grid.window.y_min + (iy + 1.0) * dy);
  }
  return Complex(grid.window.x_min + (ix + 1.0) * dx,
                 grid.window.y_min + (iy + 0.5) * dy);
}

}  // namespace

BoundarySample boundary_trace(const RegionGrid& grid) {
  const int nx = grid.nx;
  const int ny = grid.ny;
  BoundarySample out;
  auto inside = [&](int ix, int iy) {
    return grid.cells[static_cast<size_t>(iy) * nx + ix] != Ternary::Out;
  };
  for (int ix = 0; ix < nx && !out.clipped; ++ix) {
    out.clipped = inside(ix, 0) || inside(ix, ny - 1);
  }
  for (int iy = 0; iy < ny && !out.clipped; ++iy) {
    out.clipped = inside(0, iy) || inside(nx - 1, iy);
  }

  // March over 2x2 node blocks; each crossing produces a segment between
  // midpoints of the block's four lattice edges. Saddle blocks split into
  // two corner segments.
  std::vector<std::pair<int, int>> segments;
  for (int by = 0; by + 1 < ny; ++by) {
    for (int bx = 0; bx + 1 < nx; ++bx) {
      const int code = (inside(bx, by) ? 1 : 0) | (inside(bx + 1, by) ? 2 : 0) |
                       (inside(bx + 1, by + 1) ? 4 : 0) |
                       (inside(bx, by + 1) ? 8 : 0);
      if (code == 0 || code == 15) continue;
      const int bottom = edge_key(nx, bx, by, 0);
      const int top = edge_key(nx, bx, by + 1, 0);
      const int left = edge_key(nx, bx, by, 1);
      const int right = edge_key(nx, bx + 1, by, 1);
      switch (code) {
        case 1:
        case 14:
          segments.emplace_back(left, bottom);
          break;
        case 2:
        case 13:
          segments.emplace_back(bottom, right);
          break;
        case 3:
        case 12:
          segments.emplace_back(left, right);
          break;
        case 4:
        case 11:
          segments.emplace_back(top, right);
          break;
        case 6:
        case 9:
          segments.emplace_back(bottom, top);
          break;
        case 7:
        case 8:
          segments.emplace_back(left, top);
          break;
        case 5:
          segments.emplace_back(left, bottom);
          segments.emplace_back(top, right);
          break;
        case 10:
          segments.emplace_back(bottom, right);
          segments.emplace_back(left, top);
          break;
        default:
          break;
      }
    }
  }

  std::unordered_map<int, std::pair<int, int>> at_edge;  // edge -> segment ids
  at_edge.reserve(segments.size() * 2);
  for (size_t i = 0; i < segments.size(); ++i) {
    for (const int e : {segments[i].first, segments[i].second}) {
      auto [it, fresh] = at_edge.try_emplace(e, static_cast<int>(i), -1);
      if (!fresh) it->second.second = static_cast<int>(i);
    }
  }
  std::vector<char> used(segments.size(), 0);
  auto next_unused_at = [&](int edge) {
    const auto it = at_edge.find(edge);
    if (it == at_edge.end()) return -1;
    for (const int cand : {it->second.first, it->second.second}) {
      if (cand >= 0 && !used[static_cast<size_t>(cand)]) return cand;
    }
    return -1;
  };
  auto far_edge = [&](int seg, int edge) {
    return segments[static_cast<size_t>(seg)].first == edge
               ? segments[static_cast<size_t>(seg)].second
               : segments[static_cast<size_t>(seg)].first;
  };

  for (size_t start = 0; start < segments.size(); ++start) {
    if (used[start]) continue;
    used[start] = 1;
    std::deque<int> chain{segments[start].first, segments[start].second};
    for (;;) {
      const int seg = next_unused_at(chain.back());
      if (seg < 0) break;
      used[static_cast<size_t>(seg)] = 1;
      chain.push_back(far_edge(seg, chain.back()));
      if (chain.back() == chain.front()) break;
    }
    const bool closed = chain.size() > 2 && chain.back() == chain.front();
    if (!closed) {
      for (;;) {
        const int seg = next_unused_at(chain.front());
        if (seg < 0) break;
        used[static_cast<size_t>(seg)] = 1;
        chain.push_front(far_edge(seg, chain.front()));
      }
    }
    std::vector<Complex> pts;
    pts.reserve(chain.size());
    for (const int e : chain) pts.push_back(edge_midpoint(grid, e));
    out.polylines.push_back(std::move(pts));
  }
  return out;
}

std::vector<SharpPointCandidate> sharp_points_poly(const BoundarySample& boundary,
                                                   int window_len,
                                                   double angle_threshold) {
  const int w = std::max(1, window_len);
  std::vector<SharpPointCandidate> out;
  for (const std::vector<Complex>& line : boundary.polylines) {
    const bool closed = line.size() > 2 && line.front() == line.back();
    const int n = static_cast<int>(line.size()) - (closed ? 1 : 0);
    if (n < 3 || n < 2 * w + 1) continue;
    auto turning = [&](int i) {
      const int prev = closed ? ((i - w) % n + n) % n : i - w;
      const int next = closed ? (i + w) % n : i + w;
      const Complex vin = line[static_cast<size_t>(i)] - line[static_cast<size_t>(prev)];
      const Complex vout = line[static_cast<size_t>(next)] - line[static_cast<size_t>(i)];
      const double cross = vin.real() * vout.imag() - vin.imag() * vout.real();
      const double dot = vin.real() * vout.real() + vin.imag() * vout.imag();
      return std::atan2(cross, dot);
    };
    const int lo = closed ? 0 : w;
    const int hi = closed ? n : n - w;
    std::vector<double> turn(static_cast<size_t>(n), 0.0);
    std::vector<char> cand(static_cast<size_t>(n), 0);
    bool any = false;
    for (int i = lo; i < hi; ++i) {
      turn[static_cast<size_t>(i)] = turning(i);
      if (std::abs(turn[static_cast<size_t>(i)]) >= angle_threshold) {
        cand[static_cast<size_t>(i)] = 1;
        any = true;
      }
    }
    if (!any) continue;
    // Collapse each run of adjacent candidates to its sharpest vertex.
    auto emit_run = [&](int run_start, int run_end) {  // inclusive, may wrap
      int best_idx = (run_start % n + n) % n;
      double best_val = std::abs(turn[static_cast<size_t>(best_idx)]);
      for (int i = run_start + 1; i <= run_end; ++i) {
        const int idx = (i % n + n) % n;
        const double v = std::abs(turn[static_cast<size_t>(idx)]);
        if (v > best_val) {
          best_val = v;
          best_idx = idx;
        }
      }
      out.push_back(
          {line[static_cast<size_t>(best_idx)], turn[static_cast<size_t>(best_idx)]});
    };
    if (closed) {
      int anchor = -1;
      for (int i = 0; i < n; ++i) {
        if (!cand[static_cast<size_t>(i)]) {
          anchor = i;
          break;
        }
      }
      if (anchor < 0) {
        emit_run(0, n - 1);
        continue;
      }
      int i = anchor + 1;
      while (i < anchor + n) {
        if (cand[static_cast<size_t>(i % n)]) {
          int j = i;
          while (j + 1 < anchor + n && cand[static_cast<size_t>((j + 1) % n)]) ++j;
          emit_run(i, j);
          i = j + 1;
        } else {
          ++i;
        }
      }
    } else {
      int i = lo;
      while (i < hi) {
        if (cand[static_cast<size_t>(i)]) {
          int j = i;
          while (j + 1 < hi && cand[static_cast<size_t>(j + 1)]) ++j;
          emit_run(i, j);
          i = j + 1;
        } else {
          ++i;
        }
      }
    }
  }
  return out;
}

InclusionReport companion_inclusion_check(const MatrixPolynomial& l, int k,
                                          const std::vector<Complex>& test_points,
                                          const MemberOptions& opts) {
  const MatrixPolynomial lifted = companion(l).to_polynomial();
  InclusionReport rep;
  for (const Complex& p : test_points) {
    InclusionPointReport r;
    r.point = p;
    r.status_poly = member(l, k, p, opts).status;
    r.status_companion = member(lifted, k, p, opts).status;
    r.checked = r.status_poly == Ternary::In;
    r.pass = !r.checked || r.status_companion != Ternary::Out;
    rep.all_pass = rep.all_pass && r.pass;
    rep.points.push_back(r);
  }
  rep.zero_checked = l.degree() >= 2;
  rep.zero_status = member(lifted, k, Complex(0.0, 0.0), opts).status;
  rep.zero_pass = !rep.zero_checked || rep.zero_status != Ternary::Out;
  rep.all_pass = rep.all_pass && rep.zero_pass;
  return rep;
}

JointTupleReport verify_joint_tuple(const MatrixPolynomial& l, const Isometry& q,
                                    double tol) {
  if (q.n() != l.n()) {
    throw DimensionError("verify_joint_tuple: isometry rows must match the matrix size");
  }
  const int k = q.k();
  JointTupleReport rep;
  std::vector<Complex> tuple;
  tuple.reserve(static_cast<size_t>(l.degree()) + 1);
  double defect = 0.0;
  for (int j = 0; j <= l.degree(); ++j) {
    CMatrix b = adjoint(q.matrix()) * (l.coeff(j) * q.matrix());
    const Complex c = trace(b) / static_cast<double>(k);
    for (int i = 0; i < k; ++i) b(i, i) -= c;
    defect = std::max(defect, frobenius_norm(b));
    tuple.push_back(c);
  }
  if (defect > tol) {
    throw NotAJointTuple(defect);
  }
  rep.tuple = std::move(tuple);
  rep.defect = defect;
  const ScalarPoly sp(rep.tuple);
  if (sp.is_zero()) {
    rep.all_zero = true;
    return rep;
  }
  if (sp.degree() == 0) {
    return rep;  // a nonzero constant tuple polynomial has no roots
  }
  rep.roots = sp.roots();
  rep.root_status.reserve(rep.roots.size());
  for (const Complex& rho : rep.roots) {
    rep.root_status.push_back(member(l, k, rho).status);
  }
  return rep;
}

}  // namespace hrnr
