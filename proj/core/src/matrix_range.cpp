#include "hrnr/matrix_range.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>
#include <vector>

#include "hrnr/numkit.hpp"

namespace hrnr {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2.0 * kPi;

// Shared state for many support queries against one matrix. A query rebuilds
// cos(theta)*K1 - sin(theta)*K2 into a scratch matrix and runs the in-place
// eigensolver, so nothing is allocated after construction.
class SupportEvaluator {
 public:
  SupportEvaluator(const CMatrix& a, int k) : k_(k), work_(1, 1) {
    if (a.rows() != a.cols()) {
      throw DimensionError("support evaluation requires a square matrix");
    }
    if (k < 1 || k > a.rows()) {
      throw DimensionError("support evaluation requires 1 <= k <= n");
    }
    ensure_finite(a, "support evaluation input");
    auto parts = hermitian_split(a);
    re_ = std::move(parts.first);
    im_ = std::move(parts.second);
    work_ = re_;
  }

  double value(double theta) {
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    const int n = re_.rows();
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        work_(i, j) = c * re_(i, j) - s * im_(i, j);
      }
    }
    hermitian_eigenvalues_inplace(work_, diag_);
    return diag_[k_ - 1];
  }

 private:
  int k_;
  CMatrix re_{1, 1};
  CMatrix im_{1, 1};
  CMatrix work_;
  std::vector<double> diag_;
};

double wrap_angle(double theta) {
  while (theta >= kTwoPi) theta -= kTwoPi;
  while (theta < 0.0) theta += kTwoPi;
  return theta;
}

// Visiting order that spreads over the circle: bit-reversed indices, so a
// separating direction is found early no matter where it sits.
std::vector<int> spread_order(int n) {
  int bits = 1;
  while ((1 << bits) < n) ++bits;
  std::vector<int> order;
  order.reserve(static_cast<size_t>(n));
  for (int j = 0; j < (1 << bits); ++j) {
    int r = 0;
    for (int b = 0; b < bits; ++b) {
      if (j & (1 << b)) r |= 1 << (bits - 1 - b);
    }
    if (r < n) order.push_back(r);
  }
  return order;
}

void golden_refine(SupportEvaluator& ev, double lo, double hi, double tol,
                   double* best_theta, double* best_value) {
  const double invphi = 0.6180339887498949;
  auto consider = [&](double theta, double value) {
    if (value < *best_value) {
      *best_value = value;
      *best_theta = wrap_angle(theta);
    }
  };
  double x1 = hi - invphi * (hi - lo);
  double x2 = lo + invphi * (hi - lo);
  double f1 = ev.value(x1);
  double f2 = ev.value(x2);
  consider(x1, f1);
  consider(x2, f2);
  int guard = 200;
  while (hi - lo > tol && guard-- > 0) {
    if (f1 <= f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - invphi * (hi - lo);
      f1 = ev.value(x1);
      consider(x1, f1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + invphi * (hi - lo);
      f2 = ev.value(x2);
      consider(x2, f2);
    }
  }
}

MemberResult member_zero_impl(SupportEvaluator& ev, double norm_scale,
                              const MemberOptions& opts) {
  const int n_theta = std::max(opts.n_theta, 4);
  const double margin =
      opts.margin > 0.0 ? opts.margin : 1e-8 * (1.0 + norm_scale);
  const double dtheta = kTwoPi / n_theta;

  std::vector<double> h(static_cast<size_t>(n_theta));
  double best_value = std::numeric_limits<double>::infinity();
  double best_theta = 0.0;
  if (opts.early_exit_out) {
    for (int idx : spread_order(n_theta)) {
      const double theta = dtheta * idx;
      const double v = ev.value(theta);
      h[static_cast<size_t>(idx)] = v;
      if (v < best_value) {
        best_value = v;
        best_theta = theta;
      }
      if (v < -margin) {
        return {Ternary::Out, v, theta, margin};
      }
    }
  } else {
    for (int i = 0; i < n_theta; ++i) {
      const double theta = dtheta * i;
      const double v = ev.value(theta);
      h[static_cast<size_t>(i)] = v;
      if (v < best_value) {
        best_value = v;
        best_theta = theta;
      }
    }
  }

  if (opts.refine_tol > 0.0) {
    for (int i = 0; i < n_theta; ++i) {
      const double prev = h[static_cast<size_t>((i + n_theta - 1) % n_theta)];
      const double next = h[static_cast<size_t>((i + 1) % n_theta)];
      if (h[static_cast<size_t>(i)] > prev || h[static_cast<size_t>(i)] > next) {
        continue;
      }
      // Plateau interiors carry no minimum the coarse scan has not seen.
      if (h[static_cast<size_t>(i)] == prev && h[static_cast<size_t>(i)] == next) {
        continue;
      }
      const double center = dtheta * i;
      golden_refine(ev, center - dtheta, center + dtheta, opts.refine_tol,
                    &best_theta, &best_value);
    }
  }

  Ternary status = Ternary::Border;
  if (best_value < -margin) {
    status = Ternary::Out;
  } else if (best_value > margin) {
    status = Ternary::In;
  }
  return {status, best_value, best_theta, margin};
}

struct Vec2 {
  double x;
  double y;
};

// Intersection point of the boundary lines of the half-planes at t1 and t2.
bool cross_point(double t1, double h1, double t2, double h2, Vec2* p) {
  const double c1 = std::cos(t1);
  const double s1 = std::sin(t1);
  const double c2 = std::cos(t2);
  const double s2 = std::sin(t2);
  const double det = s1 * c2 - c1 * s2;
  if (std::abs(det) < 1e-14) return false;
  p->x = (h2 * s1 - h1 * s2) / det;
  p->y = (h2 * c1 - h1 * c2) / det;
  return true;
}

// Sutherland-Hodgman step against {p : nx*x + ny*y <= h}; boundary is inside.
void clip_halfplane(const std::vector<Vec2>& in, double nx, double ny, double h,
                    std::vector<Vec2>* out) {
  out->clear();
  const size_t m = in.size();
  for (size_t i = 0; i < m; ++i) {
    const Vec2& cur = in[i];
    const Vec2& nxt = in[(i + 1) % m];
    const double dc = nx * cur.x + ny * cur.y - h;
    const double dn = nx * nxt.x + ny * nxt.y - h;
    if (dc <= 0.0) out->push_back(cur);
    if ((dc < 0.0 && dn > 0.0) || (dc > 0.0 && dn <= 0.0)) {
      const double t = dc / (dc - dn);
      out->push_back({cur.x + t * (nxt.x - cur.x), cur.y + t * (nxt.y - cur.y)});
    }
  }
}

// eps widens every half-plane so that a point or segment region, whose
// supporting lines all meet it, survives clipping as a sliver for the
// degeneracy classifier instead of being rounded away to nothing.
std::vector<Vec2> clip_all(double box_r, const std::vector<SupportSample>& samples,
                           double eps) {
  std::vector<Vec2> poly = {{-box_r, -box_r}, {box_r, -box_r}, {box_r, box_r},
                            {-box_r, box_r}};
  std::vector<Vec2> scratch;
  for (const SupportSample& s : samples) {
    clip_halfplane(poly, std::cos(s.theta), -std::sin(s.theta), s.value + eps,
                   &scratch);
    poly.swap(scratch);
    if (poly.empty()) break;
  }
  return poly;
}

int find_antipodal(const std::vector<SupportSample>& s, int i) {
  const double target = wrap_angle(s[static_cast<size_t>(i)].theta + kPi);
  auto cmp = [](const SupportSample& a, double t) { return a.theta < t; };
  auto it = std::lower_bound(s.begin(), s.end(), target, cmp);
  const int m = static_cast<int>(s.size());
  int cand[2] = {static_cast<int>(it - s.begin()) % m,
                 (static_cast<int>(it - s.begin()) + m - 1) % m};
  for (int j : cand) {
    double gap = std::abs(s[static_cast<size_t>(j)].theta - target);
    gap = std::min(gap, kTwoPi - gap);
    if (gap <= 1e-9) return j;
  }
  return -1;
}

// Infeasibility witness: an antipodal pair with negative total width, or a
// pair whose feasible wedge a third half-plane misses entirely. The pair scan
// runs on a strided subset so the search stays cheap at large sample counts.
std::vector<int> empty_certificate_search(const std::vector<SupportSample>& s,
                                          double tol) {
  const int m = static_cast<int>(s.size());
  for (int i = 0; i < m; ++i) {
    const int j = find_antipodal(s, i);
    if (j >= 0 && s[static_cast<size_t>(i)].value + s[static_cast<size_t>(j)].value < -tol) {
      return {std::min(i, j), std::max(i, j)};
    }
  }
  const int stride = std::max(1, m / 512);
  for (int i = 0; i < m; i += stride) {
    const double ti = s[static_cast<size_t>(i)].theta;
    const double ni_x = std::cos(ti);
    const double ni_y = -std::sin(ti);
    for (int j = i + stride; j < m; j += stride) {
      const double tj = s[static_cast<size_t>(j)].theta;
      if (std::abs(std::sin(ti - tj)) < 1e-6) continue;
      Vec2 apex;
      if (!cross_point(ti, s[static_cast<size_t>(i)].value, tj,
                       s[static_cast<size_t>(j)].value, &apex)) {
        continue;
      }
      const double nj_x = std::cos(tj);
      const double nj_y = -std::sin(tj);
      // Wedge edge directions: along each boundary line, into the other
      // half-plane's feasible side.
      double e1x = -ni_y, e1y = ni_x;
      if (nj_x * e1x + nj_y * e1y > 0.0) {
        e1x = -e1x;
        e1y = -e1y;
      }
      double e2x = -nj_y, e2y = nj_x;
      if (ni_x * e2x + ni_y * e2y > 0.0) {
        e2x = -e2x;
        e2y = -e2y;
      }
      for (int l = 0; l < m; ++l) {
        if (l == i || l == j) continue;
        const double tl = s[static_cast<size_t>(l)].theta;
        const double nl_x = std::cos(tl);
        const double nl_y = -std::sin(tl);
        if (nl_x * apex.x + nl_y * apex.y - s[static_cast<size_t>(l)].value > tol &&
            nl_x * e1x + nl_y * e1y >= 0.0 && nl_x * e2x + nl_y * e2y >= 0.0) {
          return {i, j, l};
        }
      }
    }
  }
  return {};
}

ConvexRegion make_empty(std::vector<SupportSample> samples, double tol) {
  ConvexRegion region;
  region.status = RegionStatus::Empty;
  region.halfplanes = std::move(samples);
  region.empty_certificate = empty_certificate_search(region.halfplanes, tol);
  return region;
}

}  // namespace

const char* to_string(Ternary t) {
  switch (t) {
    case Ternary::In:
      return "IN";
    case Ternary::Out:
      return "OUT";
    default:
      return "BORDER";
  }
}

double support_value(const CMatrix& a, int k, double theta) {
  if (a.rows() != a.cols()) {
    throw DimensionError("support_value requires a square matrix");
  }
  if (k < 1 || k > a.rows()) {
    throw DimensionError("support_value requires 1 <= k <= n");
  }
  auto parts = hermitian_split(a);
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  CMatrix h(a.rows(), a.rows());
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < a.rows(); ++j) {
      h(i, j) = c * parts.first(i, j) - s * parts.second(i, j);
    }
  }
  return hermitian_eigenvalues(h)[static_cast<size_t>(k - 1)];
}

MemberResult member_zero(const CMatrix& a, int k, const MemberOptions& opts) {
  SupportEvaluator ev(a, k);
  return member_zero_impl(ev, frobenius_norm(a), opts);
}

MemberResult member_point(const CMatrix& a, int k, Complex z,
                          const MemberOptions& opts) {
  if (a.rows() != a.cols()) {
    throw DimensionError("member_point requires a square matrix");
  }
  CMatrix shifted = a;
  for (int i = 0; i < a.rows(); ++i) {
    shifted(i, i) -= z;
  }
  SupportEvaluator ev(shifted, k);
  return member_zero_impl(ev, frobenius_norm(shifted), opts);
}

ConvexRegion region_polygon(const CMatrix& a, int k, int n_theta) {
  SupportEvaluator ev(a, k);
  if (n_theta < 4) n_theta = 4;

  std::vector<SupportSample> samples;
  samples.reserve(static_cast<size_t>(n_theta) + 256);
  const double dtheta = kTwoPi / n_theta;
  double hmax = 0.0;
  for (int i = 0; i < n_theta; ++i) {
    const double theta = dtheta * i;
    const double value = ev.value(theta);
    samples.push_back({theta, value});
    hmax = std::max(hmax, std::abs(value));
  }
  const double tol_geo = 1e-8 * (1.0 + hmax);
  const double clip_eps = 1e-12 * (1.0 + hmax);
  const double box_r = 2.0 * hmax + 1.0;

  if (clip_all(box_r, samples, clip_eps).empty()) {
    return make_empty(std::move(samples), tol_geo);
  }

  // Bisect angle intervals whose consecutive-constraint crossing still sticks
  // out past the support at the interval midpoint. This pins polygon vertices
  // far below the uniform-grid circumscription error without touching flat or
  // cut-away stretches.
  struct Interval {
    double tl, hl, tr, hr;
  };
  std::vector<Interval> work;
  work.reserve(static_cast<size_t>(n_theta) + 64);
  for (int i = 0; i < n_theta; ++i) {
    const SupportSample& l = samples[static_cast<size_t>(i)];
    const SupportSample& r = samples[static_cast<size_t>((i + 1) % n_theta)];
    const double tr = (i + 1 < n_theta) ? r.theta : r.theta + kTwoPi;
    work.push_back({l.theta, l.value, tr, r.value});
  }
  int budget = 8 * n_theta + 1024;
  while (!work.empty() && budget > 0) {
    const Interval iv = work.back();
    work.pop_back();
    if (iv.tr - iv.tl <= 1e-9) continue;
    Vec2 p;
    if (!cross_point(iv.tl, iv.hl, iv.tr, iv.hr, &p)) continue;
    const double tm = 0.5 * (iv.tl + iv.tr);
    const double hm = ev.value(tm);
    const double violation = std::cos(tm) * p.x - std::sin(tm) * p.y - hm;
    if (violation > 0.5 * tol_geo) {
      --budget;
      samples.push_back({wrap_angle(tm), hm});
      work.push_back({iv.tl, iv.hl, tm, hm});
      work.push_back({tm, hm, iv.tr, iv.hr});
    }
  }
  std::sort(samples.begin(), samples.end(),
            [](const SupportSample& a_, const SupportSample& b_) {
              return a_.theta < b_.theta;
            });

  std::vector<Vec2> poly = clip_all(box_r, samples, clip_eps);
  if (poly.empty()) {
    return make_empty(std::move(samples), tol_geo);
  }

  ConvexRegion region;
  region.halfplanes = std::move(samples);

  double xmin = poly[0].x, xmax = poly[0].x, ymin = poly[0].y, ymax = poly[0].y;
  for (const Vec2& v : poly) {
    xmin = std::min(xmin, v.x);
    xmax = std::max(xmax, v.x);
    ymin = std::min(ymin, v.y);
    ymax = std::max(ymax, v.y);
  }
  const double diag = std::hypot(xmax - xmin, ymax - ymin);

  // The box is a safety net only; a vertex still on it means the sampled
  // system failed to close, so the polygon cannot be trusted as an outer
  // approximation of a bounded set.
  const double box_slack = 1e-6 * box_r;
  for (const Vec2& v : poly) {
    if (std::max(std::abs(v.x), std::abs(v.y)) >= box_r - box_slack) {
      region.status = RegionStatus::Unbounded;
      for (const Vec2& w : poly) region.vertices.push_back(Complex(w.x, w.y));
      return region;
    }
  }

  const double merge_tol = std::max(1e-12, 1e-10 * diag);
  std::vector<Vec2> merged;
  std::vector<int> weight;
  for (const Vec2& v : poly) {
    if (!merged.empty() && std::hypot(v.x - merged.back().x, v.y - merged.back().y) <= merge_tol) {
      Vec2& b = merged.back();
      int& w = weight.back();
      b.x = (b.x * w + v.x) / (w + 1);
      b.y = (b.y * w + v.y) / (w + 1);
      ++w;
    } else {
      merged.push_back(v);
      weight.push_back(1);
    }
  }
  if (merged.size() > 1 &&
      std::hypot(merged.front().x - merged.back().x,
                 merged.front().y - merged.back().y) <= merge_tol) {
    Vec2& f = merged.front();
    const int wf = weight.front();
    const int wb = weight.back();
    f.x = (f.x * wf + merged.back().x * wb) / (wf + wb);
    f.y = (f.y * wf + merged.back().y * wb) / (wf + wb);
    merged.pop_back();
    weight.pop_back();
  }

  const double tol_degen = 1e-8 * (1.0 + hmax);
  if (diag <= tol_degen || merged.size() == 1) {
    double cx = 0.0, cy = 0.0;
    for (const Vec2& v : merged) {
      cx += v.x;
      cy += v.y;
    }
    region.status = RegionStatus::Point;
    region.vertices.push_back(
        Complex(cx / static_cast<double>(merged.size()),
                cy / static_cast<double>(merged.size())));
    return region;
  }

  // Segment test: perpendicular spread about the longest chord direction.
  size_t pi_ = 0, qi_ = 0;
  if (xmax - xmin >= ymax - ymin) {
    for (size_t i = 0; i < merged.size(); ++i) {
      if (merged[i].x < merged[pi_].x) pi_ = i;
      if (merged[i].x > merged[qi_].x) qi_ = i;
    }
  } else {
    for (size_t i = 0; i < merged.size(); ++i) {
      if (merged[i].y < merged[pi_].y) pi_ = i;
      if (merged[i].y > merged[qi_].y) qi_ = i;
    }
  }
  const Vec2 p0 = merged[pi_];
  const double dlen = std::hypot(merged[qi_].x - p0.x, merged[qi_].y - p0.y);
  const double dx = (merged[qi_].x - p0.x) / dlen;
  const double dy = (merged[qi_].y - p0.y) / dlen;
  double width = 0.0, tmin = 0.0, tmax = 0.0;
  for (const Vec2& v : merged) {
    const double rx = v.x - p0.x;
    const double ry = v.y - p0.y;
    width = std::max(width, std::abs(dx * ry - dy * rx));
    const double t = dx * rx + dy * ry;
    tmin = std::min(tmin, t);
    tmax = std::max(tmax, t);
  }
  if (width <= tol_degen) {
    Vec2 e1{p0.x + tmin * dx, p0.y + tmin * dy};
    Vec2 e2{p0.x + tmax * dx, p0.y + tmax * dy};
    if (e1.x > e2.x || (e1.x == e2.x && e1.y > e2.y)) std::swap(e1, e2);
    region.status = RegionStatus::Segment;
    region.vertices.push_back(Complex(e1.x, e1.y));
    region.vertices.push_back(Complex(e2.x, e2.y));
    return region;
  }

  region.status = RegionStatus::Polygon;
  region.vertices.reserve(merged.size());
  for (const Vec2& v : merged) region.vertices.push_back(Complex(v.x, v.y));
  return region;
}

std::vector<SharpVertex> sharp_vertices(const ConvexRegion& region,
                                        double aperture_min) {
  std::vector<SharpVertex> out;
  switch (region.status) {
    case RegionStatus::Empty:
    case RegionStatus::Unbounded:
      return out;
    case RegionStatus::Point:
      if (kTwoPi >= aperture_min) out.push_back({region.vertices[0], kTwoPi});
      return out;
    case RegionStatus::Segment:
      if (kPi >= aperture_min) {
        out.push_back({region.vertices[0], kPi});
        out.push_back({region.vertices[1], kPi});
      }
      return out;
    case RegionStatus::Polygon:
      break;
  }
  const size_t m = region.vertices.size();
  for (size_t i = 0; i < m; ++i) {
    const Complex& prev = region.vertices[(i + m - 1) % m];
    const Complex& cur = region.vertices[i];
    const Complex& next = region.vertices[(i + 1) % m];
    const double ax = cur.real() - prev.real();
    const double ay = cur.imag() - prev.imag();
    const double bx = next.real() - cur.real();
    const double by = next.imag() - cur.imag();
    const double turn = std::atan2(ax * by - ay * bx, ax * bx + ay * by);
    if (turn >= aperture_min) out.push_back({cur, turn});
  }
  return out;
}

}  // namespace hrnr
