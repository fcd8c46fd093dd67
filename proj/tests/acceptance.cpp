// Acceptance gate: one PASS/FAIL line per criterion, exit 0 only when all
// eight hold. Tolerances are pinned here and nowhere else.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "hrnr/matpoly.hpp"
#include "hrnr/matrix_range.hpp"
#include "hrnr/numkit.hpp"
#include "hrnr/poly_range.hpp"
#include "hrnr/sylvester.hpp"
#include "test_support.hpp"

using namespace hrnr;
using namespace hrnr::test;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void fail(const std::string& why) {
    pass = false;
    if (!detail.empty()) detail += "; ";
    detail += why;
  }
  void note(const std::string& what) {
    if (!detail.empty()) detail += "; ";
    detail += what;
  }
};

struct Timer {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
        .count();
  }
};

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.3g", v);
  return buf;
}

bool non_out(Ternary t) { return t != Ternary::Out; }

// Five eigenvalues of the diagonal running example.
std::vector<Complex> five_point_eigs() {
  return {cx(3, 4), cx(4, -1), cx(-3, -2), cx(-3), cx(-3, 3)};
}

// Rank-2 range of the diagonal example against the subset-hull oracle, and
// emptiness at rank 3, both inside a wall-clock budget.
Outcome criterion1() {
  Outcome out;
  Timer timer;
  const CMatrix a = five_point_diag();
  const ConvexRegion region = region_polygon(a, 2, 4096);
  const std::vector<Complex> oracle = normal_range_oracle(five_point_eigs(), 2);
  const double dist = hausdorff(region.vertices, oracle);
  if (!(dist <= 1e-6)) out.fail("rank-2 hausdorff " + fmt(dist) + " > 1e-6");
  const ConvexRegion empty3 = region_polygon(a, 3, 4096);
  if (empty3.status != RegionStatus::Empty) out.fail("rank-3 region not empty");
  const double secs = timer.seconds();
  if (!(secs < 5.0)) out.fail("took " + fmt(secs) + " s >= 5 s");
  out.note("hausdorff " + fmt(dist) + ", " + fmt(secs) + " s");
  return out;
}

// Singleton rank-2 set: the origin is a member, everything else on a 21x21
// window raster is not.
Outcome criterion2() {
  Outcome out;
  Timer timer;
  const MatrixPolynomial l = singleton_pencil();
  if (!non_out(member(l, 2, cx(0)).status)) out.fail("origin not a member");
  const RegionGrid grid = grid_scan(l, 2, {-2.0, 2.0, -2.0, 2.0}, 21, 21);
  int stray = 0;
  for (int iy = 0; iy < 21; ++iy) {
    for (int ix = 0; ix < 21; ++ix) {
      if (ix == 10 && iy == 10) continue;
      if (grid.cells[static_cast<size_t>(iy) * 21 + ix] != Ternary::Out) ++stray;
    }
  }
  if (stray != 0) out.fail(std::to_string(stray) + " non-OUT cells away from 0");
  const double secs = timer.seconds();
  if (!(secs < 2.0)) out.fail("took " + fmt(secs) + " s >= 2 s");
  out.note(fmt(secs) + " s");
  return out;
}

// Three pieces on the imaginary axis: the curve of members along iy and the
// fused component count of a window raster.
Outcome criterion3() {
  Outcome out;
  const MatrixPolynomial l = axis_quadratic();
  const int samples = 161;
  const double spacing = 8.0 / (samples - 1);
  const std::vector<Ternary> line =
      line_scan(l, 2, cx(0, -4), cx(0, 4), samples);
  int mismatches = 0;
  for (int i = 0; i < samples; ++i) {
    const double y = -4.0 + spacing * i;
    // One sample of slack around the transition points y = +-2.
    if (std::abs(std::abs(y) - 2.0) <= spacing + 1e-12) continue;
    const bool expect_member = std::abs(y) > 2.0 || std::abs(y) < 1e-12;
    if (non_out(line[i]) != expect_member) ++mismatches;
  }
  if (mismatches != 0) {
    out.fail(std::to_string(mismatches) + " line samples off the pattern");
  }
  const RegionGrid grid =
      grid_scan(l, 2, {-1.05, 1.05, -4.05, 4.05}, 21, 81);
  const ComponentLabels comp = components(grid);
  if (comp.count != 3) {
    out.fail("component count " + std::to_string(comp.count) + " != 3");
  }
  out.note("components " + std::to_string(comp.count));
  return out;
}

// The quartic example is bounded at rank 2, with the member set an island
// strictly inside the scan window.
Outcome criterion4() {
  Outcome out;
  const MatrixPolynomial l = quartic_bounded();
  const BoundednessResult b = boundedness_check(l, 2);
  if (!b.bounded) out.fail("boundedness check inconclusive");
  MemberOptions opts;
  opts.early_exit_out = true;
  const GridWindow w{-6.0, 2.0, -4.0, 4.0};
  const RegionGrid grid = grid_scan(l, 2, w, 200, 200, opts);
  int inside = 0;
  int on_ring = 0;
  for (int iy = 0; iy < 200; ++iy) {
    for (int ix = 0; ix < 200; ++ix) {
      if (grid.cells[static_cast<size_t>(iy) * 200 + ix] != Ternary::In) continue;
      ++inside;
      if (ix == 0 || ix == 199 || iy == 0 || iy == 199) ++on_ring;
    }
  }
  if (inside == 0) out.fail("no IN cells in the window");
  if (on_ring != 0) out.fail(std::to_string(on_ring) + " IN cells touch the window edge");
  for (const Complex corner :
       {cx(-6, -4), cx(2, -4), cx(-6, 4), cx(2, 4)}) {
    if (member(l, 2, corner).status != Ternary::Out) {
      out.fail("window corner not OUT");
      break;
    }
  }
  out.note(std::to_string(inside) + " IN cells");
  return out;
}

// Stacked resultants of the three worked compressions: exact entries for the
// singleton frame, the rank drop of the rank-one stack, and the certified
// common roots {0, 2i} of the axis example.
Outcome criterion5() {
  Outcome out;

  const MatrixPolynomial sing = singleton_pencil();
  const Isometry qs(singleton_pencil_frame());
  const SylvesterRecord rec_s = build_sylvester(scalar_entries(sing, qs));
  if (rec_s.rank != 2 || rec_s.delta != 0) {
    out.fail("singleton stack rank " + std::to_string(rec_s.rank) + " delta " +
             std::to_string(rec_s.delta));
  }
  const double c = -3.0 * std::sqrt(2.0) / 4.0;
  const double expected[4][2] = {
      {1.0, 3.0 / 8.0}, {1.0, 1.0 / 3.0}, {0.0, c}, {0.0, c}};
  if (rec_s.matrix.rows() != 4 || rec_s.matrix.cols() != 2) {
    out.fail("singleton stack is not 4x2");
  } else {
    double worst = 0.0;
    for (int i = 0; i < 4; ++i) {
      for (int j = 0; j < 2; ++j) {
        worst = std::max(worst, std::abs(rec_s.matrix(i, j) - cx(expected[i][j])));
      }
    }
    if (!(worst <= 1e-12)) out.fail("singleton stack entry off by " + fmt(worst));
  }

  CMatrix qk(4, 2);
  qk(0, 0) = cx(1);
  qk(2, 1) = cx(1);
  const SylvesterRecord rec_k = build_sylvester(scalar_entries(kron_pencil(), Isometry(qk)));
  if (rec_k.rank != 1 || rec_k.delta != 1) {
    out.fail("rank-one stack rank " + std::to_string(rec_k.rank) + " delta " +
             std::to_string(rec_k.delta));
  }

  const MatrixPolynomial axis = axis_quadratic();
  CMatrix qa(4, 2);
  qa(0, 0) = cx(1);
  qa(1, 1) = cx(1);
  const Isometry qi(qa);
  const SylvesterRecord rec_a = build_sylvester(scalar_entries(axis, qi));
  if (rec_a.delta != 2) out.fail("axis stack delta " + std::to_string(rec_a.delta));
  const CommonRootsResult roots = common_roots(axis, 2, qi);
  if (roots.roots.size() != 2) {
    out.fail("axis roots found " + std::to_string(roots.roots.size()) + " != 2");
  } else {
    for (const Complex want : {cx(0), cx(0, 2)}) {
      double best = 1e9;
      for (const CertifiedRoot& r : roots.roots) {
        best = std::min(best, std::abs(r.root - want));
      }
      if (!(best <= 1e-8)) out.fail("no certified root near " + fmt(want.imag()) + "i");
      if (!non_out(member(axis, 2, want).status)) out.fail("root not a member");
    }
  }
  return out;
}

// Monte-Carlo sandwich on the 5x5 cubic: sampled-compression rasters never
// drop a certified IN cell, and at least one seed strictly enlarges the set.
Outcome criterion6() {
  Outcome out;
  Timer timer;
  const MatrixPolynomial l = quintic_cubic();
  const GridWindow w{-4.0, 2.0, -3.0, 3.0};
  const int res = 150;
  MemberOptions opts;
  opts.early_exit_out = true;
  const RegionGrid grid = grid_scan(l, 2, w, res, res, opts);
  int grid_in = 0;
  for (const Ternary t : grid.cells) grid_in += (t == Ternary::In) ? 1 : 0;
  if (grid_in == 0) out.fail("no IN cells in the reference raster");
  bool strict = false;
  for (const std::uint64_t seed : {1ULL, 2ULL, 3ULL}) {
    const RegionGrid mc = montecarlo_region(l, 2, 400, w, res, res, seed);
    int dropped = 0;
    int extra = 0;
    for (size_t i = 0; i < grid.cells.size(); ++i) {
      const bool g_in = grid.cells[i] == Ternary::In;
      const bool m_in = mc.cells[i] == Ternary::In;
      if (g_in && !m_in) ++dropped;
      if (m_in && !g_in) ++extra;
    }
    if (dropped != 0) {
      out.fail("seed " + std::to_string(seed) + " dropped " +
               std::to_string(dropped) + " IN cells");
    }
    if (extra > 0) strict = true;
  }
  if (!strict) out.fail("no seed gave a strict superset");
  const double secs = timer.seconds();
  if (!(secs < 60.0)) out.fail("took " + fmt(secs) + " s >= 60 s");
  out.note(std::to_string(grid_in) + " IN cells, " + fmt(secs) + " s");
  return out;
}

// Rank nesting, shift covariance, reversal covariance, and the companion
// inclusion check over ten random instances.
Outcome criterion7() {
  Outcome out;
  const int n_tab[10] = {3, 4, 5, 2, 5, 3, 4, 5, 4, 2};
  const int m_tab[10] = {1, 2, 3, 2, 1, 3, 2, 3, 1, 1};
  const int k_tab[10] = {1, 2, 2, 1, 3, 1, 3, 2, 1, 1};
  const Complex t_shift = cx(0.7, -0.3);
  int decisive = 0;
  int violations = 0;
  for (int inst = 0; inst < 10; ++inst) {
    const int n = n_tab[inst];
    const int m = m_tab[inst];
    const int k = k_tab[inst];
    const MatrixPolynomial l = random_poly(n, m, 101 + 7 * inst);
    const MatrixPolynomial shifted = shift(l, t_shift);
    const MatrixPolynomial reversed = reverse(l);
    std::mt19937_64 rng(1000 + inst);
    std::normal_distribution<double> gauss;
    std::vector<Complex> members;
    for (int p = 0; p < 50; ++p) {
      const Complex z = cx(1.5 * gauss(rng), 1.5 * gauss(rng));
      const MemberResult base = member(l, k, z);
      if (base.status == Ternary::In && members.size() < 8) members.push_back(z);

      const MemberResult higher = member(l, k + 1, z);
      if (base.status != Ternary::Border && higher.status != Ternary::Border) {
        ++decisive;
        if (higher.status == Ternary::In && base.status == Ternary::Out) {
          ++violations;
        }
      }
      // shift(l, t) evaluates l at z, translated: membership moves by -t.
      const MemberResult moved = member(shifted, k, z - t_shift);
      if (base.status != Ternary::Border && moved.status != Ternary::Border) {
        ++decisive;
        if (moved.status != base.status) ++violations;
      }
      if (std::abs(z) >= 0.3) {
        const MemberResult rev = member(reversed, k, cx(1.0) / z);
        if (base.status != Ternary::Border && rev.status != Ternary::Border) {
          ++decisive;
          if (rev.status != base.status) ++violations;
        }
      }
    }
    const InclusionReport rep = companion_inclusion_check(l, k, members);
    if (!rep.all_pass) {
      out.fail("companion inclusion failed on instance " + std::to_string(inst));
    }
  }
  if (violations != 0) {
    out.fail(std::to_string(violations) + " covariance violations");
  }
  // The comparisons must actually decide in the vast majority of draws.
  if (decisive < 1200) {
    out.fail("only " + std::to_string(decisive) + " decisive comparisons");
  }
  out.note(std::to_string(decisive) + " decisive comparisons");
  return out;
}

// Matrix-level closure: polygon vs subset-hull oracle on random normal
// matrices, and verified separation certificates on random dense ones.
Outcome criterion8() {
  Outcome out;
  double worst = 0.0;
  for (int t = 0; t < 10; ++t) {
    const int n = 2 + (t % 5);
    const int k = std::min(1 + (t % 3), n);
    std::mt19937_64 rng(211 + 13 * t);
    std::normal_distribution<double> gauss;
    std::vector<Complex> eigs;
    for (int i = 0; i < n; ++i) eigs.push_back(cx(2.0 * gauss(rng), 2.0 * gauss(rng)));
    const CMatrix u = random_isometry(n, n, 500 + t).matrix();
    CMatrix d(n, n);
    for (int i = 0; i < n; ++i) d(i, i) = eigs[i];
    const CMatrix a = u * d * adjoint(u);
    const ConvexRegion region = region_polygon(a, k, 1024);
    const double dist = hausdorff(region.vertices, normal_range_oracle(eigs, k));
    worst = std::max(worst, dist);
    if (!(dist <= 1e-6)) {
      out.fail("normal case " + std::to_string(t) + " hausdorff " + fmt(dist));
    }
  }

  int certified = 0;
  for (int t = 0; t < 10; ++t) {
    const int n = 2 + (t % 5);
    const int k = std::min(1 + (t % 3), n);
    const CMatrix a = random_gaussian(n, n, 307 + t);
    std::mt19937_64 rng(900 + t);
    std::normal_distribution<double> gauss;
    std::vector<Complex> probes;
    probes.push_back(std::polar(frobenius_norm(a) + 1.0, 0.7 * t));
    for (int p = 0; p < 3; ++p) {
      probes.push_back(cx(2.0 * gauss(rng), 2.0 * gauss(rng)));
    }
    bool saw_out = false;
    for (const Complex z : probes) {
      const MemberResult r = member_point(a, k, z);
      if (r.status != Ternary::Out) continue;
      saw_out = true;
      CMatrix shifted = a;
      for (int i = 0; i < n; ++i) shifted(i, i) -= z;
      const double h = support_value(shifted, k, r.witness_theta);
      if (!(h < 0.0)) {
        out.fail("witness angle fails to separate on case " + std::to_string(t));
      } else {
        ++certified;
      }
    }
    if (!saw_out) out.fail("no OUT point found for case " + std::to_string(t));
  }
  out.note("worst hausdorff " + fmt(worst) + ", " + std::to_string(certified) +
           " certificates verified");
  return out;
}

}  // namespace

int main() {
  Outcome results[8] = {criterion1(), criterion2(), criterion3(), criterion4(),
                        criterion5(), criterion6(), criterion7(), criterion8()};
  int failures = 0;
  for (int i = 0; i < 8; ++i) {
    const Outcome& r = results[i];
    std::printf("criterion %d: %s%s%s\n", i + 1, r.pass ? "PASS" : "FAIL",
                r.detail.empty() ? "" : " - ", r.detail.c_str());
    if (!r.pass) ++failures;
  }
  if (failures != 0) {
    std::printf("%d criterion(s) failed\n", failures);
    return 1;
  }
  std::printf("all criteria passed\n");
  return 0;
}
