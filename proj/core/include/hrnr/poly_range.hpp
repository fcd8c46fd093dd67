#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "hrnr/matpoly.hpp"
#include "hrnr/matrix_range.hpp"

namespace hrnr {

struct GridError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct GridWindow {
  double x_min;
  double x_max;
  double y_min;
  double y_max;
};

// Raster of membership statuses over a rectangular window. Cells are stored
// row-major from the bottom row up: index iy * nx + ix, cell center at
// (x_min + (ix + 0.5) dx, y_min + (iy + 0.5) dy).
struct RegionGrid {
  GridWindow window{0.0, 0.0, 0.0, 0.0};
  int nx = 0;
  int ny = 0;
  int k = 0;
  std::vector<Ternary> cells;
  MemberOptions member_opts;
  // Filled by the Monte-Carlo scan only.
  int mc_samples = 0;
  std::uint64_t mc_seed = 0;

  Complex cell_center(int ix, int iy) const;
};

// Component labels over the non-OUT cells of a grid, 8-connected. OUT cells
// keep label 0; the others carry 1..count.
struct ComponentLabels {
  std::vector<int> labels;
  int count = 0;
};

// Boundary polylines extracted between non-OUT and OUT cells by marching
// squares on the cell-center lattice. A closed loop repeats its first point
// at the end. clipped reports that the non-OUT region touches the border
// ring of the lattice, where the window edge truncates the true boundary;
// that edge itself is never emitted.
struct BoundarySample {
  std::vector<std::vector<Complex>> polylines;
  bool clipped = false;
};

struct SharpPointCandidate {
  Complex point;
  double turning_angle;
};

struct BoundednessResult {
  bool bounded = false;
  // Filled when bounded: the set lies in |mu| <= radius because the lead
  // coefficient's support curve stays below -separation at every angle,
  // radius = max(1, sum_{j<m} ||A_j||_F / separation).
  double theta = 0.0;
  double separation = 0.0;
  double radius = 0.0;
};

struct InclusionPointReport {
  Complex point;
  Ternary status_poly;
  Ternary status_companion;
  bool checked;  // the inclusion constrains the point only when status_poly is IN
  bool pass;
};

struct InclusionReport {
  std::vector<InclusionPointReport> points;
  // The origin belongs to the companion range whenever the degree is at
  // least 2 (the top identity block of the pencil compresses to lambda I_k);
  // for a pencil the companion is the polynomial itself and no origin claim
  // holds, so the origin check is recorded but not enforced.
  bool zero_checked = false;
  Ternary zero_status = Ternary::Border;
  bool zero_pass = true;
  bool all_pass = true;
};

class NotAJointTuple : public std::runtime_error {
public:
  explicit NotAJointTuple(double defect);
  double defect() const { return defect_; }

private:
  double defect_;
};

struct JointTupleReport {
  std::vector<Complex> tuple;  // mu_j = trace(Q* A_j Q) / k, ascending power
  double defect = 0.0;
  bool all_zero = false;  // zero tuple polynomial: every point qualifies
  std::vector<Complex> roots;
  std::vector<Ternary> root_status;
};

// Membership of mu in Λ_k(L): 0 ∈ Λ_k(L(mu)) on the evaluated matrix, with
// the default margin scaled by the coefficient sizes,
// 1e-8 * (1 + sum_j ||A_j||_F max(1, |mu|)^j).
MemberResult member(const MatrixPolynomial& l, int k, Complex mu,
                    const MemberOptions& opts = {});

// Membership at every cell center. nx, ny >= 2, window non-degenerate.
RegionGrid grid_scan(const MatrixPolynomial& l, int k, const GridWindow& window,
                     int nx, int ny, const MemberOptions& opts = {});

// Membership at `samples` equally spaced points from z_start to z_end,
// endpoints included. samples >= 2.
std::vector<Ternary> line_scan(const MatrixPolynomial& l, int k, Complex z_start,
                               Complex z_end, int samples,
                               const MemberOptions& opts = {});

ComponentLabels components(const RegionGrid& grid);

// Sufficient boundedness test: 0 outside Λ_k of the lead coefficient gives a
// radius bound; anything else is inconclusive (bounded = false), which does
// not assert unboundedness.
BoundednessResult boundedness_check(const MatrixPolynomial& l, int k,
                                    const MemberOptions& opts = {});

// Intersection raster of the numerical ranges of n_samples seeded random
// (n-k+1)-column compressions: a cell is OUT once one compression certifies
// 0 outside its range at the cell center, IN otherwise. The IN set is always
// a superset of grid_scan's IN set over the same lattice.
RegionGrid montecarlo_region(const MatrixPolynomial& l, int k, int n_samples,
                             const GridWindow& window, int nx, int ny,
                             std::uint64_t seed);

BoundarySample boundary_trace(const RegionGrid& grid);

// Boundary vertices whose direction turns by at least angle_threshold,
// measured between the chords window_len points back and forward. Runs of
// adjacent detections collapse to the sharpest vertex. A heuristic locator:
// corners of the raster boundary, not certified sharp points of the set.
std::vector<SharpPointCandidate> sharp_points_poly(const BoundarySample& boundary,
                                                   int window_len,
                                                   double angle_threshold);

// For each test point with member(l, k, p) = IN, checks that the point also
// belongs (non-OUT) to Λ_k of the companion pencil, and records the origin
// check described at InclusionReport.
InclusionReport companion_inclusion_check(const MatrixPolynomial& l, int k,
                                          const std::vector<Complex>& test_points,
                                          const MemberOptions& opts = {});

// Compressions Q* A_j Q must all be scalar to within tol (defect measured as
// max_j ||Q* A_j Q - (trace/k) I||_F, the closest scalar); the resulting
// scalar polynomial's roots are then membership candidates, each reported
// with its member status. A defect above tol throws NotAJointTuple.
JointTupleReport verify_joint_tuple(const MatrixPolynomial& l, const Isometry& q,
                                    double tol = 1e-8);

}  // namespace hrnr
