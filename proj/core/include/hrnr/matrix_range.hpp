#pragma once

#include <vector>

#include "hrnr/cmatrix.hpp"

namespace hrnr {

enum class Ternary { In, Out, Border };

const char* to_string(Ternary t);

// One supporting half-plane {z : Re(e^{i theta} z) <= value} of the range,
// where value is the k-th largest eigenvalue of (e^{i theta}A + e^{-i theta}A*)/2.
struct SupportSample {
  double theta;
  double value;
};

struct MemberOptions {
  int n_theta = 256;
  // Width (in theta) to which local minima of the support curve are narrowed
  // by golden-section steps; <= 0 skips refinement and decides from the
  // coarse scan alone.
  double refine_tol = 1e-10;
  // <= 0 selects the scaled default 1e-8 * (1 + ||A||_F).
  double margin = 0.0;
  // Return OUT at the first separating angle found, visiting angles in a
  // spread-out order. The reported certificate is then one separating value,
  // not the global minimum.
  bool early_exit_out = false;
};

struct MemberResult {
  Ternary status;
  double certificate;    // min of the support curve (a separating value on early exit)
  double witness_theta;  // angle attaining the certificate
  double margin;         // margin the decision was made with
};

enum class RegionStatus { Empty, Point, Segment, Polygon, Unbounded };

struct ConvexRegion {
  RegionStatus status = RegionStatus::Empty;
  std::vector<Complex> vertices;  // counterclockwise; 1 point / 2 segment ends
  std::vector<SupportSample> halfplanes;  // every sample used, sorted by theta
  // Indices into halfplanes of two or three half-planes with empty common
  // intersection; filled only for Empty status.
  std::vector<int> empty_certificate;
};

struct SharpVertex {
  Complex vertex;
  double aperture;  // angular width of the exterior normal cone
};

// k-th largest eigenvalue of the rotated Hermitian part at angle theta.
double support_value(const CMatrix& a, int k, double theta);

// Decides 0 ∈ Λ_k(A) from the sign of min_theta of the support curve.
MemberResult member_zero(const CMatrix& a, int k, const MemberOptions& opts = {});

// Decides z ∈ Λ_k(A) via the translate A - zI.
MemberResult member_point(const CMatrix& a, int k, Complex z, const MemberOptions& opts = {});

// Outer polygon of Λ_k(A): intersection of sampled supporting half-planes.
// Starts from n_theta uniform angles, then bisects angle intervals whose
// consecutive-constraint crossing still violates the support at the interval
// midpoint, so polygonal vertices are pinned well below the uniform-grid
// circumscription error. Degenerate results are classified as
// Empty/Point/Segment; Empty carries an infeasibility certificate.
ConvexRegion region_polygon(const CMatrix& a, int k, int n_theta);

// Vertices whose exterior normal cone spans at least aperture_min radians.
// Point regions report aperture 2*pi, segment endpoints pi.
std::vector<SharpVertex> sharp_vertices(const ConvexRegion& region, double aperture_min);

}  // namespace hrnr
