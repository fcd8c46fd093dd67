#pragma once

#include <cstdint>
#include <vector>

#include "hrnr/cmatrix.hpp"
#include "hrnr/matpoly.hpp"
#include "hrnr/numkit.hpp"

namespace hrnr {

// Every input polynomial vanished identically, so any complex number is a
// common root and the stacked resultant carries no information.
struct DegenerateAllZero : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Stacked resultant of a family of scalar polynomials: a band of tau shifted
// copies of the degree-sigma lead polynomial on top, then a band of sigma
// shifted copies of every other nonzero polynomial, all on sigma+tau columns
// with coefficients stored highest power first. The rank deficit delta
// equals the degree of the family's common divisor in exact arithmetic.
struct SylvesterRecord {
  int sigma = 0;  // largest degree in the family
  int tau = 0;    // largest degree among the rest; equals sigma for a family of one
  CMatrix matrix{1, 1};
  int rank = 0;
  int delta = 0;  // tau + sigma - rank
  int lead_i = 0;  // entry picked for the top band, first reaching sigma in
  int lead_j = 0;  // row-major order
};

SylvesterRecord build_sylvester(const std::vector<std::vector<ScalarPoly>>& polys);

// Residuals are relative: entry residuals against tol-scaled per-entry
// coefficient sums (an entry far below the largest entry's scale counts as
// zero), the matrix residual against the polynomial's own scale.
struct CertifiedRoot {
  Complex root;
  double max_entry_residual;
  double matrix_residual;
};

struct CommonRootsResult {
  // All k^2 compressed entries vanished: the compression is identically zero
  // and every point of the plane qualifies.
  bool all_of_c = false;
  std::vector<CertifiedRoot> roots;
};

// Roots shared by every entry of the compression Q*L(lambda)Q: candidate
// roots come from the lowest-degree nonzero entry, and a candidate survives
// only when all entries and the full compressed matrix vanish at it within
// tol. Every surviving root is a member of the rank-k range of L.
CommonRootsResult common_roots(const MatrixPolynomial& l, int k,
                               const Isometry& q, double tol = 1e-8);

struct ProbeHit {
  Complex point;
  CMatrix q;  // isometry whose compression vanishes at the point
  double max_entry_residual;
  double matrix_residual;
  int sample_index;
};

struct ProbeResult {
  std::vector<ProbeHit> hits;
  bool all_of_c_seen = false;
  int samples = 0;
};

// Seeded search for members of the rank-k range: each sample draws a random
// n x k isometry, then drives (Q, rho) toward a zero of Q*L(rho)Q by damped
// least-squares steps before certifying with common_roots. Finding nothing
// proves nothing; hits are certified members.
ProbeResult nonemptiness_probe(const MatrixPolynomial& l, int k, int n_samples,
                               std::uint64_t seed, double tol = 1e-8);

}  // namespace hrnr
