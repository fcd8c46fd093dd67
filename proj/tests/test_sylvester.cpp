#include "doctest.h"

#include <cmath>
#include <vector>

#include "hrnr/poly_range.hpp"
#include "hrnr/sylvester.hpp"
#include "test_support.hpp"

using namespace hrnr;
using hrnr::test::cx;

namespace {

ScalarPoly mul(const ScalarPoly& a, const ScalarPoly& b) {
  std::vector<Complex> c(a.coeffs().size() + b.coeffs().size() - 1);
  for (size_t i = 0; i < a.coeffs().size(); ++i) {
    for (size_t j = 0; j < b.coeffs().size(); ++j) {
      c[i + j] += a.coeffs()[i] * b.coeffs()[j];
    }
  }
  return ScalarPoly(std::move(c));
}

}  // namespace

TEST_CASE("stacked resultant of the pencil compression with scalar lead") {
  const MatrixPolynomial l = hrnr::test::singleton_pencil();
  const Isometry q(hrnr::test::singleton_pencil_frame());
  const auto entries = scalar_entries(l, q);
  // Compressed entries: lambda + 3/8, two constants -3*sqrt(2)/4, lambda + 1/3.
  const double c = -3.0 * std::sqrt(2.0) / 4.0;
  CHECK(std::abs(entries[0][0].eval(cx(0)) - Complex(3.0 / 8.0, 0)) < 1e-12);
  CHECK(std::abs(entries[1][1].eval(cx(0)) - Complex(1.0 / 3.0, 0)) < 1e-12);
  REQUIRE(entries[0][1].degree() == 0);
  CHECK(std::abs(entries[0][1].coeffs()[0] - Complex(c, 0)) < 1e-12);

  const SylvesterRecord rec = build_sylvester(entries);
  CHECK(rec.sigma == 1);
  CHECK(rec.tau == 1);
  REQUIRE(rec.matrix.rows() == 4);
  REQUIRE(rec.matrix.cols() == 2);
  const Complex expected[4][2] = {{cx(1), cx(3.0 / 8.0)},
                                  {cx(1), cx(1.0 / 3.0)},
                                  {cx(0), cx(c)},
                                  {cx(0), cx(c)}};
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 2; ++j) {
      CHECK(std::abs(rec.matrix(i, j) - expected[i][j]) < 1e-12);
    }
  }
  CHECK(rec.rank == 2);
  CHECK(rec.delta == 0);

  // A constant nonzero entry rules out common roots.
  const auto roots = common_roots(l, 2, q);
  CHECK_FALSE(roots.all_of_c);
  CHECK(roots.roots.empty());
}

TEST_CASE("rank-deficient stack for the block diagonal pencil") {
  const MatrixPolynomial l = hrnr::test::kron_pencil();
  CMatrix frame(4, 2);
  frame(0, 0) = cx(1);
  frame(2, 1) = cx(1);
  const Isometry q(frame);
  const SylvesterRecord rec = build_sylvester(scalar_entries(l, q));
  REQUIRE(rec.matrix.rows() == 2);
  REQUIRE(rec.matrix.cols() == 2);
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      CHECK(std::abs(rec.matrix(i, j) - Complex(1, 0)) < 1e-12);
    }
  }
  CHECK(rec.rank == 1);
  CHECK(rec.delta == 1);

  const auto roots = common_roots(l, 2, q);
  REQUIRE(roots.roots.size() == 1);
  CHECK(std::abs(roots.roots[0].root - Complex(-1, 0)) < 1e-10);
  CHECK(roots.roots[0].max_entry_residual < 1e-8);
  CHECK(roots.roots[0].matrix_residual < 1e-8);
  CHECK(member(l, 2, roots.roots[0].root).status != Ternary::Out);
}

TEST_CASE("shared quadratic factor across the first two axis directions") {
  const MatrixPolynomial l = hrnr::test::axis_quadratic();
  CMatrix frame(4, 2);
  frame(0, 0) = cx(1);
  frame(1, 1) = cx(1);
  const Isometry q(frame);
  const SylvesterRecord rec = build_sylvester(scalar_entries(l, q));
  CHECK(rec.sigma == 2);
  CHECK(rec.tau == 2);
  REQUIRE(rec.matrix.rows() == 4);
  REQUIRE(rec.matrix.cols() == 4);
  CHECK(rec.rank == 2);
  CHECK(rec.delta == 2);

  const auto roots = common_roots(l, 2, q);
  REQUIRE(roots.roots.size() == 2);
  double to_zero = 1e9, to_2i = 1e9;
  for (const auto& r : roots.roots) {
    to_zero = std::min(to_zero, std::abs(r.root));
    to_2i = std::min(to_2i, std::abs(r.root - Complex(0, 2)));
    CHECK(r.max_entry_residual < 1e-8);
    CHECK(r.matrix_residual < 1e-8);
    CHECK(member(l, 2, r.root).status != Ternary::Out);
  }
  CHECK(to_zero < 1e-9);
  CHECK(to_2i < 1e-9);
}

TEST_CASE("rank deficit counts the planted common factor") {
  const ScalarPoly g({cx(0, -2), cx(-1, 2), cx(1)});  // (x-1)(x+2i)
  const std::vector<std::vector<ScalarPoly>> fam = {
      {mul(g, ScalarPoly({cx(-3), cx(1)})),
       mul(g, ScalarPoly({cx(1), cx(0), cx(1)})),
       mul(g, ScalarPoly({cx(5), cx(1)}))}};
  const SylvesterRecord rec = build_sylvester(fam);
  CHECK(rec.sigma == 4);
  CHECK(rec.tau == 3);
  CHECK(rec.matrix.rows() == 11);
  CHECK(rec.matrix.cols() == 7);
  CHECK(rec.delta == 2);

  SUBCASE("coprime family has full deficit-free rank") {
    const SylvesterRecord r2 = build_sylvester(
        {{ScalarPoly({cx(-1), cx(1)}), ScalarPoly({cx(1), cx(1)})}});
    CHECK(r2.delta == 0);
    CHECK(r2.rank == 2);
  }
  SUBCASE("single linear common factor") {
    const ScalarPoly f({cx(-2), cx(1)});
    const SylvesterRecord r3 = build_sylvester(
        {{mul(f, ScalarPoly({cx(1), cx(1)})), f}});
    CHECK(r3.sigma == 2);
    CHECK(r3.tau == 1);
    CHECK(r3.delta == 1);
  }
}

TEST_CASE("zero entries do not disturb the stack") {
  const ScalarPoly f({cx(-2), cx(1)});
  const ScalarPoly g({cx(1), cx(2), cx(1)});
  const ScalarPoly zero;
  const SylvesterRecord with_zeros =
      build_sylvester({{f, zero, g}, {zero, zero}});
  const SylvesterRecord without = build_sylvester({{f, g}});
  CHECK(with_zeros.sigma == without.sigma);
  CHECK(with_zeros.tau == without.tau);
  CHECK(with_zeros.rank == without.rank);
  CHECK(with_zeros.delta == without.delta);
  CHECK(with_zeros.matrix.rows() == without.matrix.rows());
}

TEST_CASE("family of one keeps its own degree as the deficit") {
  // (x-1)^2 alone: the common factor is the polynomial itself.
  const SylvesterRecord rec = build_sylvester({{ScalarPoly({cx(1), cx(-2), cx(1)})}});
  CHECK(rec.sigma == 2);
  CHECK(rec.tau == 2);
  CHECK(rec.rank == 2);
  CHECK(rec.delta == 2);
}

TEST_CASE("all-constant family collapses to the trivial stack") {
  const SylvesterRecord rec =
      build_sylvester({{ScalarPoly({cx(2)}), ScalarPoly({cx(0, 1)})}});
  CHECK(rec.sigma == 0);
  CHECK(rec.matrix.rows() == 1);
  CHECK(rec.matrix.cols() == 1);
  CHECK(rec.rank == 0);
  CHECK(rec.delta == 0);
}

TEST_CASE("all-zero family is degenerate") {
  const std::vector<std::vector<ScalarPoly>> family{{ScalarPoly(), ScalarPoly()}};
  CHECK_THROWS_AS(build_sylvester(family), DegenerateAllZero);
}

TEST_CASE("generic compression keeps a deficit-free stack") {
  const MatrixPolynomial p = hrnr::test::random_poly(4, 2, 61);
  const Isometry q = random_isometry(4, 2, 62);
  const SylvesterRecord rec = build_sylvester(scalar_entries(p, q));
  CHECK(rec.sigma == 2);
  CHECK(rec.tau == 2);
  CHECK(rec.matrix.rows() == 2 + 3 * 2);
  CHECK(rec.matrix.cols() == 4);
  CHECK(rec.delta == 0);
}

TEST_CASE("all-zero compression reports the whole plane") {
  CMatrix a(2, 2);
  a(0, 1) = cx(2);
  const MatrixPolynomial l({CMatrix(2, 2), a});
  CMatrix e1(2, 1);
  e1(0, 0) = cx(1);
  const auto res = common_roots(l, 1, Isometry(e1));
  CHECK(res.all_of_c);
  CHECK(res.roots.empty());
}

TEST_CASE("frame width must match the requested rank") {
  const MatrixPolynomial l = hrnr::test::kron_pencil();
  CHECK_THROWS_AS(common_roots(l, 3, Isometry(hrnr::test::singleton_pencil_frame())),
                  DimensionError);
}

TEST_CASE("probe certifies members of the block pencil") {
  // The rank-2 set here is a large region (it contains -1 via the frame
  // (e1, e3)), so hits may land anywhere in it; what matters is that each
  // hit is independently certified.
  const MatrixPolynomial l = hrnr::test::kron_pencil();
  const ProbeResult res = nonemptiness_probe(l, 2, 16, 5);
  CHECK(res.samples == 16);
  REQUIRE_FALSE(res.hits.empty());
  for (const ProbeHit& h : res.hits) {
    CHECK(h.max_entry_residual < 1e-8);
    CHECK(h.matrix_residual < 1e-8);
    CHECK(member(l, 2, h.point).status != Ternary::Out);
    // Re-certify the reported frame independently.
    const auto rc = common_roots(l, 2, Isometry(h.q));
    REQUIRE_FALSE(rc.roots.empty());
  }
}

TEST_CASE("probe hits are certified members of the quadratic example") {
  const MatrixPolynomial l = hrnr::test::quartic_bounded();
  const ProbeResult res = nonemptiness_probe(l, 2, 10, 11);
  for (const ProbeHit& h : res.hits) {
    CHECK(h.max_entry_residual < 1e-8);
    CHECK(h.matrix_residual < 1e-8);
    CHECK(member(l, 2, h.point).status != Ternary::Out);
  }
}

TEST_CASE("probe on an empty rank-2 set comes back without hits") {
  CMatrix a(2, 2);
  a(0, 1) = cx(2);
  CMatrix minus_a = Complex(-1, 0) * a;
  const MatrixPolynomial l({minus_a, CMatrix::identity(2)});
  const ProbeResult res = nonemptiness_probe(l, 2, 6, 3);
  CHECK(res.hits.empty());
  CHECK(res.samples == 6);
}

TEST_CASE("probe argument validation") {
  const MatrixPolynomial l = hrnr::test::kron_pencil();
  CHECK_THROWS_AS(nonemptiness_probe(l, 0, 4, 1), DimensionError);
  CHECK_THROWS_AS(nonemptiness_probe(l, 5, 4, 1), DimensionError);
  CHECK_THROWS_AS(nonemptiness_probe(l, 2, 0, 1), std::invalid_argument);
}
