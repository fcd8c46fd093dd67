#include "doctest.h"

#include <algorithm>
#include <cmath>

#include "hrnr/matpoly.hpp"
#include "test_support.hpp"

using namespace hrnr;
using hrnr::test::cx;
using hrnr::test::mat;
using hrnr::test::random_poly;

namespace {

// Direct power-sum evaluation, independent of the library's Horner loop.
CMatrix eval_direct(const MatrixPolynomial& p, Complex mu) {
  CMatrix acc(p.n(), p.n());
  Complex pw(1.0, 0.0);
  for (int j = 0; j <= p.degree(); ++j) {
    acc += pw * p.coeff(j);
    pw *= mu;
  }
  return acc;
}

void check_roots_match(const std::vector<Complex>& got,
                       std::vector<Complex> expected, double tol) {
  REQUIRE(got.size() == expected.size());
  for (const Complex& r : got) {
    auto best = std::min_element(expected.begin(), expected.end(),
                                 [&](Complex x, Complex y) {
                                   return std::abs(x - r) < std::abs(y - r);
                                 });
    REQUIRE(best != expected.end());
    CHECK(std::abs(*best - r) < tol);
    expected.erase(best);
  }
}

}  // namespace

TEST_CASE("scalar polynomial trims trailing zeros") {
  ScalarPoly p({cx(1), cx(2), cx(0), cx(0)});
  CHECK(p.degree() == 1);
  ScalarPoly z({cx(0), cx(0)});
  CHECK(z.is_zero());
  CHECK(z.degree() == -1);
  CHECK(z.eval(cx(3, 4)) == Complex(0, 0));
}

TEST_CASE("scalar polynomial roots of a factored cubic") {
  // (x - 1)(x - 2i)(x + 3)
  ScalarPoly p({cx(0, 6), cx(-3, -4), cx(2, -2), cx(1)});
  check_roots_match(p.roots(), {cx(1), cx(0, 2), cx(-3)}, 1e-10);
  CHECK_THROWS_AS(ScalarPoly({cx(5)}).roots(), DegreeError);
  CHECK_THROWS_AS(ScalarPoly(std::vector<Complex>{}).roots(), DegreeError);
}

TEST_CASE("matrix polynomial rejects a zero lead above degree zero") {
  std::vector<CMatrix> coeffs{CMatrix::identity(2), CMatrix(2, 2)};
  CHECK_THROWS_AS(MatrixPolynomial{coeffs}, DegreeError);
  CHECK_NOTHROW(MatrixPolynomial{std::vector<CMatrix>{CMatrix(2, 2)}});  // the zero polynomial
}

TEST_CASE("evaluate agrees with the direct power sum") {
  const MatrixPolynomial p = random_poly(4, 3, 11);
  for (Complex mu : {cx(0), cx(1.5, -2.25), cx(-3, 0.5), cx(0, 4)}) {
    CHECK(approx_equal(evaluate(p, mu), eval_direct(p, mu),
                       1e-12 * p.eval_scale(mu)));
  }
}

TEST_CASE("shift is evaluation at a translate") {
  const MatrixPolynomial p = random_poly(3, 3, 12);
  const Complex a(0.75, -1.5);
  const MatrixPolynomial q = shift(p, a);
  for (Complex mu : {cx(0), cx(1, 1), cx(-2, 0.5)}) {
    CHECK(approx_equal(evaluate(q, mu), evaluate(p, mu + a),
                       1e-12 * p.eval_scale(mu + a)));
  }
}

TEST_CASE("reverse is evaluation at the reciprocal") {
  const MatrixPolynomial p = random_poly(3, 2, 13);
  const MatrixPolynomial r = reverse(p);
  for (Complex mu : {cx(2, 1), cx(-0.5, 0.25), cx(0, 3)}) {
    Complex pw(1.0, 0.0);
    for (int j = 0; j < p.degree(); ++j) pw *= mu;
    CHECK(approx_equal(evaluate(r, mu), pw * evaluate(p, Complex(1.0, 0.0) / mu),
                       1e-10 * p.eval_scale(mu)));
  }
  CHECK_FALSE(r.lead_trimmed());
}

TEST_CASE("reverse trims a zero constant term") {
  const MatrixPolynomial p = hrnr::test::axis_quadratic();
  const MatrixPolynomial r = reverse(p);
  CHECK(r.degree() == 1);
  CHECK(r.lead_trimmed());
  CHECK(approx_equal(r.coeff(0), p.coeff(2), 0.0));
  CHECK(approx_equal(r.coeff(1), p.coeff(1), 0.0));
}

TEST_CASE("compression commutes with evaluation") {
  const MatrixPolynomial p = random_poly(5, 3, 14);
  const Isometry q = random_isometry(5, 2, 15);
  const MatrixPolynomial c = compress(p, q);
  for (Complex mu : {cx(0), cx(1, -1), cx(-0.5, 2)}) {
    const CMatrix direct = adjoint(q.matrix()) * evaluate(p, mu) * q.matrix();
    CHECK(approx_equal(evaluate(c, mu), direct, 1e-12 * p.eval_scale(mu)));
  }
}

TEST_CASE("compression that kills the lead trims and flags it") {
  const MatrixPolynomial p = hrnr::test::kron_pencil();
  // Columns e2 and e4 pick only zero rows of the linear coefficient.
  CMatrix q(4, 2);
  q(1, 0) = cx(1);
  q(3, 1) = cx(1);
  const MatrixPolynomial c = compress(p, Isometry(q));
  CHECK(c.degree() == 0);
  CHECK(c.lead_trimmed());
  CHECK(approx_equal(c.coeff(0), CMatrix::identity(2), 1e-15));
}

TEST_CASE("scalar entries evaluate like the compressed matrix") {
  const MatrixPolynomial p = random_poly(4, 2, 16);
  const Isometry q = random_isometry(4, 3, 17);
  const auto entries = scalar_entries(p, q);
  REQUIRE(entries.size() == 3);
  for (Complex mu : {cx(0.5, 0.5), cx(-1, 2)}) {
    const CMatrix direct = adjoint(q.matrix()) * evaluate(p, mu) * q.matrix();
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        CHECK(std::abs(entries[static_cast<size_t>(i)][static_cast<size_t>(j)].eval(mu) -
                       direct(i, j)) < 1e-12 * p.eval_scale(mu));
      }
    }
  }
}

TEST_CASE("companion of the scalar quadratic lambda^2 + 1") {
  MatrixPolynomial p({mat(1, {cx(1)}), mat(1, {cx(0)}), mat(1, {cx(1)})});
  const Pencil c = companion(p);
  CHECK(approx_equal(c.a, CMatrix::identity(2), 0.0));
  const CMatrix expected_b = mat(2, {cx(0), cx(1), cx(-1), cx(0)});
  CHECK(approx_equal(c.b, expected_b, 0.0));
}

TEST_CASE("companion determinant identity") {
  for (std::uint64_t seed : {21u, 22u}) {
    const MatrixPolynomial p = random_poly(3, 3, seed);
    const Pencil c = companion(p);
    // det(A mu - B) = s * det(P(mu)) with one fixed sign s for all mu.
    Complex s_seen(0.0, 0.0);
    for (Complex mu : {cx(0.3, 0.7), cx(-1.1, 0.2), cx(2, -1)}) {
      CMatrix cm = c.a;
      cm *= mu;
      cm -= c.b;
      const Complex dc = lu_determinant(cm);
      const Complex dp = lu_determinant(evaluate(p, mu));
      const Complex ratio = dc / dp;
      if (s_seen == Complex(0.0, 0.0)) {
        s_seen = ratio;
        CHECK(std::abs(std::abs(ratio) - 1.0) < 1e-8);
      } else {
        CHECK(std::abs(ratio - s_seen) < 1e-8);
      }
    }
  }
}

TEST_CASE("companion of a pencil returns the pencil") {
  const MatrixPolynomial p = hrnr::test::singleton_pencil();
  const Pencil c = companion(p);
  const MatrixPolynomial back = c.to_polynomial();
  CHECK(back.degree() == 1);
  CHECK(approx_equal(back.coeff(0), p.coeff(0), 0.0));
  CHECK(approx_equal(back.coeff(1), p.coeff(1), 0.0));
  CHECK_THROWS_AS(companion(MatrixPolynomial({CMatrix::identity(2)})), DegreeError);
}

TEST_CASE("evaluation scale grows with the point") {
  const MatrixPolynomial p = random_poly(3, 2, 31);
  CHECK(p.eval_scale(cx(0)) > 0.0);
  CHECK(p.eval_scale(cx(10)) > p.eval_scale(cx(1)));
  CHECK(p.eval_scale(cx(0.5)) == p.eval_scale(cx(0)));  // capped below 1
}
