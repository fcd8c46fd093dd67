#include "doctest.h"

#include <algorithm>
#include <cmath>

#include "hrnr/numkit.hpp"
#include "test_support.hpp"

#if HRNR_HAVE_EIGEN
#include <Eigen/Dense>
#endif

using namespace hrnr;
using hrnr::test::cx;
using hrnr::test::mat;
using hrnr::test::random_gaussian;

#if HRNR_HAVE_EIGEN
namespace {

Eigen::MatrixXcd to_eigen(const CMatrix& a) {
  Eigen::MatrixXcd m(a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
  }
  return m;
}

}  // namespace
#endif

TEST_CASE("hermitian eigenvalues of a known matrix") {
  // [[2, i],[-i, 2]] has eigenvalues 3 and 1.
  const CMatrix h = mat(2, {cx(2), cx(0, 1), cx(0, -1), cx(2)});
  const auto vals = hermitian_eigenvalues(h);
  REQUIRE(vals.size() == 2);
  CHECK(vals[0] == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(vals[1] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("non-hermitian input is rejected") {
  const CMatrix a = mat(2, {cx(1), cx(2), cx(3), cx(4)});
  CHECK_THROWS_AS(hermitian_eigenvalues(a), NumericError);
}

#if HRNR_HAVE_EIGEN
TEST_CASE("hermitian eigenvalues match Eigen on random matrices") {
  for (int n : {3, 5, 8, 12}) {
    CMatrix g = random_gaussian(n, n, 100 + static_cast<std::uint64_t>(n));
    CMatrix h = g + adjoint(g);
    const auto vals = hermitian_eigenvalues(h);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(to_eigen(h));
    REQUIRE(static_cast<int>(vals.size()) == n);
    const double scale = frobenius_norm(h);
    for (int i = 0; i < n; ++i) {
      // Eigen sorts ascending, ours descending.
      CHECK(std::abs(vals[static_cast<size_t>(i)] - es.eigenvalues()(n - 1 - i)) <
            1e-11 * scale);
    }
  }
}

TEST_CASE("singular values match Eigen") {
  for (int idx = 0; idx < 4; ++idx) {
    const int rows = 3 + idx;
    const int cols = 3 + (idx % 2) * 2;
    CMatrix a = random_gaussian(rows, cols, 200 + static_cast<std::uint64_t>(idx));
    const auto sv = singular_values(a);
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(to_eigen(a));
    REQUIRE(static_cast<int>(sv.size()) == std::min(rows, cols));
    for (size_t i = 0; i < sv.size(); ++i) {
      CHECK(std::abs(sv[i] - svd.singularValues()(static_cast<int>(i))) <
            1e-11 * (1.0 + svd.singularValues()(0)));
    }
  }
}

TEST_CASE("complex eigenvalues match Eigen as a multiset") {
  for (int n : {3, 5, 7}) {
    CMatrix a = random_gaussian(n, n, 300 + static_cast<std::uint64_t>(n));
    auto ours = complex_eigenvalues(a);
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(to_eigen(a));
    REQUIRE(static_cast<int>(ours.size()) == n);
    std::vector<Complex> ref(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) ref[static_cast<size_t>(i)] = es.eigenvalues()(i);
    // Greedy nearest matching; eigenvalues of these draws are well separated.
    const double scale = frobenius_norm(a);
    for (const Complex& r : ref) {
      auto best = std::min_element(ours.begin(), ours.end(),
                                   [&](Complex x, Complex y) {
                                     return std::abs(x - r) < std::abs(y - r);
                                   });
      REQUIRE(best != ours.end());
      CHECK(std::abs(*best - r) < 1e-9 * scale);
      ours.erase(best);
    }
  }
}
#endif

TEST_CASE("svd rank on constructed low-rank matrices") {
  CMatrix u = random_gaussian(6, 2, 41);
  CMatrix v = random_gaussian(2, 6, 42);
  CHECK(svd_rank(u * v) == 2);
  CHECK(svd_rank(CMatrix(4, 4)) == 0);
  CHECK(svd_rank(CMatrix::identity(5)) == 5);
}

TEST_CASE("determinant of a triangular product") {
  // det([[2,1],[0,3i]]) = 6i
  const CMatrix a = mat(2, {cx(2), cx(1), cx(0), cx(0, 3)});
  CHECK(std::abs(lu_determinant(a) - Complex(0, 6)) < 1e-12);
}

TEST_CASE("counter rng replays exactly") {
  CounterRng r1(77);
  std::vector<double> first;
  for (int i = 0; i < 10; ++i) first.push_back(r1.normal());
  CounterRng r2(77);
  for (int i = 0; i < 10; ++i) CHECK(r2.normal() == first[static_cast<size_t>(i)]);
  CounterRng r3(78);
  bool any_diff = false;
  for (int i = 0; i < 10; ++i) any_diff = any_diff || (r3.normal() != first[static_cast<size_t>(i)]);
  CHECK(any_diff);
}

TEST_CASE("random isometries are orthonormal frames") {
  for (int trial = 0; trial < 5; ++trial) {
    const int n = 3 + trial;
    const int k = 1 + (trial % 3);
    Isometry q = random_isometry(n, k, 500 + static_cast<std::uint64_t>(trial));
    CHECK(q.n() == n);
    CHECK(q.k() == k);
    CHECK(q.orthonormality_defect() < 1e-13);
    Isometry again = random_isometry(n, k, 500 + static_cast<std::uint64_t>(trial));
    CHECK(approx_equal(q.matrix(), again.matrix(), 0.0));
  }
}

TEST_CASE("orthonormalize_columns fixes a mildly skewed frame") {
  CMatrix q = random_isometry(5, 3, 7).matrix();
  q(0, 0) += Complex(1e-7, 0.0);
  q(3, 2) += Complex(0.0, -2e-7);
  const CMatrix fixed = orthonormalize_columns(q);
  const CMatrix gram = adjoint(fixed) * fixed;
  CHECK(frobenius_norm(gram - CMatrix::identity(3)) < 1e-14);
  CHECK(approx_equal(fixed, q, 1e-6));
}

TEST_CASE("dependent columns are rejected") {
  CMatrix q(4, 2);
  for (int i = 0; i < 4; ++i) {
    q(i, 0) = Complex(1.0, 0.0);
    q(i, 1) = Complex(2.0, 0.0);
  }
  CHECK_THROWS_AS(orthonormalize_columns(q), NumericError);
}

TEST_CASE("isometry constructor enforces the defect bound") {
  CMatrix q = random_isometry(4, 2, 9).matrix();
  CHECK_NOTHROW(Isometry{q});
  q(0, 0) += Complex(1e-3, 0.0);
  CHECK_THROWS_AS(Isometry{q}, IsometryError);
}
