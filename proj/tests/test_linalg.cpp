#include <gamma_cone/gamma.hpp>
#include <gamma_cone/linalg.hpp>
#include <gamma_cone/random.hpp>

#include <Eigen/Dense>
#include <gtest/gtest.h>

using namespace gamma_cone;

namespace {

Matrix random_symmetric(Xorshift64Star &rng, std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j)
      m(i, j) = m(j, i) = rng.uniform(-3, 3);
  return m;
}

double residual(const Matrix &m, const Eigensystem &e) {
  double worst = 0.0;
  for (std::size_t k = 0; k < e.values.size(); ++k) {
    const auto v = e.vector(k);
    const auto mv = m.apply(v);
    for (std::size_t i = 0; i < v.size(); ++i)
      worst = std::max(worst, std::abs(mv[i] - e.values[k] * v[i]));
  }
  return worst;
}

} // namespace

TEST(Jacobi, Examples) {
  const auto id = eigensolve_symmetric(Matrix::identity(4));
  for (double v : id.values)
    EXPECT_NEAR(v, 1.0, 1e-14);
  const auto two = eigensolve_symmetric(Matrix{{1, -1}, {-1, 1}});
  EXPECT_NEAR(two.values[0], 0.0, 1e-14);
  EXPECT_NEAR(two.values[1], 2.0, 1e-14);
  for (std::size_t n = 2; n <= 8; ++n) {
    const auto e = eigensolve_symmetric(laplacian_matrix(make_complete(n)).matrix);
    EXPECT_NEAR(e.values[0], 0.0, 1e-12);
    for (std::size_t k = 1; k < n; ++k)
      EXPECT_NEAR(e.values[k], static_cast<double>(n), 1e-12);
  }
}

TEST(Jacobi, RejectsBadInput) {
  EXPECT_THROW(eigensolve_symmetric(Matrix{{1, 2}, {0, 1}}), std::invalid_argument);
  EXPECT_THROW(eigensolve_symmetric(Matrix(2, 3)), std::invalid_argument);
  EXPECT_THROW(eigensolve_symmetric(Matrix(257, 257)), std::invalid_argument);
}

TEST(Jacobi, AgreesWithEigenOnRandomMatrices) {
  Xorshift64Star rng(23);
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = 1 + rng.below(30);
    const auto m = random_symmetric(rng, n);
    const auto ours = eigensolve_symmetric(m);

    Eigen::MatrixXd em(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        em(i, j) = m(i, j);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> oracle(em);
    for (std::size_t k = 0; k < n; ++k)
      ASSERT_NEAR(ours.values[k], oracle.eigenvalues()(k), 1e-10);
    ASSERT_LT(residual(m, ours), 1e-10);

    // orthonormal columns
    const auto vt_v = ours.vectors.transposed() * ours.vectors;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        ASSERT_NEAR(vt_v(i, j), i == j ? 1.0 : 0.0, 1e-12);
  }
}

TEST(Jacobi, DeterministicAndSignNormalized) {
  Xorshift64Star rng(29);
  const auto m = random_symmetric(rng, 12);
  const auto a = eigensolve_symmetric(m);
  const auto b = eigensolve_symmetric(m);
  EXPECT_EQ(a.values, b.values);
  for (std::size_t k = 0; k < 12; ++k) {
    const auto v = a.vector(k);
    EXPECT_EQ(v, b.vector(k));
    const auto first = std::find_if(v.begin(), v.end(),
                                    [](double x) { return std::abs(x) > 1e-12; });
    ASSERT_NE(first, v.end());
    EXPECT_GT(*first, 0.0);
  }
}

TEST(CanonicalBasis, IndependentOfSpanningSet) {
  // span{e0 + e1, e2} given two different ways
  const std::vector<std::vector<double>> a{{1, 1, 0}, {0, 0, 1}};
  const std::vector<std::vector<double>> b{{2, 2, 3}, {-1, -1, 1}};
  const auto ca = canonical_basis(a);
  const auto cb = canonical_basis(b);
  ASSERT_EQ(ca.size(), 2u);
  ASSERT_EQ(cb.size(), 2u);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      EXPECT_NEAR(ca[i][j], cb[i][j], 1e-12);
  EXPECT_EQ(canonical_basis({{1, 0}, {2, 0}}).size(), 1u);
}

TEST(MatrixOps, Basics) {
  const Matrix a{{1, 2}, {3, 4}};
  const auto p = a * Matrix::identity(2);
  EXPECT_DOUBLE_EQ(p(1, 0), 3);
  EXPECT_DOUBLE_EQ(a.trace(), 5);
  EXPECT_DOUBLE_EQ(a.transposed()(0, 1), 3);
  EXPECT_DOUBLE_EQ((a - a).max_abs(), 0);
  EXPECT_DOUBLE_EQ((2.0 * a)(1, 1), 8);
  const std::vector<double> x{1, 1};
  EXPECT_DOUBLE_EQ(a.quadratic(x), 10);
}
