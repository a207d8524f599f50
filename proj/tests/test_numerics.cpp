#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <vector>

#include "gradcode/graph.hpp"
#include "gradcode/numerics.hpp"
#include "gradcode/rng.hpp"
#include "oracles.hpp"

using namespace gradcode;
using namespace gradcode::numerics;

namespace {

Matrix random_matrix(Index r, Index c, std::uint64_t seed) {
  SeededRng rng(seed);
  Matrix m(r, c);
  for (Index i = 0; i < m.size(); ++i) m.data()[i] = rng.normal();
  return m;
}

}  // namespace

TEST(LeastSquares, IdentityFullSupport) {
  const std::vector<Index> all{0, 1, 2};
  const Vector v = solve_least_squares(Matrix::Identity(3, 3), Vector::Ones(3), all);
  EXPECT_TRUE(v.isApprox(Vector::Ones(3)));
}

TEST(LeastSquares, IdentityMissingColumn) {
  const std::vector<Index> two{0, 1};
  const Vector v = solve_least_squares(Matrix::Identity(3, 3), Vector::Ones(3), two);
  EXPECT_DOUBLE_EQ(v(0), 1.0);
  EXPECT_DOUBLE_EQ(v(1), 1.0);
  EXPECT_DOUBLE_EQ(v(2), 0.0);
  EXPECT_NEAR((Matrix::Identity(3, 3) * v - Vector::Ones(3)).squaredNorm(), 1.0, 1e-14);
}

TEST(LeastSquares, FanoAnySixColumns) {
  const Matrix f = oracle::fano();
  for (int drop = 0; drop < 7; ++drop) {
    std::vector<Index> live;
    std::vector<int> live_int;
    for (int j = 0; j < 7; ++j) {
      if (j != drop) {
        live.push_back(j);
        live_int.push_back(j);
      }
    }
    const Vector v = solve_least_squares(f, Vector::Ones(7), live);
    const double r = (f * v - Vector::Ones(7)).squaredNorm();
    EXPECT_NEAR(r, 0.25, 1e-12);
    EXPECT_NEAR(r, oracle::ls_residual(f, Vector::Ones(7), live_int), 1e-12);
  }
}

TEST(LeastSquares, RankDeficientGivesMinimumNorm) {
  Matrix a(2, 3);
  a << 1, 1, 0, 1, 1, 0;
  const std::vector<Index> all{0, 1, 2};
  const Vector v = solve_least_squares(a, Vector::Ones(2), all);
  EXPECT_NEAR(v(0), 0.5, 1e-12);
  EXPECT_NEAR(v(1), 0.5, 1e-12);
  EXPECT_NEAR(v(2), 0.0, 1e-12);
}

TEST(LeastSquares, EmptySupportThrows) {
  EXPECT_THROW(solve_least_squares(Matrix::Identity(2, 2), Vector::Ones(2), std::vector<Index>{}), ParameterError);
}

TEST(LeastSquares, RandomSupportsMatchNormalEquations) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Matrix a = random_matrix(8, 6, seed);
    SeededRng rng(seed, 7);
    std::vector<Index> live;
    std::vector<int> live_int;
    for (int j = 0; j < 6; ++j) {
      if (rng.bernoulli(0.6)) {
        live.push_back(j);
        live_int.push_back(j);
      }
    }
    if (live.empty()) continue;
    const Vector b = random_matrix(8, 1, seed + 100);
    const Vector v = solve_least_squares(a, b, live);
    EXPECT_NEAR((a * v - b).squaredNorm(), oracle::ls_residual(a, b, live_int), 1e-9);
  }
}

TEST(SymmetricEigen, Diagonal) {
  Matrix a = Matrix::Zero(2, 2);
  a(0, 0) = 3;
  a(1, 1) = 1;
  const Vector ev = symmetric_eigenvalues(a);
  EXPECT_DOUBLE_EQ(ev(0), 3.0);
  EXPECT_DOUBLE_EQ(ev(1), 1.0);
}

TEST(SymmetricEigen, AllOnesRankOne) {
  const Vector ev = symmetric_eigenvalues(Matrix::Ones(3, 3));
  EXPECT_NEAR(ev(0), 3.0, 1e-12);
  EXPECT_NEAR(ev(1), 0.0, 1e-12);
  EXPECT_NEAR(ev(2), 0.0, 1e-12);
}

TEST(SymmetricEigen, RegularMatrixTopPairIsOnesDirection) {
  // Constant 3x3 block of ones extended to row sums 4 (the degenerate EP case).
  Matrix e(4, 4);
  e << 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1;
  const auto dec = symmetric_eigen(e);
  EXPECT_NEAR(dec.values(0), 4.0, 1e-12);
  const auto [lambda, vec] = oracle::power_iteration(e);
  EXPECT_NEAR(lambda, 4.0, 1e-10);
  EXPECT_NEAR(std::fabs(dec.vectors.col(0).dot(vec)), 1.0, 1e-10);
  EXPECT_NEAR(std::fabs(dec.vectors.col(0).dot(Vector::Ones(4).normalized())), 1.0, 1e-10);
}

TEST(SymmetricEigen, MatchesJacobiOnRandom) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Matrix r = random_matrix(7, 7, seed);
    const Matrix a = r + r.transpose();
    const Vector ours = symmetric_eigenvalues(a);
    const Vector ref = oracle::jacobi_eigenvalues(a);
    EXPECT_LT((ours - ref).cwiseAbs().maxCoeff(), 1e-9);
    for (Index i = 1; i < ours.size(); ++i) EXPECT_GE(ours(i - 1), ours(i));
  }
}

TEST(SymmetricEigen, RejectsNonSymmetric) {
  Matrix a(2, 2);
  a << 1, 2, 0, 1;
  EXPECT_ANY_THROW(symmetric_eigen(a));
}

TEST(SingularValues, Identity) {
  const auto s = singular_values(Matrix::Identity(2, 2), 2);
  EXPECT_DOUBLE_EQ(s.values(0), 1.0);
  EXPECT_DOUBLE_EQ(s.values(1), 1.0);
}

TEST(SingularValues, Swap) {
  Matrix a(2, 2);
  a << 0, 1, 1, 0;
  const auto s = singular_values(a, 2);
  EXPECT_NEAR(s.values(0), 1.0, 1e-14);
  EXPECT_NEAR(s.values(1), 1.0, 1e-14);
}

TEST(SingularValues, RegularMatrixTopValueIsRowSum) {
  Matrix e(3, 3);
  e << 1.0, 2.0, 0.5, 2.0, 0.5, 1.0, 0.5, 1.0, 2.0;
  const double d = 3.5;
  ASSERT_TRUE((e * Vector::Ones(3)).isApprox(d * Vector::Ones(3)));
  ASSERT_TRUE((e.transpose() * Vector::Ones(3)).isApprox(d * Vector::Ones(3)));
  const auto s = singular_values(e, 2);
  EXPECT_NEAR(s.values(0), d, 1e-12);
  EXPECT_LT(s.values(1), d);
  EXPECT_NEAR(std::fabs(s.left.col(0).dot(Vector::Ones(3).normalized())), 1.0, 1e-12);
  EXPECT_NEAR(std::fabs(s.right.col(0).dot(Vector::Ones(3).normalized())), 1.0, 1e-12);
}

TEST(SingularValues, TripletsSatisfyDefinition) {
  const Matrix a = random_matrix(6, 4, 3);
  const auto s = singular_values(a, 4);
  for (Index i = 0; i < 4; ++i) EXPECT_LT((a * s.right.col(i) - s.values(i) * s.left.col(i)).norm(), 1e-10);
  EXPECT_NEAR(spectral_norm(a), s.values(0), 1e-10);
}

TEST(Exchangeable, ZeroParamsGiveZeroRow) {
  SeededRng rng(1);
  const ExchangeableGaussianParams p{0.0, 0.0, 0.0, 5};
  for (int i = 0; i < 10; ++i) EXPECT_EQ(sample_exchangeable_gaussian_row(p, rng), Vector::Zero(5));
}

TEST(Exchangeable, FanoMomentsMonteCarlo) {
  const ExchangeableGaussianParams p{3.0 / 7.0, 12.0 / 49.0, -2.0 / 49.0, 7};
  ASSERT_TRUE(p.is_psd());
  SeededRng rng(42);
  const int n = 100000;
  Vector mean = Vector::Zero(7);
  double s0 = 0.0, s1 = 0.0, s01 = 0.0, s01sq = 0.0;
  for (int i = 0; i < n; ++i) {
    const Vector x = sample_exchangeable_gaussian_row(p, rng);
    mean += x;
    s0 += x(0);
    s1 += x(1);
    const double prod = (x(0) - p.a) * (x(1) - p.a);
    s01 += prod;
    s01sq += prod * prod;
  }
  mean /= n;
  const double se_mean = std::sqrt(p.b / n);
  for (Index j = 0; j < 7; ++j) EXPECT_LT(std::fabs(mean(j) - p.a), 3.0 * se_mean);
  const double cov = s01 / n;
  const double se_cov = std::sqrt((s01sq / n - cov * cov) / n);
  EXPECT_LT(std::fabs(cov - p.c), 3.0 * se_cov);
  (void)s0;
  (void)s1;
}

TEST(Exchangeable, RejectsIndefiniteCovariance) {
  SeededRng rng(1);
  const ExchangeableGaussianParams p{0.0, 0.1, 0.5, 4};
  EXPECT_FALSE(p.is_psd());
  EXPECT_THROW(sample_exchangeable_gaussian_row(p, rng), ParameterError);
}

TEST(GaussianQuadratic, TrivialCase) { EXPECT_DOUBLE_EQ(gaussian_quadratic_expectation(0, 0, 0, 1), 1.0); }

TEST(GaussianQuadratic, QuadraticTermMonteCarlo) {
  EXPECT_NEAR(gaussian_quadratic_expectation(0.25, 0, 0, 1), std::sqrt(2.0), 1e-12);
  SeededRng rng(5);
  double sum = 0.0;
  const int n = 1000000;
  for (int i = 0; i < n; ++i) {
    const double g = rng.normal();
    sum += std::exp(0.25 * g * g);
  }
  EXPECT_NEAR(sum / n, std::sqrt(2.0), 0.01 * std::sqrt(2.0));
}

TEST(GaussianQuadratic, LinearTermMonteCarlo) {
  EXPECT_NEAR(gaussian_quadratic_expectation(0, 1, 0, 1), std::exp(0.5), 1e-12);
  SeededRng rng(6);
  double sum = 0.0;
  const int n = 1000000;
  for (int i = 0; i < n; ++i) sum += std::exp(rng.normal());
  EXPECT_NEAR(sum / n, std::exp(0.5), 0.01 * std::exp(0.5));
}

TEST(GaussianQuadratic, ShiftedMeanMonteCarlo) {
  const double alpha = 0.1, theta = -0.3, mu = 0.7, s2 = 1.5;
  SeededRng rng(7);
  double sum = 0.0;
  const int n = 1000000;
  for (int i = 0; i < n; ++i) {
    const double g = mu + std::sqrt(s2) * rng.normal();
    sum += std::exp(alpha * g * g + theta * g);
  }
  const double exact = gaussian_quadratic_expectation(alpha, theta, mu, s2);
  EXPECT_NEAR(sum / n, exact, 0.01 * exact);
}

TEST(GaussianQuadratic, DivergentThrows) {
  EXPECT_THROW(gaussian_quadratic_expectation(0.5, 0, 0, 1), ParameterError);
}

TEST(EffectiveResistance, SingleEdge) {
  WeightedGraph g(2);
  g.add_edge(0, 1, 4.0);
  EXPECT_NEAR(effective_resistances(g)[0], 0.25, 1e-12);
}

TEST(EffectiveResistance, TriangleAndSquare) {
  WeightedGraph tri(3);
  tri.add_edge(0, 1, 1.0);
  tri.add_edge(1, 2, 1.0);
  tri.add_edge(2, 0, 1.0);
  for (double r : effective_resistances(tri)) EXPECT_NEAR(r, 2.0 / 3.0, 1e-12);
  WeightedGraph sq(4);
  for (std::size_t i = 0; i < 4; ++i) sq.add_edge(i, (i + 1) % 4, 1.0);
  for (double r : effective_resistances(sq)) EXPECT_NEAR(r, 0.75, 1e-12);
}

TEST(EffectiveResistance, MatchesGroundedSolveAndFosterSum) {
  SeededRng rng(9);
  WeightedGraph g(6);
  for (std::size_t i = 0; i + 1 < 6; ++i) g.add_edge(i, i + 1, 0.5 + rng.uniform());
  for (int t = 0; t < 6; ++t) {
    const auto u = rng.uniform_index(6), v = rng.uniform_index(6);
    if (u != v) g.add_edge(u, v, 0.5 + rng.uniform());
  }
  const auto r = effective_resistances(g);
  const Matrix l = g.laplacian();
  double leverage = 0.0;
  for (std::size_t i = 0; i < g.edge_count(); ++i) {
    const auto& e = g.edges()[i];
    EXPECT_NEAR(r[i], oracle::grounded_resistance(l, static_cast<int>(e.u), static_cast<int>(e.v)), 1e-10);
    leverage += e.weight * r[i];
  }
  EXPECT_NEAR(leverage, 5.0, 1e-9);  // n - 1 for a connected graph
}

TEST(EffectiveResistance, DisconnectedThrows) {
  WeightedGraph g(4);
  g.add_edge(0, 1, 1.0);
  g.add_edge(2, 3, 1.0);
  EXPECT_THROW(effective_resistances(g), ParameterError);
}

TEST(Quantile, MatchesTypeSeven) {
  SeededRng rng(3);
  std::vector<double> x(101);
  for (auto& v : x) v = rng.normal();
  for (double q : {0.0, 0.05, 0.5, 0.9, 0.95, 1.0}) EXPECT_DOUBLE_EQ(quantile(x, q), oracle::quantile7(x, q));
  EXPECT_DOUBLE_EQ(quantile({1.0, 2.0, 3.0, 4.0}, 0.5), 2.5);
}

TEST(Density, CountsNonZeros) {
  Matrix a = Matrix::Zero(2, 2);
  a(0, 1) = 1e-3;
  EXPECT_DOUBLE_EQ(density(a), 0.25);
}

TEST(Rng, ForkedStreamsAreReproducibleAndDistinct) {
  SeededRng a(11), b(11);
  auto fa = a.fork(3), fb = b.fork(3), fc = a.fork(4);
  for (int i = 0; i < 5; ++i) {
    const auto x = fa.next_u64();
    EXPECT_EQ(x, fb.next_u64());
    EXPECT_NE(x, fc.next_u64());
  }
}
