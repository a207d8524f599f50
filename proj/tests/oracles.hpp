// Independent reference routines for the unit tests. Deliberately naive.
#ifndef GRADCODE_TESTS_ORACLES_HPP
#define GRADCODE_TESTS_ORACLES_HPP

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

namespace oracle {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations, descending.
inline Vector jacobi_eigenvalues(Matrix a) {
  const auto n = a.rows();
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (Eigen::Index p = 0; p < n; ++p)
      for (Eigen::Index q = p + 1; q < n; ++q) off += a(p, q) * a(p, q);
    if (off < 1e-26) break;
    for (Eigen::Index p = 0; p < n; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        if (std::fabs(a(p, q)) < 1e-300) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * a(p, q));
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0), s = t * c;
        for (Eigen::Index k = 0; k < n; ++k) {
          const double akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const double apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
      }
    }
  }
  Vector d = a.diagonal();
  std::sort(d.data(), d.data() + d.size(), std::greater<>());
  return d;
}

/// Dominant eigenpair by power iteration from the all-ones start.
inline std::pair<double, Vector> power_iteration(const Matrix& a, int iters = 2000) {
  Vector x = Vector::Ones(a.rows()).normalized();
  double lambda = 0.0;
  for (int i = 0; i < iters; ++i) {
    Vector y = a * x;
    lambda = x.dot(y);
    x = y.normalized();
  }
  return {lambda, x};
}

/// min_v ||A_F v - b||^2 through the normal equations and an eigen
/// pseudo-inverse of A_F^T A_F.
inline double ls_residual(const Matrix& a, const Vector& b, const std::vector<int>& support) {
  Matrix sub(a.rows(), static_cast<Eigen::Index>(support.size()));
  for (std::size_t i = 0; i < support.size(); ++i) sub.col(static_cast<Eigen::Index>(i)) = a.col(support[i]);
  const Matrix g = sub.transpose() * sub;
  Eigen::SelfAdjointEigenSolver<Matrix> es(g);
  const double top = es.eigenvalues().cwiseAbs().maxCoeff();
  Vector inv = Vector::Zero(g.rows());
  for (Eigen::Index i = 0; i < g.rows(); ++i) {
    if (es.eigenvalues()(i) > 1e-11 * top) inv(i) = 1.0 / es.eigenvalues()(i);
  }
  const Vector v = es.eigenvectors() * inv.asDiagonal() * es.eigenvectors().transpose() * (sub.transpose() * b);
  return (sub * v - b).squaredNorm();
}

/// Worst (1/K) residual over all S-subsets of stragglers, by bitmask.
inline double worst_case_brute(const Matrix& e, int S) {
  const int n = static_cast<int>(e.cols());
  const Vector ones = Vector::Ones(e.rows());
  double worst = 0.0;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    if (__builtin_popcount(mask) != S) continue;
    std::vector<int> live;
    for (int j = 0; j < n; ++j)
      if (!(mask >> j & 1u)) live.push_back(j);
    worst = std::max(worst, ls_residual(e, ones, live) / static_cast<double>(e.rows()));
  }
  return worst;
}

/// Effective resistance by grounding vertex v and solving the reduced system.
inline double grounded_resistance(const Matrix& laplacian, int u, int v) {
  const auto n = laplacian.rows();
  std::vector<int> keep;
  for (int i = 0; i < n; ++i)
    if (i != v) keep.push_back(i);
  Matrix red(n - 1, n - 1);
  for (std::size_t i = 0; i < keep.size(); ++i)
    for (std::size_t j = 0; j < keep.size(); ++j) red(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = laplacian(keep[i], keep[j]);
  Vector rhs = Vector::Zero(n - 1);
  const auto pos = std::find(keep.begin(), keep.end(), u) - keep.begin();
  rhs(pos) = 1.0;
  const Vector x = red.ldlt().solve(rhs);
  return x(pos);
}

/// Type-7 sample quantile.
inline double quantile7(std::vector<double> x, double q) {
  std::sort(x.begin(), x.end());
  const double h = (static_cast<double>(x.size()) - 1.0) * q;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const auto hi = std::min(lo + 1, x.size() - 1);
  return x[lo] + (h - static_cast<double>(lo)) * (x[hi] - x[lo]);
}

/// Fano plane: lines {i, i+1, i+3} mod 7, points as rows.
inline Matrix fano() {
  Matrix m = Matrix::Zero(7, 7);
  for (int line = 0; line < 7; ++line)
    for (int off : {0, 1, 3}) m((line + off) % 7, line) = 1.0;
  return m;
}

/// 1 - (1/K) L^2 (N-S) / (L + lambda (N-S-1)).
inline double bibd_error(double N, double K, double L, double lambda, double S) {
  return 1.0 - L * L * (N - S) / (K * (L + lambda * (N - S - 1.0)));
}

}  // namespace oracle

#endif
