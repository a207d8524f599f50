#ifndef GRADCODE_NUMERICS_HPP
#define GRADCODE_NUMERICS_HPP

#include <algorithm>
#include <cmath>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "gradcode/error.hpp"
#include "gradcode/graph.hpp"
#include "gradcode/rng.hpp"

/// Dense linear algebra and sampling kernels shared by every other module.
///
/// Matrices are small (N up to a few hundred), so everything here is dense
/// and direct; Eigen supplies the factorizations.
namespace gradcode::numerics {

inline bool all_finite(const Matrix& a) { return a.allFinite(); }

inline void require_finite(const Matrix& a, const char* what) {
  if (!a.allFinite()) throw ParameterError(std::string(what) + ": matrix has non-finite entries");
}

// ---------------------------------------------------------------------------
// Least squares
// ---------------------------------------------------------------------------

/// Relative singular-value cutoff for the rank-deficient fallback.
inline constexpr double kRankCutoff = 1e-10;

/// Minimizes ||A v - b||_2 over vectors v supported on `support`.
///
/// The support-restricted column block is solved by column-pivoted QR; when
/// it is rank deficient the minimum-norm solution is taken from a truncated
/// SVD (singular values below kRankCutoff * sigma_1 are dropped), so the
/// result is unique. Entries of v outside the support are zero.
inline Vector solve_least_squares(const Matrix& a, const Vector& b, std::span<const Index> support) {
  if (support.empty()) throw ParameterError("no non-stragglers");
  detail::require(b.size() == a.rows(), "solve_least_squares: rhs length does not match rows");
  for (const Index j : support) {
    detail::require(j >= 0 && j < a.cols(), "solve_least_squares: support index out of range");
  }
  const std::vector<Index> cols(support.begin(), support.end());
  const Matrix sub = a(Eigen::all, cols);

  Vector restricted;
  Eigen::ColPivHouseholderQR<Matrix> qr(sub);
  qr.setThreshold(kRankCutoff);
  if (qr.rank() == sub.cols()) {
    restricted = qr.solve(b);
  } else {
    Eigen::JacobiSVD<Matrix> svd(sub, Eigen::ComputeThinU | Eigen::ComputeThinV);
    svd.setThreshold(kRankCutoff);
    restricted = svd.solve(b);
  }

  Vector v = Vector::Zero(a.cols());
  for (std::size_t i = 0; i < cols.size(); ++i) v(cols[i]) = restricted(static_cast<Index>(i));
  return v;
}

// ---------------------------------------------------------------------------
// Spectral routines
// ---------------------------------------------------------------------------

struct EigenDecomposition {
  Vector values;   ///< descending
  Matrix vectors;  ///< column i pairs with values(i); orthonormal
};

inline bool is_symmetric(const Matrix& a, double tolerance = 1e-10) {
  if (a.rows() != a.cols()) return false;
  const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
  return (a - a.transpose()).cwiseAbs().maxCoeff() <= tolerance * scale;
}

inline EigenDecomposition symmetric_eigen(const Matrix& a) {
  detail::require(a.rows() == a.cols(), "symmetric_eigen: matrix is not square");
  require_finite(a, "symmetric_eigen");
  if (!is_symmetric(a)) throw ParameterError("symmetric_eigen: matrix is not symmetric");
  const Matrix sym = 0.5 * (a + a.transpose());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(sym);
  if (solver.info() != Eigen::Success) throw Error("symmetric_eigen: solver did not converge");
  // Eigen returns ascending order.
  EigenDecomposition out;
  out.values = solver.eigenvalues().reverse();
  out.vectors = solver.eigenvectors().rowwise().reverse();
  return out;
}

inline Vector symmetric_eigenvalues(const Matrix& a) {
  detail::require(a.rows() == a.cols(), "symmetric_eigenvalues: matrix is not square");
  if (!is_symmetric(a)) throw ParameterError("symmetric_eigenvalues: matrix is not symmetric");
  Eigen::SelfAdjointEigenSolver<Matrix> solver(0.5 * (a + a.transpose()), Eigen::EigenvaluesOnly);
  return solver.eigenvalues().reverse();
}

/// Spectral norm of a symmetric matrix, max |lambda_i|.
inline double symmetric_norm(const Matrix& a) {
  if (a.size() == 0) return 0.0;
  const Vector ev = symmetric_eigenvalues(a);
  return std::max(std::fabs(ev(0)), std::fabs(ev(ev.size() - 1)));
}

struct SingularTriplets {
  Vector values;  ///< descending, non-negative
  Matrix left;    ///< column i is u_i
  Matrix right;   ///< column i is v_i
};

/// Top-k singular triplets (A v_i = sigma_i u_i).
inline SingularTriplets singular_values(const Matrix& a, Index k) {
  detail::require(k >= 0 && k <= std::min(a.rows(), a.cols()),
                  "singular_values: k exceeds min(rows, cols)");
  require_finite(a, "singular_values");
  Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  SingularTriplets out;
  out.values = svd.singularValues().head(k);
  out.left = svd.matrixU().leftCols(k);
  out.right = svd.matrixV().leftCols(k);
  return out;
}

inline double spectral_norm(const Matrix& a) {
  if (a.size() == 0) return 0.0;
  Eigen::JacobiSVD<Matrix> svd(a);
  return svd.singularValues()(0);
}

// ---------------------------------------------------------------------------
// Exchangeable Gaussian rows
// ---------------------------------------------------------------------------

/// N(a 1, Sigma) on R^n where Sigma has b on the diagonal and c elsewhere.
struct ExchangeableGaussianParams {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  Index n = 0;

  /// Eigenvalue of Sigma along the all-ones direction.
  double mean_direction_eigenvalue() const { return b + static_cast<double>(n - 1) * c; }
  /// Eigenvalue of Sigma on the complement of the all-ones direction.
  double complement_eigenvalue() const { return b - c; }

  bool is_psd(double tolerance = 1e-12) const {
    const double scale = std::max({1.0, std::fabs(b), std::fabs(c) * static_cast<double>(n)});
    return complement_eigenvalue() >= -tolerance * scale &&
           mean_direction_eigenvalue() >= -tolerance * scale;
  }
};

/// One draw from N(a 1, Sigma) in O(n).
///
/// Uses Sigma = (b - c) (I - P) + (b + (n-1) c) P with P the projector onto
/// the all-ones direction, so no n x n factorization is needed and c < 0 is
/// handled as long as Sigma is PSD.
inline Vector sample_exchangeable_gaussian_row(const ExchangeableGaussianParams& p, SeededRng& rng) {
  detail::require(p.n > 0, "sample_exchangeable_gaussian_row: dimension must be positive");
  if (!p.is_psd()) throw ParameterError("infeasible covariance");
  const double s_perp = std::sqrt(std::max(0.0, p.complement_eigenvalue()));
  const double s_mean = std::sqrt(std::max(0.0, p.mean_direction_eigenvalue()));
  Vector z(p.n);
  for (Index i = 0; i < p.n; ++i) z(i) = rng.normal();
  const double zbar = z.mean();
  Vector x(p.n);
  for (Index i = 0; i < p.n; ++i) x(i) = p.a + s_perp * (z(i) - zbar) + s_mean * zbar;
  return x;
}

// ---------------------------------------------------------------------------
// Gaussian exponential-quadratic moment
// ---------------------------------------------------------------------------

/// E[exp(alpha G^2 + theta G)] for G ~ N(mu, sigma2), requiring alpha < 1/(2 sigma2).
///
/// Closed form obtained by completing the square:
///   (1 - 2 alpha sigma2)^(-1/2) exp( (theta sigma2 + mu)^2 / (sigma2 (2 - 4 alpha sigma2))
///                                    - mu^2 / (2 sigma2) ).
/// For mu = 0, sigma2 = 1 this is exp(theta^2 / (2 - 4 alpha)) / sqrt(1 - 2 alpha).
inline double gaussian_quadratic_expectation(double alpha, double theta, double mu, double sigma2) {
  detail::require(sigma2 > 0.0, "gaussian_quadratic_expectation: variance must be positive");
  if (!(alpha < 1.0 / (2.0 * sigma2))) throw ParameterError("divergent expectation");
  const double shrink = 1.0 - 2.0 * alpha * sigma2;
  const double shift = theta * sigma2 + mu;
  const double exponent = shift * shift / (2.0 * sigma2 * shrink) - mu * mu / (2.0 * sigma2);
  return std::exp(exponent) / std::sqrt(shrink);
}

// ---------------------------------------------------------------------------
// Effective resistances
// ---------------------------------------------------------------------------

/// Moore-Penrose pseudoinverse of a connected graph's Laplacian.
inline Matrix laplacian_pseudoinverse(const Matrix& laplacian) {
  const Index n = laplacian.rows();
  const Matrix shift = Matrix::Constant(n, n, 1.0 / static_cast<double>(n));
  // L + J/n is invertible for connected graphs and shares L's eigenvectors.
  const Matrix inv = (laplacian + shift).ldlt().solve(Matrix::Identity(n, n));
  return inv - shift;
}

/// Exact effective resistance of every edge, in edge order.
template <typename W>
std::vector<double> effective_resistances(const BasicGraph<W>& g) {
  if (!g.is_connected()) throw ParameterError("effective_resistances: graph is disconnected");
  const Matrix lp = laplacian_pseudoinverse(g.laplacian());
  std::vector<double> r;
  r.reserve(g.edge_count());
  for (const auto& e : g.edges()) {
    const auto u = static_cast<Index>(e.u);
    const auto v = static_cast<Index>(e.v);
    r.push_back(lp(u, u) + lp(v, v) - 2.0 * lp(u, v));
  }
  return r;
}

// ---------------------------------------------------------------------------
// Small helpers
// ---------------------------------------------------------------------------

/// Quantile by linear interpolation between order statistics (type 7).
inline double quantile(std::vector<double> values, double q) {
  detail::require(!values.empty(), "quantile: empty sample");
  detail::require(q >= 0.0 && q <= 1.0, "quantile: level outside [0, 1]");
  std::sort(values.begin(), values.end());
  const double pos = q * static_cast<double>(values.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, values.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return values[lo] + frac * (values[hi] - values[lo]);
}

/// Fraction of entries with |x| > threshold.
inline double density(const Matrix& a, double threshold = 1e-12) {
  if (a.size() == 0) return 0.0;
  return static_cast<double>((a.array().abs() > threshold).count()) / static_cast<double>(a.size());
}

}  // namespace gradcode::numerics

#endif  // GRADCODE_NUMERICS_HPP
