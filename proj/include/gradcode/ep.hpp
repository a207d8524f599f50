#ifndef GRADCODE_EP_HPP
#define GRADCODE_EP_HPP

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "gradcode/codes.hpp"
#include "gradcode/sparsifier.hpp"

namespace gradcode::codes {

/// Symmetric matrix whose (i, j) entry, i <= j, is half_normals(i, j) + c.
/// Entries below the diagonal of `half_normals` are ignored.
inline Matrix ep_initial_from_half_normals(const Matrix& half_normals, double c) {
  detail::require(half_normals.rows() == half_normals.cols(), "ep: half-normal matrix must be square");
  detail::require(c >= 0.0, "ep: c must be non-negative");
  const Index n = half_normals.rows();
  Matrix e0(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = i; j < n; ++j) {
      const double x = std::fabs(half_normals(i, j)) + c;
      e0(i, j) = x;
      e0(j, i) = x;
    }
  }
  return e0;
}

/// Upper triangle of i.i.d. |N(0,1)| draws, mirrored; zero below the diagonal
/// is never read.
inline Matrix draw_half_normals(int n, SeededRng& rng) {
  Matrix h = Matrix::Zero(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = i; j < n; ++j) {
      h(i, j) = rng.half_normal();
      h(j, i) = h(i, j);
    }
  }
  return h;
}

/// (N-1) x (N-1) symmetric matrix with entries |X_ij| + c.
inline Matrix build_ep_initial(int N, double c, SeededRng& rng) {
  detail::require(N >= 3, "ep: need N >= 3");
  return ep_initial_from_half_normals(draw_half_normals(N - 1, rng), c);
}

struct DegreeRange {
  double lower = 0.0;  ///< max row sum of E0
  double upper = 0.0;  ///< total sum of E0 / (N - 2)

  bool contains(double d) const { return lower < d && d < upper; }
  bool nonempty() const { return lower < upper; }
  double midpoint() const { return 0.5 * (lower + upper); }
};

inline DegreeRange ep_feasible_d_range(const Matrix& e0) {
  detail::require(e0.rows() == e0.cols() && e0.rows() >= 2, "ep: E0 must be square of order >= 2");
  const double n_minus_2 = static_cast<double>(e0.rows()) - 1.0;
  return {e0.rowwise().sum().maxCoeff(), e0.sum() / n_minus_2};
}

/// c must exceed [(N-2) max_i sum_j |X_ij| - sum_ij |X_ij|] / (N-1) for the
/// degree range to be non-empty.
inline double ep_c_lower_bound(const Matrix& half_normals) {
  const Matrix a = half_normals.cwiseAbs();
  const double n1 = static_cast<double>(a.rows());
  return ((n1 - 1.0) * a.rowwise().sum().maxCoeff() - a.sum()) / n1;
}

/// Appends m_i = d - rowsum_i(E0) and alpha = (2 - N) d + sum(E0) without
/// checking that the new entries are positive.
inline Matrix ep_append(const Matrix& e0, double d) {
  const Index n1 = e0.rows();
  const double N = static_cast<double>(n1) + 1.0;
  Matrix e(n1 + 1, n1 + 1);
  e.topLeftCorner(n1, n1) = e0;
  const Vector m = Vector::Constant(n1, d) - e0.rowwise().sum();
  e.col(n1).head(n1) = m;
  e.row(n1).head(n1) = m.transpose();
  e(n1, n1) = (2.0 - N) * d + e0.sum();
  return e;
}

/// ep_append restricted to d strictly inside (d_l, d_u).
inline Matrix ep_extend(const Matrix& e0, double d) {
  const auto range = ep_feasible_d_range(e0);
  if (!range.contains(d)) {
    std::ostringstream os;
    os.precision(10);
    os << "infeasible degree: d = " << d << " outside (" << range.lower << ", " << range.upper << ")";
    throw InfeasibleError(os.str());
  }
  return ep_append(e0, d);
}

struct EpOptions {
  int quantization_bits = sparsify::kDefaultQuantizationBits;
  int retry_cap = 64;
  bool midpoint_degree = false;  ///< ignore spec.d and use the midpoint of each draw's range
};

struct EpBuild {
  EncodingMatrix encoding;  ///< sparsified, dequantized
  Matrix initial;           ///< E0
  Matrix extended;          ///< pre-sparsification N x N matrix
  DegreeRange range;
  sparsify::SparsifyStats stats;
  int attempts = 0;
  double lambda2_pre = 0.0;  ///< second largest eigenvalue of `extended`
};

/// Extends E0 to degree spec.d and sparsifies the bipartite lift.
inline EpBuild finish_ep(EpBuild out, CodeSpec spec, SeededRng& rng, const EpOptions& opt) {
  spec.family = Family::EP;
  spec.K = spec.N;
  out.range = ep_feasible_d_range(out.initial);
  out.extended = ep_extend(out.initial, spec.d);
  out.lambda2_pre = numerics::symmetric_eigenvalues(out.extended)(1);
  auto sp_rng = rng.fork(0x5eedULL << 32);
  auto result = sparsify::degree_preserving_sparsify(sparsify::bipartite_lift(out.extended), spec.epsilon,
                                                     opt.quantization_bits, sp_rng);
  out.stats = result.stats;
  out.encoding = make_encoding(sparsify::lift_inverse(result.graph), spec);
  return out;
}

/// EP code from a given E0 (N = order of E0 + 1).
inline EpBuild build_ep_from_initial(const Matrix& e0, CodeSpec spec, SeededRng& rng, const EpOptions& opt = {}) {
  if (!(spec.epsilon > 0.0) || spec.epsilon > 1.0) throw ParameterError("ep: epsilon must lie in (0, 1]");
  spec.N = static_cast<int>(e0.rows()) + 1;
  EpBuild out;
  out.initial = e0;
  out.attempts = 1;
  if (opt.midpoint_degree) spec.d = ep_feasible_d_range(e0).midpoint();
  return finish_ep(std::move(out), spec, rng, opt);
}

inline EpBuild build_ep(CodeSpec spec, SeededRng& rng, const EpOptions& opt = {}) {
  spec.family = Family::EP;
  detail::require(spec.N >= 3, "ep: need N >= 3");
  detail::require(spec.c >= 0.0, "ep: c must be non-negative");
  if (!(spec.epsilon > 0.0) || spec.epsilon > 1.0) throw ParameterError("ep: epsilon must lie in (0, 1]");
  detail::require(opt.retry_cap > 0, "ep: retry cap must be positive");
  if (!opt.midpoint_degree) detail::require(spec.d > 0.0, "ep: d must be positive");

  EpBuild out;
  std::vector<double> lows, highs;
  for (int attempt = 0; attempt < opt.retry_cap; ++attempt) {
    auto draw_rng = rng.fork(static_cast<std::uint64_t>(attempt));
    Matrix e0 = build_ep_initial(spec.N, spec.c, draw_rng);
    const auto range = ep_feasible_d_range(e0);
    lows.push_back(range.lower);
    highs.push_back(range.upper);
    if (opt.midpoint_degree) {
      if (!range.nonempty()) continue;
      spec.d = range.midpoint();
    } else if (!range.contains(spec.d)) {
      continue;
    }
    out.attempts = attempt + 1;
    out.initial = std::move(e0);
    out.range = range;
    break;
  }
  if (out.attempts == 0) {
    std::ostringstream os;
    os << "ep: infeasible degree after " << opt.retry_cap << " draws; d_l percentiles (5/50/95) = "
       << numerics::quantile(lows, 0.05) << "/" << numerics::quantile(lows, 0.5) << "/"
       << numerics::quantile(lows, 0.95) << ", d_u percentiles = " << numerics::quantile(highs, 0.05)
       << "/" << numerics::quantile(highs, 0.5) << "/" << numerics::quantile(highs, 0.95);
    throw InfeasibleError(os.str());
  }

  return finish_ep(std::move(out), spec, rng, opt);
}

struct DegreeRangeSample {
  std::vector<double> lower;
  std::vector<double> upper;

  double feasible_fraction() const {
    std::size_t ok = 0;
    for (std::size_t i = 0; i < lower.size(); ++i) ok += lower[i] < upper[i] ? 1 : 0;
    return lower.empty() ? 0.0 : static_cast<double>(ok) / static_cast<double>(lower.size());
  }
};

/// (d_l, d_u) of `draws` independent E0; draw i uses rng.fork(i).
inline DegreeRangeSample sample_degree_ranges(int N, double c, std::size_t draws, const SeededRng& rng) {
  DegreeRangeSample out;
  out.lower.reserve(draws);
  out.upper.reserve(draws);
  for (std::size_t i = 0; i < draws; ++i) {
    auto r = rng.fork(i);
    const auto range = ep_feasible_d_range(build_ep_initial(N, c, r));
    out.lower.push_back(range.lower);
    out.upper.push_back(range.upper);
  }
  return out;
}

struct EpErrorBound {
  double printed = 0.0;  ///< 2 eps coefficient
  double proof = 0.0;    ///< 2 (e^eps - 1) coefficient
  double bound = 0.0;    ///< max of the two
};

/// (1/N) [coef sqrt(N-S) N/(N-S) + (lambda2/d) sqrt(N S / (N-S))]^2 for
/// coef = 2 eps and coef = 2 (e^eps - 1).
inline EpErrorBound ep_error_bound(double epsilon, double lambda2, double d, int N, int S) {
  detail::require(S > 0 && S < N, "ep_error_bound: need 0 < S < N");
  detail::require(d > 0.0, "ep_error_bound: d must be positive");
  const double n = N, live = N - S;
  const double delta1 = std::sqrt(live) * n / live;
  const double delta2 = lambda2 / d * std::sqrt(n * S / live);
  auto value = [&](double coef) {
    const double t = coef * delta1 + delta2;
    return t * t / n;
  };
  EpErrorBound b;
  b.printed = value(2.0 * epsilon);
  b.proof = value(2.0 * std::expm1(epsilon));
  b.bound = std::max(b.printed, b.proof);
  return b;
}

inline constexpr double kHalfNormalMean = 0.79788456080286535588;  // sqrt(2/pi)

struct Lambda2Bound {
  double bound = 0.0;
  double probability = 0.0;
};

/// |mu + c| (N - 1) + C1 (sqrt(N - 1) + t), holding with probability 1 - 4 e^{-t^2}.
inline Lambda2Bound ep_lambda2_bound(int N, double c, double t, double C1) {
  detail::require(t > 0.0, "ep_lambda2_bound: t must be positive");
  detail::require(C1 > 0.0, "ep_lambda2_bound: C1 must be positive");
  const double n1 = static_cast<double>(N) - 1.0;
  return {std::fabs(kHalfNormalMean + c) * n1 + C1 * (std::sqrt(n1) + t), 1.0 - 4.0 * std::exp(-t * t)};
}

}  // namespace gradcode::codes

#endif  // GRADCODE_EP_HPP
