#ifndef GRADCODE_CODES_HPP
#define GRADCODE_CODES_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "gradcode/error.hpp"
#include "gradcode/graph.hpp"
#include "gradcode/numerics.hpp"
#include "gradcode/rng.hpp"

namespace gradcode {

enum class Family { FRC, BGC, RBGC, BEG, BIBD, SG, EP };

inline std::string_view to_string(Family f) {
  switch (f) {
    case Family::FRC: return "frc";
    case Family::BGC: return "bgc";
    case Family::RBGC: return "rbgc";
    case Family::BEG: return "beg";
    case Family::BIBD: return "bibd";
    case Family::SG: return "sg";
    case Family::EP: return "ep";
  }
  return "unknown";
}

inline Family family_from_string(std::string_view name) {
  for (auto f : {Family::FRC, Family::BGC, Family::RBGC, Family::BEG, Family::BIBD, Family::SG,
                 Family::EP}) {
    if (to_string(f) == name) return f;
  }
  throw ParameterError("unknown code family '" + std::string(name) + "'");
}

/// Parameters of one code. Which fields matter depends on the family:
///
///   FRC   N, K, L, R               BIBD  N, K, L, R, lambda
///   BGC   N, K, L                  SG    N, K, L, R, lambda, gamma
///   RBGC  N, K, L                  EP    N, c, d, epsilon
///   BEG   N, d
struct CodeSpec {
  Family family = Family::FRC;
  int N = 0;
  int K = 0;
  int L = 0;
  int R = 0;
  int lambda = 0;
  double gamma = 1.0;
  double d = 0.0;
  double c = 0.0;
  double epsilon = 1.0;
  std::uint64_t seed = 0;

  friend bool operator==(const CodeSpec&, const CodeSpec&) = default;
};

/// K x N encoding matrix together with the spec it was built from.
struct EncodingMatrix {
  Matrix matrix;
  CodeSpec spec;
  double density = 0.0;

  Index rows() const { return matrix.rows(); }
  Index cols() const { return matrix.cols(); }
};

inline EncodingMatrix make_encoding(Matrix m, const CodeSpec& spec) {
  EncodingMatrix out;
  out.density = numerics::density(m);
  out.matrix = std::move(m);
  out.spec = spec;
  return out;
}

namespace codes {

// ---------------------------------------------------------------------------
// Fractional repetition
// ---------------------------------------------------------------------------

inline void validate_frc(const CodeSpec& s) {
  detail::require(s.N > 0 && s.K > 0 && s.L > 0 && s.R > 0, "frc: N, K, L, R must be positive");
  detail::require(s.N % s.R == 0, "frc: R must divide N");
  detail::require(s.K % s.L == 0, "frc: L must divide K");
  detail::require(s.K / s.L == s.N / s.R, "frc: K/L must equal N/R");
}

/// Block-diagonal matrix of K/L all-ones L x R blocks.
inline EncodingMatrix build_frc(CodeSpec spec) {
  spec.family = Family::FRC;
  validate_frc(spec);
  Matrix m = Matrix::Zero(spec.K, spec.N);
  const int blocks = spec.K / spec.L;
  for (int b = 0; b < blocks; ++b) m.block(b * spec.L, b * spec.R, spec.L, spec.R).setOnes();
  return make_encoding(std::move(m), spec);
}

/// Adversarial error (L/K) floor(S/R): the adversary wipes out whole blocks.
inline double frc_exact_error(const CodeSpec& spec, int S) {
  validate_frc(spec);
  detail::require(S >= 0 && S < spec.N, "frc_exact_error: need 0 <= S < N");
  return static_cast<double>(spec.L) / spec.K * static_cast<double>(S / spec.R);
}

// ---------------------------------------------------------------------------
// Bernoulli and regularized Bernoulli
// ---------------------------------------------------------------------------

inline EncodingMatrix build_bgc(CodeSpec spec, SeededRng& rng) {
  spec.family = Family::BGC;
  detail::require(spec.N > 0 && spec.K > 0, "bgc: N and K must be positive");
  detail::require(spec.L > 0 && spec.L <= spec.K, "bgc: need 0 < L <= K");
  const double p = static_cast<double>(spec.L) / spec.K;
  Matrix m(spec.K, spec.N);
  for (Index j = 0; j < m.cols(); ++j) {
    for (Index i = 0; i < m.rows(); ++i) m(i, j) = rng.bernoulli(p) ? 1.0 : 0.0;
  }
  return make_encoding(std::move(m), spec);
}

/// Zeroes uniformly chosen entries of every column holding more than 2L
/// non-zeros until exactly L remain.
inline void regularize_columns(Matrix& m, int L, SeededRng& rng) {
  for (Index j = 0; j < m.cols(); ++j) {
    std::vector<Index> nz;
    for (Index i = 0; i < m.rows(); ++i) {
      if (m(i, j) != 0.0) nz.push_back(i);
    }
    if (nz.size() <= static_cast<std::size_t>(2 * L)) continue;
    // Partial Fisher-Yates: the first (size - L) slots are the entries to clear.
    const std::size_t remove = nz.size() - static_cast<std::size_t>(L);
    for (std::size_t t = 0; t < remove; ++t) {
      const auto pick = t + rng.uniform_index(nz.size() - t);
      std::swap(nz[t], nz[pick]);
      m(nz[t], j) = 0.0;
    }
  }
}

inline EncodingMatrix build_rbgc(CodeSpec spec, SeededRng& rng) {
  auto bgc = build_bgc(spec, rng);
  regularize_columns(bgc.matrix, spec.L, rng);
  spec.family = Family::RBGC;
  return make_encoding(std::move(bgc.matrix), spec);
}

// ---------------------------------------------------------------------------
// Bipartite expander
// ---------------------------------------------------------------------------

/// Common value of all row and column sums, or nullopt when they differ.
inline std::optional<double> regular_degree(const Matrix& m, double rel_tol = 1e-9) {
  if (m.size() == 0) return std::nullopt;
  const Vector rows = m.rowwise().sum();
  const Vector cols = m.colwise().sum().transpose();
  const double d = rows.mean();
  const double tol = rel_tol * std::max(1.0, std::fabs(d));
  if ((rows.array() - d).abs().maxCoeff() > tol) return std::nullopt;
  if ((cols.array() - d).abs().maxCoeff() > tol) return std::nullopt;
  return d;
}

/// Normalized biadjacency matrix of a d-regular bipartite graph.
inline EncodingMatrix build_beg(const Matrix& biadjacency, double d) {
  detail::require(biadjacency.rows() == biadjacency.cols(), "beg: biadjacency must be square");
  detail::require(d > 0, "beg: degree must be positive");
  for (Index i = 0; i < biadjacency.size(); ++i) {
    const double x = biadjacency.data()[i];
    if (x != 0.0 && x != 1.0) throw ParameterError("beg: biadjacency must be 0/1");
  }
  const auto deg = regular_degree(biadjacency);
  if (!deg || std::fabs(*deg - d) > 1e-9) {
    throw ParameterError("beg: graph is not " + std::to_string(d) + "-regular");
  }
  CodeSpec spec;
  spec.family = Family::BEG;
  spec.N = static_cast<int>(biadjacency.cols());
  spec.K = static_cast<int>(biadjacency.rows());
  spec.L = static_cast<int>(std::lround(d));
  spec.R = spec.L;
  spec.d = d;
  return make_encoding(biadjacency / d, spec);
}

/// (1/N) (sigma2/d)^2 N S / (N - S), with sigma2 the second singular value of
/// the unnormalized biadjacency matrix.
inline double beg_error_bound(double sigma2, double d, int N, int S) {
  detail::require(d > 0, "beg_error_bound: d must be positive");
  detail::require(S >= 0 && S < N, "beg_error_bound: need 0 <= S < N");
  const double ratio = sigma2 / d;
  return ratio * ratio * static_cast<double>(S) / static_cast<double>(N - S);
}

}  // namespace codes
}  // namespace gradcode

#endif  // GRADCODE_CODES_HPP
