#ifndef GRADCODE_EVALUATOR_HPP
#define GRADCODE_EVALUATOR_HPP

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "gradcode/bibd.hpp"
#include "gradcode/codes.hpp"
#include "gradcode/ep.hpp"
#include "gradcode/numerics.hpp"
#include "gradcode/sg.hpp"

namespace gradcode::eval {

// ---------------------------------------------------------------------------
// Patterns and decoders
// ---------------------------------------------------------------------------

/// Sorted set of non-straggling workers.
struct StragglerPattern {
  std::vector<Index> non_stragglers;

  static StragglerPattern all(Index n) {
    StragglerPattern p;
    p.non_stragglers.resize(static_cast<std::size_t>(n));
    for (Index i = 0; i < n; ++i) p.non_stragglers[static_cast<std::size_t>(i)] = i;
    return p;
  }

  /// Complement of `stragglers` in [0, n).
  static StragglerPattern without(Index n, const std::vector<Index>& stragglers) {
    std::vector<char> gone(static_cast<std::size_t>(n), 0);
    for (auto s : stragglers) {
      detail::require(s >= 0 && s < n, "pattern: straggler index out of range");
      gone[static_cast<std::size_t>(s)] = 1;
    }
    StragglerPattern p;
    for (Index i = 0; i < n; ++i) {
      if (!gone[static_cast<std::size_t>(i)]) p.non_stragglers.push_back(i);
    }
    return p;
  }

  std::size_t size() const { return non_stragglers.size(); }

  void validate(Index n) const {
    detail::require(!non_stragglers.empty(), "no non-stragglers");
    for (std::size_t i = 0; i < non_stragglers.size(); ++i) {
      detail::require(non_stragglers[i] >= 0 && non_stragglers[i] < n, "pattern: index out of range");
      if (i > 0) detail::require(non_stragglers[i - 1] < non_stragglers[i], "pattern: indices must be sorted and unique");
    }
  }

  friend bool operator==(const StragglerPattern&, const StragglerPattern&) = default;
};

enum class Decoder { Optimal, ConstantRho, BegVector };
enum class Mode { Exact, Greedy };

inline std::string_view to_string(Decoder d) {
  switch (d) {
    case Decoder::Optimal: return "optimal";
    case Decoder::ConstantRho: return "constant_rho";
    case Decoder::BegVector: return "beg_vector";
  }
  return "unknown";
}

inline std::string_view to_string(Mode m) { return m == Mode::Exact ? "exact" : "greedy"; }

inline Decoder decoder_from_string(std::string_view s) {
  for (auto d : {Decoder::Optimal, Decoder::ConstantRho, Decoder::BegVector}) {
    if (to_string(d) == s) return d;
  }
  throw ParameterError("unknown decoder '" + std::string(s) + "'");
}

inline Mode mode_from_string(std::string_view s) {
  if (s == "exact") return Mode::Exact;
  if (s == "greedy") return Mode::Greedy;
  throw ParameterError("unknown mode '" + std::string(s) + "'");
}

/// A decoder with its scalar resolved. For ConstantRho, v = rho 1_F. For
/// BegVector, v = (1/r) (1 + S/(N-S)) on F and 0 off F, where r is the
/// common row sum of E.
struct DecoderParams {
  Decoder kind = Decoder::Optimal;
  double rho = 0.0;
  double row_sum = 1.0;
};

/// Relative spread of row sums accepted by the fixed BEG-style decoder.
inline constexpr double kRowRegularTolerance = 1e-3;

inline double common_row_sum(const Matrix& e) {
  const Vector rows = e.rowwise().sum();
  const double r = rows.mean();
  if (!(r > 0.0) || (rows.array() - r).abs().maxCoeff() > kRowRegularTolerance * r) {
    throw ParameterError("beg_vector decoder needs a row-regular matrix");
  }
  return r;
}

/// rho = L / (L + lambda (N - S - 1)) from the spec.
inline double spec_rho(const CodeSpec& spec, int S) {
  if (spec.L <= 0 || spec.lambda <= 0) {
    throw ParameterError("constant_rho decoder needs L and lambda (BIBD or SG spec), got family " +
                         std::string(to_string(spec.family)));
  }
  return static_cast<double>(spec.L) / (spec.L + spec.lambda * static_cast<double>(spec.N - S - 1));
}

inline DecoderParams resolve_decoder(const EncodingMatrix& e, Decoder kind, int S,
                                     std::optional<double> rho = std::nullopt) {
  DecoderParams p;
  p.kind = kind;
  if (kind == Decoder::ConstantRho) p.rho = rho ? *rho : spec_rho(e.spec, S);
  if (kind == Decoder::BegVector) p.row_sum = common_row_sum(e.matrix);
  return p;
}

/// a_F: -1 off F and S/(N-S) on F; orthogonal to the all-ones vector.
inline Vector straggler_offset(Index n, const StragglerPattern& f) {
  f.validate(n);
  const double live = static_cast<double>(f.size());
  const double s = static_cast<double>(n) - live;
  Vector a = Vector::Constant(n, -1.0);
  for (auto j : f.non_stragglers) a(j) = s / live;
  return a;
}

/// (||1_N + a_F||_2, ||a_F||_2) = (sqrt(N-S) (1 + S/(N-S)), sqrt(N S / (N-S))).
inline std::pair<double, double> decoding_vector_norms(int N, int S) {
  detail::require(S >= 0 && S < N, "decoding_vector_norms: need 0 <= S < N");
  const double live = N - S;
  return {std::sqrt(live) * (1.0 + S / live), std::sqrt(static_cast<double>(N) * S / live)};
}

inline Vector optimal_decoding_vector(const Matrix& e, const StragglerPattern& f) {
  f.validate(e.cols());
  return numerics::solve_least_squares(e, Vector::Ones(e.rows()), f.non_stragglers);
}

inline Vector decoding_vector(const Matrix& e, const StragglerPattern& f, const DecoderParams& d) {
  switch (d.kind) {
    case Decoder::Optimal: return optimal_decoding_vector(e, f);
    case Decoder::ConstantRho: {
      f.validate(e.cols());
      Vector v = Vector::Zero(e.cols());
      for (auto j : f.non_stragglers) v(j) = d.rho;
      return v;
    }
    case Decoder::BegVector: {
      f.validate(e.cols());
      const double n = static_cast<double>(e.cols());
      const double value = n / (static_cast<double>(f.size()) * d.row_sum);
      Vector v = Vector::Zero(e.cols());
      for (auto j : f.non_stragglers) v(j) = value;
      return v;
    }
  }
  throw ParameterError("unknown decoder");
}

/// (1/K) ||E v - 1_K||^2.
inline double pattern_error(const Matrix& e, const StragglerPattern& f, const DecoderParams& d) {
  const Vector v = decoding_vector(e, f, d);
  return (e * v - Vector::Ones(e.rows())).squaredNorm() / static_cast<double>(e.rows());
}

inline double pattern_error(const EncodingMatrix& e, const StragglerPattern& f, Decoder kind) {
  const int S = static_cast<int>(e.cols() - static_cast<Index>(f.size()));
  return pattern_error(e.matrix, f, resolve_decoder(e, kind, S));
}

// ---------------------------------------------------------------------------
// Combinations
// ---------------------------------------------------------------------------

/// C(n, k), saturating at uint64 max.
inline std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
    if (r > std::numeric_limits<std::uint64_t>::max()) return std::numeric_limits<std::uint64_t>::max();
  }
  return static_cast<std::uint64_t>(r);
}

/// The rank-th k-subset of [0, n) in lexicographic order.
inline std::vector<Index> unrank_combination(std::uint64_t rank, int n, int k) {
  std::vector<Index> out;
  out.reserve(static_cast<std::size_t>(k));
  int next = 0;
  for (int slot = 0; slot < k; ++slot) {
    for (int x = next;; ++x) {
      const auto count = binomial(static_cast<std::uint64_t>(n - x - 1), static_cast<std::uint64_t>(k - slot - 1));
      if (rank < count) {
        out.push_back(x);
        next = x + 1;
        break;
      }
      rank -= count;
    }
  }
  return out;
}

/// Advances to the next k-subset in lexicographic order; false after the last.
inline bool next_combination(std::vector<Index>& c, int n) {
  const int k = static_cast<int>(c.size());
  int i = k - 1;
  while (i >= 0 && c[static_cast<std::size_t>(i)] == n - k + i) --i;
  if (i < 0) return false;
  ++c[static_cast<std::size_t>(i)];
  for (int j = i + 1; j < k; ++j) c[static_cast<std::size_t>(j)] = c[static_cast<std::size_t>(j - 1)] + 1;
  return true;
}

// ---------------------------------------------------------------------------
// Worst case
// ---------------------------------------------------------------------------

struct Reference {
  double value = 0.0;
  std::string source;  ///< e.g. "frc_exact", "bibd_exact", "beg_bound", "ep_bound"
};

struct ErrorReport {
  Family family = Family::FRC;
  int N = 0;
  int K = 0;
  double density = 0.0;
  int S = 0;
  double error = 0.0;
  StragglerPattern argmax_pattern;
  Decoder decoder = Decoder::Optimal;
  Mode mode = Mode::Exact;
  std::optional<Reference> reference;
  std::uint64_t patterns_evaluated = 0;
  bool lower_bound = false;  ///< greedy results only bound the worst case from below
};

inline constexpr std::uint64_t kDefaultEnumerationCap = 2'000'000;

struct ExactOptions {
  std::uint64_t cap = kDefaultEnumerationCap;
  unsigned threads = 0;  ///< 0 = hardware concurrency
  std::optional<double> rho;
};

namespace detail_exact {

inline constexpr std::uint64_t kChunk = 4096;
inline constexpr double kTieTolerance = 1e-12;

/// Residual of every straggler set T via the full solution x and H = (E^T E)^-1:
/// r(T) = r_full + x_T^T (H_TT)^-1 x_T. Valid when E has full column rank.
struct RankUpdate {
  Vector x;
  Matrix h;
  double r_full = 0.0;

  static std::optional<RankUpdate> make(const Matrix& e) {
    if (e.rows() < e.cols()) return std::nullopt;
    Eigen::JacobiSVD<Matrix> svd(e, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Vector& s = svd.singularValues();
    if (s.size() == 0 || !(s(s.size() - 1) > 1e-8 * s(0))) return std::nullopt;
    RankUpdate u;
    const Vector inv = s.cwiseInverse();
    u.x = svd.matrixV() * inv.asDiagonal() * (svd.matrixU().transpose() * Vector::Ones(e.rows()));
    u.h = svd.matrixV() * inv.cwiseAbs2().asDiagonal() * svd.matrixV().transpose();
    u.r_full = (e * u.x - Vector::Ones(e.rows())).squaredNorm();
    return u;
  }

  double residual(const std::vector<Index>& t) const {
    if (t.empty()) return r_full;
    const auto k = static_cast<Index>(t.size());
    Matrix htt(k, k);
    Vector xt(k);
    for (Index a = 0; a < k; ++a) {
      xt(a) = x(t[static_cast<std::size_t>(a)]);
      for (Index b = 0; b < k; ++b) htt(a, b) = h(t[static_cast<std::size_t>(a)], t[static_cast<std::size_t>(b)]);
    }
    return r_full + xt.dot(htt.llt().solve(xt));
  }
};

/// Cholesky factor of H_TT kept across lexicographic steps. Row a of the
/// factor depends only on t[0..a], so after a step that changes t[i..] only
/// rows i.. are refreshed.
class IncrementalResidual {
 public:
  IncrementalResidual(const RankUpdate& u, int k) : u_(u), k_(k), l_(Matrix::Zero(k, k)), z_(k), acc_(k) {}

  /// Residual for `t`, given that entries before `from` are unchanged since
  /// the previous call. Falls back to a direct solve if a pivot is not positive.
  double residual(const std::vector<Index>& t, int from) {
    if (k_ == 0) return u_.r_full;
    if (!valid_) from = 0;
    valid_ = true;
    for (int a = from; a < k_; ++a) {
      const Index ta = t[static_cast<std::size_t>(a)];
      double zsum = u_.x(ta);
      for (int b = 0; b < a; ++b) {
        const Index tb = t[static_cast<std::size_t>(b)];
        double v = u_.h(ta, tb);
        for (int c = 0; c < b; ++c) v -= l_(a, c) * l_(b, c);
        l_(a, b) = v / l_(b, b);
        zsum -= l_(a, b) * z_(b);
      }
      double d = u_.h(ta, ta);
      for (int c = 0; c < a; ++c) d -= l_(a, c) * l_(a, c);
      if (!(d > 0.0)) {
        valid_ = false;
        return u_.residual(t);
      }
      l_(a, a) = std::sqrt(d);
      z_(a) = zsum / l_(a, a);
      acc_(a) = (a > 0 ? acc_(a - 1) : 0.0) + z_(a) * z_(a);
    }
    return u_.r_full + acc_(k_ - 1);
  }

 private:
  const RankUpdate& u_;
  int k_;
  Matrix l_;
  Vector z_;
  Vector acc_;
  bool valid_ = false;
};

/// E = U_r B with U_r orthonormal, r = rank E. For any support F the
/// residual of E_F v ~ 1 equals ||(I - U_r U_r^T) 1||^2 plus the residual
/// of B_F v ~ U_r^T 1, which is an r-row problem.
struct RowReduction {
  Matrix b;
  Vector target;
  double base = 0.0;

  static std::optional<RowReduction> make(const Matrix& e) {
    Eigen::JacobiSVD<Matrix> svd(e, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Vector& s = svd.singularValues();
    if (s.size() == 0 || s(0) == 0.0) return std::nullopt;
    Index r = 0;
    while (r < s.size() && s(r) > numerics::kRankCutoff * s(0)) ++r;
    if (r >= e.rows()) return std::nullopt;
    RowReduction out;
    const Matrix u = svd.matrixU().leftCols(r);
    out.b = s.head(r).asDiagonal() * svd.matrixV().leftCols(r).transpose();
    out.target = u.transpose() * Vector::Ones(e.rows());
    out.base = static_cast<double>(e.rows()) - out.target.squaredNorm();
    return out;
  }

  /// Least-squares residual from a rank-revealing QR of B_F: the part of
  /// Q^T target beyond the numerical rank.
  double residual(const StragglerPattern& f) const {
    const Matrix sub = b(Eigen::all, f.non_stragglers);
    Eigen::ColPivHouseholderQR<Matrix> qr(sub);
    qr.setThreshold(numerics::kRankCutoff);
    Vector z = target;
    z.applyOnTheLeft(qr.householderQ().transpose());
    const Index rank = qr.rank();
    return std::max(0.0, base) + z.tail(z.size() - rank).squaredNorm();
  }
};

/// next_combination that returns the first position it changed.
inline int advance(std::vector<Index>& c, int n) {
  const int k = static_cast<int>(c.size());
  int i = k - 1;
  while (i >= 0 && c[static_cast<std::size_t>(i)] == n - k + i) --i;
  if (i < 0) return k;
  ++c[static_cast<std::size_t>(i)];
  for (int j = i + 1; j < k; ++j) c[static_cast<std::size_t>(j)] = c[static_cast<std::size_t>(j - 1)] + 1;
  return i;
}

/// Running maximum over straggler sets offered in increasing lexicographic
/// order. The complement of a later set is lexicographically smaller, so a
/// tie goes to the later set.
struct Best {
  double value = -1.0;
  std::vector<Index> stragglers;
  bool set = false;

  void offer(double v, const std::vector<Index>& t) {
    const double tol = kTieTolerance * std::max(1.0, std::fabs(value));
    if (!set || v > value + tol) {
      value = v;
      stragglers = t;
      set = true;
    } else if (v >= value - tol) {
      value = std::max(value, v);
      stragglers = t;
    }
  }
};

}  // namespace detail_exact

/// Exact maximum over all C(N, S) patterns. Ties resolve to the
/// lexicographically smallest non-straggler set. With the optimal decoder
/// and a full-column-rank E, residuals come from a rank-S update of the full
/// solution and the argmax is re-solved directly. Chunks are fixed-size and
/// reduced in order, so the result does not depend on the thread count.
inline ErrorReport worst_case_error_exact(const EncodingMatrix& enc, int S, Decoder kind,
                                          const ExactOptions& opt = {}) {
  const Matrix& e = enc.matrix;
  const int n = static_cast<int>(e.cols());
  detail::require(S >= 0 && S < n, "worst_case_error_exact: need 0 <= S < N");
  const std::uint64_t total = binomial(static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(S));
  if (total > opt.cap) {
    throw ParameterError("enumeration cap exceeded: C(" + std::to_string(n) + "," + std::to_string(S) +
                         ") = " + std::to_string(total) + " > " + std::to_string(opt.cap) +
                         "; use greedy mode");
  }
  const DecoderParams dec = resolve_decoder(enc, kind, S, opt.rho);
  const double k_rows = static_cast<double>(e.rows());

  std::optional<detail_exact::RankUpdate> fast;
  std::optional<detail_exact::RowReduction> reduced;
  if (kind == Decoder::Optimal && S > 0) {
    fast = detail_exact::RankUpdate::make(e);
    if (!fast) reduced = detail_exact::RowReduction::make(e);
  }

  const std::uint64_t chunks = (total + detail_exact::kChunk - 1) / detail_exact::kChunk;
  std::vector<detail_exact::Best> results(chunks);

  auto run_chunk = [&](std::uint64_t c) {
    detail_exact::Best best;
    const std::uint64_t begin = c * detail_exact::kChunk;
    const std::uint64_t end = std::min(total, begin + detail_exact::kChunk);
    auto t = unrank_combination(begin, n, S);
    std::optional<detail_exact::IncrementalResidual> inc;
    if (fast) inc.emplace(*fast, S);
    int from = 0;
    for (std::uint64_t r = begin; r < end; ++r) {
      double v = 0.0;
      if (fast) {
        v = inc->residual(t, from) / k_rows;
      } else if (reduced) {
        v = reduced->residual(StragglerPattern::without(n, t)) / k_rows;
      } else {
        v = pattern_error(e, StragglerPattern::without(n, t), dec);
      }
      best.offer(v, t);
      if (r + 1 < end) from = detail_exact::advance(t, n);
    }
    results[c] = std::move(best);
  };

  unsigned threads = opt.threads ? opt.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, chunks));
  if (threads <= 1) {
    for (std::uint64_t c = 0; c < chunks; ++c) run_chunk(c);
  } else {
    std::atomic<std::uint64_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < threads; ++i) {
      pool.emplace_back([&] {
        for (auto c = next.fetch_add(1); c < chunks; c = next.fetch_add(1)) run_chunk(c);
      });
    }
    for (auto& th : pool) th.join();
  }

  detail_exact::Best best;
  for (const auto& r : results) best.offer(r.value, r.stragglers);
  const auto argmax = StragglerPattern::without(n, best.stragglers);

  ErrorReport out;
  out.family = enc.spec.family;
  out.N = n;
  out.K = static_cast<int>(e.rows());
  out.density = enc.density;
  out.S = S;
  out.decoder = kind;
  out.mode = Mode::Exact;
  out.argmax_pattern = argmax;
  out.error = fast || reduced ? pattern_error(e, argmax, dec) : best.value;
  out.patterns_evaluated = total;
  return out;
}

/// S rounds, each removing the worker whose loss raises the error most (ties
/// to the smallest index). The result is a lower bound on the worst case.
inline ErrorReport worst_case_error_greedy(const EncodingMatrix& enc, int S, Decoder kind,
                                           std::optional<double> rho = std::nullopt) {
  const Matrix& e = enc.matrix;
  const int n = static_cast<int>(e.cols());
  detail::require(S >= 0 && S < n, "worst_case_error_greedy: need 0 <= S < N");
  const DecoderParams dec = resolve_decoder(enc, kind, S, rho);
  std::vector<Index> gone;
  std::uint64_t evaluated = 0;
  auto current = StragglerPattern::all(n);
  double value = pattern_error(e, current, dec);
  ++evaluated;
  for (int round = 0; round < S; ++round) {
    double best = -1.0;
    Index pick = -1;
    for (auto j : current.non_stragglers) {
      auto trial = gone;
      trial.push_back(j);
      const double v = pattern_error(e, StragglerPattern::without(n, trial), dec);
      ++evaluated;
      if (v > best + detail_exact::kTieTolerance * std::max(1.0, std::fabs(best))) {
        best = v;
        pick = j;
      }
    }
    gone.push_back(pick);
    current = StragglerPattern::without(n, gone);
    value = best;
  }

  ErrorReport out;
  out.family = enc.spec.family;
  out.N = n;
  out.K = static_cast<int>(e.rows());
  out.density = enc.density;
  out.S = S;
  out.decoder = kind;
  out.mode = Mode::Greedy;
  out.argmax_pattern = current;
  out.error = value;
  out.patterns_evaluated = evaluated;
  out.lower_bound = S > 0;
  return out;
}

inline ErrorReport worst_case_error(const EncodingMatrix& enc, int S, Decoder kind, Mode mode,
                                    const ExactOptions& opt = {}) {
  return mode == Mode::Exact ? worst_case_error_exact(enc, S, kind, opt)
                             : worst_case_error_greedy(enc, S, kind, opt.rho);
}

/// Closed-form value or bound for the family, when one applies.
/// `lambda2` is the second eigenvalue of the pre-sparsification EP matrix.
inline std::optional<Reference> closed_form_reference(const EncodingMatrix& enc, int S,
                                                      std::optional<double> lambda2 = std::nullopt) {
  const auto& s = enc.spec;
  switch (s.family) {
    case Family::FRC: return Reference{codes::frc_exact_error(s, S), "frc_exact"};
    case Family::BIBD: return Reference{codes::bibd_exact_error(s, S), "bibd_exact"};
    case Family::SG:
      if (s.lambda > 0) return Reference{codes::bibd_exact_error(s, S), "bibd_reference"};
      return std::nullopt;
    case Family::BEG: {
      if (S == 0) return Reference{0.0, "beg_bound"};
      const auto sv = numerics::singular_values(enc.matrix * s.d, 2);
      return Reference{codes::beg_error_bound(sv.values(1), s.d, s.N, S), "beg_bound"};
    }
    case Family::EP:
      if (!lambda2 || S == 0) return std::nullopt;
      return Reference{codes::ep_error_bound(s.epsilon, *lambda2, s.d, s.N, S).bound, "ep_bound"};
    default: return std::nullopt;
  }
}

// ---------------------------------------------------------------------------
// Monte Carlo
// ---------------------------------------------------------------------------

struct MonteCarloEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::size_t trials = 0;
};

/// Mean of (1/K) ||rho E 1_F - 1_K||^2 over fresh SG draws with the fixed
/// pattern F = {0, ..., N-S-1}. Trial t draws from rng.fork(t).
inline MonteCarloEstimate monte_carlo_expected_error(const CodeSpec& spec, int S, std::size_t trials,
                                                     SeededRng& rng, std::optional<double> rho = std::nullopt) {
  detail::require(trials > 1, "monte_carlo_expected_error: need at least two trials");
  detail::require(S >= 0 && S < spec.N, "monte_carlo_expected_error: need 0 <= S < N");
  codes::require_sg_feasible(spec);
  const double r = rho ? *rho : codes::sg_solve_params(spec).rho(S);
  const Index live = spec.N - S;
  double sum = 0.0, sum_sq = 0.0;
  for (std::size_t t = 0; t < trials; ++t) {
    auto trial_rng = rng.fork(t);
    const auto e = codes::build_sg(spec, trial_rng);
    const Vector y = r * e.matrix.leftCols(live).rowwise().sum() - Vector::Ones(spec.K);
    const double v = y.squaredNorm() / static_cast<double>(spec.K);
    sum += v;
    sum_sq += v * v;
  }
  const double n = static_cast<double>(trials);
  MonteCarloEstimate out;
  out.trials = trials;
  out.mean = sum / n;
  const double var = std::max(0.0, (sum_sq - n * out.mean * out.mean) / (n - 1.0));
  out.std_error = std::sqrt(var / n);
  return out;
}

}  // namespace gradcode::eval

#endif  // GRADCODE_EVALUATOR_HPP
