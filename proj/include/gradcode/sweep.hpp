#ifndef GRADCODE_SWEEP_HPP
#define GRADCODE_SWEEP_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "gradcode/bibd.hpp"
#include "gradcode/codes.hpp"
#include "gradcode/ep.hpp"
#include "gradcode/evaluator.hpp"
#include "gradcode/sg.hpp"

/// Matched-density code families and worst-case sweeps over S.
namespace gradcode::sweep {

struct SweepConfig {
  int N = 37;
  double density = 0.24;
  double density_tolerance = 0.02;
  std::vector<Family> families{Family::FRC, Family::RBGC, Family::BIBD, Family::SG, Family::EP};
  std::vector<int> S;
  eval::Decoder decoder = eval::Decoder::Optimal;
  eval::Mode mode = eval::Mode::Exact;
  std::uint64_t seed = 1;
  int best_of = 1;                 ///< seeds tried for SG and EP
  std::uint64_t selection_cap = 100000;  ///< largest C(N, S) used to rank best-of seeds
  double ep_c = 12.0;
  int quantization_bits = sparsify::kDefaultQuantizationBits;
  std::uint64_t cap = eval::kDefaultEnumerationCap;
  unsigned threads = 0;  ///< 0 = hardware concurrency
};

/// A built code plus anything the reference value needs.
struct Candidate {
  EncodingMatrix code;
  std::optional<double> lambda2;  ///< EP only
  std::uint64_t seed = 0;
  std::string note;
};

/// S values round(f N) for the given fractions, deduplicated and sorted.
inline std::vector<int> straggler_grid(int N, const std::vector<double>& fractions) {
  std::vector<int> out;
  for (double f : fractions) {
    const int s = static_cast<int>(std::lround(f * N));
    if (s >= 0 && s < N) out.push_back(s);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

/// FRC with N' <= N (N' >= N - 3) and R | N' whose density R/N' is closest
/// to the target; larger N' wins ties.
inline CodeSpec frc_at_density(int N, double density) {
  CodeSpec best;
  double best_gap = std::numeric_limits<double>::infinity();
  for (int n = N; n >= std::max(2, N - 3); --n) {
    for (int r = 1; r <= n; ++r) {
      if (n % r) continue;
      const double gap = std::fabs(static_cast<double>(r) / n - density);
      if (gap < best_gap - 1e-12) {
        best_gap = gap;
        best = CodeSpec{};
        best.family = Family::FRC;
        best.N = n;
        best.K = n;
        best.L = r;
        best.R = r;
      }
    }
  }
  return best;
}

/// Smallest gamma on the 0.01 grid not below gamma_min.
inline double sg_gamma_at_min(const codes::SgFeasibility& f) {
  return std::min(1.0, std::ceil(f.gamma_min * 100.0 - 1e-9) / 100.0);
}

struct EpTuning {
  codes::EpBuild build;
  double epsilon = 1.0;
  bool on_target = false;
};

/// Bisects epsilon so the realized density lands within tolerance. For a
/// fixed seed the coin sequence is shared across epsilon, so density does
/// not increase with epsilon.
inline EpTuning ep_at_density(int N, double c, double density, double tol, std::uint64_t seed, int k) {
  codes::EpOptions opt;
  opt.midpoint_degree = true;
  opt.quantization_bits = k;
  CodeSpec spec;
  spec.family = Family::EP;
  spec.N = N;
  spec.c = c;
  spec.seed = seed;
  auto build = [&](double eps) {
    spec.epsilon = eps;
    SeededRng rng(seed);
    return codes::build_ep(spec, rng, opt);
  };
  EpTuning out;
  double lo = 1e-3, hi = 1.0;
  out.build = build(hi);
  out.epsilon = hi;
  if (out.build.encoding.density > density + tol) return out;
  for (int it = 0; it < 30; ++it) {
    if (std::fabs(out.build.encoding.density - density) <= tol) {
      out.on_target = true;
      return out;
    }
    const double mid = 0.5 * (lo + hi);
    auto b = build(mid);
    if (b.encoding.density > density) {
      lo = mid;
    } else {
      hi = mid;
    }
    if (std::fabs(b.encoding.density - density) < std::fabs(out.build.encoding.density - density)) {
      out.build = std::move(b);
      out.epsilon = mid;
    }
  }
  out.on_target = std::fabs(out.build.encoding.density - density) <= tol;
  return out;
}

/// One instance of `family` at the configured density and seed.
inline Candidate build_candidate(Family family, const SweepConfig& cfg, std::uint64_t seed) {
  Candidate out;
  out.seed = seed;
  switch (family) {
    case Family::FRC: {
      auto spec = frc_at_density(cfg.N, cfg.density);
      spec.seed = seed;
      out.code = codes::build_frc(spec);
      if (spec.N != cfg.N) out.note = "N=" + std::to_string(spec.N);
      return out;
    }
    case Family::BIBD:
    case Family::BEG: {
      auto b = codes::build_bibd_from_difference_set(cfg.N);
      if (family == Family::BEG) b = codes::build_beg(b.matrix, b.spec.L);
      out.code = b;
      return out;
    }
    case Family::BGC:
    case Family::RBGC: {
      CodeSpec spec;
      spec.family = family;
      spec.N = cfg.N;
      spec.K = cfg.N;
      spec.L = std::max(1, static_cast<int>(std::lround(cfg.density * cfg.N)));
      spec.seed = seed;
      SeededRng rng(seed);
      out.code = family == Family::BGC ? codes::build_bgc(spec, rng) : codes::build_rbgc(spec, rng);
      return out;
    }
    case Family::SG: {
      const auto design = codes::difference_set_parameters(cfg.N);
      if (!design) throw InfeasibleError("sg: no design with N = " + std::to_string(cfg.N) + " to match");
      CodeSpec spec = codes::bibd_spec(*design);
      spec.family = Family::SG;
      spec.seed = seed;
      const auto f = codes::sg_feasible(spec.N, spec.K, spec.L, spec.lambda);
      if (!f.feasible) throw InfeasibleError("sg: " + f.reason);
      spec.gamma = sg_gamma_at_min(f);
      SeededRng rng(seed);
      out.code = codes::build_sg(spec, rng);
      if (std::fabs(out.code.density - cfg.density) > cfg.density_tolerance) {
        std::ostringstream os;
        os << "gamma=" << spec.gamma << " (gamma_min " << f.gamma_min << ") off-target";
        out.note = os.str();
      }
      return out;
    }
    case Family::EP: {
      auto t = ep_at_density(cfg.N, cfg.ep_c, cfg.density, cfg.density_tolerance, seed, cfg.quantization_bits);
      out.code = t.build.encoding;
      out.code.spec.seed = seed;
      out.lambda2 = t.build.lambda2_pre;
      out.note = "epsilon=" + std::to_string(t.epsilon) + (t.on_target ? "" : " off-target");
      return out;
    }
  }
  throw ParameterError("unsupported family");
}

inline bool uses_best_of(Family f) { return f == Family::SG || f == Family::EP; }

/// Best of `cfg.best_of` seeds by mean exact error over the S values whose
/// pattern count is within `selection_cap`.
inline Candidate select_candidate(Family family, const SweepConfig& cfg) {
  const int tries = uses_best_of(family) ? std::max(1, cfg.best_of) : 1;
  if (tries == 1) return build_candidate(family, cfg, cfg.seed);
  Candidate best;
  double best_score = std::numeric_limits<double>::infinity();
  for (int t = 0; t < tries; ++t) {
    auto cand = build_candidate(family, cfg, cfg.seed + static_cast<std::uint64_t>(t));
    const int n = static_cast<int>(cand.code.cols());
    double sum = 0.0;
    int count = 0;
    for (int s : cfg.S) {
      if (s >= n || eval::binomial(n, s) > cfg.selection_cap) continue;
      eval::ExactOptions opt;
      opt.cap = cfg.selection_cap;
      opt.threads = cfg.threads;
      sum += eval::worst_case_error_exact(cand.code, s, cfg.decoder, opt).error;
      ++count;
    }
    const double score = count ? sum / count : 0.0;
    if (score < best_score) {
      best_score = score;
      best = std::move(cand);
    }
  }
  return best;
}

struct SweepRow {
  eval::ErrorReport report;
  double straggler_fraction = 0.0;
  std::uint64_t seed = 0;
  bool evaluated = true;
  std::string note;
};

/// Rows in (family order, S ascending). Patterns beyond the enumeration cap
/// are left unevaluated with a note rather than aborting the sweep.
inline std::vector<SweepRow> run_sweep(const SweepConfig& cfg) {
  std::vector<SweepRow> rows;
  for (auto family : cfg.families) {
    const auto cand = select_candidate(family, cfg);
    const int n = static_cast<int>(cand.code.cols());
    for (int s : cfg.S) {
      SweepRow row;
      row.seed = cand.seed;
      row.note = cand.note;
      row.straggler_fraction = static_cast<double>(s) / n;
      if (s >= n) continue;
      try {
        eval::ExactOptions opt;
        opt.cap = cfg.cap;
        opt.threads = cfg.threads;
        row.report = eval::worst_case_error(cand.code, s, cfg.decoder, cfg.mode, opt);
      } catch (const ParameterError& e) {
        row.evaluated = false;
        row.note = e.what();
        row.report.family = family;
        row.report.N = n;
        row.report.K = static_cast<int>(cand.code.rows());
        row.report.density = cand.code.density;
        row.report.S = s;
        row.report.decoder = cfg.decoder;
        row.report.mode = cfg.mode;
        row.report.error = std::numeric_limits<double>::quiet_NaN();
      }
      try {
        row.report.reference = eval::closed_form_reference(cand.code, s, cand.lambda2);
      } catch (const Error&) {
      }
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

}  // namespace gradcode::sweep

#endif  // GRADCODE_SWEEP_HPP
