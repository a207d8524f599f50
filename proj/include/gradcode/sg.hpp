#ifndef GRADCODE_SG_HPP
#define GRADCODE_SG_HPP

#include <cmath>
#include <optional>
#include <sstream>
#include <string>
#include <tuple>
#include <utility>

#include "gradcode/bibd.hpp"
#include "gradcode/codes.hpp"

namespace gradcode::codes {

/// Entry moments of the sparse Gaussian code: X_ij ~ N(a, b), Cov(X_ij, X_ik) = c.
struct SgDerivedParams {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  double gamma = 1.0;
  int N = 0;
  int K = 0;
  int L = 0;
  int lambda = 0;

  /// L / (L + lambda (N - S - 1)).
  double rho(int S) const {
    return static_cast<double>(L) / (L + lambda * static_cast<double>(N - S - 1));
  }

  numerics::ExchangeableGaussianParams row_params() const { return {a, b, c, N}; }
};

inline SgDerivedParams sg_solve_params(const CodeSpec& spec) {
  if (!(spec.gamma > 0.0)) throw ParameterError("sg: gamma must be positive");
  detail::require(spec.gamma <= 1.0, "sg: gamma must be at most 1");
  detail::require(spec.N > 0 && spec.K > 0 && spec.L > 0, "sg: N, K, L must be positive");
  detail::require(spec.L <= spec.K, "sg: need L <= K");
  const double K = spec.K;
  const double L = spec.L;
  const double g = spec.gamma;
  SgDerivedParams p;
  p.gamma = g;
  p.N = spec.N;
  p.K = spec.K;
  p.L = spec.L;
  p.lambda = spec.lambda;
  p.a = L / (K * g);
  p.b = (L * g / K - L * L / (K * K)) / (g * g);
  p.c = (spec.lambda / K - L * L / (K * K)) / (g * g);

  // a g = L/K, (c + a^2) g^2 = lambda/K, (b + a^2) g = L/K.
  const double r1 = p.a * g - L / K;
  const double r2 = (p.c + p.a * p.a) * g * g - spec.lambda / K;
  const double r3 = (p.b + p.a * p.a) * g - L / K;
  if (std::fabs(r1) > 1e-12 || std::fabs(r2) > 1e-12 || std::fabs(r3) > 1e-12) {
    throw Error("sg_solve_params: moment system residual above 1e-12");
  }
  return p;
}

struct SgFeasibility {
  bool feasible = false;
  double gamma_min = 0.0;      ///< max of the two lower bounds (may exceed 1)
  double bound_lambda = 0.0;   ///< lambda / L
  double bound_spread = 0.0;   ///< ((N-1)(L^2 - K lambda) + L^2) / (K L)
  bool psd_at_gamma_min = false;
  bool psd_at_one = false;
  std::string reason;          ///< empty when feasible
};

/// The two lower bounds on gamma; real arguments so region scans can use
/// non-integral K and lambda.
inline std::pair<double, double> sg_gamma_bounds(double n, double k, double l, double lambda) {
  return {lambda / l, ((n - 1.0) * (l * l - k * lambda) + l * l) / (k * l)};
}

/// Gamma interval [gamma_min, 1] on which the sparse Gaussian code exists.
inline SgFeasibility sg_feasible(int N, int K, int L, int lambda) {
  detail::require(N > 0 && K > 0 && L > 0 && lambda >= 0, "sg_feasible: parameters must be positive");
  SgFeasibility f;
  std::tie(f.bound_lambda, f.bound_spread) = sg_gamma_bounds(N, K, L, lambda);
  f.gamma_min = std::max(f.bound_lambda, f.bound_spread);
  auto psd = [&](double g) {
    CodeSpec s;
    s.N = N;
    s.K = K;
    s.L = L;
    s.lambda = lambda;
    s.gamma = g;
    return sg_solve_params(s).row_params().is_psd();
  };
  if (L > K) {
    f.reason = "L = " + std::to_string(L) + " exceeds K = " + std::to_string(K);
    return f;
  }
  if (f.gamma_min > 1.0 + 1e-12) {
    std::ostringstream os;
    os << "gamma_min = " << f.gamma_min << " exceeds 1";
    f.reason = os.str();
    return f;
  }
  f.feasible = true;
  f.psd_at_gamma_min = f.gamma_min > 0.0 ? psd(std::min(1.0, f.gamma_min)) : false;
  f.psd_at_one = psd(1.0);
  return f;
}

/// Throws InfeasibleError unless gamma lies in [gamma_min, 1].
inline void require_sg_feasible(const CodeSpec& spec) {
  const auto f = sg_feasible(spec.N, spec.K, spec.L, spec.lambda);
  if (!f.feasible) throw InfeasibleError("sg: infeasible parameters: " + f.reason);
  const double tol = 1e-12;
  if (spec.gamma < f.gamma_min - tol || spec.gamma > 1.0) {
    std::ostringstream os;
    os << "sg: gamma = " << spec.gamma << " outside [gamma_min, 1] with gamma_min = "
       << f.gamma_min << " (lambda/L = " << f.bound_lambda
       << ", ((N-1)(L^2-K lambda)+L^2)/(KL) = " << f.bound_spread << ")";
    throw InfeasibleError(os.str());
  }
}

/// K x N matrix of exchangeable Gaussian rows masked by i.i.d. Bernoulli(gamma).
inline EncodingMatrix build_sg(CodeSpec spec, SeededRng& rng) {
  spec.family = Family::SG;
  require_sg_feasible(spec);
  const auto p = sg_solve_params(spec);
  const auto row = p.row_params();
  if (!row.is_psd()) throw InfeasibleError("sg: infeasible covariance");
  Matrix m(spec.K, spec.N);
  for (Index i = 0; i < m.rows(); ++i) {
    const Vector x = numerics::sample_exchangeable_gaussian_row(row, rng);
    for (Index j = 0; j < m.cols(); ++j) m(i, j) = rng.bernoulli(spec.gamma) ? x(j) : 0.0;
  }
  return make_encoding(std::move(m), spec);
}

struct SgReference {
  double bibd_error = 0.0;   ///< 1 - (1/K) L^2 (N-S) / (L + lambda (N-S-1))
  double slack = 0.0;        ///< K^-(1/2 - delta)
  double rho = 0.0;
  double hypothesis_value = 0.0;  ///< rho^2 (N-S) (b + (N-S-1) c)
  bool variance_hypothesis = false;  ///< hypothesis_value < 2
  bool nonnegative_covariance = false;  ///< c >= 0
  bool hypotheses_hold = false;
  std::string probability = "asymptotic, not evaluated";
};

inline SgReference sg_theoretical_reference(const CodeSpec& spec, int S, double delta) {
  detail::require(delta > 0.0 && delta < 0.5, "sg_theoretical_reference: need 0 < delta < 1/2");
  detail::require(S >= 0 && S < spec.N, "sg_theoretical_reference: need 0 <= S < N");
  const auto p = sg_solve_params(spec);
  SgReference r;
  r.bibd_error = bibd_exact_error(spec, S);
  r.slack = std::pow(static_cast<double>(spec.K), -(0.5 - delta));
  r.rho = p.rho(S);
  const double live = spec.N - S;
  r.hypothesis_value = r.rho * r.rho * live * (p.b + (live - 1.0) * p.c);
  r.variance_hypothesis = r.hypothesis_value < 2.0;
  r.nonnegative_covariance = p.c >= 0.0;
  r.hypotheses_hold = r.variance_hypothesis && r.nonnegative_covariance;
  return r;
}

}  // namespace gradcode::codes

#endif  // GRADCODE_SG_HPP
