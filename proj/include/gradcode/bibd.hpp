#ifndef GRADCODE_BIBD_HPP
#define GRADCODE_BIBD_HPP

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "gradcode/codes.hpp"

namespace gradcode::codes {

inline bool is_prime(int q) {
  if (q < 2) return false;
  for (int p = 2; p * p <= q; ++p) {
    if (q % p == 0) return false;
  }
  return true;
}

/// Nonzero e-th powers modulo a prime q.
inline std::vector<int> power_residues(int q, int e) {
  std::set<int> out;
  for (std::int64_t x = 1; x < q; ++x) {
    std::int64_t y = 1;
    for (int t = 0; t < e; ++t) y = (y * x) % q;
    out.insert(static_cast<int>(y));
  }
  return {out.begin(), out.end()};
}

/// Planar difference set for a prime q, or empty when none of the supported
/// families applies.
///
///   q = 3 (mod 4)            quadratic residues,   (q, (q-1)/2, (q-3)/4)
///   q = 4 t^2 + 1, t odd     biquadratic residues, (q, (q-1)/4, (q-5)/16)
inline std::vector<int> cyclic_difference_set(int q) {
  if (!is_prime(q)) return {};
  if (q % 4 == 3) return power_residues(q, 2);
  for (int t = 1; 4 * t * t + 1 <= q; t += 2) {
    if (4 * t * t + 1 == q && t > 1) return power_residues(q, 4);
  }
  return {};
}

struct BibdParameters {
  int points = 0;   ///< v = K
  int blocks = 0;   ///< b = N
  int block_size = 0;  ///< k = L
  int replication = 0;  ///< r = R
  int lambda = 0;
};

/// Checks that `m` is the incidence matrix of a BIBD with constant column
/// sums L, row sums R, and pairwise column intersections lambda >= 1.
/// Throws ValidationError naming the first violated condition.
inline BibdParameters validate_bibd(const Matrix& m) {
  auto fail = [](const std::string& why) { throw ValidationError("not a BIBD: " + why); };
  if (m.rows() < 2 || m.cols() < 2) fail("matrix smaller than 2 x 2");
  std::vector<std::vector<int>> cols(static_cast<std::size_t>(m.cols()),
                                     std::vector<int>(static_cast<std::size_t>(m.rows())));
  for (Index j = 0; j < m.cols(); ++j) {
    for (Index i = 0; i < m.rows(); ++i) {
      const double x = m(i, j);
      if (x != 0.0 && x != 1.0) {
        fail("entry (" + std::to_string(i) + "," + std::to_string(j) + ") is not 0/1");
      }
      cols[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = x == 1.0 ? 1 : 0;
    }
  }
  BibdParameters p;
  p.points = static_cast<int>(m.rows());
  p.blocks = static_cast<int>(m.cols());

  auto col_sum = [&](std::size_t j) {
    int s = 0;
    for (int x : cols[j]) s += x;
    return s;
  };
  p.block_size = col_sum(0);
  for (std::size_t j = 1; j < cols.size(); ++j) {
    if (const int s = col_sum(j); s != p.block_size) {
      fail("column " + std::to_string(j) + " sum " + std::to_string(s) + " != " +
           std::to_string(p.block_size));
    }
  }
  for (Index i = 0; i < m.rows(); ++i) {
    int s = 0;
    for (const auto& c : cols) s += c[static_cast<std::size_t>(i)];
    if (i == 0) p.replication = s;
    if (s != p.replication) {
      fail("row " + std::to_string(i) + " sum " + std::to_string(s) + " != " +
           std::to_string(p.replication));
    }
  }
  auto inner = [&](std::size_t a, std::size_t b) {
    int s = 0;
    for (std::size_t i = 0; i < cols[a].size(); ++i) s += cols[a][i] * cols[b][i];
    return s;
  };
  p.lambda = inner(0, 1);
  if (p.lambda < 1) {
    fail("pairwise column intersection lambda = " + std::to_string(p.lambda) +
         " != required (must be >= 1)");
  }
  for (std::size_t a = 0; a < cols.size(); ++a) {
    for (std::size_t b = a + 1; b < cols.size(); ++b) {
      if (const int s = inner(a, b); s != p.lambda) {
        fail("columns " + std::to_string(a) + "," + std::to_string(b) + " intersect in " +
             std::to_string(s) + " != lambda = " + std::to_string(p.lambda));
      }
    }
  }
  if (p.blocks * p.block_size != p.points * p.replication) fail("N L != K R");
  if (p.replication * (p.block_size - 1) != p.lambda * (p.points - 1)) {
    fail("R (L - 1) != lambda (K - 1)");
  }
  return p;
}

inline CodeSpec bibd_spec(const BibdParameters& p) {
  CodeSpec s;
  s.family = Family::BIBD;
  s.N = p.blocks;
  s.K = p.points;
  s.L = p.block_size;
  s.R = p.replication;
  s.lambda = p.lambda;
  return s;
}

/// Validated BIBD incidence matrix as an encoding matrix.
inline EncodingMatrix make_bibd(const Matrix& incidence) {
  const auto p = validate_bibd(incidence);
  return make_encoding(incidence, bibd_spec(p));
}

/// Symmetric (q, k, lambda) design from a cyclic difference set D:
/// entry (i, j) is 1 iff i + j mod q lies in D. Block j is the translate
/// D - j, and the incidence matrix equals its transpose.
inline EncodingMatrix build_bibd_from_difference_set(int q) {
  const auto ds = cyclic_difference_set(q);
  if (ds.empty()) {
    throw ParameterError("bibd: no difference-set construction for q = " + std::to_string(q) +
                         " (need a prime q = 3 mod 4, or q = 4t^2 + 1 with t odd)");
  }
  std::vector<bool> in(static_cast<std::size_t>(q), false);
  for (int x : ds) in[static_cast<std::size_t>(x)] = true;
  Matrix m = Matrix::Zero(q, q);
  for (int i = 0; i < q; ++i) {
    for (int j = 0; j < q; ++j) m(i, j) = in[static_cast<std::size_t>((i + j) % q)] ? 1.0 : 0.0;
  }
  return make_bibd(m);
}

/// The design parameters the difference-set construction yields for q.
inline std::optional<BibdParameters> difference_set_parameters(int q) {
  const auto ds = cyclic_difference_set(q);
  if (ds.empty()) return std::nullopt;
  const int k = static_cast<int>(ds.size());
  return BibdParameters{q, q, k, k, k * (k - 1) / (q - 1)};
}

/// 1 - (1/K) L^2 (N - S) / (L + lambda (N - S - 1)).
inline double bibd_exact_error(const CodeSpec& spec, int S) {
  detail::require(spec.K > 0 && spec.L > 0 && spec.lambda > 0, "bibd_exact_error: invalid spec");
  detail::require(S >= 0 && S < spec.N, "bibd_exact_error: need 0 <= S < N");
  const double L = spec.L;
  const double live = spec.N - S;
  return 1.0 - (L * L * live) / (static_cast<double>(spec.K) * (L + spec.lambda * (live - 1.0)));
}

/// Constant optimal decoder value L / (L + lambda (N - S - 1)).
inline double bibd_decoding_scalar(const CodeSpec& spec, int S) {
  const double L = spec.L;
  return L / (L + spec.lambda * static_cast<double>(spec.N - S - 1));
}

}  // namespace gradcode::codes

#endif  // GRADCODE_BIBD_HPP
