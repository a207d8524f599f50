#ifndef GRADCODE_SPARSIFIER_HPP
#define GRADCODE_SPARSIFIER_HPP

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <deque>
#include <limits>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "gradcode/error.hpp"
#include "gradcode/graph.hpp"
#include "gradcode/numerics.hpp"
#include "gradcode/rng.hpp"

/// Degree-preserving spectral sparsification of weighted bipartite graphs.
///
/// Pipeline: quantize to integers, split every weight into powers of two,
/// then repeatedly cancel cycles of low-leverage edges while the Laplacian
/// stays within budget.
namespace gradcode::sparsify {

// ---------------------------------------------------------------------------
// Bipartite lift
// ---------------------------------------------------------------------------

/// Graph on K + N vertices with edge (i, K + j, E_ij) for every non-zero entry.
inline WeightedGraph bipartite_lift(const Matrix& e) {
  detail::require(e.rows() > 0 && e.cols() > 0, "bipartite_lift: empty matrix");
  numerics::require_finite(e, "bipartite_lift");
  if ((e.array() < 0.0).any()) throw ParameterError("bipartite_lift: negative entry");
  const auto k = static_cast<std::size_t>(e.rows());
  WeightedGraph g(k + static_cast<std::size_t>(e.cols()), k);
  for (Index i = 0; i < e.rows(); ++i) {
    for (Index j = 0; j < e.cols(); ++j) {
      if (e(i, j) > 0.0) g.add_edge(static_cast<std::size_t>(i), k + static_cast<std::size_t>(j), e(i, j));
    }
  }
  return g;
}

/// Recovers the K x N block; parallel edges are summed.
template <typename W>
Matrix lift_inverse(const BasicGraph<W>& g) {
  detail::require(g.is_bipartite_lift(), "lift_inverse: graph is not a bipartite lift");
  const auto k = g.left_size();
  Matrix e = Matrix::Zero(static_cast<Index>(k), static_cast<Index>(g.vertex_count() - k));
  for (const auto& edge : g.edges()) {
    const auto [lo, hi] = std::minmax(edge.u, edge.v);
    e(static_cast<Index>(lo), static_cast<Index>(hi - k)) += static_cast<double>(edge.weight);
  }
  return e;
}

// ---------------------------------------------------------------------------
// Quantization
// ---------------------------------------------------------------------------

struct QuantizedGraph {
  IntegerGraph graph;
  int k = 0;
  double kappa = 1.0;
  std::size_t dropped = 0;  ///< edges that rounded to zero
};

/// Rounds every weight to the nearest multiple of 1/kappa, kappa = 2^k.
inline QuantizedGraph quantize(const WeightedGraph& g, int k) {
  detail::require(k >= 0 && k <= 52, "quantize: k must lie in [0, 52]");
  QuantizedGraph q;
  q.k = k;
  q.kappa = std::ldexp(1.0, k);
  q.graph = IntegerGraph(g.vertex_count(), g.left_size());
  q.graph.reserve(g.edge_count());
  for (const auto& e : g.edges()) {
    const auto w = static_cast<std::int64_t>(std::llround(q.kappa * e.weight));
    if (w == 0) {
      ++q.dropped;
      continue;
    }
    q.graph.add_edge(e.u, e.v, w);
  }
  return q;
}

inline WeightedGraph dequantize(const IntegerGraph& g, double kappa) {
  WeightedGraph out(g.vertex_count(), g.left_size());
  out.reserve(g.edge_count());
  for (const auto& e : g.edges()) out.add_edge(e.u, e.v, static_cast<double>(e.weight) / kappa);
  return out;
}

// ---------------------------------------------------------------------------
// Power-of-two weights and parallel-edge merging
// ---------------------------------------------------------------------------

/// Replaces each edge by parallel edges carrying the set bits of its weight.
inline IntegerGraph power_of_two_decompose(const IntegerGraph& g) {
  IntegerGraph out(g.vertex_count(), g.left_size());
  for (const auto& e : g.edges()) {
    auto w = static_cast<std::uint64_t>(e.weight);
    while (w != 0) {
      const std::uint64_t bit = std::uint64_t{1} << (63 - std::countl_zero(w));
      out.add_edge(e.u, e.v, static_cast<std::int64_t>(bit));
      w &= ~bit;
    }
  }
  return out;
}

/// One edge per vertex pair carrying the summed weight, sorted by (u, v).
template <typename W>
BasicGraph<W> merge_parallel(const BasicGraph<W>& g) {
  std::map<std::pair<std::size_t, std::size_t>, W> total;
  for (const auto& e : g.edges()) total[std::minmax(e.u, e.v)] += e.weight;
  BasicGraph<W> out(g.vertex_count(), g.left_size());
  out.reserve(total.size());
  for (const auto& [key, w] : total) out.add_edge(key.first, key.second, w);
  return out;
}

inline bool is_power_of_two(std::int64_t w) { return w > 0 && std::has_single_bit(static_cast<std::uint64_t>(w)); }

// ---------------------------------------------------------------------------
// Cycle decomposition
// ---------------------------------------------------------------------------

/// Edge indices of the input graph, split into closed walks and leftovers.
/// Each cycle lists its edges in walk order.
struct CycleDecomposition {
  std::vector<std::vector<std::size_t>> cycles;
  std::vector<std::size_t> extra_edges;

  std::size_t cycle_edge_count() const {
    std::size_t n = 0;
    for (const auto& c : cycles) n += c.size();
    return n;
  }
};

namespace detail_cycles {

struct Peeler {
  std::vector<std::size_t> eu, ev;
  std::vector<std::vector<std::size_t>> incident;
  std::vector<char> active;
  std::vector<std::size_t> deg;
  std::size_t remaining = 0;

  template <typename W>
  explicit Peeler(const BasicGraph<W>& g)
      : incident(g.vertex_count()), active(g.edge_count(), 1), deg(g.vertex_count(), 0),
        remaining(g.edge_count()) {
    for (std::size_t i = 0; i < g.edge_count(); ++i) {
      const auto& e = g.edges()[i];
      eu.push_back(e.u);
      ev.push_back(e.v);
      incident[e.u].push_back(i);
      incident[e.v].push_back(i);
      ++deg[e.u];
      ++deg[e.v];
    }
  }

  std::size_t other(std::size_t edge, std::size_t v) const { return eu[edge] == v ? ev[edge] : eu[edge]; }

  void remove(std::size_t edge) {
    active[edge] = 0;
    --deg[eu[edge]];
    --deg[ev[edge]];
    --remaining;
  }

  std::vector<std::size_t> active_at(std::size_t v) const {
    std::vector<std::size_t> out;
    for (auto e : incident[v]) {
      if (active[e]) out.push_back(e);
    }
    return out;
  }

  /// Follows degree-2 vertices from `start` leaving through `edge`. Returns
  /// the edges walked and the vertex where the walk stopped.
  std::pair<std::vector<std::size_t>, std::size_t> walk(std::size_t start, std::size_t edge) const {
    std::vector<std::size_t> path{edge};
    std::size_t x = other(edge, start);
    std::size_t came = edge;
    while (x != start && deg[x] == 2) {
      const auto inc = active_at(x);
      const std::size_t next = inc[0] == came ? inc[1] : inc[0];
      path.push_back(next);
      came = next;
      x = other(next, x);
    }
    return {path, x};
  }

  /// Shortest cycle through the BFS tree rooted at `root`, in walk order.
  std::optional<std::vector<std::size_t>> bfs_cycle(std::size_t root) const {
    const std::size_t none = static_cast<std::size_t>(-1);
    std::vector<std::size_t> parent_edge(deg.size(), none), depth(deg.size(), none);
    std::deque<std::size_t> queue{root};
    depth[root] = 0;
    while (!queue.empty()) {
      const auto x = queue.front();
      queue.pop_front();
      for (auto e : incident[x]) {
        if (!active[e] || e == parent_edge[x]) continue;
        const auto y = other(e, x);
        if (depth[y] == none) {
          depth[y] = depth[x] + 1;
          parent_edge[y] = e;
          queue.push_back(y);
          continue;
        }
        // Non-tree edge: close the cycle through the lowest common ancestor.
        std::vector<std::size_t> up_x, up_y;
        auto a = x, b = y;
        while (a != b) {
          if (depth[a] >= depth[b]) {
            up_x.push_back(parent_edge[a]);
            a = other(parent_edge[a], a);
          } else {
            up_y.push_back(parent_edge[b]);
            b = other(parent_edge[b], b);
          }
        }
        std::vector<std::size_t> cycle(up_x.rbegin(), up_x.rend());
        cycle.push_back(e);
        cycle.insert(cycle.end(), up_y.begin(), up_y.end());
        return cycle;
      }
    }
    return std::nullopt;
  }
};

}  // namespace detail_cycles

/// Peels degree-1 edges and degree-2 paths into extra edges (a path whose
/// ends meet is a cycle), and once every remaining vertex has degree >= 3
/// removes a short cycle found by BFS. Repeats until no edges are left.
template <typename W>
CycleDecomposition naive_cycle_decomp(const BasicGraph<W>& g) {
  detail_cycles::Peeler p(g);
  CycleDecomposition out;
  const std::size_t n = g.vertex_count();
  while (p.remaining > 0) {
    bool progress = false;
    for (std::size_t v = 0; v < n; ++v) {
      if (p.deg[v] == 1) {
        const auto e = p.active_at(v)[0];
        p.remove(e);
        out.extra_edges.push_back(e);
        progress = true;
      }
    }
    if (progress) continue;

    for (std::size_t v = 0; v < n && !progress; ++v) {
      if (p.deg[v] != 2) continue;
      const auto inc = p.active_at(v);
      auto [fwd, end_f] = p.walk(v, inc[0]);
      std::vector<std::size_t> path;
      bool closed = false;
      if (end_f == v) {
        path = std::move(fwd);
        closed = true;
      } else {
        auto [back, end_b] = p.walk(v, inc[1]);
        path.assign(back.rbegin(), back.rend());
        path.insert(path.end(), fwd.begin(), fwd.end());
        closed = end_b == end_f;
      }
      for (auto e : path) p.remove(e);
      if (closed) {
        out.cycles.push_back(std::move(path));
      } else {
        out.extra_edges.insert(out.extra_edges.end(), path.begin(), path.end());
      }
      progress = true;
    }
    if (progress) continue;

    for (std::size_t v = 0; v < n; ++v) {
      if (p.deg[v] == 0) continue;
      auto cycle = p.bfs_cycle(v);
      if (!cycle) throw Error("naive_cycle_decomp: no cycle at a vertex of degree >= 3");
      for (auto e : *cycle) p.remove(e);
      out.cycles.push_back(std::move(*cycle));
      break;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// One sparsification round
// ---------------------------------------------------------------------------

struct RoundStats {
  std::size_t cycles = 0;
  std::size_t removed = 0;
};

/// Index of the highest set bit; equal weights share a class.
inline int weight_class(std::int64_t w) { return 63 - std::countl_zero(static_cast<std::uint64_t>(w)); }

/// One round on the merged graph (parallel edges summed first).
///
/// Edges whose leverage w r is at most the lower median of their weight
/// class are candidates. Every even cycle of the candidate subgraph is split
/// into alternate halves A and B with minimum weights a and b. With
/// probability b / (a + b) the round moves a from A to B, otherwise b from B
/// to A. Each vertex on the cycle gains and loses the same amount, so degrees
/// are unchanged, the expected update is zero, and at least one edge per
/// cycle drops out. On a cycle of equal weights this is a fair coin that
/// keeps alternate edges at twice the weight.
inline IntegerGraph sparsify_once(const IntegerGraph& input, const std::vector<double>& resistances,
                                  SeededRng& rng, RoundStats* stats = nullptr) {
  detail::require(resistances.size() == input.edge_count(), "sparsify_once: one resistance per edge required");

  // Merge parallel edges; a pair's resistance is shared by all its copies.
  std::map<std::pair<std::size_t, std::size_t>, std::pair<std::int64_t, double>> pairs;
  for (std::size_t i = 0; i < input.edge_count(); ++i) {
    const auto& e = input.edges()[i];
    auto& slot = pairs[std::minmax(e.u, e.v)];
    slot.first += e.weight;
    slot.second = resistances[i];
  }
  IntegerGraph g(input.vertex_count(), input.left_size());
  std::vector<double> r;
  for (const auto& [key, wr] : pairs) {
    g.add_edge(key.first, key.second, wr.first);
    r.push_back(wr.second);
  }
  const auto& edges = g.edges();

  std::map<int, std::vector<std::size_t>> classes;
  for (std::size_t i = 0; i < edges.size(); ++i) classes[weight_class(edges[i].weight)].push_back(i);

  IntegerGraph sub(g.vertex_count(), g.left_size());
  std::vector<std::size_t> back;
  for (const auto& [cls, ids] : classes) {
    std::vector<double> lev;
    lev.reserve(ids.size());
    for (auto i : ids) lev.push_back(static_cast<double>(edges[i].weight) * r[i]);
    std::vector<double> sorted = lev;
    const auto mid = (sorted.size() - 1) / 2;
    std::nth_element(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(mid), sorted.end());
    const double cutoff = sorted[mid];
    for (std::size_t t = 0; t < ids.size(); ++t) {
      if (lev[t] <= cutoff) {
        sub.add_edge(edges[ids[t]].u, edges[ids[t]].v, edges[ids[t]].weight);
        back.push_back(ids[t]);
      }
    }
  }
  const auto dec = naive_cycle_decomp(sub);

  std::vector<std::int64_t> w(edges.size());
  for (std::size_t i = 0; i < edges.size(); ++i) w[i] = edges[i].weight;
  RoundStats local;
  for (const auto& cycle : dec.cycles) {
    if (cycle.size() % 2 != 0) continue;
    std::int64_t min_a = std::numeric_limits<std::int64_t>::max(), min_b = min_a;
    for (std::size_t pos = 0; pos < cycle.size(); ++pos) {
      auto& m = pos % 2 == 0 ? min_a : min_b;
      m = std::min(m, w[back[cycle[pos]]]);
    }
    const double p_shrink_a = static_cast<double>(min_b) / static_cast<double>(min_a + min_b);
    const bool shrink_a = rng.uniform() < p_shrink_a;
    const std::int64_t delta = shrink_a ? min_a : min_b;
    for (std::size_t pos = 0; pos < cycle.size(); ++pos) {
      const bool in_a = pos % 2 == 0;
      auto& x = w[back[cycle[pos]]];
      x += in_a == shrink_a ? -delta : delta;
      if (x == 0) ++local.removed;
    }
    ++local.cycles;
  }

  if (stats) *stats = local;
  IntegerGraph next(g.vertex_count(), g.left_size());
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (w[i] > 0) next.add_edge(edges[i].u, edges[i].v, w[i]);
  }
  return next;
}

// ---------------------------------------------------------------------------
// Full pipeline
// ---------------------------------------------------------------------------

struct SparsifyStats {
  std::size_t edges_before = 0;  ///< edges of the input graph
  std::size_t edges_after = 0;   ///< vertex pairs with non-zero weight in the output
  std::size_t dropped = 0;       ///< edges lost to rounding
  std::size_t rounds_accepted = 0;
  std::size_t rounds_rejected = 0;
  double deviation = 0.0;        ///< ||L - L_eps||_2 against the input Laplacian
  double budget = 0.0;           ///< (e^eps - 1) ||L||_2
  double kappa = 1.0;
};

struct SparsifyResult {
  WeightedGraph graph;      ///< merged, dequantized
  IntegerGraph quantized;   ///< merged, quantized
  SparsifyStats stats;
};

inline constexpr int kDefaultQuantizationBits = 16;

template <typename W>
bool same_degrees(const BasicGraph<W>& a, const BasicGraph<W>& b) {
  return a.degrees() == b.degrees();
}

/// Sparsifies `g` while keeping every quantized degree exact and
/// ||L - L_eps||_2 <= (e^eps - 1) ||L||_2 against the input Laplacian.
/// A round that would break the budget or disconnect the graph is rolled
/// back and ends the loop; so does a round that finds no cycle.
inline SparsifyResult degree_preserving_sparsify(const WeightedGraph& g, double epsilon, int k,
                                                 SeededRng& rng, std::size_t max_rounds = 100000) {
  if (!(epsilon > 0.0) || epsilon > 1.0) throw ParameterError("sparsify: epsilon must lie in (0, 1]");
  if (!g.is_connected()) throw ParameterError("sparsify: graph is disconnected");

  SparsifyResult out;
  const auto q = quantize(g, k);
  out.stats.edges_before = g.edge_count();
  out.stats.dropped = q.dropped;
  out.stats.kappa = q.kappa;
  if (!q.graph.is_connected()) throw ParameterError("sparsify: graph is disconnected after quantization");

  const Matrix l0 = g.laplacian();
  out.stats.budget = std::expm1(epsilon) * numerics::symmetric_norm(l0);
  auto deviation = [&](const IntegerGraph& h) {
    return numerics::symmetric_norm(l0 - h.laplacian() / q.kappa);
  };

  IntegerGraph current = power_of_two_decompose(q.graph);
  const auto target = q.graph.degrees();
  out.stats.deviation = deviation(current);

  for (std::size_t round = 0; round < max_rounds; ++round) {
    const auto r = numerics::effective_resistances(current);
    RoundStats rs;
    IntegerGraph candidate = sparsify_once(current, r, rng, &rs);
    if (rs.cycles == 0) break;
    if (candidate.degrees() != target) throw Error("sparsify: round changed a quantized degree");
    const double dev = deviation(candidate);
    if (dev > out.stats.budget || !candidate.is_connected()) {
      ++out.stats.rounds_rejected;
      break;
    }
    current = std::move(candidate);
    out.stats.deviation = dev;
    ++out.stats.rounds_accepted;
  }

  out.quantized = merge_parallel(current);
  if (out.quantized.degrees() != target) throw Error("sparsify: output degrees differ from the quantized input");
  out.graph = dequantize(out.quantized, q.kappa);
  out.stats.edges_after = out.quantized.edge_count();
  return out;
}

}  // namespace gradcode::sparsify

#endif  // GRADCODE_SPARSIFIER_HPP
