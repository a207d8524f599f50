#ifndef GRADCODE_GRAPH_HPP
#define GRADCODE_GRAPH_HPP

#include <cstddef>
#include <cstdint>
#include <numeric>
#include <string>
#include <type_traits>
#include <vector>

#include <Eigen/Dense>

#include "gradcode/error.hpp"

namespace gradcode {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

template <typename W>
struct BasicEdge {
  std::size_t u = 0;
  std::size_t v = 0;
  W weight{};

  friend bool operator==(const BasicEdge&, const BasicEdge&) = default;
};

/// Undirected weighted multigraph stored as an edge list.
///
/// `W` is `double` for real weights and `std::int64_t` in the quantized
/// domain. When the graph is the bipartite lift of a K x N matrix,
/// `left_size()` is K and every edge joins a vertex below K to one at or above.
template <typename W>
class BasicGraph {
 public:
  using weight_type = W;
  using edge_type = BasicEdge<W>;

  BasicGraph() = default;
  explicit BasicGraph(std::size_t vertex_count, std::size_t left_size = 0)
      : n_(vertex_count), left_(left_size) {
    detail::require(left_size <= vertex_count, "graph: left side larger than vertex count");
  }

  std::size_t vertex_count() const { return n_; }
  std::size_t edge_count() const { return edges_.size(); }
  std::size_t left_size() const { return left_; }
  bool is_bipartite_lift() const { return left_ > 0; }

  const std::vector<edge_type>& edges() const { return edges_; }

  void add_edge(std::size_t u, std::size_t v, W weight) {
    detail::require(u < n_ && v < n_, "graph: vertex id out of range");
    detail::require(u != v, "graph: self-loops are not allowed");
    detail::require(weight > W{0}, "graph: edge weights must be positive");
    if (left_ > 0) {
      detail::require((u < left_) != (v < left_), "graph: edge does not cross the bipartition");
    }
    edges_.push_back({u, v, weight});
  }

  void reserve(std::size_t count) { edges_.reserve(count); }

  std::vector<W> degrees() const {
    std::vector<W> deg(n_, W{0});
    for (const auto& e : edges_) {
      deg[e.u] += e.weight;
      deg[e.v] += e.weight;
    }
    return deg;
  }

  W total_weight() const {
    return std::accumulate(edges_.begin(), edges_.end(), W{0},
                           [](W acc, const edge_type& e) { return acc + e.weight; });
  }

  Matrix adjacency() const {
    Matrix a = Matrix::Zero(static_cast<Index>(n_), static_cast<Index>(n_));
    for (const auto& e : edges_) {
      const auto w = static_cast<double>(e.weight);
      a(static_cast<Index>(e.u), static_cast<Index>(e.v)) += w;
      a(static_cast<Index>(e.v), static_cast<Index>(e.u)) += w;
    }
    return a;
  }

  Matrix laplacian() const {
    Matrix l = Matrix::Zero(static_cast<Index>(n_), static_cast<Index>(n_));
    for (const auto& e : edges_) {
      const auto w = static_cast<double>(e.weight);
      const auto u = static_cast<Index>(e.u);
      const auto v = static_cast<Index>(e.v);
      l(u, u) += w;
      l(v, v) += w;
      l(u, v) -= w;
      l(v, u) -= w;
    }
    return l;
  }

  /// Number of connected components among all vertices (isolated ones count).
  std::size_t component_count() const {
    std::vector<std::size_t> parent(n_);
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    auto find = [&](std::size_t x) {
      while (parent[x] != x) {
        parent[x] = parent[parent[x]];
        x = parent[x];
      }
      return x;
    };
    std::size_t components = n_;
    for (const auto& e : edges_) {
      const auto a = find(e.u);
      const auto b = find(e.v);
      if (a != b) {
        parent[a] = b;
        --components;
      }
    }
    return components;
  }

  bool is_connected() const { return n_ <= 1 || component_count() == 1; }

 private:
  std::size_t n_ = 0;
  std::size_t left_ = 0;
  std::vector<edge_type> edges_;
};

using WeightedGraph = BasicGraph<double>;
using IntegerGraph = BasicGraph<std::int64_t>;

}  // namespace gradcode

#endif  // GRADCODE_GRAPH_HPP
