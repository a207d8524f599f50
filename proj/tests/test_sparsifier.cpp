#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "gradcode/numerics.hpp"
#include "gradcode/sparsifier.hpp"
#include "oracles.hpp"

using namespace gradcode;
using namespace gradcode::sparsify;

namespace {

IntegerGraph cycle(std::size_t n, std::int64_t w = 1) {
  IntegerGraph g(n);
  for (std::size_t i = 0; i < n; ++i) g.add_edge(i, (i + 1) % n, w);
  return g;
}

/// Connected random bipartite multigraph with power-of-two weights.
IntegerGraph random_bipartite(SeededRng& rng, std::size_t left, std::size_t right, std::size_t extra) {
  IntegerGraph g(left + right, left);
  auto w = [&] { return std::int64_t{1} << rng.uniform_index(3); };
  const std::size_t m = std::min(left, right);
  for (std::size_t i = 0; i < m; ++i) {
    g.add_edge(i, left + i, w());
    if (i + 1 < m) g.add_edge(i + 1, left + i, w());
  }
  for (std::size_t i = m; i < left; ++i) g.add_edge(i, left + m - 1, w());
  for (std::size_t j = m; j < right; ++j) g.add_edge(m - 1, left + j, w());
  for (std::size_t t = 0; t < extra; ++t) g.add_edge(rng.uniform_index(left), left + rng.uniform_index(right), w());
  return g;
}

void expect_partition(const IntegerGraph& g, const CycleDecomposition& d) {
  std::vector<int> seen(g.edge_count(), 0);
  for (const auto& c : d.cycles) {
    ASSERT_FALSE(c.empty());
    // Consecutive edges share a vertex and the walk closes.
    for (std::size_t i = 0; i < c.size(); ++i) {
      const auto& a = g.edges()[c[i]];
      const auto& b = g.edges()[c[(i + 1) % c.size()]];
      const std::set<std::size_t> ea{a.u, a.v}, eb{b.u, b.v};
      bool share = false;
      for (auto x : ea) share = share || eb.count(x);
      EXPECT_TRUE(share || c.size() == 1);
    }
    for (auto e : c) ++seen[e];
  }
  for (auto e : d.extra_edges) ++seen[e];
  for (int s : seen) EXPECT_EQ(s, 1);
  EXPECT_EQ(d.cycle_edge_count() + d.extra_edges.size(), g.edge_count());
}

}  // namespace

TEST(Lift, IdentityGivesDisjointEdges) {
  const auto g = bipartite_lift(Matrix::Identity(2, 2));
  EXPECT_EQ(g.vertex_count(), 4u);
  EXPECT_EQ(g.edge_count(), 2u);
  EXPECT_EQ(g.component_count(), 2u);
}

TEST(Lift, RoundTrip) {
  SeededRng rng(2);
  Matrix m(4, 6);
  for (Index i = 0; i < m.size(); ++i) m.data()[i] = rng.bernoulli(0.5) ? rng.uniform() : 0.0;
  EXPECT_EQ(lift_inverse(bipartite_lift(m)), m);
}

TEST(Lift, SingularValuesPairWithAdjacencyEigenvalues) {
  SeededRng rng(4);
  Matrix e(5, 5);
  for (Index i = 0; i < e.size(); ++i) e.data()[i] = rng.uniform();
  Matrix a = Matrix::Zero(10, 10);
  a.topRightCorner(5, 5) = e;
  a.bottomLeftCorner(5, 5) = e.transpose();
  const Vector ev = oracle::jacobi_eigenvalues(a);
  const auto sv = numerics::singular_values(e, 5);
  for (Index i = 0; i < 5; ++i) {
    EXPECT_NEAR(ev(i), sv.values(i), 1e-9);
    EXPECT_NEAR(ev(9 - i), -sv.values(i), 1e-9);
  }
}

TEST(Quantize, ExactlyRepresentable) {
  WeightedGraph g(2);
  g.add_edge(0, 1, 0.75);
  EXPECT_EQ(quantize(g, 2).graph.edges()[0].weight, 3);
}

TEST(Quantize, OneThirdAtFourBits) {
  WeightedGraph g(2);
  g.add_edge(0, 1, 1.0 / 3.0);
  const auto q = quantize(g, 4);
  EXPECT_EQ(q.graph.edges()[0].weight, 5);
  EXPECT_LE(std::fabs(5.0 / 16.0 - 1.0 / 3.0), 1.0 / 32.0);
}

TEST(Quantize, ErrorAtMostHalfStep) {
  SeededRng rng(10);
  WeightedGraph g(2);
  for (int i = 0; i < 1000; ++i) g.add_edge(0, 1, 0.01 + 5.0 * rng.uniform());
  for (int k : {0, 3, 8, 16}) {
    const auto q = quantize(g, k);
    const auto back = dequantize(q.graph, q.kappa);
    std::size_t j = 0;
    for (const auto& e : g.edges()) {
      if (std::llround(e.weight * q.kappa) == 0) continue;
      EXPECT_LE(std::fabs(back.edges()[j].weight - e.weight), 0.5 / q.kappa);
      ++j;
    }
    EXPECT_EQ(j + q.dropped, g.edge_count());
  }
}

TEST(Quantize, DropsZeroWeights) {
  WeightedGraph g(3);
  g.add_edge(0, 1, 0.01);
  g.add_edge(1, 2, 1.0);
  const auto q = quantize(g, 2);
  EXPECT_EQ(q.dropped, 1u);
  EXPECT_EQ(q.graph.edge_count(), 1u);
}

TEST(PowerOfTwo, FiveSplitsIntoFourAndOne) {
  IntegerGraph g(2);
  g.add_edge(0, 1, 5);
  const auto d = power_of_two_decompose(g);
  std::multiset<std::int64_t> w;
  for (const auto& e : d.edges()) w.insert(e.weight);
  EXPECT_EQ(w, (std::multiset<std::int64_t>{4, 1}));
}

TEST(PowerOfTwo, OneUnchanged) {
  IntegerGraph g(2);
  g.add_edge(0, 1, 1);
  EXPECT_EQ(power_of_two_decompose(g).edges(), g.edges());
}

TEST(PowerOfTwo, PreservesDegreesOnRandomGraphs) {
  SeededRng rng(12);
  for (int t = 0; t < 50; ++t) {
    IntegerGraph g(6);
    for (int e = 0; e < 10; ++e) {
      const auto u = rng.uniform_index(6), v = rng.uniform_index(6);
      if (u != v) g.add_edge(u, v, 1 + static_cast<std::int64_t>(rng.uniform_index(1000)));
    }
    const auto d = power_of_two_decompose(g);
    EXPECT_EQ(d.degrees(), g.degrees());
    for (const auto& e : d.edges()) EXPECT_TRUE(is_power_of_two(e.weight));
    EXPECT_EQ(merge_parallel(d).degrees(), g.degrees());
  }
}

TEST(CycleDecomp, FourCycle) {
  const auto g = cycle(4);
  const auto d = naive_cycle_decomp(g);
  EXPECT_EQ(d.cycles.size(), 1u);
  EXPECT_TRUE(d.extra_edges.empty());
  expect_partition(g, d);
}

TEST(CycleDecomp, PathHasNoCycle) {
  IntegerGraph g(3);
  g.add_edge(0, 1, 1);
  g.add_edge(1, 2, 1);
  const auto d = naive_cycle_decomp(g);
  EXPECT_TRUE(d.cycles.empty());
  EXPECT_EQ(d.extra_edges.size(), 2u);
}

TEST(CycleDecomp, CompleteGraphOnFour) {
  IntegerGraph g(4);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = i + 1; j < 4; ++j) g.add_edge(i, j, 1);
  const auto d = naive_cycle_decomp(g);
  EXPECT_EQ(d.cycle_edge_count() + d.extra_edges.size(), 6u);
  EXPECT_FALSE(d.cycles.empty());
  expect_partition(g, d);
}

TEST(CycleDecomp, ParallelEdgesFormTwoCycles) {
  IntegerGraph g(2);
  g.add_edge(0, 1, 1);
  g.add_edge(0, 1, 2);
  const auto d = naive_cycle_decomp(g);
  ASSERT_EQ(d.cycles.size(), 1u);
  EXPECT_EQ(d.cycles[0].size(), 2u);
}

TEST(CycleDecomp, PartitionOnRandomBipartite) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    SeededRng rng(seed);
    const auto g = random_bipartite(rng, 2 + rng.uniform_index(5), 2 + rng.uniform_index(5), rng.uniform_index(15));
    const auto d = naive_cycle_decomp(g);
    expect_partition(g, d);
    for (const auto& c : d.cycles) EXPECT_EQ(c.size() % 2, 0u);
  }
}

TEST(SparsifyOnce, FourCycleBothOutcomes) {
  const auto g = cycle(4);
  std::set<std::vector<std::pair<std::size_t, std::size_t>>> outcomes;
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    SeededRng rng(seed);
    const auto out = sparsify_once(g, numerics::effective_resistances(g), rng);
    EXPECT_EQ(out.edge_count(), 2u);
    for (const auto& e : out.edges()) EXPECT_EQ(e.weight, 2);
    EXPECT_EQ(out.degrees(), std::vector<std::int64_t>(4, 2));
    std::vector<std::pair<std::size_t, std::size_t>> kept;
    for (const auto& e : out.edges()) kept.emplace_back(std::minmax(e.u, e.v));
    std::sort(kept.begin(), kept.end());
    outcomes.insert(kept);
  }
  EXPECT_EQ(outcomes.size(), 2u);
}

TEST(SparsifyOnce, ForestUnchanged) {
  IntegerGraph g(4);
  g.add_edge(0, 1, 2);
  g.add_edge(1, 2, 4);
  g.add_edge(1, 3, 1);
  SeededRng rng(1);
  RoundStats st;
  const auto out = sparsify_once(g, numerics::effective_resistances(g), rng, &st);
  EXPECT_EQ(st.cycles, 0u);
  EXPECT_EQ(merge_parallel(out).edges(), merge_parallel(g).edges());
}

TEST(SparsifyOnce, DegreesExactOnRandomBipartite) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    SeededRng rng(seed);
    const auto g = random_bipartite(rng, 3 + rng.uniform_index(4), 3 + rng.uniform_index(4), 5 + rng.uniform_index(15));
    auto coin = rng.fork(1);
    const auto out = sparsify_once(g, numerics::effective_resistances(g), coin);
    EXPECT_EQ(out.degrees(), g.degrees());
    for (const auto& e : out.edges()) EXPECT_GT(e.weight, 0);
  }
}

TEST(SparsifyOnce, UnbiasedOnWeightedCycle) {
  // Weights 1, 3, 1, 3 on a 4-cycle; the mean update over coin flips is zero.
  IntegerGraph g(4);
  g.add_edge(0, 1, 1);
  g.add_edge(1, 2, 3);
  g.add_edge(2, 3, 1);
  g.add_edge(3, 0, 3);
  const auto r = numerics::effective_resistances(g);
  const int trials = 20000;
  double w01 = 0.0;
  for (int t = 0; t < trials; ++t) {
    SeededRng rng(99, static_cast<std::uint64_t>(t));
    const auto out = merge_parallel(sparsify_once(g, r, rng));
    for (const auto& e : out.edges()) {
      if (std::min(e.u, e.v) == 0 && std::max(e.u, e.v) == 1) w01 += static_cast<double>(e.weight);
    }
  }
  // Edge (0,1) becomes 0 w.p. 3/4 or 4 w.p. 1/4 when it is a candidate.
  const double mean = w01 / trials;
  const double se = std::sqrt(3.0 / trials);
  EXPECT_LT(std::fabs(mean - 1.0), 4.0 * se + 1e-12);
}

TEST(Sparsify, TinyEpsilonAcceptsNothing) {
  WeightedGraph g(8, 4);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 4; j < 8; ++j) g.add_edge(i, j, 1.0);
  SeededRng rng(1);
  const auto r = degree_preserving_sparsify(g, 1e-9, 16, rng);
  EXPECT_EQ(r.stats.rounds_accepted, 0u);
  EXPECT_EQ(r.graph.edge_count(), 16u);
}

TEST(Sparsify, CompleteBipartiteFourFour) {
  WeightedGraph g(8, 4);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 4; j < 8; ++j) g.add_edge(i, j, 1.0);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    SeededRng rng(seed);
    const auto r = degree_preserving_sparsify(g, 1.0, 16, rng);
    EXPECT_LE(r.graph.edge_count(), 16u);
    for (double d : r.graph.degrees()) EXPECT_NEAR(d, 4.0, 1e-12);
    const Matrix diff = g.laplacian() - r.graph.laplacian();
    const double dev = oracle::jacobi_eigenvalues(diff).cwiseAbs().maxCoeff();
    const double norm = oracle::jacobi_eigenvalues(g.laplacian()).cwiseAbs().maxCoeff();
    EXPECT_LE(dev, (std::exp(1.0) - 1.0) * norm + 1e-9);
    EXPECT_NEAR(dev, r.stats.deviation, 1e-9);
    EXPECT_TRUE(r.graph.is_connected());
  }
}

TEST(Sparsify, RemovesEdgesFromDenseLift) {
  SeededRng draw(5);
  Matrix m(12, 12);
  for (Index i = 0; i < m.size(); ++i) m.data()[i] = 0.5 + draw.uniform();
  SeededRng rng(5);
  const auto r = degree_preserving_sparsify(bipartite_lift(m), 0.5, 20, rng);
  EXPECT_LT(r.stats.edges_after, r.stats.edges_before);
  EXPECT_LE(r.stats.deviation, r.stats.budget);
  const auto deg_in = bipartite_lift(m).degrees();
  const auto deg_out = r.graph.degrees();
  for (std::size_t v = 0; v < deg_in.size(); ++v) EXPECT_NEAR(deg_out[v], deg_in[v], 24.0 / std::ldexp(1.0, 20));
}

TEST(Sparsify, RejectsBadInput) {
  WeightedGraph g(4);
  g.add_edge(0, 1, 1.0);
  g.add_edge(2, 3, 1.0);
  SeededRng rng(1);
  EXPECT_THROW(degree_preserving_sparsify(g, 0.5, 8, rng), ParameterError);
  WeightedGraph h(2);
  h.add_edge(0, 1, 1.0);
  EXPECT_THROW(degree_preserving_sparsify(h, 0.0, 8, rng), ParameterError);
  EXPECT_THROW(degree_preserving_sparsify(h, 1.5, 8, rng), ParameterError);
}
