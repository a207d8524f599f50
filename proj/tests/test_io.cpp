#include <gtest/gtest.h>

#include <sstream>

#include "gradcode/io.hpp"
#include "oracles.hpp"

using namespace gradcode;
using namespace gradcode::io;

TEST(Real, FormatParsesBackExactly) {
  SeededRng rng(4);
  for (int i = 0; i < 1000; ++i) {
    const double x = (rng.uniform() - 0.5) * std::pow(10.0, static_cast<double>(rng.uniform_index(20)) - 10.0);
    EXPECT_EQ(parse_real(format_real(x), "x"), x);
  }
  EXPECT_THROW(parse_real("1.5x", "x"), ParameterError);
  EXPECT_THROW(parse_real("", "x"), ParameterError);
}

TEST(Spec, MetadataRoundTrip) {
  CodeSpec s;
  s.family = Family::EP;
  s.N = 12;
  s.K = 12;
  s.L = 3;
  s.R = 3;
  s.lambda = 2;
  s.gamma = 0.7;
  s.d = 31.25;
  s.c = 1.0 / 3.0;
  s.epsilon = 0.3;
  s.seed = 18446744073709551615ull;
  EXPECT_EQ(spec_from_metadata(spec_metadata(s)), s);
}

TEST(Matrix, EncodingRoundTrip) {
  SeededRng rng(9);
  Matrix m(3, 5);
  for (Index i = 0; i < m.size(); ++i) m.data()[i] = rng.normal();
  CodeSpec s;
  s.family = Family::SG;
  s.N = 5;
  s.K = 3;
  s.L = 2;
  s.lambda = 1;
  s.gamma = 0.5;
  const auto e = make_encoding(m, s);
  std::stringstream ss;
  write_encoding(ss, e, {{"lambda2", "1.5"}});
  const auto f = read_matrix(ss);
  EXPECT_EQ(f.matrix, m);
  EXPECT_EQ(f.meta.at("lambda2"), "1.5");
  const auto back = to_encoding(f);
  EXPECT_EQ(back.spec, s);
  EXPECT_DOUBLE_EQ(back.density, e.density);
}

TEST(Matrix, PlainFileWithoutMetadata) {
  std::istringstream in("1 0 0\r\n\n0 1 0\n0 0 1\n");
  const auto f = read_matrix(in);
  EXPECT_EQ(f.matrix, Matrix::Identity(3, 3));
  EXPECT_TRUE(f.meta.empty());
  const auto e = to_encoding(f);
  EXPECT_EQ(e.spec.N, 3);
  EXPECT_EQ(e.spec.family, Family::FRC);
}

TEST(Matrix, RejectsRaggedAndNonFinite) {
  std::istringstream ragged("1 2\n3\n");
  EXPECT_THROW(read_matrix(ragged), ParameterError);
  std::istringstream bad("1 nan\n");
  EXPECT_ANY_THROW(read_matrix(bad));
  std::istringstream empty("# only=meta\n");
  EXPECT_THROW(read_matrix(empty), ParameterError);
}

TEST(Matrix, FanoFileValidatesAsDesign) {
  const std::string path = ::testing::TempDir() + "fano.txt";
  {
    std::ofstream out(path);
    write_matrix(out, oracle::fano(), {});
  }
  const auto e = load_bibd_incidence(path);
  EXPECT_EQ(e.spec.family, Family::BIBD);
  EXPECT_EQ(e.spec.lambda, 1);
  EXPECT_THROW(read_matrix_file(path + ".missing"), Error);
}

TEST(Graph, RoundTrip) {
  WeightedGraph g(5, 2);
  g.add_edge(0, 2, 0.25);
  g.add_edge(1, 4, 3.0);
  g.add_edge(0, 3, 1.0 / 3.0);
  std::stringstream ss;
  write_graph(ss, g, {{"note", "x"}});
  const auto f = read_graph(ss);
  EXPECT_EQ(f.graph.vertex_count(), 5u);
  EXPECT_EQ(f.graph.left_size(), 2u);
  EXPECT_EQ(f.graph.edges(), g.edges());
  EXPECT_EQ(f.meta.at("note"), "x");
}

TEST(Graph, RejectsBadLines) {
  std::istringstream bad("0 1\n");
  EXPECT_THROW(read_graph(bad), ParameterError);
  std::istringstream small("# vertices=2\n0 5 1\n");
  EXPECT_THROW(read_graph(small), ParameterError);
}

TEST(Csv, ReportRow) {
  eval::ErrorReport r;
  r.family = Family::BIBD;
  r.N = 7;
  r.K = 7;
  r.density = 3.0 / 7.0;
  r.S = 1;
  r.error = 1.0 / 28.0;
  r.argmax_pattern = eval::StragglerPattern::without(7, {0});
  r.reference = eval::Reference{1.0 / 28.0, "bibd_exact"};
  const auto row = report_csv_row(r);
  const auto header = report_csv_header();
  EXPECT_EQ(std::count(row.begin(), row.end(), ','), std::count(header.begin(), header.end(), ','));
  EXPECT_NE(row.find("1;2;3;4;5;6"), std::string::npos);
  EXPECT_EQ(row.substr(0, 9), "bibd,7,7,");
}
