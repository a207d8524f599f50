#ifndef GRADCODE_IO_HPP
#define GRADCODE_IO_HPP

#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "gradcode/codes.hpp"
#include "gradcode/evaluator.hpp"
#include "gradcode/graph.hpp"

/// Plain-text matrix and graph files, and CSV rows for error reports.
///
/// Both file kinds start with `# key=value` metadata lines. A matrix file
/// then holds K rows of N space-separated values; a graph file holds one
/// `u v w` edge per line. Reals are written with 17 significant digits so
/// reading back is bit-exact.
namespace gradcode::io {

using Metadata = std::map<std::string, std::string>;

inline std::string format_real(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

inline double parse_real(const std::string& s, const std::string& what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ParameterError("cannot parse " + what + " '" + s + "'");
  }
}

inline Metadata spec_metadata(const CodeSpec& s) {
  return {{"family", std::string(to_string(s.family))},
          {"N", std::to_string(s.N)},
          {"K", std::to_string(s.K)},
          {"L", std::to_string(s.L)},
          {"R", std::to_string(s.R)},
          {"lambda", std::to_string(s.lambda)},
          {"gamma", format_real(s.gamma)},
          {"d", format_real(s.d)},
          {"c", format_real(s.c)},
          {"epsilon", format_real(s.epsilon)},
          {"seed", std::to_string(s.seed)}};
}

inline CodeSpec spec_from_metadata(const Metadata& m) {
  CodeSpec s;
  auto get = [&](const char* key) -> const std::string* {
    auto it = m.find(key);
    return it == m.end() ? nullptr : &it->second;
  };
  auto as_int = [&](const char* key, int& out) {
    if (auto v = get(key)) out = static_cast<int>(parse_real(*v, key));
  };
  auto as_real = [&](const char* key, double& out) {
    if (auto v = get(key)) out = parse_real(*v, key);
  };
  if (auto f = get("family")) s.family = family_from_string(*f);
  as_int("N", s.N);
  as_int("K", s.K);
  as_int("L", s.L);
  as_int("R", s.R);
  as_int("lambda", s.lambda);
  as_real("gamma", s.gamma);
  as_real("d", s.d);
  as_real("c", s.c);
  as_real("epsilon", s.epsilon);
  if (auto v = get("seed")) s.seed = std::stoull(*v);
  return s;
}

namespace detail_io {

inline void write_metadata(std::ostream& os, const Metadata& meta, const std::vector<std::string>& order) {
  std::map<std::string, bool> done;
  for (const auto& key : order) {
    if (auto it = meta.find(key); it != meta.end()) {
      os << "# " << key << "=" << it->second << "\n";
      done[key] = true;
    }
  }
  for (const auto& [k, v] : meta) {
    if (!done.count(k)) os << "# " << k << "=" << v << "\n";
  }
}

/// Splits a stream into metadata and the remaining non-blank lines.
inline std::vector<std::string> read_body(std::istream& is, Metadata& meta) {
  std::vector<std::string> body;
  std::string line;
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      auto text = line.substr(1);
      const auto start = text.find_first_not_of(' ');
      if (start == std::string::npos) continue;
      text = text.substr(start);
      if (const auto eq = text.find('='); eq != std::string::npos) meta[text.substr(0, eq)] = text.substr(eq + 1);
      continue;
    }
    body.push_back(line);
  }
  return body;
}

inline const std::vector<std::string> kSpecOrder = {"family", "N", "K", "L", "R", "lambda",
                                                    "gamma", "d", "c", "epsilon", "seed"};

}  // namespace detail_io

// ---------------------------------------------------------------------------
// Matrices
// ---------------------------------------------------------------------------

struct MatrixFile {
  Matrix matrix;
  Metadata meta;
};

inline void write_matrix(std::ostream& os, const Matrix& m, const Metadata& meta) {
  detail_io::write_metadata(os, meta, detail_io::kSpecOrder);
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) {
      if (j) os << ' ';
      os << format_real(m(i, j));
    }
    os << '\n';
  }
}

/// Writes the spec fields first, then any extra metadata.
inline void write_encoding(std::ostream& os, const EncodingMatrix& e, const Metadata& extra = {}) {
  Metadata meta = spec_metadata(e.spec);
  meta["rows"] = std::to_string(e.rows());
  meta["cols"] = std::to_string(e.cols());
  meta["density"] = format_real(e.density);
  for (const auto& [k, v] : extra) meta[k] = v;
  write_matrix(os, e.matrix, meta);
}

inline MatrixFile read_matrix(std::istream& is) {
  MatrixFile out;
  const auto body = detail_io::read_body(is, out.meta);
  if (body.empty()) throw ParameterError("matrix file has no rows");
  std::vector<std::vector<double>> rows;
  for (const auto& line : body) {
    std::istringstream ls(line);
    std::vector<double> row;
    std::string tok;
    while (ls >> tok) row.push_back(parse_real(tok, "matrix entry"));
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw ParameterError("matrix file rows have different lengths");
    }
    rows.push_back(std::move(row));
  }
  out.matrix.resize(static_cast<Index>(rows.size()), static_cast<Index>(rows.front().size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < rows[i].size(); ++j) out.matrix(static_cast<Index>(i), static_cast<Index>(j)) = rows[i][j];
  }
  numerics::require_finite(out.matrix, "matrix file");
  return out;
}

inline MatrixFile read_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "'");
  return read_matrix(in);
}

inline void write_matrix_file(const std::string& path, const EncodingMatrix& e, const Metadata& extra = {}) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write '" + path + "'");
  write_encoding(out, e, extra);
}

/// Encoding matrix with the spec recovered from metadata; N and K always
/// follow the matrix dimensions.
inline EncodingMatrix to_encoding(const MatrixFile& f) {
  CodeSpec s = spec_from_metadata(f.meta);
  s.N = static_cast<int>(f.matrix.cols());
  s.K = static_cast<int>(f.matrix.rows());
  return make_encoding(f.matrix, s);
}

/// Loads a 0/1 incidence matrix and validates it as a BIBD.
inline EncodingMatrix load_bibd_incidence(const std::string& path) {
  return codes::make_bibd(read_matrix_file(path).matrix);
}

// ---------------------------------------------------------------------------
// Graphs
// ---------------------------------------------------------------------------

struct GraphFile {
  WeightedGraph graph;
  Metadata meta;
};

inline void write_graph(std::ostream& os, const WeightedGraph& g, Metadata meta = {}) {
  meta["vertices"] = std::to_string(g.vertex_count());
  meta["left"] = std::to_string(g.left_size());
  meta["edges"] = std::to_string(g.edge_count());
  detail_io::write_metadata(os, meta, {"vertices", "left", "edges"});
  for (const auto& e : g.edges()) os << e.u << ' ' << e.v << ' ' << format_real(e.weight) << '\n';
}

inline GraphFile read_graph(std::istream& is) {
  GraphFile out;
  const auto body = detail_io::read_body(is, out.meta);
  struct Raw {
    std::size_t u, v;
    double w;
  };
  std::vector<Raw> raw;
  std::size_t max_vertex = 0;
  for (const auto& line : body) {
    std::istringstream ls(line);
    long long u = -1, v = -1;
    std::string w;
    if (!(ls >> u >> v >> w) || u < 0 || v < 0) throw ParameterError("bad edge line '" + line + "'");
    raw.push_back({static_cast<std::size_t>(u), static_cast<std::size_t>(v), parse_real(w, "edge weight")});
    max_vertex = std::max({max_vertex, raw.back().u + 1, raw.back().v + 1});
  }
  std::size_t n = max_vertex, left = 0;
  if (auto it = out.meta.find("vertices"); it != out.meta.end()) {
    n = static_cast<std::size_t>(parse_real(it->second, "vertices"));
  }
  if (auto it = out.meta.find("left"); it != out.meta.end()) {
    left = static_cast<std::size_t>(parse_real(it->second, "left"));
  }
  detail::require(n >= max_vertex, "graph file: vertex id exceeds the declared vertex count");
  out.graph = WeightedGraph(n, left);
  for (const auto& r : raw) out.graph.add_edge(r.u, r.v, r.w);
  return out;
}

inline GraphFile read_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "'");
  return read_graph(in);
}

// ---------------------------------------------------------------------------
// CSV
// ---------------------------------------------------------------------------

inline std::string join_pattern(const eval::StragglerPattern& p) {
  std::string s;
  for (std::size_t i = 0; i < p.non_stragglers.size(); ++i) {
    if (i) s += ';';
    s += std::to_string(p.non_stragglers[i]);
  }
  return s;
}

inline std::string report_csv_header() {
  return "family,N,K,density,S,decoder,mode,error,reference,argmax_pattern,reference_source,lower_bound";
}

inline std::string report_csv_row(const eval::ErrorReport& r) {
  std::ostringstream os;
  os << to_string(r.family) << ',' << r.N << ',' << r.K << ',' << format_real(r.density) << ',' << r.S << ','
     << eval::to_string(r.decoder) << ',' << eval::to_string(r.mode) << ',' << format_real(r.error) << ','
     << (r.reference ? format_real(r.reference->value) : "") << ',' << join_pattern(r.argmax_pattern) << ','
     << (r.reference ? r.reference->source : "") << ',' << (r.lower_bound ? 1 : 0);
  return os.str();
}

}  // namespace gradcode::io

#endif  // GRADCODE_IO_HPP
