// gradcode: construct, evaluate and sweep gradient codes.
#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "gradcode/gradcode.hpp"

using namespace gradcode;

namespace {

enum Exit { kOk = 0, kRuntime = 1, kInfeasible = 2, kValidation = 3 };

// ---------------------------------------------------------------------------
// small parsing helpers

/// "3", "1,2,5" or "0:4" (inclusive).
std::vector<int> parse_int_list(const std::string& text, const std::string& what) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    if (const auto colon = item.find(':'); colon != std::string::npos) {
      const int a = static_cast<int>(io::parse_real(item.substr(0, colon), what));
      const int b = static_cast<int>(io::parse_real(item.substr(colon + 1), what));
      if (b < a) throw ParameterError("empty range '" + item + "' for " + what);
      for (int x = a; x <= b; ++x) out.push_back(x);
    } else {
      out.push_back(static_cast<int>(io::parse_real(item, what)));
    }
  }
  if (out.empty()) throw ParameterError("no values given for " + what);
  return out;
}

std::vector<double> parse_real_list(const std::string& text, const std::string& what) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(io::parse_real(item, what));
  }
  if (out.empty()) throw ParameterError("no values given for " + what);
  return out;
}

std::string csv_safe(std::string s) {
  for (auto& ch : s) {
    if (ch == ',' || ch == '\n') ch = ';';
  }
  return s;
}

/// Output goes to --out when given, stdout otherwise.
class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (!path.empty() && path != "-") {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw Error("cannot write '" + path + "'");
    }
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

/// Every option of `cmd` with its resolved value, defaults included.
io::Metadata resolved_config(const CLI::App& cmd) {
  io::Metadata meta;
  meta["command"] = cmd.get_name();
  for (const auto* opt : cmd.get_options()) {
    const auto name = opt->get_single_name();
    if (name.empty() || name.rfind("help", 0) == 0 || name == "out" || name == "config") continue;
    std::string value = opt->count() ? opt->results().back() : opt->get_default_str();
    meta["config." + name] = value;
  }
  return meta;
}

void write_metadata_lines(std::ostream& os, const io::Metadata& meta) {
  for (const auto& [k, v] : meta) os << "# " << k << "=" << v << "\n";
}

// ---------------------------------------------------------------------------
// construct

struct ConstructArgs {
  std::string family = "bibd";
  int N = 0, K = 0, L = 0, R = 0, lambda = 0, q = 0;
  double gamma = 0.0, d = 0.0, c = 12.0, epsilon = 0.3;
  std::uint64_t seed = 1;
  int quantization_bits = sparsify::kDefaultQuantizationBits;
  int retry_cap = 64;
  std::string input, out;
};

EncodingMatrix construct(const ConstructArgs& a, io::Metadata& extra) {
  const Family family = family_from_string(a.family);
  CodeSpec spec;
  spec.family = family;
  spec.N = a.N;
  spec.K = a.K;
  spec.L = a.L;
  spec.R = a.R;
  spec.lambda = a.lambda;
  spec.gamma = a.gamma > 0.0 ? a.gamma : 1.0;
  spec.d = a.d;
  spec.c = a.c;
  spec.epsilon = a.epsilon;
  spec.seed = a.seed;
  SeededRng rng(a.seed);

  auto design = [&]() -> EncodingMatrix {
    if (!a.input.empty()) return io::load_bibd_incidence(a.input);
    if (a.q <= 0) throw ParameterError(a.family + ": give --q or --input");
    return codes::build_bibd_from_difference_set(a.q);
  };

  switch (family) {
    case Family::FRC:
      return codes::build_frc(spec);
    case Family::BGC:
      return codes::build_bgc(spec, rng);
    case Family::RBGC:
      return codes::build_rbgc(spec, rng);
    case Family::BIBD: {
      auto e = design();
      e.spec.seed = a.seed;
      return e;
    }
    case Family::BEG: {
      Matrix biadjacency;
      if (!a.input.empty()) {
        biadjacency = io::read_matrix_file(a.input).matrix;
      } else {
        biadjacency = design().matrix;
      }
      const double d = a.d > 0.0 ? a.d : codes::regular_degree(biadjacency).value_or(0.0);
      auto e = codes::build_beg(biadjacency, d);
      e.spec.seed = a.seed;
      const auto sv = numerics::singular_values(biadjacency, std::min<Index>(2, biadjacency.rows()));
      if (sv.values.size() > 1) extra["sigma2"] = io::format_real(sv.values(1));
      return e;
    }
    case Family::SG: {
      if (a.q > 0) {
        const auto p = codes::difference_set_parameters(a.q);
        if (!p) throw InfeasibleError("sg: no difference-set design with q = " + std::to_string(a.q));
        const auto s = codes::bibd_spec(*p);
        spec.N = s.N;
        spec.K = s.K;
        spec.L = s.L;
        spec.R = s.R;
        spec.lambda = s.lambda;
      }
      const auto f = codes::sg_feasible(spec.N, spec.K, spec.L, spec.lambda);
      if (!f.feasible) throw InfeasibleError("sg: infeasible parameters: " + f.reason);
      if (a.gamma <= 0.0) spec.gamma = sweep::sg_gamma_at_min(f);
      extra["gamma_min"] = io::format_real(f.gamma_min);
      return codes::build_sg(spec, rng);
    }
    case Family::EP: {
      codes::EpOptions opt;
      opt.quantization_bits = a.quantization_bits;
      opt.retry_cap = a.retry_cap;
      opt.midpoint_degree = a.d <= 0.0;
      const auto b = codes::build_ep(spec, rng, opt);
      extra["lambda2"] = io::format_real(b.lambda2_pre);
      extra["d_lower"] = io::format_real(b.range.lower);
      extra["d_upper"] = io::format_real(b.range.upper);
      extra["attempts"] = std::to_string(b.attempts);
      extra["deviation"] = io::format_real(b.stats.deviation);
      extra["budget"] = io::format_real(b.stats.budget);
      extra["edges_before"] = std::to_string(b.stats.edges_before);
      extra["edges_after"] = std::to_string(b.stats.edges_after);
      return b.encoding;
    }
  }
  throw ParameterError("unsupported family");
}

// ---------------------------------------------------------------------------
// evaluate

struct EvaluateArgs {
  std::string input, out;
  std::string S = "1";
  std::string decoder = "optimal";
  std::string mode = "exact";
  std::uint64_t cap = eval::kDefaultEnumerationCap;
  unsigned threads = 0;
  double rho = 0.0;
};

void evaluate(const EvaluateArgs& a, const io::Metadata& config) {
  const auto file = io::read_matrix_file(a.input);
  const auto enc = io::to_encoding(file);
  std::optional<double> lambda2;
  if (auto it = file.meta.find("lambda2"); it != file.meta.end()) lambda2 = io::parse_real(it->second, "lambda2");
  const auto decoder = eval::decoder_from_string(a.decoder);
  const auto mode = eval::mode_from_string(a.mode);
  eval::ExactOptions opt;
  opt.cap = a.cap;
  opt.threads = a.threads;
  if (a.rho > 0.0) opt.rho = a.rho;

  Sink sink(a.out);
  auto& os = sink.stream();
  write_metadata_lines(os, config);
  os << io::report_csv_header() << "\n";
  for (int S : parse_int_list(a.S, "S")) {
    auto r = eval::worst_case_error(enc, S, decoder, mode, opt);
    r.reference = eval::closed_form_reference(enc, S, lambda2);
    os << io::report_csv_row(r) << "\n";
  }
}

// ---------------------------------------------------------------------------
// sweep

struct SweepArgs {
  int N = 37;
  double density = 0.24, density_tolerance = 0.02, c = 12.0;
  std::string families = "frc,rbgc,bibd,sg,ep";
  std::string S;
  std::string fractions = "0.05,0.1,0.15,0.2,0.25,0.3,0.35,0.4";
  std::string decoder = "optimal", mode = "exact";
  std::uint64_t seed = 1, cap = eval::kDefaultEnumerationCap, selection_cap = 100000;
  int best_of = 1;
  int quantization_bits = sparsify::kDefaultQuantizationBits;
  unsigned threads = 0;
  std::string out, plot_script;
};

std::string plot_script(const std::string& csv, const std::vector<Family>& families) {
  std::ostringstream os;
  os << "# gnuplot script; run with: gnuplot -p <this file>\n"
     << "set datafile separator ','\n"
     << "set datafile commentschars '#'\n"
     << "set key top left\n"
     << "set xlabel 'straggler fraction S/N'\n"
     << "set ylabel 'worst-case normalized error'\n"
     << "csv = '" << csv << "'\n"
     << "plot \\\n";
  for (std::size_t i = 0; i < families.size(); ++i) {
    const auto name = std::string(to_string(families[i]));
    os << "  csv skip 1 using 13:(strcol(1) eq '" << name << "' ? $8 : NaN) with linespoints title '" << name
       << "'" << (i + 1 < families.size() ? ", \\" : "") << "\n";
  }
  return os.str();
}

void run_sweep(const SweepArgs& a, const io::Metadata& config) {
  sweep::SweepConfig cfg;
  cfg.N = a.N;
  cfg.density = a.density;
  cfg.density_tolerance = a.density_tolerance;
  cfg.families.clear();
  std::stringstream ss(a.families);
  for (std::string f; std::getline(ss, f, ',');) {
    if (!f.empty()) cfg.families.push_back(family_from_string(f));
  }
  cfg.S = a.S.empty() ? sweep::straggler_grid(a.N, parse_real_list(a.fractions, "fractions"))
                      : parse_int_list(a.S, "S");
  cfg.decoder = eval::decoder_from_string(a.decoder);
  cfg.mode = eval::mode_from_string(a.mode);
  cfg.seed = a.seed;
  cfg.best_of = a.best_of;
  cfg.selection_cap = a.selection_cap;
  cfg.ep_c = a.c;
  cfg.quantization_bits = a.quantization_bits;
  cfg.cap = a.cap;
  cfg.threads = a.threads;

  const auto rows = sweep::run_sweep(cfg);
  Sink sink(a.out);
  auto& os = sink.stream();
  write_metadata_lines(os, config);
  os << io::report_csv_header() << ",straggler_fraction,seed,evaluated,note\n";
  for (const auto& row : rows) {
    os << io::report_csv_row(row.report) << ',' << io::format_real(row.straggler_fraction) << ',' << row.seed
       << ',' << (row.evaluated ? 1 : 0) << ',' << csv_safe(row.note) << "\n";
  }
  if (!a.plot_script.empty()) {
    std::ofstream plot(a.plot_script);
    if (!plot) throw Error("cannot write '" + a.plot_script + "'");
    plot << plot_script(a.out.empty() ? "sweep.csv" : a.out, cfg.families);
  }
}

// ---------------------------------------------------------------------------
// region

struct RegionArgs {
  std::string family = "ep";
  int N = 37;
  int L_max = 0, R_max = 0;
  std::string c = "12";
  std::size_t draws = 2000;
  std::uint64_t seed = 1;
  std::string out;
};

void region(const RegionArgs& a, const io::Metadata& config) {
  Sink sink(a.out);
  auto& os = sink.stream();
  write_metadata_lines(os, config);
  const Family family = family_from_string(a.family);
  if (family == Family::SG) {
    // K = N L / R keeps every column at load L and every row at R; lambda
    // follows from R (L - 1) = lambda (K - 1).
    const int lmax = a.L_max > 0 ? a.L_max : a.N;
    const int rmax = a.R_max > 0 ? a.R_max : a.N;
    os << "N,L,R,K,lambda,density,gamma_min,feasible\n";
    for (int L = 1; L <= lmax; ++L) {
      for (int R = 1; R <= rmax; ++R) {
        const double K = static_cast<double>(a.N) * L / R;
        const double lambda = K > 1.0 ? R * (L - 1.0) / (K - 1.0) : 0.0;
        const auto [b1, b2] = codes::sg_gamma_bounds(a.N, K, L, lambda);
        const double gmin = std::max(b1, b2);
        const bool ok = L <= K && gmin <= 1.0 + 1e-12;
        os << a.N << ',' << L << ',' << R << ',' << io::format_real(K) << ',' << io::format_real(lambda) << ','
           << io::format_real(static_cast<double>(R) / a.N) << ',' << io::format_real(gmin) << ',' << (ok ? 1 : 0)
           << "\n";
      }
    }
    return;
  }
  if (family != Family::EP) throw ParameterError("region: family must be sg or ep");
  os << "N,c,draws,feasible_fraction,d_lower_p05,d_lower_p50,d_lower_p95,d_upper_p05,d_upper_p50,d_upper_p95\n";
  for (double c : parse_real_list(a.c, "c")) {
    const auto s = codes::sample_degree_ranges(a.N, c, a.draws, SeededRng(a.seed));
    os << a.N << ',' << io::format_real(c) << ',' << a.draws << ',' << io::format_real(s.feasible_fraction());
    for (const auto* v : {&s.lower, &s.upper}) {
      for (double p : {0.05, 0.5, 0.95}) os << ',' << io::format_real(numerics::quantile(*v, p));
    }
    os << "\n";
  }
}

// ---------------------------------------------------------------------------
// sparsify

struct SparsifyArgs {
  std::string input, matrix, out;
  double epsilon = 0.3;
  int quantization_bits = sparsify::kDefaultQuantizationBits;
  std::uint64_t seed = 1;
};

void sparsify_graph(const SparsifyArgs& a, io::Metadata meta) {
  if (a.input.empty() == a.matrix.empty()) throw ParameterError("sparsify: give exactly one of --input, --matrix");
  const WeightedGraph g =
      a.input.empty() ? sparsify::bipartite_lift(io::read_matrix_file(a.matrix).matrix) : io::read_graph_file(a.input).graph;
  SeededRng rng(a.seed);
  const auto r = sparsify::degree_preserving_sparsify(g, a.epsilon, a.quantization_bits, rng);
  meta["edges_before"] = std::to_string(r.stats.edges_before);
  meta["edges_after"] = std::to_string(r.stats.edges_after);
  meta["dropped"] = std::to_string(r.stats.dropped);
  meta["deviation"] = io::format_real(r.stats.deviation);
  meta["budget"] = io::format_real(r.stats.budget);
  meta["rounds_accepted"] = std::to_string(r.stats.rounds_accepted);
  meta["rounds_rejected"] = std::to_string(r.stats.rounds_rejected);
  meta["kappa"] = io::format_real(r.stats.kappa);
  Sink sink(a.out);
  io::write_graph(sink.stream(), r.graph, meta);
  std::cerr << "edges " << r.stats.edges_before << " -> " << r.stats.edges_after << ", ||L - L_eps|| = "
            << r.stats.deviation << " (budget " << r.stats.budget << ")\n";
}

// ---------------------------------------------------------------------------
// validate

int validate(const std::string& selector, std::uint64_t seed) {
  validation::ValidationOptions opt;
  opt.seed = seed;
  std::vector<int> ids;
  if (selector == "all") {
    for (int i = 1; i <= static_cast<int>(validation::criteria().size()); ++i) ids.push_back(i);
  } else {
    ids = parse_int_list(selector, "criteria");
  }
  int failed = 0;
  for (int id : ids) {
    const auto r = validation::run_criterion(id, opt);
    std::cout << validation::format_result(r) << std::endl;
    failed += r.passed ? 0 : 1;
  }
  return failed ? kValidation : kOk;
}

/// Expands `--config FILE` into `--key=value` arguments placed right after
/// the subcommand, so flags given on the command line win.
std::vector<std::string> expand_config(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  std::string path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) {
      path = args[i + 1];
      args.erase(args.begin() + static_cast<std::ptrdiff_t>(i), args.begin() + static_cast<std::ptrdiff_t>(i) + 2);
      break;
    }
    if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
      args.erase(args.begin() + static_cast<std::ptrdiff_t>(i));
      break;
    }
  }
  if (path.empty()) return args;
  std::ifstream in(path);
  if (!in) throw Error("cannot open config '" + path + "'");
  std::vector<std::string> injected;
  std::string line;
  while (std::getline(in, line)) {
    const auto start = line.find_first_not_of(" \t");
    if (start == std::string::npos || line[start] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ParameterError("config: expected key=value, got '" + line + "'");
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      const auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    injected.push_back("--" + trim(line.substr(0, eq)) + "=" + trim(line.substr(eq + 1)));
  }
  const auto at = args.empty() ? args.end() : args.begin() + 1;
  args.insert(at, injected.begin(), injected.end());
  return args;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gradient code construction and worst-case straggler evaluation", "gradcode"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for every subcommand");

  auto setup = [](CLI::App* cmd) {
    cmd->option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast)->always_capture_default();
    cmd->add_option("--config", "Flat key=value file; command-line flags override it");
  };

  ConstructArgs ca;
  auto* construct_cmd = app.add_subcommand("construct", "Build an encoding matrix");
  setup(construct_cmd);
  construct_cmd->add_option("--family", ca.family, "frc, bgc, rbgc, beg, bibd, sg or ep");
  construct_cmd->add_option("--N", ca.N, "Workers");
  construct_cmd->add_option("--K", ca.K, "Partitions");
  construct_cmd->add_option("--L", ca.L, "Per-worker load");
  construct_cmd->add_option("--R", ca.R, "Replication");
  construct_cmd->add_option("--lambda", ca.lambda, "Pairwise intersection");
  construct_cmd->add_option("--q", ca.q, "Difference-set design order (bibd, beg, sg)");
  construct_cmd->add_option("--gamma", ca.gamma, "SG sparsity; 0 picks gamma_min rounded up to 0.01");
  construct_cmd->add_option("--d", ca.d, "Target degree; 0 means the midpoint of the EP range");
  construct_cmd->add_option("--c", ca.c, "EP weight shift");
  construct_cmd->add_option("--epsilon", ca.epsilon, "EP sparsification level in (0, 1]");
  construct_cmd->add_option("--seed", ca.seed, "Random seed");
  construct_cmd->add_option("--quantization-bits", ca.quantization_bits, "kappa = 2^k");
  construct_cmd->add_option("--retry-cap", ca.retry_cap, "EP draws before giving up");
  construct_cmd->add_option("--input", ca.input, "Incidence (bibd) or biadjacency (beg) file");
  construct_cmd->add_option("--out", ca.out, "Output file (default stdout)");

  EvaluateArgs ea;
  auto* evaluate_cmd = app.add_subcommand("evaluate", "Worst-case error of a matrix file");
  setup(evaluate_cmd);
  evaluate_cmd->add_option("--input", ea.input, "Matrix file")->required();
  evaluate_cmd->add_option("--S", ea.S, "Straggler counts: 3, 1,2,5 or 0:4");
  evaluate_cmd->add_option("--decoder", ea.decoder, "optimal, constant_rho or beg_vector");
  evaluate_cmd->add_option("--mode", ea.mode, "exact or greedy");
  evaluate_cmd->add_option("--cap", ea.cap, "Largest C(N, S) enumerated in exact mode");
  evaluate_cmd->add_option("--threads", ea.threads, "Worker threads, 0 = all cores");
  evaluate_cmd->add_option("--rho", ea.rho, "Constant decoder scalar; 0 derives it from the spec");
  evaluate_cmd->add_option("--out", ea.out, "Output CSV (default stdout)");

  SweepArgs sa;
  auto* sweep_cmd = app.add_subcommand("sweep", "Matched-density comparison over S");
  setup(sweep_cmd);
  sweep_cmd->add_option("--N", sa.N, "Workers");
  sweep_cmd->add_option("--density", sa.density, "Target column density");
  sweep_cmd->add_option("--density-tolerance", sa.density_tolerance, "Allowed EP density gap");
  sweep_cmd->add_option("--families", sa.families, "Comma-separated families");
  sweep_cmd->add_option("--S", sa.S, "Straggler counts; overrides --fractions");
  sweep_cmd->add_option("--fractions", sa.fractions, "Straggler fractions, rounded to S = round(f N)");
  sweep_cmd->add_option("--decoder", sa.decoder, "optimal, constant_rho or beg_vector");
  sweep_cmd->add_option("--mode", sa.mode, "exact or greedy");
  sweep_cmd->add_option("--seed", sa.seed, "Base seed");
  sweep_cmd->add_option("--best-of", sa.best_of,
                        "Seeds tried for SG and EP, best kept (large values follow the seed-selection protocol)");
  sweep_cmd->add_option("--selection-cap", sa.selection_cap, "Largest C(N, S) used to rank best-of seeds");
  sweep_cmd->add_option("--c", sa.c, "EP weight shift");
  sweep_cmd->add_option("--quantization-bits", sa.quantization_bits, "kappa = 2^k for EP");
  sweep_cmd->add_option("--cap", sa.cap, "Largest C(N, S) enumerated in exact mode");
  sweep_cmd->add_option("--threads", sa.threads, "Worker threads, 0 = all cores");
  sweep_cmd->add_option("--out", sa.out, "Output CSV (default stdout)");
  sweep_cmd->add_option("--plot-script", sa.plot_script, "Also write a gnuplot script here");

  RegionArgs ra;
  auto* region_cmd = app.add_subcommand("region", "Feasibility regions (sg grid, ep degree band)");
  setup(region_cmd);
  region_cmd->add_option("--family", ra.family, "sg or ep");
  region_cmd->add_option("--N", ra.N, "Workers");
  region_cmd->add_option("--L-max", ra.L_max, "SG: largest L (default N)");
  region_cmd->add_option("--R-max", ra.R_max, "SG: largest R (default N)");
  region_cmd->add_option("--c", ra.c, "EP: comma-separated weight shifts");
  region_cmd->add_option("--draws", ra.draws, "EP: E0 samples per c");
  region_cmd->add_option("--seed", ra.seed, "Random seed");
  region_cmd->add_option("--out", ra.out, "Output CSV (default stdout)");

  SparsifyArgs pa;
  auto* sparsify_cmd = app.add_subcommand("sparsify", "Degree-preserving spectral sparsification");
  setup(sparsify_cmd);
  sparsify_cmd->add_option("--input", pa.input, "Graph file");
  sparsify_cmd->add_option("--matrix", pa.matrix, "Matrix file, sparsified through its bipartite lift");
  sparsify_cmd->add_option("--epsilon", pa.epsilon, "Sparsification level in (0, 1]");
  sparsify_cmd->add_option("--quantization-bits", pa.quantization_bits, "kappa = 2^k");
  sparsify_cmd->add_option("--seed", pa.seed, "Random seed");
  sparsify_cmd->add_option("--out", pa.out, "Output graph file (default stdout)");

  std::string criteria = "all";
  std::uint64_t validate_seed = validation::ValidationOptions{}.seed;
  auto* validate_cmd = app.add_subcommand("validate", "Run the acceptance criteria");
  setup(validate_cmd);
  validate_cmd->add_option("--criteria", criteria, "all, or ids such as 1,2,10 or 1:4");
  validate_cmd->add_option("--seed", validate_seed, "Base seed");

  try {
    auto args = expand_config(argc, argv);
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kRuntime;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kRuntime;
  }

  try {
    if (*construct_cmd) {
      io::Metadata extra = resolved_config(*construct_cmd);
      const auto enc = construct(ca, extra);
      Sink sink(ca.out);
      io::write_encoding(sink.stream(), enc, extra);
    } else if (*evaluate_cmd) {
      evaluate(ea, resolved_config(*evaluate_cmd));
    } else if (*sweep_cmd) {
      run_sweep(sa, resolved_config(*sweep_cmd));
    } else if (*region_cmd) {
      region(ra, resolved_config(*region_cmd));
    } else if (*sparsify_cmd) {
      sparsify_graph(pa, resolved_config(*sparsify_cmd));
    } else if (*validate_cmd) {
      return validate(criteria, validate_seed);
    }
  } catch (const InfeasibleError& e) {
    std::cerr << "infeasible: " << e.what() << "\n";
    return kInfeasible;
  } catch (const ValidationError& e) {
    std::cerr << "validation failed: " << e.what() << "\n";
    return kValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kRuntime;
  }
  return kOk;
}
