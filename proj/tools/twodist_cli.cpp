// twodist: command-line front end for the spherical two-distance set library.
//
//   twodist test [G6...] [--file F] [--trace]      verdicts as JSON lines
//   twodist spectrum G6                            spectra of A and PAP
//   twodist realize G6 [--plot out.svg]            explicit coordinates
//   twodist census -n K [--graph6 F] [--certify] [--out PREFIX]
//   twodist sample -n K --trials T --seed S [--edge-prob q] [--out FILE]
//   twodist enumerate -n K [--out FILE]            graph6 of every class
//
// Global flags: --tol --format --jobs --seed (seed also read from TWODIST_SEED).

#include <CLI11.hpp>

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "twodist/twodist.hpp"

namespace {

using namespace twodist;

struct CliConfig {
  double rel_tol = linalg::kDefaultRelTol;
  std::string format = "json";
  int jobs = 1;
  std::optional<std::uint64_t> seed;
};

/// Returned from subcommands to request a specific exit status.
struct ExitStatus {
  int code;
};

std::vector<std::string> read_lines(std::istream& in) {
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r\n") != std::string::npos) lines.push_back(line);
  }
  return lines;
}

std::string fmt_double(double v) {
  std::ostringstream os;
  os << std::setprecision(10) << v;
  return os.str();
}

std::string join(const std::vector<double>& xs) {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) s += ' ';
    s += fmt_double(xs[i]);
  }
  return s;
}

// ---------------------------------------------------------------- test

int cmd_test(const CliConfig& cfg, const std::vector<std::string>& args, const std::string& file, bool trace) {
  if (!args.empty() && !file.empty()) {
    std::cerr << "twodist test: give graph6 arguments or --file, not both\n";
    return 2;
  }
  std::vector<std::string> records = args;
  if (!file.empty()) {
    std::ifstream in(file);
    if (!in) {
      std::cerr << "twodist test: cannot open '" << file << "'\n";
      return 2;
    }
    records = read_lines(in);
  } else if (records.empty()) {
    records = read_lines(std::cin);
  }

  std::vector<Graph> graphs;
  graphs.reserve(records.size());
  for (std::size_t i = 0; i < records.size(); ++i) {
    try {
      graphs.push_back(parse_graph6(records[i]));
    } catch (const Graph6Error& e) {
      std::cerr << "twodist test: record " << i + 1 << ": " << e.what() << '\n';
      return 2;
    }
    if (graphs.back().order() < 3) {
      std::cerr << "twodist test: record " << i + 1 << ": need at least 3 vertices\n";
      return 2;
    }
  }

  std::vector<SphericalReport> reports(graphs.size());
  std::vector<ConditionTrace> traces(trace ? graphs.size() : 0);
  detail::parallel_chunks(graphs.size(), cfg.jobs, [&](std::size_t b, std::size_t e, std::size_t) {
    for (std::size_t i = b; i < e; ++i) {
      reports[i] = test_spherical(graphs[i], cfg.rel_tol);
      if (trace) traces[i] = condition_oracle(graphs[i], cfg.rel_tol);
    }
  });

  if (cfg.format == "csv") {
    std::cout << "graph6,n,representable,spherical,lambda1,lambda2,mu1,mult_lambda2_A,mult_lambda2_PAP,ratio_k,min_dimension\n";
  }
  for (std::size_t i = 0; i < graphs.size(); ++i) {
    const auto& r = reports[i];
    const std::string g6 = serialize_graph6(graphs[i]);
    if (cfg.format == "json") {
      auto j = to_json(r);
      if (trace) j["trace"] = to_json(traces[i]);
      std::cout << j.dump() << '\n';
    } else if (cfg.format == "csv") {
      std::cout << g6 << ',' << r.n << ',' << r.representable << ',' << r.spherical << ',' << fmt_double(r.lambda1) << ','
                << fmt_double(r.lambda2) << ',' << fmt_double(r.mu1) << ',' << r.mult_lambda2_A << ','
                << r.mult_lambda2_PAP << ',' << (r.ratio_k ? fmt_double(*r.ratio_k) : "") << ','
                << (r.min_dimension ? std::to_string(*r.min_dimension) : "") << '\n';
    } else {
      std::cout << g6 << ": n=" << r.n << " representable=" << (r.representable ? "yes" : "no")
                << " spherical=" << (r.spherical ? "yes" : "no") << " lambda2=" << fmt_double(r.lambda2)
                << " mu1=" << fmt_double(r.mu1);
      if (r.spherical) std::cout << " k=" << fmt_double(*r.ratio_k) << " min_dimension=" << *r.min_dimension;
      std::cout << '\n';
      if (trace) std::cout << "  trace: " << to_json(traces[i]).dump() << '\n';
    }
  }
  return 0;
}

// ---------------------------------------------------------------- spectrum

int cmd_spectrum(const CliConfig& cfg, const std::string& g6) {
  const Graph g = parse_graph6(g6);
  const auto lambda = linalg::eigenvalues(linalg::SymMatrix::adjacency(g), cfg.rel_tol).values;
  // mu: spectrum of PAP with the zero belonging to the all-ones vector removed
  const auto mu = graph_spectra(g, cfg.rel_tol).compressed.values;
  const bool interlacing = g.order() >= 3 && interlacing_test(g, cfg.rel_tol);
  if (cfg.format == "text") {
    std::cout << "lambda: " << join(lambda) << '\n';
    std::cout << "mu:     " << join(mu) << '\n';
    std::cout << "interlacing criterion: " << (interlacing ? "true" : "false") << '\n';
  } else {
    nlohmann::ordered_json j;
    j["graph6"] = serialize_graph6(g);
    j["lambda"] = lambda;
    j["mu"] = mu;
    j["interlacing"] = interlacing;
    std::cout << j.dump() << '\n';
  }
  return 0;
}

// ---------------------------------------------------------------- realize

void write_svg(const Graph& g, const Embedding& e, const std::string& path) {
  std::vector<std::pair<double, double>> xy;
  for (const auto& p : e.points) xy.emplace_back(p.size() > 0 ? p[0] : 0.0, p.size() > 1 ? p[1] : 0.0);
  double lo_x = 1e300, hi_x = -1e300, lo_y = 1e300, hi_y = -1e300;
  for (auto [x, y] : xy) {
    lo_x = std::min(lo_x, x);
    hi_x = std::max(hi_x, x);
    lo_y = std::min(lo_y, y);
    hi_y = std::max(hi_y, y);
  }
  const double span = std::max({hi_x - lo_x, hi_y - lo_y, 1e-9});
  const double size = 400.0;
  const double margin = 30.0;
  auto sx = [&](double x) { return margin + (x - lo_x) / span * (size - 2 * margin); };
  auto sy = [&](double y) { return size - margin - (y - lo_y) / span * (size - 2 * margin); };

  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size << "\" height=\"" << size << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  for (int i = 0; i < g.order(); ++i) {
    for (int j = i + 1; j < g.order(); ++j) {
      const char* colour = g.has_edge(i, j) ? "#c0392b" : "#bdc3c7";
      out << "<line x1=\"" << sx(xy[i].first) << "\" y1=\"" << sy(xy[i].second) << "\" x2=\"" << sx(xy[j].first)
          << "\" y2=\"" << sy(xy[j].second) << "\" stroke=\"" << colour << "\" stroke-width=\"1\"/>\n";
    }
  }
  for (std::size_t i = 0; i < xy.size(); ++i) {
    out << "<circle cx=\"" << sx(xy[i].first) << "\" cy=\"" << sy(xy[i].second) << "\" r=\"5\" fill=\"#2c3e50\"/>\n";
    out << "<text x=\"" << sx(xy[i].first) + 7 << "\" y=\"" << sy(xy[i].second) - 7 << "\" font-size=\"12\">" << i
        << "</text>\n";
  }
  out << "</svg>\n";
}

int cmd_realize(const CliConfig& cfg, const std::string& g6, const std::string& plot) {
  const Graph g = parse_graph6(g6);
  const Embedding e = realize(g, cfg.rel_tol);
  if (cfg.format == "text") {
    std::cout << "dim " << e.dim << "  k " << fmt_double(e.long_dist) << '\n';
    for (std::size_t i = 0; i < e.points.size(); ++i) std::cout << i << "  " << join(e.points[i]) << '\n';
    if (e.circumcenter) std::cout << "circumcenter " << join(*e.circumcenter) << "  radius " << fmt_double(*e.circumradius) << '\n';
  } else {
    std::cout << to_json(e).dump() << '\n';
  }
  if (!plot.empty()) {
    if (e.dim > 3) {
      std::cerr << "twodist realize: --plot needs dimension <= 3, embedding has " << e.dim << '\n';
      return 1;
    }
    write_svg(g, e, plot);
  }
  return 0;
}

// ---------------------------------------------------------------- census

int cmd_census(const CliConfig& cfg, int n, const std::string& graph6, bool certify, const std::string& out) {
  CensusOptions opt;
  opt.certify = certify;
  opt.jobs = cfg.jobs;
  opt.rel_tol = cfg.rel_tol;
  CensusSource source = BuiltinSource{};
  if (!graph6.empty()) source = Graph6FileSource{graph6};
  const CensusRow row = run_census(n, source, opt);
  const std::vector<CensusRow> rows{row};
  if (!out.empty()) export_census(rows, out);
  if (cfg.format == "csv") {
    std::cout << census_csv(rows);
  } else if (cfg.format == "text") {
    std::cout << "n=" << row.n << " classes=" << row.total_classes << " spherical=" << row.spherical_classes()
              << " borderline=" << row.borderline << (row.certified ? " (certified)" : "") << '\n';
    for (const auto& [d, c] : row.counts) std::cout << "  dim " << d << ": " << c << '\n';
  } else {
    std::cout << census_json(rows).dump() << '\n';
  }
  return 0;
}

// ---------------------------------------------------------------- sample

int cmd_sample(const CliConfig& cfg, int n, std::int64_t trials, double edge_prob, const std::string& out) {
  if (!cfg.seed) {
    std::cerr << "twodist sample: a seed is required (--seed or TWODIST_SEED)\n";
    return 2;
  }
  const SampleResult r = estimate_fraction(n, trials, edge_prob, *cfg.seed, cfg.jobs, cfg.rel_tol);
  if (!out.empty()) export_samples({r}, out);
  if (cfg.format == "csv") {
    std::cout << sample_csv({r});
  } else if (cfg.format == "text") {
    std::cout << "n=" << r.n << " trials=" << r.trials << " hits=" << r.hits << " fraction=" << fmt_double(r.fraction)
              << " stderr=" << fmt_double(r.std_error) << " seed=" << r.seed << '\n';
  } else {
    nlohmann::ordered_json j{{"n", r.n},         {"trials", r.trials},       {"hits", r.hits},
                             {"fraction", r.fraction}, {"stderr", r.std_error}, {"seed", r.seed},
                             {"edge_prob", r.edge_prob}};
    std::cout << j.dump() << '\n';
  }
  return 0;
}

// ---------------------------------------------------------------- enumerate

int cmd_enumerate(const CliConfig& cfg, int n, const std::string& out) {
  std::ofstream file;
  std::ostream* sink = &std::cout;
  if (!out.empty()) {
    file.open(out);
    if (!file) throw std::runtime_error("cannot write '" + out + "'");
    sink = &file;
  }
  const auto forms = nonisomorphic_forms(n, cfg.jobs);
  for (const auto& f : forms) *sink << serialize_graph6(graph_from_form(f)) << '\n';
  if (!out.empty()) std::cerr << forms.size() << " graphs written to " << out << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spherical two-distance sets from graph spectra"};
  app.require_subcommand(1);
  app.fallthrough();

  CliConfig cfg;
  std::uint64_t seed_value = 0;
  app.add_option("--tol", cfg.rel_tol, "Relative eigenvalue tolerance")->check(CLI::PositiveNumber);
  app.add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"json", "csv", "text"}));
  app.add_option("--jobs", cfg.jobs, "Worker threads")->check(CLI::PositiveNumber);
  auto* seed_opt = app.add_option("--seed", seed_value, "Random seed")->envname("TWODIST_SEED");

  std::vector<std::string> test_args;
  std::string test_file;
  bool trace = false;
  auto* test = app.add_subcommand("test", "Decide sphericality of graph6 inputs (stdin if none given)");
  test->add_option("graphs", test_args, "graph6 strings");
  test->add_option("--file", test_file, "File with one graph6 per line");
  test->add_flag("--trace", trace, "Include the condition trace");

  std::string spectrum_g6;
  auto* spectrum = app.add_subcommand("spectrum", "Eigenvalues of A and of PAP");
  spectrum->add_option("graph", spectrum_g6, "graph6 string")->required();

  std::string realize_g6;
  std::string plot;
  auto* realize_cmd = app.add_subcommand("realize", "Coordinates of the spherical two-distance set");
  realize_cmd->add_option("graph", realize_g6, "graph6 string")->required();
  realize_cmd->add_option("--plot", plot, "Write an SVG projection (dimension <= 3)");

  int census_n = 0;
  std::string census_file;
  bool certify = false;
  std::string census_out;
  auto* census = app.add_subcommand("census", "Count spherical classes by minimum dimension");
  census->add_option("-n", census_n, "Number of vertices")->required();
  census->add_option("--graph6", census_file, "Read classes from a graph6 file instead of enumerating");
  census->add_flag("--certify", certify, "Re-decide borderline verdicts exactly");
  census->add_option("--out", census_out, "Write PREFIX.csv and PREFIX.json");

  int sample_n = 0;
  std::int64_t trials = 0;
  double edge_prob = 0.5;
  std::string sample_out;
  auto* sample = app.add_subcommand("sample", "Estimate the spherical fraction of random graphs");
  sample->add_option("-n", sample_n, "Number of vertices")->required();
  sample->add_option("--trials", trials, "Number of random graphs")->required()->check(CLI::PositiveNumber);
  sample->add_option("--edge-prob", edge_prob, "Edge probability")->check(CLI::Range(0.0, 1.0));
  sample->add_option("--out", sample_out, "Write a CSV file");

  int enum_n = 0;
  std::string enum_out;
  auto* enumerate = app.add_subcommand("enumerate", "Write one graph6 line per isomorphism class");
  enumerate->add_option("-n", enum_n, "Number of vertices")->required();
  enumerate->add_option("--out", enum_out, "Output file (stdout if omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }
  if (!seed_opt->empty()) cfg.seed = seed_value;

  try {
    if (*test) return cmd_test(cfg, test_args, test_file, trace);
    if (*spectrum) return cmd_spectrum(cfg, spectrum_g6);
    if (*realize_cmd) return cmd_realize(cfg, realize_g6, plot);
    if (*census) return cmd_census(cfg, census_n, census_file, certify, census_out);
    if (*sample) return cmd_sample(cfg, sample_n, trials, edge_prob, sample_out);
    if (*enumerate) return cmd_enumerate(cfg, enum_n, enum_out);
  } catch (const Graph6Error& e) {
    std::cerr << "twodist: " << e.what() << '\n';
    return 2;
  } catch (const CensusInputError& e) {
    std::cerr << "twodist: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "twodist: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
