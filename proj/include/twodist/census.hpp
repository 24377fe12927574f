#pragma once

#include <cstddef>
#include <cstdint>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "twodist/enumerate.hpp"
#include "twodist/exact.hpp"
#include "twodist/graph.hpp"
#include "twodist/graph6.hpp"
#include "twodist/spherical.hpp"

namespace twodist {

class CensusInputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Spherical isomorphism classes on n vertices, bucketed by minimum dimension.
struct CensusRow {
  int n = 0;
  std::map<int, std::int64_t> counts;
  std::int64_t total_classes = 0;
  std::int64_t borderline = 0;  // float verdicts that sat near a tie
  bool certified = false;       // borderline verdicts were re-decided exactly

  std::int64_t spherical_classes() const {
    std::int64_t s = 0;
    for (const auto& [d, c] : counts) s += c;
    return s;
  }
  std::int64_t count(int dim) const {
    const auto it = counts.find(dim);
    return it == counts.end() ? 0 : it->second;
  }
};

struct BuiltinSource {};
struct Graph6FileSource {
  std::string path;
};
using CensusSource = std::variant<BuiltinSource, Graph6FileSource>;

struct CensusOptions {
  bool certify = false;
  int jobs = 1;
  double rel_tol = linalg::kDefaultRelTol;
};

/// One graph per non-empty line; a ">>graph6<<" header is accepted. Errors
/// carry the 1-based line number.
inline std::vector<Graph> read_graph6_stream(std::istream& in, const std::string& name = "<stream>") {
  std::vector<Graph> graphs;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r\n") == std::string::npos) continue;
    try {
      graphs.push_back(parse_graph6(line));
    } catch (const Graph6Error& e) {
      throw CensusInputError(name + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
  return graphs;
}

inline std::vector<Graph> read_graph6_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CensusInputError("cannot open graph6 file '" + path + "'");
  return read_graph6_stream(in, path);
}

namespace detail {

struct CensusTally {
  std::map<int, std::int64_t> counts;
  std::int64_t borderline = 0;
};

inline void tally_graph(const Graph& g, const CensusOptions& opt, CensusTally& t) {
  const SphericalReport r = test_spherical(g, opt.rel_tol, opt.certify);
  if (r.borderline) ++t.borderline;
  if (r.spherical) ++t.counts[*r.min_dimension];
}

template <class GraphAt>
CensusRow tally_all(int n, std::size_t count, GraphAt&& graph_at, const CensusOptions& opt) {
  std::vector<CensusTally> parts(static_cast<std::size_t>(std::max(opt.jobs, 1)));
  parallel_chunks(count, opt.jobs, [&](std::size_t begin, std::size_t end, std::size_t w) {
    for (std::size_t i = begin; i < end; ++i) tally_graph(graph_at(i), opt, parts[w]);
  });
  CensusRow row;
  row.n = n;
  row.total_classes = static_cast<std::int64_t>(count);
  row.certified = opt.certify;
  for (const auto& p : parts) {
    for (const auto& [d, c] : p.counts) row.counts[d] += c;
    row.borderline += p.borderline;
  }
  return row;
}

}  // namespace detail

/// Census over an explicit list of pairwise non-isomorphic graphs of order n.
inline CensusRow census_of(int n, const std::vector<Graph>& graphs, const CensusOptions& opt = {}) {
  for (std::size_t i = 0; i < graphs.size(); ++i) {
    if (graphs[i].order() != n) {
      throw CensusInputError("record " + std::to_string(i + 1) + " has " + std::to_string(graphs[i].order()) +
                             " vertices, expected " + std::to_string(n));
    }
  }
  return detail::tally_all(n, graphs.size(), [&](std::size_t i) -> const Graph& { return graphs[i]; }, opt);
}

inline CensusRow run_census(int n, const CensusSource& source, const CensusOptions& opt = {}) {
  if (std::holds_alternative<BuiltinSource>(source)) {
    if (n < 4 || n > kMaxEnumerationOrder) {
      throw std::invalid_argument("built-in census supports 4 <= n <= 9, got " + std::to_string(n));
    }
    const auto forms = nonisomorphic_forms(n, opt.jobs);
    return detail::tally_all(n, forms.size(), [&](std::size_t i) { return graph_from_form(forms[i]); }, opt);
  }
  if (n < 3 || n > exact::kMaxExactOrder) {
    throw std::invalid_argument("file census supports 3 <= n <= 16, got " + std::to_string(n));
  }
  return census_of(n, read_graph6_file(std::get<Graph6FileSource>(source).path), opt);
}

/// Dimensions that appear in any row, ascending.
inline std::vector<int> census_dimensions(const std::vector<CensusRow>& rows) {
  std::set<int> dims;
  for (const auto& r : rows) {
    for (const auto& [d, c] : r.counts) dims.insert(d);
  }
  return {dims.begin(), dims.end()};
}

inline std::string census_csv(const std::vector<CensusRow>& rows) {
  const auto dims = census_dimensions(rows);
  std::ostringstream out;
  out << "n";
  for (int d : dims) out << ",d" << d;
  out << ",spherical,total_classes,certified\n";
  for (const auto& r : rows) {
    out << r.n;
    for (int d : dims) out << ',' << r.count(d);
    out << ',' << r.spherical_classes() << ',' << r.total_classes << ',' << (r.certified ? "true" : "false") << '\n';
  }
  return out.str();
}

inline nlohmann::ordered_json census_json(const std::vector<CensusRow>& rows) {
  auto arr = nlohmann::ordered_json::array();
  for (const auto& r : rows) {
    nlohmann::ordered_json counts = nlohmann::ordered_json::object();
    for (const auto& [d, c] : r.counts) counts[std::to_string(d)] = c;
    arr.push_back({{"n", r.n},
                   {"counts", counts},
                   {"spherical", r.spherical_classes()},
                   {"total_classes", r.total_classes},
                   {"borderline", r.borderline},
                   {"certified", r.certified}});
  }
  return arr;
}

/// Writes PREFIX.csv and PREFIX.json.
inline void export_census(const std::vector<CensusRow>& rows, const std::string& prefix) {
  std::ofstream csv(prefix + ".csv");
  std::ofstream json(prefix + ".json");
  if (!csv || !json) throw std::runtime_error("cannot write census output with prefix '" + prefix + "'");
  csv << census_csv(rows);
  json << census_json(rows).dump(2) << '\n';
  if (!csv || !json) throw std::runtime_error("failed writing census output with prefix '" + prefix + "'");
}

}  // namespace twodist
