#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "twodist/exact.hpp"
#include "twodist/graph.hpp"
#include "twodist/linalg.hpp"

namespace twodist {

using linalg::SymMatrix;

class NotSphericalError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Verdict bundle for a graph on n = d + 2 vertices.
struct SphericalReport {
  int n = 0;
  int d = 0;
  bool representable = false;
  bool spherical = false;
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  /// Multiplicity of lambda2 in A, one copy removed when lambda1 = lambda2.
  int mult_lambda2_A = 0;
  /// Multiplicity of lambda2 among the n-1 eigenvalues of PAP left after
  /// discarding the zero that belongs to the all-ones vector.
  int mult_lambda2_PAP = 0;
  double mu1 = 0.0;
  std::optional<double> ratio_k;
  std::optional<int> min_dimension;
  /// Some eigenvalue sits near lambda2 without being a clean tie: its gap
  /// is above the rounding floor but at most 10 tol.
  bool borderline = false;
  /// The verdict and multiplicities came from exact arithmetic.
  bool certified = false;
  double tol = 0.0;
};

/// The spectra every test in this header starts from.
struct GraphSpectra {
  linalg::Spectrum adjacency;  // n eigenvalues of A
  linalg::Spectrum compressed; // n-1 eigenvalues of PAP (one zero discarded)
  double lambda2 = 0.0;
  int lambda2_group = 0;       // index into adjacency.groups
  int mult_lambda2_A = 0;
  double tol = 0.0;
};

inline GraphSpectra graph_spectra(const Graph& g, double rel_tol = linalg::kDefaultRelTol) {
  const SymMatrix a = SymMatrix::adjacency(g);
  GraphSpectra s;
  s.adjacency = linalg::eigenvalues(a, rel_tol);
  s.tol = s.adjacency.tol;

  std::vector<double> mu = linalg::eigenvalues(linalg::project_center(a), rel_tol).values;
  const auto zero = std::min_element(mu.begin(), mu.end(), [](double x, double y) { return std::abs(x) < std::abs(y); });
  mu.erase(zero);
  s.compressed = linalg::make_spectrum(std::move(mu), s.tol);

  const auto& groups = s.adjacency.groups;
  if (groups.front().multiplicity >= 2) {
    s.lambda2_group = 0;
    s.mult_lambda2_A = groups.front().multiplicity - 1;
  } else {
    s.lambda2_group = 1;
    s.mult_lambda2_A = groups[1].multiplicity;
  }
  s.lambda2 = groups[static_cast<std::size_t>(s.lambda2_group)].value;
  return s;
}

inline bool is_representable(const Graph& g) { return !is_complete_multipartite(g); }

namespace detail {

/// Jacobi eigenvalues of these matrices are accurate to about 1e-14 rho, so a
/// gap below this fraction of tol is rounding and a gap above it is real.
inline constexpr double kNoiseFraction = 1e-4;

/// A value whose distance from lambda2 is neither a clean tie nor a clean
/// separation, so the tolerance alone cannot decide the comparison.
inline bool near_miss(double v, double lambda2, double tol) {
  const double gap = std::abs(v - lambda2);
  return gap > kNoiseFraction * tol && gap <= 10.0 * tol;
}

inline bool is_borderline(const GraphSpectra& s) {
  auto near = [&](double v) { return near_miss(v, s.lambda2, s.tol); };
  return near(0.0) || std::any_of(s.adjacency.values.begin(), s.adjacency.values.end(), near) ||
         std::any_of(s.compressed.values.begin(), s.compressed.values.end(), near);
}

}  // namespace detail

/// Decides sphericality from the spectra of A and PAP. Borderline verdicts on
/// at most 16 vertices are re-decided exactly unless `exact_borderline` is off.
inline SphericalReport test_spherical(const Graph& g, double rel_tol = linalg::kDefaultRelTol,
                                      bool exact_borderline = true) {
  if (g.order() < 3) throw std::invalid_argument("sphericality needs at least 3 vertices");
  const GraphSpectra s = graph_spectra(g, rel_tol);
  SphericalReport r;
  r.n = g.order();
  r.d = r.n - 2;
  r.tol = s.tol;
  r.representable = is_representable(g);
  r.lambda1 = s.adjacency.values.front();
  r.lambda2 = s.lambda2;
  r.mult_lambda2_A = s.mult_lambda2_A;
  r.mu1 = s.compressed.values.front();
  r.mult_lambda2_PAP = linalg::group_multiplicity(s.compressed, s.lambda2);
  r.spherical = r.representable && r.lambda2 > s.tol && std::abs(r.mu1 - r.lambda2) <= s.tol &&
                r.mult_lambda2_A == r.mult_lambda2_PAP;
  r.borderline = detail::is_borderline(s);

  if (r.borderline && exact_borderline && r.n <= exact::kMaxExactOrder) {
    const auto e = exact::exact_analyze(g);
    r.spherical = e.spherical;
    r.mult_lambda2_A = e.mult_lambda2_A;
    r.mult_lambda2_PAP = e.mult_lambda2_PAP;
    r.certified = true;
  }
  if (r.spherical) {
    r.ratio_k = std::sqrt(1.0 / r.lambda2 + 1.0);
    r.min_dimension = (r.n - 1) - r.mult_lambda2_A;
  }
  return r;
}

inline double distance_ratio(const Graph& g, double rel_tol = linalg::kDefaultRelTol) {
  const auto r = test_spherical(g, rel_tol);
  if (!r.spherical) throw NotSphericalError("graph is not spherical; distance ratio undefined");
  return *r.ratio_k;
}

inline int min_dimension(const Graph& g, double rel_tol = linalg::kDefaultRelTol) {
  const auto r = test_spherical(g, rel_tol);
  if (!r.spherical) throw NotSphericalError("graph is not spherical; minimum dimension undefined");
  return *r.min_dimension;
}

/// Interlacing form of the criterion: mu_1 = lambda_2 and mu_k < lambda_k,
/// where k is the last index with lambda_k = lambda_2. Borderline spectra are
/// re-decided exactly, as in test_spherical.
inline bool interlacing_test(const Graph& g, double rel_tol = linalg::kDefaultRelTol, bool exact_borderline = true) {
  if (!is_representable(g)) return false;
  const GraphSpectra s = graph_spectra(g, rel_tol);
  if (exact_borderline && g.order() <= exact::kMaxExactOrder && detail::is_borderline(s)) {
    return exact::exact_test_spherical(g);
  }
  if (s.lambda2 <= s.tol) return false;
  int k = 0;  // 1-based index of the last member of lambda2's group
  for (int grp = 0; grp <= s.lambda2_group; ++grp) k += s.adjacency.groups[static_cast<std::size_t>(grp)].multiplicity;
  const auto& mu = s.compressed.values;
  if (std::abs(mu.front() - s.lambda2) > s.tol) return false;
  if (k > static_cast<int>(mu.size())) return false;
  return mu[static_cast<std::size_t>(k - 1)] < s.lambda2 - s.tol;
}

/// Graph matrix with 0 on the diagonal, -1 on non-edges and -k^2 on edges.
inline SymMatrix build_BG(const Graph& g, double k) {
  if (!(k > 1.0)) throw std::invalid_argument("distance ratio must exceed 1");
  SymMatrix b(g.order());
  for (int i = 0; i < g.order(); ++i) {
    for (int j = 0; j < i; ++j) b.set(i, j, g.has_edge(i, j) ? -k * k : -1.0);
  }
  return b;
}

/// lambda2 * I - A, the ratio-free normal form of the distance matrix.
inline SymMatrix build_BG_bar(const Graph& g, double rel_tol = linalg::kDefaultRelTol) {
  const double lambda2 = graph_spectra(g, rel_tol).lambda2;
  return lambda2 * SymMatrix::identity(g.order()) - SymMatrix::adjacency(g);
}

/// Evaluation of every condition of the criterion on Bbar = lambda2*I - A.
struct ConditionTrace {
  bool representable = false;
  bool lambda2_positive = false;
  bool psd_on_complement = false;    // (1bar): w^T Bbar w >= 0 on 1-perp
  bool constant_image = false;       // (2bar): Bbar w = gamma*1 for some nonzero w in 1-perp
  bool singular = false;             // (3bar): det(Bbar) = 0
  bool eventually_psd = false;       // (4bar): rJ + Bbar psd for all large r
  bool ones_orthogonal = false;      // (5bar): 1^T A w = 0 on the equality set of (1bar)
  bool null_vectors_annihilated = false;  // equality set of (1bar) lies in null(Bbar)
  bool verdict = false;
  std::string reason;
  double lambda2 = 0.0;
  double gamma = 0.0;
  std::vector<double> witness;                    // w for (2bar)
  std::vector<std::vector<double>> null_vectors;  // basis of the (1bar) equality set
};

namespace detail {

/// Orthonormal basis of the span of `vs` after removing the all-ones
/// component; vectors that collapse below `drop` are discarded.
inline std::vector<std::vector<double>> orthonormal_in_complement(std::vector<std::vector<double>> vs, double drop) {
  std::vector<std::vector<double>> basis;
  for (auto& v : vs) {
    double mean = 0.0;
    for (double x : v) mean += x;
    mean /= static_cast<double>(v.size());
    for (double& x : v) x -= mean;
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& b : basis) {
        const double c = linalg::dot(v, b);
        for (std::size_t i = 0; i < v.size(); ++i) v[i] -= c * b[i];
      }
    }
    const double nv = linalg::norm(v);
    if (nv <= drop) continue;
    for (double& x : v) x /= nv;
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace detail

inline ConditionTrace condition_oracle(const Graph& g, double rel_tol = linalg::kDefaultRelTol) {
  ConditionTrace t;
  const int n = g.order();
  t.representable = is_representable(g);
  const GraphSpectra s = graph_spectra(g, rel_tol);
  const double tol = s.tol;
  t.lambda2 = s.lambda2;
  t.lambda2_positive = s.lambda2 > tol;
  if (!t.representable) {
    t.reason = "complete multipartite graph: not representable";
    return t;
  }
  if (!t.lambda2_positive) {
    t.reason = "second eigenvalue is not positive";
    return t;
  }

  const SymMatrix a = SymMatrix::adjacency(g);
  const SymMatrix bbar = s.lambda2 * SymMatrix::identity(n) - a;
  const auto es = linalg::eigendecompose(linalg::project_center(bbar), rel_tol);
  const double ptol = std::max(tol, es.spectrum.tol);

  t.psd_on_complement = es.spectrum.values.back() >= -ptol;

  std::vector<std::vector<double>> near_null;
  for (int c = 0; c < n; ++c) {
    if (std::abs(es.spectrum.values[static_cast<std::size_t>(c)]) <= ptol) near_null.push_back(es.vectors.column(c));
  }
  t.null_vectors = detail::orthonormal_in_complement(std::move(near_null), 1e-6);

  // (2bar): null(P Bbar P) restricted to 1-perp is exactly {w : Bbar w in span(1)}.
  t.constant_image = !t.null_vectors.empty();
  if (t.constant_image) {
    t.witness = t.null_vectors.front();
    const auto bw = linalg::multiply(bbar, t.witness);
    double mean = 0.0;
    for (double x : bw) mean += x;
    t.gamma = mean / n;
  }

  const auto bbar_values = linalg::eigenvalues(bbar, rel_tol).values;
  t.singular = std::any_of(bbar_values.begin(), bbar_values.end(), [tol](double v) { return std::abs(v) <= tol; });

  // (5bar) and the null-vector form, on a basis of the equality set.
  t.ones_orthogonal = true;
  t.null_vectors_annihilated = true;
  const std::vector<double> ones(static_cast<std::size_t>(n), 1.0);
  for (const auto& w : t.null_vectors) {
    const auto aw = linalg::multiply(a, w);
    if (std::abs(linalg::dot(ones, aw)) > tol * std::sqrt(static_cast<double>(n))) t.ones_orthogonal = false;
    if (linalg::norm(linalg::multiply(bbar, w)) > tol) t.null_vectors_annihilated = false;
  }

  // (4bar): write rJ + Bbar in the basis {1/sqrt(n)} + 1-perp as
  // [[r n + alpha, b^T], [b, C]]. For large r this is psd iff C is psd and b
  // is orthogonal to null(C). b = Q^T Bbar 1 / sqrt(n); its component along a
  // null direction w of C is w^T Bbar 1 / sqrt(n).
  {
    const auto bbar_ones = linalg::multiply(bbar, ones);
    bool in_range = true;
    for (const auto& w : t.null_vectors) {
      if (std::abs(linalg::dot(w, bbar_ones)) / std::sqrt(static_cast<double>(n)) > tol) in_range = false;
    }
    t.eventually_psd = t.psd_on_complement && in_range;
  }

  t.verdict = t.psd_on_complement && t.null_vectors_annihilated;
  if (!t.psd_on_complement) {
    t.reason = "Bbar is not positive semidefinite on the complement of the all-ones vector";
  } else if (!t.null_vectors_annihilated) {
    t.reason = "an equality vector of the complement form is not a null vector of Bbar";
  }
  return t;
}

/// Regular graphs that are not complete multipartite must be spherical.
/// Returns whether that implication held for g.
inline bool check_regular_corollary(const Graph& g, double rel_tol = linalg::kDefaultRelTol) {
  if (!is_regular(g) || is_complete_multipartite(g)) return true;
  return test_spherical(g, rel_tol).spherical;
}

}  // namespace twodist
