#pragma once

// Tolerance-free decision of the spectral criterion. Eigenvalues are carried
// as isolating intervals of integer characteristic polynomials; equalities
// and multiplicities are decided with gcds and Sturm sequences.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "twodist/graph.hpp"

namespace twodist::exact {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline constexpr int kMaxExactOrder = 16;

/// Integer polynomial, coeffs[i] multiplies x^i. No trailing zeros, so the
/// zero polynomial has no coefficients.
class IntPoly {
 public:
  IntPoly() = default;
  explicit IntPoly(std::vector<BigInt> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

  static IntPoly monomial(int degree, BigInt c = 1) {
    std::vector<BigInt> v(static_cast<std::size_t>(degree) + 1, 0);
    v.back() = std::move(c);
    return IntPoly(std::move(v));
  }

  bool is_zero() const noexcept { return coeffs_.empty(); }
  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  const BigInt& leading() const { return coeffs_.back(); }
  const std::vector<BigInt>& coeffs() const noexcept { return coeffs_; }
  BigInt coeff(int i) const { return i < 0 || i > degree() ? BigInt(0) : coeffs_[static_cast<std::size_t>(i)]; }

  friend bool operator==(const IntPoly&, const IntPoly&) = default;

 private:
  void trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
  }
  std::vector<BigInt> coeffs_;
};

/// Square integer matrix, row-major.
struct IntMatrix {
  int n = 0;
  std::vector<BigInt> a;

  explicit IntMatrix(int size) : n(size), a(static_cast<std::size_t>(size) * static_cast<std::size_t>(size), 0) {}
  BigInt& operator()(int i, int j) { return a[static_cast<std::size_t>(i) * static_cast<std::size_t>(n) + static_cast<std::size_t>(j)]; }
  const BigInt& operator()(int i, int j) const { return a[static_cast<std::size_t>(i) * static_cast<std::size_t>(n) + static_cast<std::size_t>(j)]; }

  static IntMatrix adjacency(const Graph& g) {
    IntMatrix m(g.order());
    for (int i = 0; i < g.order(); ++i) {
      for (int j = 0; j < g.order(); ++j) m(i, j) = g.has_edge(i, j) ? 1 : 0;
    }
    return m;
  }

  friend IntMatrix operator*(const IntMatrix& x, const IntMatrix& y) {
    IntMatrix r(x.n);
    for (int i = 0; i < x.n; ++i) {
      for (int k = 0; k < x.n; ++k) {
        if (x(i, k) == 0) continue;
        for (int j = 0; j < x.n; ++j) r(i, j) += x(i, k) * y(k, j);
      }
    }
    return r;
  }
};

namespace detail {

using RatPoly = std::vector<Rational>;  // ascending, trimmed

inline void trim(RatPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

inline RatPoly to_rat(const IntPoly& p) {
  RatPoly r;
  r.reserve(p.coeffs().size());
  for (const auto& c : p.coeffs()) r.emplace_back(c);
  return r;
}

/// Scales by a positive rational to integer coefficients with content 1.
inline IntPoly primitive(const RatPoly& p) {
  if (p.empty()) return {};
  BigInt den = 1;
  for (const auto& c : p) den = boost::multiprecision::lcm(den, boost::multiprecision::denominator(c));
  std::vector<BigInt> ints;
  ints.reserve(p.size());
  BigInt content = 0;
  for (const auto& c : p) {
    BigInt v = boost::multiprecision::numerator(c) * (den / boost::multiprecision::denominator(c));
    content = boost::multiprecision::gcd(content, v);
    ints.push_back(std::move(v));
  }
  if (content < 0) content = -content;
  for (auto& v : ints) v /= content;
  return IntPoly(std::move(ints));
}

/// Remainder of a by b over Q.
inline RatPoly rem(RatPoly a, const RatPoly& b) {
  const int db = static_cast<int>(b.size()) - 1;
  while (static_cast<int>(a.size()) - 1 >= db && !a.empty()) {
    const int shift = static_cast<int>(a.size()) - 1 - db;
    const Rational q = a.back() / b.back();
    for (int i = 0; i <= db; ++i) a[static_cast<std::size_t>(i + shift)] -= q * b[static_cast<std::size_t>(i)];
    a.pop_back();
    trim(a);
  }
  return a;
}

/// Exact quotient a / b over Q; throws if b does not divide a.
inline RatPoly quotient(RatPoly a, const RatPoly& b) {
  const int db = static_cast<int>(b.size()) - 1;
  if (a.empty()) return {};
  const int dq = static_cast<int>(a.size()) - 1 - db;
  if (dq < 0) throw std::logic_error("polynomial division: divisor has larger degree");
  RatPoly q(static_cast<std::size_t>(dq) + 1, 0);
  for (int k = dq; k >= 0; --k) {
    const Rational c = a[static_cast<std::size_t>(k + db)] / b.back();
    q[static_cast<std::size_t>(k)] = c;
    for (int i = 0; i <= db; ++i) a[static_cast<std::size_t>(i + k)] -= c * b[static_cast<std::size_t>(i)];
  }
  trim(a);
  if (!a.empty()) throw std::logic_error("polynomial division is not exact");
  trim(q);
  return q;
}

inline RatPoly derivative(const RatPoly& p) {
  RatPoly d;
  for (std::size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * static_cast<int>(i));
  trim(d);
  return d;
}

inline RatPoly subtract(RatPoly a, const RatPoly& b) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
  trim(a);
  return a;
}

inline RatPoly gcd(RatPoly a, RatPoly b) {
  while (!b.empty()) {
    RatPoly r = rem(std::move(a), b);
    a = std::move(b);
    b = to_rat(primitive(r));
  }
  IntPoly g = primitive(a);
  if (!g.is_zero() && g.leading() < 0) {
    std::vector<BigInt> neg = g.coeffs();
    for (auto& c : neg) c = -c;
    g = IntPoly(std::move(neg));
  }
  return to_rat(g);
}

inline int sign_at(const IntPoly& p, const Rational& x) {
  Rational acc = 0;
  for (auto it = p.coeffs().rbegin(); it != p.coeffs().rend(); ++it) acc = acc * x + Rational(*it);
  return acc > 0 ? 1 : (acc < 0 ? -1 : 0);
}

}  // namespace detail

inline IntPoly derivative(const IntPoly& p) { return detail::primitive(detail::derivative(detail::to_rat(p))); }

/// gcd normalised to a primitive polynomial with positive leading coefficient.
inline IntPoly gcd(const IntPoly& a, const IntPoly& b) {
  return detail::primitive(detail::gcd(detail::to_rat(a), detail::to_rat(b)));
}

inline IntPoly multiply(const IntPoly& a, const IntPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<BigInt> r(static_cast<std::size_t>(a.degree() + b.degree()) + 1, 0);
  for (int i = 0; i <= a.degree(); ++i) {
    for (int j = 0; j <= b.degree(); ++j) r[static_cast<std::size_t>(i + j)] += a.coeff(i) * b.coeff(j);
  }
  return IntPoly(std::move(r));
}

/// Product of the distinct irreducible factors of p (up to a positive scalar).
inline IntPoly squarefree_part(const IntPoly& p) {
  if (p.is_zero()) throw std::invalid_argument("squarefree part of the zero polynomial");
  if (p.degree() == 0) return IntPoly({1});
  const auto rp = detail::to_rat(p);
  return detail::primitive(detail::quotient(rp, detail::gcd(rp, detail::derivative(rp))));
}

/// Yun's algorithm. Entry i is the product of the irreducible factors of
/// multiplicity i+1 (constant 1 when there are none).
inline std::vector<IntPoly> squarefree_factorization(const IntPoly& p) {
  if (p.is_zero()) throw std::invalid_argument("factorization of the zero polynomial");
  std::vector<IntPoly> out;
  if (p.degree() == 0) return out;
  using namespace detail;
  const RatPoly f = to_rat(p);
  const RatPoly fp = derivative(f);
  const RatPoly b = gcd(f, fp);
  RatPoly c = quotient(f, b);
  RatPoly d = subtract(quotient(fp, b), derivative(c));
  while (c.size() > 1) {
    const RatPoly a = gcd(c, d);
    out.push_back(primitive(a));
    c = quotient(c, a);
    d = subtract(quotient(d, a), derivative(c));
  }
  while (!out.empty() && out.back().degree() == 0) out.pop_back();
  return out;
}

/// det(xI - m) via Faddeev-LeVerrier; all divisions are exact.
inline IntPoly charpoly_int(const IntMatrix& m) {
  const int n = m.n;
  if (n > kMaxExactOrder) throw std::invalid_argument("exact characteristic polynomial supports n <= 16");
  std::vector<BigInt> c(static_cast<std::size_t>(n) + 1, 0);
  c[static_cast<std::size_t>(n)] = 1;
  IntMatrix mk(n);  // M_0 = 0
  for (int k = 1; k <= n; ++k) {
    IntMatrix next = m * mk;
    for (int i = 0; i < n; ++i) next(i, i) += c[static_cast<std::size_t>(n - k + 1)];
    mk = std::move(next);
    const IntMatrix am = m * mk;
    BigInt tr = 0;
    for (int i = 0; i < n; ++i) tr += am(i, i);
    c[static_cast<std::size_t>(n - k)] = -tr / k;
  }
  return IntPoly(std::move(c));
}

class SturmSequence {
 public:
  /// p is reduced to its square-free part first, so counts are of distinct roots.
  explicit SturmSequence(const IntPoly& p) {
    if (p.is_zero()) throw std::invalid_argument("Sturm sequence of the zero polynomial");
    seq_.push_back(squarefree_part(p));
    if (seq_.front().degree() == 0) return;
    seq_.push_back(derivative(seq_.front()));
    while (seq_.back().degree() > 0) {
      auto r = detail::rem(detail::to_rat(seq_[seq_.size() - 2]), detail::to_rat(seq_.back()));
      if (r.empty()) break;
      for (auto& x : r) x = -x;
      seq_.push_back(detail::primitive(r));
    }
  }

  int sign_changes(const Rational& x) const {
    int changes = 0;
    int last = 0;
    for (const auto& q : seq_) {
      const int s = detail::sign_at(q, x);
      if (s == 0) continue;
      if (last != 0 && s != last) ++changes;
      last = s;
    }
    return changes;
  }

  /// Distinct roots in (lo, hi].
  int count(const Rational& lo, const Rational& hi) const { return sign_changes(lo) - sign_changes(hi); }

  const IntPoly& squarefree() const { return seq_.front(); }

 private:
  std::vector<IntPoly> seq_;
};

inline int sturm_count(const IntPoly& p, const Rational& lo, const Rational& hi) {
  if (p.is_zero()) throw std::invalid_argument("sturm_count of the zero polynomial");
  if (!(lo < hi)) throw std::invalid_argument("sturm_count needs lo < hi");
  return SturmSequence(p).count(lo, hi);
}

/// Every real root of p has |x| < bound.
inline Rational root_bound(const IntPoly& p) {
  Rational m = 0;
  for (int i = 0; i < p.degree(); ++i) {
    Rational r(p.coeff(i), p.leading());
    if (r < 0) r = -r;
    if (r > m) m = r;
  }
  return m + 1;
}

struct RootInterval {
  Rational lo;  // exclusive
  Rational hi;  // inclusive
};

/// Disjoint intervals (lo, hi], one per distinct real root, descending.
inline std::vector<RootInterval> isolate_roots(const IntPoly& p) {
  const SturmSequence seq(p);
  std::vector<RootInterval> out;
  if (seq.squarefree().degree() == 0) return out;
  const Rational bound = root_bound(seq.squarefree());
  std::vector<RootInterval> stack{{-bound, bound}};
  while (!stack.empty()) {
    const RootInterval iv = stack.back();
    stack.pop_back();
    const int c = seq.count(iv.lo, iv.hi);
    if (c == 0) continue;
    if (c == 1) {
      out.push_back(iv);
      continue;
    }
    const Rational mid = (iv.lo + iv.hi) / 2;
    stack.push_back({iv.lo, mid});  // processed after the upper half
    stack.push_back({mid, iv.hi});
  }
  return out;
}

/// Outcome of the exact decision, with the intermediate facts.
struct ExactReport {
  bool representable = false;
  bool lambda2_positive = false;
  bool mu1_equals_lambda2 = false;
  int mult_lambda2_A = 0;
  int mult_lambda2_PAP = 0;
  bool spherical = false;
  double lambda2_approx = 0.0;
};

inline ExactReport exact_analyze(const Graph& g) {
  const int n = g.order();
  if (n > kMaxExactOrder) throw std::invalid_argument("exact test supports at most 16 vertices");
  ExactReport r;
  r.representable = !is_complete_multipartite(g);

  const IntMatrix a = IntMatrix::adjacency(g);
  const IntPoly p = charpoly_int(a);
  const auto factors = squarefree_factorization(p);
  const IntPoly s = squarefree_part(p);
  const SturmSequence s_seq(s);
  const auto roots = isolate_roots(s);

  auto multiplicity = [&](const RootInterval& iv) -> std::pair<int, std::size_t> {
    for (std::size_t i = 0; i < factors.size(); ++i) {
      if (factors[i].degree() > 0 && sturm_count(factors[i], iv.lo, iv.hi) == 1) return {static_cast<int>(i) + 1, i};
    }
    throw std::logic_error("root not found in any square-free factor");
  };

  auto [m1, f1] = multiplicity(roots.front());
  std::size_t lambda2_root = 0;
  std::size_t lambda2_factor = f1;
  if (m1 >= 2) {
    r.mult_lambda2_A = m1 - 1;
  } else {
    lambda2_root = 1;
    std::tie(r.mult_lambda2_A, lambda2_factor) = multiplicity(roots[1]);
  }
  RootInterval lam = roots[lambda2_root];
  r.lambda2_approx = static_cast<double>((lam.lo + lam.hi) / 2);

  const int positive_roots = s_seq.count(Rational(0), root_bound(s));
  r.lambda2_positive = positive_roots >= static_cast<int>(lambda2_root) + 1;
  if (!r.representable || !r.lambda2_positive) return r;

  // N = (nI - J) A (nI - J) = n^2 PAP is integral; its eigenvalues are
  // n^2 mu_i plus a zero for the all-ones vector.
  IntMatrix centred(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) centred(i, j) = (i == j ? n : 0) - 1;
  }
  const IntPoly q = charpoly_int(centred * a * centred);
  const auto q_factors = squarefree_factorization(q);
  const SturmSequence q_seq(q);

  // The factor of p holding lambda2, rescaled so its roots are n^2 lambda_i.
  const IntPoly& f = factors[lambda2_factor];
  std::vector<BigInt> scaled(f.coeffs().size());
  const BigInt n2 = BigInt(n) * n;
  for (int j = 0; j <= f.degree(); ++j) {
    scaled[static_cast<std::size_t>(j)] = f.coeff(j) * boost::multiprecision::pow(n2, static_cast<unsigned>(f.degree() - j));
  }
  const IntPoly f_scaled(std::move(scaled));
  const SturmSequence f_seq(f_scaled);
  Rational lo = lam.lo * n2;
  Rational hi = lam.hi * n2;

  for (std::size_t j = 0; j < q_factors.size(); ++j) {
    if (q_factors[j].degree() == 0) continue;
    const IntPoly h = gcd(q_factors[j], f_scaled);
    if (h.degree() > 0 && sturm_count(h, lo, hi) == 1) r.mult_lambda2_PAP = static_cast<int>(j) + 1;
  }
  const bool is_root = r.mult_lambda2_PAP > 0;

  // Shrink (lo, hi] around n^2 lambda2 until it holds no other root of q.
  while (q_seq.count(lo, hi) > (is_root ? 1 : 0)) {
    const Rational mid = (lo + hi) / 2;
    if (f_seq.count(lo, mid) == 1) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  Rational top = root_bound(q_seq.squarefree());
  if (top <= hi) top = hi + 1;
  const int above = q_seq.count(hi, top);
  r.mu1_equals_lambda2 = is_root && above == 0;
  r.spherical = r.mu1_equals_lambda2 && r.mult_lambda2_A == r.mult_lambda2_PAP;
  return r;
}

inline bool exact_test_spherical(const Graph& g) { return exact_analyze(g).spherical; }

}  // namespace twodist::exact
