#pragma once

// Exact coefficient arithmetic: Weil indices, the sets
//   D_Lambda(r) = { 1 - 1/m + (m0 r + sum m_i l_i) / m }  cap [0, 1],
// degree-two boundaries on P^1, and the adjunction divisibility replay.
//
// Membership is decided by a bounded knapsack: for fixed m the numerator
// m0 r + sum m_i l_i must hit 1 - m (1 - x), a non-negative combination of
// the positive generators. Everything is scaled to integers by the lcm of the
// generator denominators, so no floating point is involved.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include <boost/rational.hpp>

#include "dualcx/errors.hpp"

namespace dualcx {

using Rational = boost::rational<std::int64_t>;

inline std::string to_string(const Rational& q) {
  if (q.denominator() == 1) return std::to_string(q.numerator());
  return std::to_string(q.numerator()) + "/" + std::to_string(q.denominator());
}

/// Parses "p/q" or "p" with decimal integers; the result is reduced.
inline Rational parse_rational(std::string_view text) {
  auto parse_int = [&](std::string_view s) -> std::int64_t {
    if (s.empty()) throw Error(ErrorKind::BadRational, "malformed rational '" + std::string(text) + "'");
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) throw Error(ErrorKind::BadRational, "malformed rational '" + std::string(text) + "'");
    std::int64_t v = 0;
    for (; i < s.size(); ++i) {
      if (s[i] < '0' || s[i] > '9') throw Error(ErrorKind::BadRational, "malformed rational '" + std::string(text) + "'");
      if (__builtin_mul_overflow(v, 10, &v) || __builtin_add_overflow(v, s[i] - '0', &v))
        throw Error(ErrorKind::BadRational, "rational out of range '" + std::string(text) + "'");
    }
    return s[0] == '-' ? -v : v;
  };
  const auto slash = text.find('/');
  const auto num = parse_int(text.substr(0, slash));
  const auto den = slash == std::string_view::npos ? 1 : parse_int(text.substr(slash + 1));
  if (den <= 0) throw Error(ErrorKind::BadRational, "denominator must be positive in '" + std::string(text) + "'");
  return Rational(num, den);
}

inline std::int64_t checked_lcm(std::int64_t a, std::int64_t b) {
  const auto g = std::gcd(a, b);
  std::int64_t out = 0;
  if (__builtin_mul_overflow(a / g, b, &out)) throw Error(ErrorKind::Overflow, "lcm overflows 64 bits");
  return out;
}

/// A finite subset of [0, 1], kept sorted and duplicate free.
class CoeffSet {
 public:
  CoeffSet() = default;
  CoeffSet(std::initializer_list<Rational> values) : CoeffSet(std::vector<Rational>(values)) {}
  explicit CoeffSet(std::vector<Rational> values) : elements_(std::move(values)) {
    for (const auto& v : elements_)
      if (v < 0 || v > 1) throw Error(ErrorKind::BadRational, "coefficient " + to_string(v) + " outside [0, 1]");
    std::sort(elements_.begin(), elements_.end());
    elements_.erase(std::unique(elements_.begin(), elements_.end()), elements_.end());
  }

  const std::vector<Rational>& elements() const { return elements_; }
  bool empty() const { return elements_.empty(); }
  bool contains(const Rational& q) const { return std::binary_search(elements_.begin(), elements_.end(), q); }
  std::int64_t max_denominator() const {
    std::int64_t out = 1;
    for (const auto& v : elements_) out = std::max(out, v.denominator());
    return out;
  }

 private:
  std::vector<Rational> elements_;
};

/// lcm of the denominators, times a user-supplied moduli index.
inline std::int64_t weil_index(const CoeffSet& coeffs, std::int64_t moduli_index = 1) {
  if (moduli_index < 1) throw Error(ErrorKind::BadParams, "moduli index must be positive");
  std::int64_t out = moduli_index;
  for (const auto& v : coeffs.elements()) out = checked_lcm(out, v.denominator());
  return out;
}

inline std::int64_t adjunction_bound(std::int64_t lambda) {
  if (lambda < 1) throw Error(ErrorKind::BadParams, "Weil index must be positive");
  return checked_lcm(lambda, 2);
}

struct Term {
  Rational lambda;
  std::int64_t multiplicity = 0;

  friend bool operator==(const Term&, const Term&) = default;
};

/// Witness (m, m0, {(l_i, m_i)}) for value = 1 - 1/m + (m0 r + sum m_i l_i)/m.
struct MembershipCertificate {
  Rational value;
  Rational r;
  std::int64_t m = 1;
  std::int64_t m0 = 0;
  std::vector<Term> terms;  // ascending in lambda, positive multiplicities

  Rational evaluate() const {
    Rational numerator = r * m0;
    for (const auto& t : terms) numerator += t.lambda * t.multiplicity;
    return Rational(1) - Rational(1, m) + numerator / m;
  }
  bool verifies() const { return evaluate() == value; }
};

struct MemberOptions {
  bool optional_r = false;               // allow m0 = 0 when r > 0
  std::optional<std::int64_t> fixed_m;   // only this m
  std::optional<std::int64_t> fixed_m0;  // only this m0 (r > 0)
};

namespace detail {

// Unbounded knapsack over positive rational generators, scaled to integers.
// Generators are tried largest first and each takes its largest feasible
// multiplicity, which makes reconstruction deterministic.
class Knapsack {
 public:
  static constexpr std::int64_t kMaxCells = 40'000'000;

  Knapsack(std::vector<Rational> generators, Rational cap) : generators_(std::move(generators)) {
    std::sort(generators_.begin(), generators_.end(), [](const Rational& a, const Rational& b) { return a > b; });
    scale_ = 1;
    for (const auto& g : generators_) scale_ = checked_lcm(scale_, g.denominator());
    const Rational scaled_cap = cap * scale_;
    cap_ = scaled_cap.numerator() / scaled_cap.denominator();
    if (cap_ < 0) cap_ = 0;
    if ((cap_ + 1) * static_cast<std::int64_t>(generators_.size() + 1) > kMaxCells)
      throw Error(ErrorKind::Overflow, "knapsack table too large; denominators are too big");
    for (const auto& g : generators_) weights_.push_back((g * scale_).numerator());
    // reach_[k][v]: v is a combination of generators k..end
    reach_.assign(generators_.size() + 1, std::vector<bool>(static_cast<std::size_t>(cap_ + 1), false));
    reach_.back()[0] = true;
    for (std::size_t k = generators_.size(); k-- > 0;) {
      const auto w = static_cast<std::size_t>(weights_[k]);
      for (std::size_t v = 0; v <= static_cast<std::size_t>(cap_); ++v)
        reach_[k][v] = reach_[k + 1][v] || (v >= w && reach_[k][v - w]);
    }
  }

  /// Multiplicities (aligned with generators()) summing to `target`.
  std::optional<std::vector<std::int64_t>> solve(const Rational& target) const {
    if (target < 0) return std::nullopt;
    const Rational scaled = target * scale_;
    if (scaled.denominator() != 1 || scaled.numerator() > cap_) return std::nullopt;
    auto v = scaled.numerator();
    if (!reach_[0][static_cast<std::size_t>(v)]) return std::nullopt;
    std::vector<std::int64_t> counts(generators_.size(), 0);
    for (std::size_t k = 0; k < generators_.size(); ++k) {
      std::int64_t c = v / weights_[k];
      while (!reach_[k + 1][static_cast<std::size_t>(v - c * weights_[k])]) --c;
      counts[k] = c;
      v -= c * weights_[k];
    }
    return counts;
  }

  const std::vector<Rational>& generators() const { return generators_; }

 private:
  std::vector<Rational> generators_;
  std::vector<std::int64_t> weights_;
  std::int64_t scale_ = 1;
  std::int64_t cap_ = 0;
  std::vector<std::vector<bool>> reach_;
};

inline std::int64_t floor_of(const Rational& q) {
  auto f = q.numerator() / q.denominator();
  if (q.numerator() < 0 && f * q.denominator() != q.numerator()) --f;
  return f;
}

// Positive elements of Lambda together with 1.
inline std::vector<Rational> member_generators(const CoeffSet& lambda) {
  std::set<Rational> g{Rational(1)};
  for (const auto& v : lambda.elements())
    if (v > 0) g.insert(v);
  return {g.begin(), g.end()};
}

// Membership test sharing one knapsack table across many queries.
class MemberSolver {
 public:
  MemberSolver(const CoeffSet& lambda, const Rational& r, MemberOptions options)
      : r_(r), options_(options), knapsack_(member_generators(lambda), Rational(1)) {
    if (r < 0 || r > 1) throw Error(ErrorKind::BadRational, "r must lie in [0, 1]");
  }

  std::optional<MembershipCertificate> operator()(const Rational& x) const {
    if (x < 0 || x > 1) return std::nullopt;
    // x = 1 makes the target 1 for every m, so m = 1 suffices
    const std::int64_t m_max = x == Rational(1) ? 1 : floor_of(Rational(1) / (Rational(1) - x));
    for (std::int64_t m = 1; m <= m_max; ++m) {
      if (options_.fixed_m && *options_.fixed_m != m) continue;
      if (auto cert = with_target(x, m, Rational(1) - (Rational(1) - x) * m)) return cert;
    }
    return std::nullopt;
  }

 private:
  std::optional<MembershipCertificate> with_target(const Rational& x, std::int64_t m, const Rational& target) const {
    const bool uses_r = r_ > 0;
    const std::int64_t m0_min = uses_r && !options_.optional_r ? 1 : 0;
    const std::int64_t m0_max = uses_r ? floor_of(target / r_) : 0;
    for (std::int64_t m0 = m0_min; m0 <= m0_max; ++m0) {
      if (uses_r && options_.fixed_m0 && *options_.fixed_m0 != m0) continue;
      const auto counts = knapsack_.solve(target - r_ * m0);
      if (!counts) continue;
      MembershipCertificate cert{x, r_, m, m0, {}};
      for (std::size_t k = knapsack_.generators().size(); k-- > 0;)
        if ((*counts)[k] > 0) cert.terms.push_back({knapsack_.generators()[k], (*counts)[k]});
      return cert;
    }
    return std::nullopt;
  }

  Rational r_;
  MemberOptions options_;
  Knapsack knapsack_;
};

}  // namespace detail

/// Decides x in D_Lambda(r). The certificate found first with m ascending,
/// then m0 ascending, is returned.
inline std::optional<MembershipCertificate> dlambda_member(const Rational& x, const CoeffSet& lambda, const Rational& r,
                                                           MemberOptions options = {}) {
  if (x < 0 || x > 1) throw Error(ErrorKind::BadParams, "membership is decided for x in [0, 1]");
  return detail::MemberSolver(lambda, r, options)(x);
}

inline void require_bound(std::int64_t bound, std::int64_t needed) {
  if (bound < 1) throw Error(ErrorKind::BadParams, "denominator bound must be positive");
  if (bound < needed)
    throw Error(ErrorKind::BoundTooSmall, "denominator bound " + std::to_string(bound) +
                                              " is below the input denominator " + std::to_string(needed));
}

/// Members of D_Lambda(r) with denominator at most `bound`, ascending.
inline std::vector<MembershipCertificate> dlambda_enumerate(const CoeffSet& lambda, const Rational& r,
                                                            std::int64_t bound, MemberOptions options = {}) {
  require_bound(bound, std::max(lambda.max_denominator(), r.denominator()));
  const detail::MemberSolver solver(lambda, r, options);
  std::set<Rational> candidates;
  for (std::int64_t q = 1; q <= bound; ++q)
    for (std::int64_t p = 0; p <= q; ++p) candidates.insert(Rational(p, q));
  std::vector<MembershipCertificate> out;
  for (const auto& x : candidates)
    if (auto cert = solver(x)) out.push_back(std::move(*cert));
  return out;
}

inline std::vector<Rational> values(const std::vector<MembershipCertificate>& certs) {
  std::vector<Rational> out;
  for (const auto& c : certs) out.push_back(c.value);
  return out;
}

enum class PointRole { Q, P, Other };

struct P1Point {
  PointRole role = PointRole::Other;
  Rational coefficient;
  MembershipCertificate certificate;  // in D_Lambda(r) for p, in D_Lambda otherwise
};

/// Boundary on P^1: q with coefficient 1, p with coefficient in D_Lambda(r),
/// the other points in D_Lambda; other points in non-increasing order.
struct P1Boundary {
  std::vector<P1Point> points;

  Rational degree() const {
    Rational d = 0;
    for (const auto& p : points) d += p.coefficient;
    return d;
  }
  std::vector<Rational> coefficients() const {
    std::vector<Rational> out;
    for (const auto& p : points) out.push_back(p.coefficient);
    return out;
  }
  const P1Point& p() const { return points.at(1); }
};

struct P1Options {
  MemberOptions p_options;      // membership of coeff_p in D_Lambda(r)
  MemberOptions other_options;  // membership of the remaining coefficients in D_Lambda
  Rational min_coefficient = 0; // drop solutions with a smaller coefficient
};

namespace detail {

inline void fill_partitions(const std::vector<MembershipCertificate>& parts, std::size_t from, Rational remaining,
                            const Rational& floor, std::vector<std::size_t>& chosen,
                            std::vector<std::vector<std::size_t>>& out) {
  if (remaining == Rational(0)) {
    out.push_back(chosen);
    return;
  }
  // parts are descending; reusing index `from` keeps each multiset unique
  for (std::size_t i = from; i < parts.size(); ++i) {
    const auto& v = parts[i].value;
    if (v > remaining || v < floor) continue;
    chosen.push_back(i);
    fill_partitions(parts, i, remaining - v, floor, chosen, out);
    chosen.pop_back();
  }
}

}  // namespace detail

/// Degree-two boundaries with a coefficient-one point q and a point p whose
/// coefficient lies in D_Lambda(r); denominators at most `bound`. Ordered by
/// coeff_p ascending, then by the other coefficients in descending
/// lexicographic order; multisets reachable from several p are kept once.
inline std::vector<P1Boundary> p1_solutions(const CoeffSet& lambda, const Rational& r, std::int64_t bound,
                                            const P1Options& options = {}) {
  require_bound(bound, std::max(lambda.max_denominator(), r.denominator()));
  const auto p_candidates = dlambda_enumerate(lambda, r, bound, options.p_options);
  auto others = dlambda_enumerate(lambda, Rational(0), bound, options.other_options);
  others.erase(std::remove_if(others.begin(), others.end(), [](const auto& c) { return c.value == Rational(0); }), others.end());
  std::reverse(others.begin(), others.end());
  const auto q_cert = *dlambda_member(Rational(1), lambda, Rational(0));

  std::set<std::vector<Rational>> seen;
  std::vector<P1Boundary> out;
  for (const auto& p_cert : p_candidates) {
    if (p_cert.value == Rational(0) || p_cert.value < options.min_coefficient) continue;
    std::vector<std::vector<std::size_t>> fillings;
    std::vector<std::size_t> chosen;
    detail::fill_partitions(others, 0, Rational(1) - p_cert.value, options.min_coefficient, chosen, fillings);
    for (const auto& filling : fillings) {
      P1Boundary b;
      b.points.push_back({PointRole::Q, Rational(1), q_cert});
      b.points.push_back({PointRole::P, p_cert.value, p_cert});
      for (auto i : filling) b.points.push_back({PointRole::Other, others[i].value, others[i]});
      auto key = b.coefficients();
      std::sort(key.begin(), key.end());
      if (!seen.insert(key).second) continue;
      out.push_back(std::move(b));
    }
  }
  return out;
}

/// Z[1/lambda] cap [0, 1], restricted to reduced denominators at most `bound`.
inline CoeffSet lambda_lattice(std::int64_t lambda, std::int64_t bound) {
  if (lambda < 1) throw Error(ErrorKind::BadParams, "Weil index must be positive");
  std::vector<Rational> out;
  for (std::int64_t k = 0; k <= lambda; ++k) {
    Rational v(k, lambda);
    if (v.denominator() <= bound) out.push_back(v);
  }
  return CoeffSet(std::move(out));
}

/// Replays the adjunction argument for a coefficient p0/l0 of a boundary of
/// Weil index lambda: every realization on P^1 with m0 = 1 at p and m = 1 at
/// the other points yields p0/l0 = (lambda - sum m_i p_i - m sum n_j p'_j) /
/// lambda, hence l0 | lambda. Throws NoSolutionFound without realizations.
inline bool adjunction_divisibility_audit(std::int64_t lambda, const Rational& candidate, std::int64_t bound) {
  if (lambda < 1) throw Error(ErrorKind::BadParams, "Weil index must be positive");
  if (candidate <= 0 || candidate > 1) throw Error(ErrorKind::BadParams, "candidate must lie in (0, 1]");
  if (candidate == Rational(1, 2)) return adjunction_bound(lambda) % 2 == 0;
  if (candidate < Rational(1, 2)) throw Error(ErrorKind::BadParams, "candidate must be at least 1/2");

  P1Options options;
  options.p_options.fixed_m0 = 1;
  options.other_options.fixed_m = 1;
  const auto solutions = p1_solutions(lambda_lattice(lambda, bound), candidate, bound, options);
  if (solutions.empty())
    throw Error(ErrorKind::NoSolutionFound, to_string(candidate) + " has no realization for Weil index " + std::to_string(lambda));

  bool all = true;
  for (const auto& s : solutions) {
    const auto& cert = s.p().certificate;
    Rational a = 0;  // sum m_i p_i / lambda
    for (const auto& t : cert.terms) a += t.lambda * t.multiplicity;
    Rational b = 0;  // sum n_j p'_j / lambda over the other points
    for (const auto& pt : s.points)
      if (pt.role == PointRole::Other) b += pt.coefficient;
    const Rational scaled_a = a * lambda;
    const Rational scaled_b = b * lambda;
    if (scaled_a.denominator() != 1 || scaled_b.denominator() != 1)
      throw Error(ErrorKind::AssertionFailure, "realization leaves Z[1/lambda]");
    const Rational relation = (Rational(lambda) - scaled_a - scaled_b * cert.m) / lambda;
    if (relation != candidate) throw Error(ErrorKind::AssertionFailure, "degree relation does not reproduce the candidate");
    all = all && lambda % candidate.denominator() == 0;
  }
  return all;
}

/// The r in Lambda realized on P^1 with every coefficient at least 1/2.
/// Asserts the result lies in {1/2, 1}.
inline std::vector<Rational> geq_half_classification(const CoeffSet& lambda, std::int64_t bound) {
  for (const auto& v : lambda.elements())
    if (v < Rational(1, 2)) throw Error(ErrorKind::BadParams, "coefficients must lie in [1/2, 1]");
  P1Options options;
  options.min_coefficient = Rational(1, 2);
  std::vector<Rational> out;
  for (const auto& r : lambda.elements())
    if (!p1_solutions(lambda, r, bound, options).empty()) out.push_back(r);
  for (const auto& r : out)
    if (r != Rational(1, 2) && r != Rational(1))
      throw Error(ErrorKind::AssertionFailure, "coefficient " + to_string(r) + " realized outside {1/2, 1}");
  return out;
}

}  // namespace dualcx
