#pragma once

#include <cstddef>
#include <deque>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <boost/pending/disjoint_sets.hpp>

#include "dualcx/complex.hpp"
#include "dualcx/errors.hpp"
#include "dualcx/homology.hpp"

namespace dualcx {

enum class Verdict { NotPure, Branching, NotStronglyConnected, PseudoManifoldWithBoundary, ClosedPseudoManifold };

inline std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::NotPure: return "NotPure";
    case Verdict::Branching: return "Branching";
    case Verdict::NotStronglyConnected: return "NotStronglyConnected";
    case Verdict::PseudoManifoldWithBoundary: return "PseudoManifoldWithBoundary";
    case Verdict::ClosedPseudoManifold: return "ClosedPseudoManifold";
  }
  return "Unknown";
}

struct PMClassification {
  Verdict verdict = Verdict::NotPure;
  int dimension = -1;
  std::vector<CellRef> witness;         // offending cells for negative verdicts
  std::vector<CellRef> boundary_cells;  // (n-1)-cells of incidence one
  std::optional<bool> orientable;       // present iff closed

  bool is_pseudo_manifold() const {
    return verdict == Verdict::PseudoManifoldWithBoundary || verdict == Verdict::ClosedPseudoManifold;
  }
  bool is_closed() const { return verdict == Verdict::ClosedPseudoManifold; }
};

/// A sign per top cell (indexed like the top cells of the complex).
struct OrientationAssignment {
  std::vector<int> signs;
};

/// Outcome of the three orientability tests of a closed pseudo-manifold.
struct OrientabilityCriteria {
  bool integral_top_homology = false;   // free rank of H_n(X; Z) is 1
  bool rational_top_cohomology = false; // dim H^n(X; Q) is 1
  bool sign_propagation = false;        // an orientation assignment exists

  bool agree() const {
    return integral_top_homology == rational_top_cohomology && rational_top_cohomology == sign_propagation;
  }
};

/// (top cell, facet slot) pairs meeting one codimension-one cell.
struct Incidence {
  std::size_t top;
  std::size_t slot;
};

inline std::vector<std::vector<Incidence>> codim_one_incidences(const DeltaComplex& x) {
  const int n = x.dimension();
  std::vector<std::vector<Incidence>> out(n >= 1 ? x.num_cells(n - 1) : 0);
  if (n < 1) return out;
  for (std::size_t t = 0; t < x.num_cells(n); ++t) {
    const auto facets = x.facets({n, t});
    for (std::size_t i = 0; i < facets.size(); ++i) out[facets[i]].push_back({t, i});
  }
  return out;
}

namespace detail {

// Sign propagation over the dual graph from top cell 0. Interior
// codimension-one cells force s' = -s * (-1)^(i + i'). Assumes non-branching.
inline std::optional<OrientationAssignment> propagate_signs(const DeltaComplex& x) {
  const int n = x.dimension();
  const std::size_t tops = x.num_cells(n);
  OrientationAssignment result{std::vector<int>(tops, 0)};
  if (tops == 0) return result;
  if (n == 0) {
    result.signs.assign(tops, 1);
    return result;
  }

  struct Edge {
    std::size_t to;
    int relation;  // s_to = relation * s_from
  };
  std::vector<std::vector<Edge>> adjacency(tops);
  for (const auto& inc : codim_one_incidences(x)) {
    if (inc.size() != 2) continue;
    const int parity = ((inc[0].slot + inc[1].slot) % 2 == 0) ? 1 : -1;
    const int relation = -parity;
    if (inc[0].top == inc[1].top) {
      if (relation != 1) return std::nullopt;
      continue;
    }
    adjacency[inc[0].top].push_back({inc[1].top, relation});
    adjacency[inc[1].top].push_back({inc[0].top, relation});
  }

  std::deque<std::size_t> queue;
  for (std::size_t start = 0; start < tops; ++start) {
    if (result.signs[start] != 0) continue;
    result.signs[start] = 1;
    queue.push_back(start);
    while (!queue.empty()) {
      const auto cur = queue.front();
      queue.pop_front();
      for (const auto& e : adjacency[cur]) {
        const int want = e.relation * result.signs[cur];
        if (result.signs[e.to] == 0) {
          result.signs[e.to] = want;
          queue.push_back(e.to);
        } else if (result.signs[e.to] != want) {
          return std::nullopt;
        }
      }
    }
  }
  return result;
}

inline OrientabilityCriteria evaluate_criteria(const DeltaComplex& x) {
  const int n = x.dimension();
  OrientabilityCriteria c;
  c.integral_top_homology = homology(x, n, Coefficients::integers()).free_rank == 1;
  c.rational_top_cohomology = cohomology(x, n, Coefficients::rationals()).free_rank == 1;
  c.sign_propagation = propagate_signs(x).has_value();
  return c;
}

}  // namespace detail

/// True iff every interior codimension-one cell sees its two signed
/// incidences cancel under the assignment.
inline bool satisfies_cancellation(const DeltaComplex& x, const OrientationAssignment& a) {
  const int n = x.dimension();
  if (a.signs.size() != x.num_cells(n)) return false;
  for (const auto& inc : codim_one_incidences(x)) {
    if (inc.size() != 2) continue;
    const int lhs = a.signs[inc[0].top] * (inc[0].slot % 2 == 0 ? 1 : -1);
    const int rhs = a.signs[inc[1].top] * (inc[1].slot % 2 == 0 ? 1 : -1);
    if (lhs + rhs != 0) return false;
  }
  return true;
}

/// Classifies a nonempty connected complex as a pseudo-manifold. The checks
/// run in order: purity, non-branching (incidences counted with
/// multiplicity), strong connectedness.
inline PMClassification classify(const DeltaComplex& x) {
  if (x.empty()) throw Error(ErrorKind::EmptyComplex, "cannot classify the empty complex");
  if (connected_components(x).size() != 1)
    throw Error(ErrorKind::NotConnected, "classify needs a connected complex; split it into components first");

  const int n = x.dimension();
  PMClassification out;
  out.dimension = n;

  // purity
  std::vector<std::vector<bool>> covered(static_cast<std::size_t>(n + 1));
  for (int d = 0; d <= n; ++d) covered[static_cast<std::size_t>(d)].assign(x.num_cells(d), d == n);
  for (int d = n; d >= 1; --d)
    for (std::size_t i = 0; i < x.num_cells(d); ++i)
      if (covered[static_cast<std::size_t>(d)][i])
        for (auto f : x.facets({d, i})) covered[static_cast<std::size_t>(d - 1)][f] = true;
  for (int d = 0; d < n; ++d)
    for (std::size_t i = 0; i < x.num_cells(d); ++i)
      if (!covered[static_cast<std::size_t>(d)][i]) out.witness.push_back({d, i});
  if (!out.witness.empty()) {
    out.verdict = Verdict::NotPure;
    return out;
  }

  // non-branching
  const auto incidences = codim_one_incidences(x);
  for (std::size_t f = 0; f < incidences.size(); ++f)
    if (incidences[f].size() > 2) out.witness.push_back({n - 1, f});
  if (!out.witness.empty()) {
    out.verdict = Verdict::Branching;
    return out;
  }

  // strong connectedness
  const std::size_t tops = x.num_cells(n);
  boost::disjoint_sets_with_storage<> sets(tops);
  for (const auto& inc : incidences)
    if (inc.size() == 2) sets.union_set(inc[0].top, inc[1].top);
  const auto root = sets.find_set(0);
  for (std::size_t t = 0; t < tops; ++t)
    if (sets.find_set(t) != root) out.witness.push_back({n, t});
  if (!out.witness.empty()) {
    out.verdict = Verdict::NotStronglyConnected;
    return out;
  }

  for (std::size_t f = 0; f < incidences.size(); ++f)
    if (incidences[f].size() == 1) out.boundary_cells.push_back({n - 1, f});

  if (!out.boundary_cells.empty()) {
    out.verdict = Verdict::PseudoManifoldWithBoundary;
    return out;
  }
  out.verdict = Verdict::ClosedPseudoManifold;
  const auto criteria = detail::evaluate_criteria(x);
  if (!criteria.agree())
    throw Error(ErrorKind::CriterionDisagreement, "orientability criteria disagree");
  out.orientable = criteria.integral_top_homology;
  return out;
}

/// Breadth-first sign propagation from the top cell with the smallest id
/// (which gets +1). Absent when the propagation hits a contradiction.
inline std::optional<OrientationAssignment> orientation_assignment(const DeltaComplex& x) {
  if (!classify(x).is_pseudo_manifold())
    throw Error(ErrorKind::NotPseudoManifold, "orientation assignment needs a pseudo-manifold");
  return detail::propagate_signs(x);
}

/// Runs all three tests on a closed pseudo-manifold without reconciling them.
inline OrientabilityCriteria orientability_criteria(const DeltaComplex& x) {
  if (!classify(x).is_closed())
    throw Error(ErrorKind::NotClosedPseudoManifold, "orientability is defined for closed pseudo-manifolds");
  return detail::evaluate_criteria(x);
}

inline bool is_orientable(const DeltaComplex& x) {
  const auto c = classify(x);
  if (!c.is_closed())
    throw Error(ErrorKind::NotClosedPseudoManifold, "orientability is defined for closed pseudo-manifolds");
  return *c.orientable;
}

/// Index of a reduced-boundary coregularity-zero log Calabi-Yau pair with
/// dual complex `x`: 1 when orientable, 2 otherwise.
inline int index_of_pair(const DeltaComplex& x) { return is_orientable(x) ? 1 : 2; }

inline bool coregularity_zero_check(const DeltaComplex& x, int ambient_dim) {
  return x.dimension() == ambient_dim - 1;
}

}  // namespace dualcx
