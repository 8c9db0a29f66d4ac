#pragma once

// The example complexes and actions: cross-polytope boundaries, simplex
// boundaries, suspensions, the antipodal involution, cyclic coordinate
// permutations, and the projective plane.

#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

#include "dualcx/complex.hpp"
#include "dualcx/errors.hpp"
#include "dualcx/group_action.hpp"

namespace dualcx {

namespace detail {

inline std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? sep : "") + parts[i];
  return out;
}

inline std::string signed_axis(int axis, bool positive) { return (positive ? "+e" : "-e") + std::to_string(axis); }

// A cross-polytope cell: one signed axis per chosen coordinate, in
// increasing coordinate order.
struct SignedFace {
  std::vector<int> axes;
  std::vector<bool> positive;

  std::vector<std::string> vertex_ids() const {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < axes.size(); ++i) out.push_back(signed_axis(axes[i], positive[i]));
    return out;
  }
  std::string id() const { return join(vertex_ids(), ","); }
  SignedFace without(std::size_t i) const {
    SignedFace f = *this;
    f.axes.erase(f.axes.begin() + static_cast<std::ptrdiff_t>(i));
    f.positive.erase(f.positive.begin() + static_cast<std::ptrdiff_t>(i));
    return f;
  }
};

inline std::string subset_id(const std::vector<int>& elements) {
  std::vector<std::string> parts;
  for (int e : elements) parts.push_back(std::to_string(e));
  return "{" + join(parts, ",") + "}";
}

inline std::string fresh_name(const DeltaComplex& x, std::string name) {
  while (x.find(name)) name += "'";
  return name;
}

}  // namespace detail

/// Boundary of the n-dimensional cross-polytope; vertices "+e1", "-e1", ...
inline DeltaComplex hyperoctahedron(int n) {
  if (n < 1) throw Error(ErrorKind::BadParams, "hyperoctahedron needs n >= 1");
  if (n > 12) throw Error(ErrorKind::BadParams, "hyperoctahedron limited to n <= 12");
  std::vector<Cell> cells;
  // every nonempty coordinate subset with every sign pattern
  for (unsigned axes_mask = 1; axes_mask < (1u << n); ++axes_mask) {
    std::vector<int> axes;
    for (int a = 0; a < n; ++a)
      if (axes_mask & (1u << a)) axes.push_back(a + 1);
    for (unsigned signs = 0; signs < (1u << axes.size()); ++signs) {
      detail::SignedFace face{axes, {}};
      for (std::size_t i = 0; i < axes.size(); ++i) face.positive.push_back(!(signs & (1u << i)));
      Cell cell{face.id(), static_cast<int>(axes.size()) - 1, {}, {}};
      if (axes.size() > 1)
        for (std::size_t i = 0; i < axes.size(); ++i) cell.facets.push_back(face.without(i).id());
      cells.push_back(std::move(cell));
    }
  }
  return DeltaComplex::build(cells);
}

/// Boundary of the (m-1)-simplex: proper nonempty subsets of {1..m}.
inline DeltaComplex simplex_boundary(int m) {
  if (m < 2) throw Error(ErrorKind::BadParams, "simplex boundary needs m >= 2");
  if (m > 16) throw Error(ErrorKind::BadParams, "simplex boundary limited to m <= 16");
  std::vector<Cell> cells;
  for (unsigned mask = 1; mask + 1 < (1u << m); ++mask) {
    std::vector<int> elements;
    for (int e = 0; e < m; ++e)
      if (mask & (1u << e)) elements.push_back(e + 1);
    Cell cell{detail::subset_id(elements), static_cast<int>(elements.size()) - 1, {}, {}};
    if (elements.size() > 1)
      for (std::size_t i = 0; i < elements.size(); ++i) {
        auto rest = elements;
        rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(i));
        cell.facets.push_back(detail::subset_id(rest));
      }
    cells.push_back(std::move(cell));
  }
  return DeltaComplex::build(cells);
}

/// Cone with apex `apex`, appended as the last vertex of every cone cell.
/// The cone over a cell c has id "c*apex".
inline std::vector<Cell> cone_cells(const DeltaComplex& x, const std::string& apex) {
  std::vector<Cell> out;
  out.push_back({apex, 0, {}, {}});
  for (const auto& c : x.all_cells()) {
    Cell cell{x.id(c) + "*" + apex, c.dim + 1, {}, {}};
    if (c.dim == 0) {
      cell.facets = {apex, x.id(c)};
    } else {
      for (auto f : x.facets(c)) cell.facets.push_back(x.id({c.dim - 1, f}) + "*" + apex);
      cell.facets.push_back(x.id(c));
    }
    out.push_back(std::move(cell));
  }
  return out;
}

inline DeltaComplex cone(const DeltaComplex& x, const std::string& apex = "p") {
  auto cells = x.cells();
  const auto name = detail::fresh_name(x, apex);
  for (auto& c : cone_cells(x, name)) cells.push_back(std::move(c));
  return DeltaComplex::build(cells);
}

/// Union of the cones to two apexes "p" and "q" (primed until unused).
inline DeltaComplex suspension(const DeltaComplex& x) {
  if (x.empty()) throw Error(ErrorKind::EmptyComplex, "suspension of the empty complex");
  auto cells = x.cells();
  const auto p = detail::fresh_name(x, "p");
  auto q = detail::fresh_name(x, "q");
  if (q == p) q += "'";
  for (const auto& apex : {p, q})
    for (auto& c : cone_cells(x, apex)) cells.push_back(std::move(c));
  auto out = DeltaComplex::build(cells);
  if (euler_characteristic(out) != 2 - euler_characteristic(x))
    throw Error(ErrorKind::AssertionFailure, "suspension changed the Euler characteristic unexpectedly");
  return out;
}

/// Coordinate negation on hyperoctahedron(n), generator "tau".
inline SimplicialAction antipodal_action(int n) {
  if (n < 2) throw Error(ErrorKind::BadParams, "antipodal action needs n >= 2");
  const auto x = hyperoctahedron(n);
  ActionSpec spec;
  ActionSpec::Generator tau{"tau", {}};
  for (const auto& c : x.all_cells()) {
    std::string image;
    const auto& id = x.id(c);
    for (char ch : id) image += ch == '+' ? '-' : ch == '-' ? '+' : ch;
    tau.map.emplace(id, image);
  }
  spec.generators.push_back(std::move(tau));
  spec.relations.push_back({"tau", "tau"});
  return SimplicialAction::create(x, std::move(spec));
}

/// The m-cycle i -> i+1 (mod m) on simplex_boundary(m), generator "sigma".
inline SimplicialAction cyclic_permutation_action(int m) {
  if (m < 3) throw Error(ErrorKind::BadParams, "cyclic permutation action needs m >= 3");
  const auto x = simplex_boundary(m);
  ActionSpec::Generator sigma{"sigma", {}};
  for (unsigned mask = 1; mask + 1 < (1u << m); ++mask) {
    std::vector<int> elements, images;
    for (int e = 0; e < m; ++e)
      if (mask & (1u << e)) {
        elements.push_back(e + 1);
        images.push_back((e + 1) % m + 1);
      }
    std::sort(images.begin(), images.end());
    sigma.map.emplace(detail::subset_id(elements), detail::subset_id(images));
  }
  ActionSpec spec;
  spec.generators.push_back(std::move(sigma));
  spec.relations.emplace_back(static_cast<std::size_t>(m), "sigma");
  return SimplicialAction::create(x, std::move(spec));
}

/// Quotient of hyperoctahedron(n) by the antipodal involution.
inline DeltaComplex antipodal_quotient(int n) { return quotient(antipodal_action(n)).complex; }

/// The projective plane with f-vector (3, 6, 4).
inline const DeltaComplex& rp2() {
  static const DeltaComplex cached = antipodal_quotient(3);
  return cached;
}

/// One vertex and one loop.
inline DeltaComplex minimal_circle() {
  const std::vector<Cell> cells{{"v", 0, {}, {}}, {"e", 1, {"v", "v"}, {}}};
  return DeltaComplex::build(cells);
}

}  // namespace dualcx
