#pragma once

#include <bitset>
#include <string>
#include <utility>
#include <vector>

#include "dualcx/dualcx.hpp"
#include "oracles/oracles.hpp"

namespace test_support {

using namespace dualcx;

inline DeltaComplex filled_triangle() {
  const std::vector<Cell> cells{{"a", 0, {}, {}},          {"b", 0, {}, {}},          {"c", 0, {}, {}},
                                {"ab", 1, {"b", "a"}, {}}, {"bc", 1, {"c", "b"}, {}}, {"ac", 1, {"c", "a"}, {}},
                                {"abc", 2, {"bc", "ac", "ab"}, {}}};
  return DeltaComplex::build(cells);
}

/// The example corpus: every complex the suites sweep over.
inline const std::vector<std::pair<std::string, DeltaComplex>>& corpus() {
  static const std::vector<std::pair<std::string, DeltaComplex>> all = [] {
    std::vector<std::pair<std::string, DeltaComplex>> v;
    v.emplace_back("cross-polytope-1", hyperoctahedron(1));
    v.emplace_back("cross-polytope-2", hyperoctahedron(2));
    v.emplace_back("octahedron", hyperoctahedron(3));
    v.emplace_back("cross-polytope-4", hyperoctahedron(4));
    v.emplace_back("triangle-boundary", simplex_boundary(3));
    v.emplace_back("tetrahedron-boundary", simplex_boundary(4));
    v.emplace_back("simplex-boundary-5", simplex_boundary(5));
    v.emplace_back("projective-plane", rp2());
    v.emplace_back("suspended-projective-plane", suspension(rp2()));
    v.emplace_back("projective-space-3", antipodal_quotient(4));
    v.emplace_back("minimal-circle", minimal_circle());
    v.emplace_back("cone-over-octahedron", cone(hyperoctahedron(3)));
    v.emplace_back("filled-triangle", filled_triangle());
    v.emplace_back("cyclic-quotient-3", quotient(cyclic_permutation_action(3), {true}).complex);
    v.emplace_back("cyclic-quotient-4", quotient(cyclic_permutation_action(4), {true}).complex);
    return v;
  }();
  return all;
}

inline oracle::Dense to_dense(const IntegerMatrix& m) {
  oracle::Dense out(m.rows(), std::vector<oracle::Big>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out[i][j] = m(i, j);
  return out;
}

inline std::vector<std::vector<std::pair<std::size_t, std::size_t>>> incidence_lists(const DeltaComplex& x) {
  const int n = x.dimension();
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> out(x.num_cells(n - 1));
  for (std::size_t t = 0; t < x.num_cells(n); ++t) {
    const auto f = x.facets({n, t});
    for (std::size_t i = 0; i < f.size(); ++i) out[f[i]].emplace_back(t, i);
  }
  return out;
}

// Betti numbers mod 2 from the oracle F_2 rank.
inline std::vector<std::size_t> betti_mod2(const DeltaComplex& x) {
  std::vector<std::size_t> ranks(static_cast<std::size_t>(x.dimension() + 2), 0);
  for (int k = 1; k <= x.dimension(); ++k) {
    std::vector<std::bitset<4096>> rows(x.num_cells(k - 1));
    for (std::size_t c = 0; c < x.num_cells(k); ++c)
      for (auto f : x.facets({k, c})) rows[f].flip(c);
    ranks[static_cast<std::size_t>(k)] = oracle::rank_f2(rows);
  }
  std::vector<std::size_t> out;
  for (int k = 0; k <= x.dimension(); ++k)
    out.push_back(x.num_cells(k) - ranks[static_cast<std::size_t>(k)] - ranks[static_cast<std::size_t>(k + 1)]);
  return out;
}

}  // namespace test_support
