#pragma once

// Branched orientation double cover of a closed pseudo-manifold.
//
// Every top cell gets two oriented copies (sign +1 and -1). A face occurrence
// is a node (top cell, sign, vertex-position subset); two occurrences are
// glued when they sit in the same occurrence inside a shared codimension-one
// cell and the two oriented copies induce cancelling orientations there. A
// base cell lifts to one cover cell per component of its occurrence graph, so
// cells whose oriented star is connected (e.g. cone points over a
// non-orientable link) have a single preimage and form the branch locus.

#include <bit>
#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include <boost/pending/disjoint_sets.hpp>

#include "dualcx/complex.hpp"
#include "dualcx/errors.hpp"
#include "dualcx/group_action.hpp"
#include "dualcx/pseudo_manifold.hpp"

namespace dualcx {

struct DoubleCover {
  DeltaComplex base;
  DeltaComplex total;
  CellMap projection;            // total -> base
  CellMap deck;                  // total -> total, an involution
  std::vector<CellRef> branch_cells;  // base cells with a single preimage

  /// Number of preimages of each base cell, indexed like base.all_cells().
  std::vector<std::size_t> fiber_sizes() const {
    std::vector<std::size_t> out(base.total_cells(), 0);
    for (const auto& c : total.all_cells()) ++out[base.flat_index(projection(c))];
    return out;
  }
};

namespace detail {

// Inserts position `skip` into a mask over n positions: bits at or above
// `skip` shift up by one.
inline unsigned widen_mask(unsigned mask, unsigned skip) {
  const unsigned low = mask & ((1u << skip) - 1u);
  const unsigned high = (mask >> skip) << (skip + 1);
  return low | high;
}

}  // namespace detail

inline DoubleCover orientation_double_cover(const DeltaComplex& x) {
  if (x.empty() || !classify(x).is_closed())
    throw Error(ErrorKind::NotClosedPseudoManifold, "orientation double cover needs a closed pseudo-manifold");

  const int n = x.dimension();
  const std::size_t tops = x.num_cells(n);
  const unsigned width = static_cast<unsigned>(n) + 1;
  const std::size_t masks = std::size_t{1} << width;
  auto node = [&](std::size_t top, int sheet, unsigned mask) { return (top * 2 + static_cast<std::size_t>(sheet)) * masks + mask; };

  boost::disjoint_sets_with_storage<> sets(tops * 2 * masks);
  for (const auto& inc : codim_one_incidences(x)) {
    if (inc.size() != 2) continue;
    const auto [a, i] = inc[0];
    const auto [b, j] = inc[1];
    // sheet 0 carries +1; cancellation forces s_b = -s_a * (-1)^(i+j)
    const bool same_sheet = (i + j) % 2 == 1;
    for (int sheet = 0; sheet < 2; ++sheet) {
      const int other = same_sheet ? sheet : 1 - sheet;
      for (unsigned t = 1; t < (1u << n); ++t)
        sets.union_set(node(a, sheet, detail::widen_mask(t, static_cast<unsigned>(i))),
                       node(b, other, detail::widen_mask(t, static_cast<unsigned>(j))));
    }
  }

  // one cover cell per component, numbered per base cell in order of first node
  std::map<std::size_t, std::pair<CellRef, std::size_t>> lift_of_root;  // root -> (base cell, lift number)
  std::map<CellRef, std::size_t> lifts_per_cell;
  auto lift_id = [&](CellRef base_cell, std::size_t k) { return x.id(base_cell) + "#" + std::to_string(k); };

  struct Pending {
    std::size_t root;
    std::size_t top;
    int sheet;
    unsigned mask;
  };
  std::vector<Pending> representatives;
  for (std::size_t top = 0; top < tops; ++top)
    for (int sheet = 0; sheet < 2; ++sheet)
      for (unsigned mask = 1; mask < masks; ++mask) {
        const auto root = sets.find_set(node(top, sheet, mask));
        if (lift_of_root.count(root)) continue;
        const CellRef base_cell = x.face_by_mask({n, top}, mask);
        const auto k = lifts_per_cell[base_cell]++;
        lift_of_root.emplace(root, std::make_pair(base_cell, k));
        representatives.push_back({root, top, sheet, mask});
      }

  std::vector<Cell> raw;
  for (const auto& rep : representatives) {
    const auto& [base_cell, k] = lift_of_root.at(rep.root);
    Cell cell{lift_id(base_cell, k), base_cell.dim, {}, x.label(base_cell)};
    if (base_cell.dim > 0) {
      // drop the positions of `mask` one at a time, in increasing order
      for (unsigned pos = 0; pos < width; ++pos) {
        if (!(rep.mask & (1u << pos))) continue;
        const auto sub_root = sets.find_set(node(rep.top, rep.sheet, rep.mask & ~(1u << pos)));
        const auto& [sub_base, sub_k] = lift_of_root.at(sub_root);
        cell.facets.push_back(lift_id(sub_base, sub_k));
      }
    }
    raw.push_back(std::move(cell));
  }

  DoubleCover cover{x, DeltaComplex::build(raw), {}, {}, {}};
  cover.projection = CellMap::shaped_like(cover.total);
  cover.deck = CellMap::shaped_like(cover.total);
  for (const auto& rep : representatives) {
    const auto& [base_cell, k] = lift_of_root.at(rep.root);
    const CellRef here = cover.total.at(lift_id(base_cell, k));
    cover.projection.set_image(here, base_cell.index);
    const auto& [mirror_base, mirror_k] = lift_of_root.at(sets.find_set(node(rep.top, 1 - rep.sheet, rep.mask)));
    cover.deck.set_image(here, cover.total.at(lift_id(mirror_base, mirror_k)).index);
  }
  for (const auto& [cell, count] : lifts_per_cell)
    if (count == 1) cover.branch_cells.push_back(cell);
  return cover;
}

}  // namespace dualcx
