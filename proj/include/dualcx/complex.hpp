#pragma once

// Delta-complexes: graded cells with ordered facet maps.
//
// The i-th facet of a k-cell is the face opposite its i-th vertex. Face maps
// are order preserving, so the simplicial identities
//   face_i(face_j(c)) == face_{j-1}(face_i(c))   for i < j
// hold for every valid complex. Cells may have repeated vertices (general
// Delta-complexes); `regular()` records whether every cell has distinct ones.

#include <algorithm>
#include <compare>
#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include <boost/pending/disjoint_sets.hpp>

#include "dualcx/errors.hpp"

namespace dualcx {

/// Raw cell as it appears in interchange files.
struct Cell {
  std::string id;
  int dim = 0;
  std::vector<std::string> facets;
  std::optional<std::string> label;

  friend bool operator==(const Cell&, const Cell&) = default;
};

/// Dense handle of a cell inside one complex: its dimension and its position
/// among the cells of that dimension (cells are ordered by id).
struct CellRef {
  int dim = 0;
  std::size_t index = 0;

  friend auto operator<=>(const CellRef&, const CellRef&) = default;
};

struct Violation {
  std::string cell_id;
  std::string rule;
  std::string detail;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }

  void add(std::string cell_id, std::string rule, std::string detail) {
    violations.push_back({std::move(cell_id), std::move(rule), std::move(detail)});
  }

  bool has_rule(std::string_view rule) const {
    return std::any_of(violations.begin(), violations.end(),
                       [&](const Violation& v) { return v.rule == rule; });
  }
};

class ValidationError : public Error {
 public:
  explicit ValidationError(ValidationReport report)
      : Error(ErrorKind::ValidationFailed, summarize(report)), report_(std::move(report)) {}

  const ValidationReport& report() const noexcept { return report_; }

 private:
  static std::string summarize(const ValidationReport& report) {
    if (report.ok()) return "validation failed";
    const auto& first = report.violations.front();
    std::string msg = first.rule + " at cell '" + first.cell_id + "': " + first.detail;
    if (report.violations.size() > 1)
      msg += " (+" + std::to_string(report.violations.size() - 1) + " more)";
    return msg;
  }

  ValidationReport report_;
};

class DeltaComplex {
 public:
  /// The empty complex (dimension -1).
  DeltaComplex() : data_(std::make_shared<const Data>()) {}

  /// Validates and builds a complex; throws ValidationError naming every
  /// offending cell.
  static DeltaComplex build(std::span<const Cell> cells) {
    auto [data, report] = assemble(cells);
    if (!report.ok()) throw ValidationError(std::move(report));
    return DeltaComplex(std::move(data));
  }

  static ValidationReport validate(std::span<const Cell> cells) {
    return assemble(cells).second;
  }

  int dimension() const { return static_cast<int>(data_->by_dim.size()) - 1; }
  bool empty() const { return data_->by_dim.empty(); }
  bool regular() const { return data_->regular; }

  std::size_t num_cells(int dim) const {
    if (dim < 0 || dim > dimension()) return 0;
    return data_->by_dim[static_cast<std::size_t>(dim)].size();
  }

  std::size_t total_cells() const {
    std::size_t total = 0;
    for (const auto& level : data_->by_dim) total += level.size();
    return total;
  }

  const std::string& id(CellRef c) const { return record(c).id; }
  const std::optional<std::string>& label(CellRef c) const { return record(c).label; }

  /// Facet indices (into dimension c.dim - 1), in facet order.
  std::span<const std::size_t> facets(CellRef c) const { return record(c).facets; }

  CellRef facet(CellRef c, std::size_t i) const { return {c.dim - 1, record(c).facets.at(i)}; }

  /// Vertex indices of the cell in vertex order; may repeat for non-regular cells.
  std::span<const std::size_t> vertices(CellRef c) const { return record(c).vertices; }

  std::optional<CellRef> find(std::string_view cell_id) const {
    auto it = data_->index.find(std::string(cell_id));
    if (it == data_->index.end()) return std::nullopt;
    return it->second;
  }

  CellRef at(std::string_view cell_id) const {
    auto c = find(cell_id);
    if (!c) throw Error(ErrorKind::BadParams, "unknown cell id '" + std::string(cell_id) + "'");
    return *c;
  }

  /// Face of `c` spanned by the given vertex positions (sorted ascending,
  /// nonempty, each below c.dim + 1).
  CellRef face(CellRef c, std::span<const std::size_t> positions) const {
    std::vector<bool> keep(static_cast<std::size_t>(c.dim) + 1, false);
    for (auto p : positions) keep.at(p) = true;
    CellRef cur = c;
    for (int pos = c.dim; pos >= 0; --pos)
      if (!keep[static_cast<std::size_t>(pos)]) cur = facet(cur, static_cast<std::size_t>(pos));
    return cur;
  }

  /// Same as face() with the positions given as a bit mask.
  CellRef face_by_mask(CellRef c, unsigned mask) const {
    CellRef cur = c;
    for (int pos = c.dim; pos >= 0; --pos)
      if (!(mask & (1u << pos))) cur = facet(cur, static_cast<std::size_t>(pos));
    return cur;
  }

  /// All cells in (dim, id) order, ready for serialization.
  std::vector<Cell> cells() const {
    std::vector<Cell> out;
    out.reserve(total_cells());
    for (int d = 0; d <= dimension(); ++d) {
      for (const auto& rec : data_->by_dim[static_cast<std::size_t>(d)]) {
        Cell cell{rec.id, d, {}, rec.label};
        for (auto f : rec.facets) cell.facets.push_back(data_->by_dim[static_cast<std::size_t>(d - 1)][f].id);
        out.push_back(std::move(cell));
      }
    }
    return out;
  }

  /// Every cell handle in (dim, index) order.
  std::vector<CellRef> all_cells() const {
    std::vector<CellRef> out;
    out.reserve(total_cells());
    for (int d = 0; d <= dimension(); ++d)
      for (std::size_t i = 0; i < num_cells(d); ++i) out.push_back({d, i});
    return out;
  }

  /// Position of a cell in the global (dim, index) order.
  std::size_t flat_index(CellRef c) const { return data_->offsets.at(static_cast<std::size_t>(c.dim)) + c.index; }

 private:
  struct Record {
    std::string id;
    std::optional<std::string> label;
    std::vector<std::size_t> facets;
    std::vector<std::size_t> vertices;
  };

  struct Data {
    std::vector<std::vector<Record>> by_dim;
    std::vector<std::size_t> offsets;
    std::unordered_map<std::string, CellRef> index;
    bool regular = true;
  };

  explicit DeltaComplex(std::shared_ptr<const Data> data) : data_(std::move(data)) {}

  const Record& record(CellRef c) const {
    return data_->by_dim.at(static_cast<std::size_t>(c.dim)).at(c.index);
  }

  static std::pair<std::shared_ptr<const Data>, ValidationReport> assemble(std::span<const Cell> cells) {
    ValidationReport report;
    auto data = std::make_shared<Data>();

    int max_dim = -1;
    std::unordered_map<std::string, const Cell*> by_id;
    for (const auto& c : cells) {
      if (c.dim < 0) {
        report.add(c.id, "DimensionMismatch", "negative dimension " + std::to_string(c.dim));
        continue;
      }
      if (!by_id.emplace(c.id, &c).second) {
        report.add(c.id, "DuplicateId", "cell id appears more than once");
        continue;
      }
      max_dim = std::max(max_dim, c.dim);
    }
    if (!report.ok()) return {data, report};

    std::vector<std::vector<const Cell*>> grouped(static_cast<std::size_t>(max_dim + 1));
    for (const auto& [cid, c] : by_id) grouped[static_cast<std::size_t>(c->dim)].push_back(c);
    for (auto& level : grouped)
      std::sort(level.begin(), level.end(), [](const Cell* a, const Cell* b) { return a->id < b->id; });

    data->by_dim.resize(grouped.size());
    std::size_t offset = 0;
    for (std::size_t d = 0; d < grouped.size(); ++d) {
      data->offsets.push_back(offset);
      offset += grouped[d].size();
      for (std::size_t i = 0; i < grouped[d].size(); ++i) {
        data->index.emplace(grouped[d][i]->id, CellRef{static_cast<int>(d), i});
        data->by_dim[d].push_back({grouped[d][i]->id, grouped[d][i]->label, {}, {}});
      }
    }

    for (std::size_t d = 0; d < grouped.size(); ++d) {
      for (std::size_t i = 0; i < grouped[d].size(); ++i) {
        const Cell& c = *grouped[d][i];
        const std::size_t expected = d == 0 ? 0 : d + 1;
        if (c.facets.size() != expected) {
          report.add(c.id, "DimensionMismatch",
                     "a " + std::to_string(d) + "-cell needs " + std::to_string(expected) + " facets, got " +
                         std::to_string(c.facets.size()));
          continue;
        }
        auto& rec = data->by_dim[d][i];
        for (const auto& fid : c.facets) {
          auto it = data->index.find(fid);
          if (it == data->index.end()) {
            report.add(c.id, "DanglingFacet", "facet '" + fid + "' does not exist");
            continue;
          }
          if (static_cast<std::size_t>(it->second.dim) + 1 != d) {
            report.add(c.id, "DimensionMismatch",
                       "facet '" + fid + "' has dimension " + std::to_string(it->second.dim));
            continue;
          }
          rec.facets.push_back(it->second.index);
        }
      }
    }
    if (!report.ok()) return {data, report};

    for (std::size_t d = 2; d < data->by_dim.size(); ++d) {
      for (const auto& rec : data->by_dim[d]) {
        for (std::size_t j = 1; j <= d; ++j) {
          for (std::size_t i = 0; i < j; ++i) {
            const auto lhs = data->by_dim[d - 1][rec.facets[j]].facets[i];
            const auto rhs = data->by_dim[d - 1][rec.facets[i]].facets[j - 1];
            if (lhs != rhs) {
              report.add(rec.id, "FaceIdentityViolation",
                         "face_" + std::to_string(i) + "(face_" + std::to_string(j) + ") != face_" +
                             std::to_string(j - 1) + "(face_" + std::to_string(i) + ")");
            }
          }
        }
      }
    }
    if (!report.ok()) return {data, report};

    for (std::size_t d = 0; d < data->by_dim.size(); ++d) {
      for (std::size_t i = 0; i < data->by_dim[d].size(); ++i) {
        auto& rec = data->by_dim[d][i];
        if (d == 0) {
          rec.vertices = {i};
          continue;
        }
        // vertices(c) = vertices(face_d(c)) followed by the last vertex of face_0(c)
        const auto& back = data->by_dim[d - 1][rec.facets[d]].vertices;
        const auto& front = data->by_dim[d - 1][rec.facets[0]].vertices;
        rec.vertices = back;
        rec.vertices.push_back(front.back());
        auto sorted = rec.vertices;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) data->regular = false;
      }
    }
    return {data, report};
  }

  std::shared_ptr<const Data> data_;
};

inline std::vector<std::size_t> f_vector(const DeltaComplex& x) {
  std::vector<std::size_t> out;
  for (int d = 0; d <= x.dimension(); ++d) out.push_back(x.num_cells(d));
  return out;
}

inline long long euler_characteristic(const DeltaComplex& x) {
  long long chi = 0;
  for (int d = 0; d <= x.dimension(); ++d)
    chi += (d % 2 == 0 ? 1 : -1) * static_cast<long long>(x.num_cells(d));
  return chi;
}

/// Components under the facet-incidence relation. Each component is sorted;
/// components are ordered by their first cell.
inline std::vector<std::vector<CellRef>> connected_components(const DeltaComplex& x) {
  const auto cells = x.all_cells();
  boost::disjoint_sets_with_storage<> sets(cells.size());
  for (const auto& c : cells)
    for (auto f : x.facets(c)) sets.union_set(x.flat_index(c), x.flat_index({c.dim - 1, f}));

  std::map<std::size_t, std::vector<CellRef>> by_root;
  std::vector<std::vector<CellRef>> out;
  std::map<std::size_t, std::size_t> slot;
  for (const auto& c : cells) {
    const auto root = sets.find_set(x.flat_index(c));
    auto [it, inserted] = slot.emplace(root, out.size());
    if (inserted) out.emplace_back();
    out[it->second].push_back(c);
  }
  return out;
}

/// Complex spanned by the given cells, which must be closed under facets.
inline DeltaComplex subcomplex(const DeltaComplex& x, std::span<const CellRef> cells) {
  std::vector<Cell> raw;
  raw.reserve(cells.size());
  for (const auto& c : cells) {
    Cell cell{x.id(c), c.dim, {}, x.label(c)};
    for (auto f : x.facets(c)) cell.facets.push_back(x.id({c.dim - 1, f}));
    raw.push_back(std::move(cell));
  }
  return DeltaComplex::build(raw);
}

/// True iff `cell_map` (id -> id) is a dimension-preserving bijection from the
/// cells of `x` onto those of `y` commuting with every facet map.
inline bool is_isomorphism(const DeltaComplex& x, const DeltaComplex& y,
                           const std::map<std::string, std::string>& cell_map) {
  if (f_vector(x) != f_vector(y) || cell_map.size() != x.total_cells()) return false;
  std::vector<std::vector<std::size_t>> image(static_cast<std::size_t>(x.dimension() + 1));
  std::vector<std::vector<bool>> hit(static_cast<std::size_t>(y.dimension() + 1));
  for (int d = 0; d <= x.dimension(); ++d) {
    image[static_cast<std::size_t>(d)].resize(x.num_cells(d));
    hit[static_cast<std::size_t>(d)].assign(y.num_cells(d), false);
  }
  for (const auto& c : x.all_cells()) {
    auto it = cell_map.find(x.id(c));
    if (it == cell_map.end()) return false;
    auto target = y.find(it->second);
    if (!target || target->dim != c.dim || hit[static_cast<std::size_t>(c.dim)][target->index]) return false;
    hit[static_cast<std::size_t>(c.dim)][target->index] = true;
    image[static_cast<std::size_t>(c.dim)][c.index] = target->index;
  }
  for (const auto& c : x.all_cells()) {
    const auto target = CellRef{c.dim, image[static_cast<std::size_t>(c.dim)][c.index]};
    const auto fx = x.facets(c);
    const auto fy = y.facets(target);
    for (std::size_t i = 0; i < fx.size(); ++i)
      if (image[static_cast<std::size_t>(c.dim - 1)][fx[i]] != fy[i]) return false;
  }
  return true;
}

/// Cell map induced by a vertex relabeling between two complexes whose cells
/// are determined by their ordered vertex tuples. Absent when some cell of
/// `x` has no counterpart.
inline std::optional<std::map<std::string, std::string>> induced_cell_map(
    const DeltaComplex& x, const DeltaComplex& y, const std::map<std::string, std::string>& vertex_map) {
  std::map<std::pair<int, std::vector<std::string>>, std::string> y_cells;
  for (const auto& c : y.all_cells()) {
    std::vector<std::string> tuple;
    for (auto v : y.vertices(c)) tuple.push_back(y.id({0, v}));
    y_cells.emplace(std::make_pair(c.dim, std::move(tuple)), y.id(c));
  }
  std::map<std::string, std::string> out;
  for (const auto& c : x.all_cells()) {
    std::vector<std::string> tuple;
    for (auto v : x.vertices(c)) {
      auto it = vertex_map.find(x.id({0, v}));
      if (it == vertex_map.end()) return std::nullopt;
      tuple.push_back(it->second);
    }
    auto it = y_cells.find({c.dim, tuple});
    if (it == y_cells.end()) return std::nullopt;
    out.emplace(x.id(c), it->second);
  }
  return out;
}

namespace detail {

inline std::string chain_suffix(const std::vector<unsigned>& chain) {
  std::string out;
  for (auto mask : chain) {
    out += '|';
    bool first = true;
    for (unsigned pos = 0; mask >> pos; ++pos) {
      if (!(mask & (1u << pos))) continue;
      if (!first) out += '.';
      out += std::to_string(pos);
      first = false;
    }
  }
  return out;
}

// Rewrites a subset of positions of a cell as positions within the face
// spanned by `within` (both bit masks; `mask` must be contained in `within`).
inline unsigned relabel_mask(unsigned mask, unsigned within) {
  unsigned out = 0;
  unsigned rank = 0;
  for (unsigned pos = 0; within >> pos; ++pos) {
    if (!(within & (1u << pos))) continue;
    if (mask & (1u << pos)) out |= 1u << rank;
    ++rank;
  }
  return out;
}

}  // namespace detail

/// Id of the subdivision cell (c; chain), where chain lists strictly
/// increasing proper nonempty position subsets of c, as bit masks.
inline std::string subdivision_cell_id(const DeltaComplex& x, CellRef c, const std::vector<unsigned>& chain) {
  return x.id(c) + detail::chain_suffix(chain);
}

/// Strict chains S_0 < ... < S_{k-1} of proper nonempty vertex-position
/// subsets of a d-cell (bit masks), for every k >= 0, including the empty
/// chain. Together with the cell itself each chain is one flag.
inline std::vector<std::vector<unsigned>> subdivision_chains(int d) {
  const unsigned full = (1u << (d + 1)) - 1;
  std::vector<std::vector<unsigned>> out{{}};
  std::vector<std::vector<unsigned>> frontier{{}};
  while (!frontier.empty()) {
    std::vector<std::vector<unsigned>> next;
    for (const auto& chain : frontier) {
      const unsigned top = chain.empty() ? 0 : chain.back();
      for (unsigned s = 1; s < full; ++s) {
        if ((s & top) != top || s == top) continue;
        auto extended = chain;
        extended.push_back(s);
        next.push_back(std::move(extended));
      }
    }
    out.insert(out.end(), next.begin(), next.end());
    frontier = std::move(next);
  }
  return out;
}

/// Barycentric subdivision. The barycenter of a cell keeps the cell's id; the
/// simplex given by a flag S_0 < ... < S_{k-1} < c of faces of c is named
/// "<id of c>|S_0|...|S_{k-1}" with each S_i written as vertex positions of c.
/// Vertices of a subdivided simplex are ordered by increasing face dimension.
inline DeltaComplex barycentric_subdivision(const DeltaComplex& x) {
  std::vector<Cell> raw;
  std::map<int, std::vector<std::vector<unsigned>>> chains_by_dim;
  for (const auto& c : x.all_cells()) {
    auto [it, fresh] = chains_by_dim.try_emplace(c.dim);
    if (fresh) it->second = subdivision_chains(c.dim);
    for (const auto& chain : it->second) {
      if (chain.empty()) {
        raw.push_back({x.id(c), 0, {}, x.label(c)});
        continue;
      }
      const int k = static_cast<int>(chain.size());
      Cell cell{subdivision_cell_id(x, c, chain), k, {}, std::nullopt};
      for (int i = 0; i < k; ++i) {
        auto reduced = chain;
        reduced.erase(reduced.begin() + i);
        cell.facets.push_back(subdivision_cell_id(x, c, reduced));
      }
      // dropping the barycenter of c lands in the face spanned by S_{k-1}
      const unsigned last = chain.back();
      std::vector<unsigned> relabeled;
      for (std::size_t i = 0; i + 1 < chain.size(); ++i) relabeled.push_back(detail::relabel_mask(chain[i], last));
      cell.facets.push_back(subdivision_cell_id(x, x.face_by_mask(c, last), relabeled));
      raw.push_back(std::move(cell));
    }
  }
  return DeltaComplex::build(raw);
}

}  // namespace dualcx
