#pragma once

// Finite groups acting on Delta-complexes by cell permutations.
//
// A generator is declared as an id -> id map on cells. Each cell c is sent to
// g(c) together with a vertex permutation p_c: vertex j of c goes to vertex
// p_c[j] of g(c), so facet j of c goes to facet p_c[j] of g(c). The
// permutations are derived from the facet structure when the action is built.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include <boost/pending/disjoint_sets.hpp>

#include "dualcx/complex.hpp"
#include "dualcx/errors.hpp"
#include "dualcx/pseudo_manifold.hpp"

namespace dualcx {

using Permutation = std::vector<std::uint8_t>;

inline int permutation_sign(const Permutation& p) {
  int inversions = 0;
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = i + 1; j < p.size(); ++j)
      if (p[i] > p[j]) ++inversions;
  return inversions % 2 == 0 ? 1 : -1;
}

inline bool is_identity(const Permutation& p) {
  for (std::size_t i = 0; i < p.size(); ++i)
    if (p[i] != i) return false;
  return true;
}

/// Dimension-preserving cell map with per-cell vertex permutations. Source
/// and target complexes are held by whoever owns the map.
class CellMap {
 public:
  CellMap() = default;

  static CellMap identity(const DeltaComplex& x) {
    CellMap m;
    m.image_.resize(static_cast<std::size_t>(x.dimension() + 1));
    m.perm_.resize(m.image_.size());
    for (int d = 0; d <= x.dimension(); ++d) {
      auto& img = m.image_[static_cast<std::size_t>(d)];
      img.resize(x.num_cells(d));
      for (std::size_t i = 0; i < img.size(); ++i) img[i] = i;
      m.perm_[static_cast<std::size_t>(d)].assign(img.size(), identity_permutation(d));
    }
    return m;
  }

  /// Shapes a map for `x` with every image unset; fill with set().
  static CellMap shaped_like(const DeltaComplex& x) {
    CellMap m;
    m.image_.resize(static_cast<std::size_t>(x.dimension() + 1));
    m.perm_.resize(m.image_.size());
    for (int d = 0; d <= x.dimension(); ++d) {
      m.image_[static_cast<std::size_t>(d)].assign(x.num_cells(d), 0);
      m.perm_[static_cast<std::size_t>(d)].assign(x.num_cells(d), identity_permutation(d));
    }
    return m;
  }

  void set_image(CellRef c, std::size_t target) { image_.at(static_cast<std::size_t>(c.dim)).at(c.index) = target; }

  void set(CellRef c, std::size_t target, Permutation p) {
    image_.at(static_cast<std::size_t>(c.dim)).at(c.index) = target;
    perm_[static_cast<std::size_t>(c.dim)][c.index] = std::move(p);
  }

  CellRef operator()(CellRef c) const { return {c.dim, image_.at(static_cast<std::size_t>(c.dim)).at(c.index)}; }

  const Permutation& permutation(CellRef c) const {
    return perm_.at(static_cast<std::size_t>(c.dim)).at(c.index);
  }

  /// Every cell keeps its vertex order (a genuine Delta-map).
  bool preserves_order() const {
    for (const auto& level : perm_)
      for (const auto& p : level)
        if (!is_identity(p)) return false;
    return true;
  }

  bool is_identity_map() const {
    for (const auto& level : image_)
      for (std::size_t i = 0; i < level.size(); ++i)
        if (level[i] != i) return false;
    return preserves_order();
  }

  /// this after `first`: c -> this(first(c)).
  CellMap after(const CellMap& first) const {
    CellMap out = first;
    for (std::size_t d = 0; d < first.image_.size(); ++d)
      for (std::size_t i = 0; i < first.image_[d].size(); ++i) {
        const auto mid = first.image_[d][i];
        out.image_[d][i] = image_[d][mid];
        const auto& p1 = first.perm_[d][i];
        const auto& p2 = perm_[d][mid];
        for (std::size_t j = 0; j < p1.size(); ++j) out.perm_[d][i][j] = p2[p1[j]];
      }
    return out;
  }

  std::map<std::string, std::string> to_id_map(const DeltaComplex& source, const DeltaComplex& target) const {
    std::map<std::string, std::string> out;
    for (const auto& c : source.all_cells()) out.emplace(source.id(c), target.id((*this)(c)));
    return out;
  }

  /// Flat encoding, used to recognise equal group elements.
  std::vector<std::uint32_t> key() const {
    std::vector<std::uint32_t> out;
    for (std::size_t d = 0; d < image_.size(); ++d)
      for (std::size_t i = 0; i < image_[d].size(); ++i) {
        out.push_back(static_cast<std::uint32_t>(image_[d][i]));
        for (auto v : perm_[d][i]) out.push_back(v);
      }
    return out;
  }

  friend bool operator==(const CellMap&, const CellMap&) = default;

 private:
  static Permutation identity_permutation(int d) {
    Permutation p(static_cast<std::size_t>(d + 1));
    for (std::size_t j = 0; j < p.size(); ++j) p[j] = static_cast<std::uint8_t>(j);
    return p;
  }

  std::vector<std::vector<std::size_t>> image_;
  std::vector<std::vector<Permutation>> perm_;
};

/// An action as declared in interchange: generators as id -> id maps plus
/// relation words. A word [a, b, c] denotes a(b(c(x))).
struct ActionSpec {
  struct Generator {
    std::string name;
    std::map<std::string, std::string> map;
  };
  std::vector<Generator> generators;
  std::vector<std::vector<std::string>> relations;
};

inline constexpr std::size_t kDefaultClosureBound = 1u << 16;

namespace detail {

struct PermutationSearch {
  const DeltaComplex& x;
  const CellMap& partial;  // images for every dimension, perms for dims < c.dim
  CellRef source;
  CellRef target;
  std::vector<std::vector<std::uint8_t>> candidates;
  Permutation chosen;
  std::vector<bool> used;

  // The facet perm induced on facet i must match the perm already derived
  // for that facet cell.
  bool consistent() const {
    const auto k = chosen.size();
    for (std::size_t i = 0; i < k; ++i) {
      if (source.dim == 1) break;
      const auto& fp = partial.permutation(x.facet(source, i));
      for (std::size_t j = 0; j < k; ++j) {
        if (j == i) continue;
        const std::size_t rank = j < i ? j : j - 1;
        const std::size_t expected = chosen[j] < chosen[i] ? chosen[j] : chosen[j] - 1u;
        if (fp[rank] != expected) return false;
      }
    }
    return true;
  }

  bool search(std::size_t i) {
    if (i == chosen.size()) return consistent();
    for (auto c : candidates[i]) {
      if (used[c]) continue;
      used[c] = true;
      chosen[i] = c;
      if (search(i + 1)) return true;
      used[c] = false;
    }
    return false;
  }
};

inline std::optional<Permutation> derive_permutation(const DeltaComplex& x, const CellMap& partial, CellRef c) {
  const CellRef target = partial(c);
  const std::size_t k = static_cast<std::size_t>(c.dim) + 1;
  PermutationSearch s{x, partial, c, target, std::vector<std::vector<std::uint8_t>>(k), Permutation(k, 0),
                      std::vector<bool>(k, false)};
  for (std::size_t i = 0; i < k; ++i) {
    const auto img = partial(x.facet(c, i));
    for (std::size_t j = 0; j < k; ++j)
      if (x.facet(target, j) == img) s.candidates[i].push_back(static_cast<std::uint8_t>(j));
  }
  if (!s.search(0)) return std::nullopt;
  return s.chosen;
}

// Resolves one declared generator; records violations instead of throwing.
inline std::optional<CellMap> resolve_generator(const DeltaComplex& x, const ActionSpec::Generator& gen,
                                                ValidationReport& report) {
  CellMap map = CellMap::shaped_like(x);
  bool ok = true;
  std::vector<std::vector<bool>> hit(static_cast<std::size_t>(x.dimension() + 1));
  for (int d = 0; d <= x.dimension(); ++d) hit[static_cast<std::size_t>(d)].assign(x.num_cells(d), false);

  for (const auto& [from, to] : gen.map)
    if (!x.find(from)) {
      report.add(from, "NotBijective", "generator '" + gen.name + "' maps unknown cell '" + from + "'");
      ok = false;
    }
  for (const auto& c : x.all_cells()) {
    auto it = gen.map.find(x.id(c));
    if (it == gen.map.end()) {
      report.add(x.id(c), "NotBijective", "generator '" + gen.name + "' does not map this cell");
      ok = false;
      continue;
    }
    auto target = x.find(it->second);
    if (!target) {
      report.add(x.id(c), "NotBijective", "generator '" + gen.name + "' targets unknown cell '" + it->second + "'");
      ok = false;
      continue;
    }
    if (target->dim != c.dim) {
      report.add(x.id(c), "NotBijective",
                 "generator '" + gen.name + "' sends a " + std::to_string(c.dim) + "-cell to a " +
                     std::to_string(target->dim) + "-cell");
      ok = false;
      continue;
    }
    auto&& seen = hit[static_cast<std::size_t>(c.dim)][target->index];
    if (seen) {
      report.add(x.id(c), "NotBijective", "generator '" + gen.name + "' is not injective at '" + it->second + "'");
      ok = false;
    }
    seen = true;
    map.set(c, target->index, Permutation{});
  }
  if (!ok) return std::nullopt;

  // cells of one dimension need the permutations of the dimension below
  for (int d = 0; d <= x.dimension(); ++d) {
    for (std::size_t i = 0; i < x.num_cells(d); ++i) {
      const CellRef c{d, i};
      if (d == 0) {
        map.set(c, map(c).index, Permutation{0});
        continue;
      }
      auto p = derive_permutation(x, map, c);
      if (!p) {
        report.add(x.id(c), "FacetIncompatible",
                   "generator '" + gen.name + "' does not carry the facets of this cell onto those of '" +
                       x.id(map(c)) + "'");
        ok = false;
        continue;
      }
      map.set(c, map(c).index, std::move(*p));
    }
    if (!ok) return std::nullopt;
  }
  return map;
}

}  // namespace detail

class SimplicialAction {
 public:
  /// Validates `spec` on `x` and computes the generated group; throws
  /// ValidationError with the full report when anything fails.
  static SimplicialAction create(const DeltaComplex& x, ActionSpec spec,
                                 std::size_t closure_bound = kDefaultClosureBound) {
    SimplicialAction action;
    auto report = action.assemble(x, std::move(spec), closure_bound);
    if (!report.ok()) throw ValidationError(std::move(report));
    return action;
  }

  const DeltaComplex& complex() const { return complex_; }
  const ActionSpec& spec() const { return spec_; }
  std::size_t num_generators() const { return generators_.size(); }
  const std::string& generator_name(std::size_t i) const { return spec_.generators.at(i).name; }
  const CellMap& generator(std::size_t i) const { return generators_.at(i); }
  std::size_t order() const { return elements_.size(); }

  /// Group elements, identity first, in breadth-first discovery order.
  const std::vector<CellMap>& elements() const { return elements_; }

  /// Every element keeps vertex order, so orbits glue with matching facets.
  bool is_regular() const {
    return std::all_of(generators_.begin(), generators_.end(), [](const CellMap& g) { return g.preserves_order(); });
  }

  /// Element denoted by a word of generator names.
  CellMap word(const std::vector<std::string>& letters) const {
    CellMap out = CellMap::identity(complex_);
    for (auto it = letters.rbegin(); it != letters.rend(); ++it) out = generator(index_of(*it)).after(out);
    return out;
  }

  std::size_t index_of(const std::string& name) const {
    for (std::size_t i = 0; i < spec_.generators.size(); ++i)
      if (spec_.generators[i].name == name) return i;
    throw Error(ErrorKind::BadParams, "unknown generator '" + name + "'");
  }

 private:
  friend ValidationReport validate_action(const DeltaComplex&, const ActionSpec&, std::size_t);

  ValidationReport assemble(const DeltaComplex& x, ActionSpec spec, std::size_t closure_bound) {
    ValidationReport report;
    complex_ = x;
    spec_ = std::move(spec);
    std::set<std::string> names;
    for (const auto& gen : spec_.generators) {
      if (!names.insert(gen.name).second)
        report.add(gen.name, "DuplicateGenerator", "generator name declared twice");
      if (auto m = detail::resolve_generator(x, gen, report)) generators_.push_back(std::move(*m));
    }
    if (!report.ok()) return report;

    for (const auto& rel : spec_.relations) {
      std::string text;
      for (const auto& letter : rel) text += (text.empty() ? "" : " ") + letter;
      bool known = true;
      for (const auto& letter : rel)
        if (!names.count(letter)) {
          report.add(letter, "RelationViolated", "relation '" + text + "' uses an unknown generator");
          known = false;
        }
      if (known && !word(rel).is_identity_map())
        report.add(text, "RelationViolated", "relation '" + text + "' does not act as the identity");
    }

    // closure by breadth-first multiplication with generators
    std::set<std::vector<std::uint32_t>> seen;
    elements_.push_back(CellMap::identity(x));
    seen.insert(elements_.front().key());
    for (std::size_t head = 0; head < elements_.size(); ++head) {
      for (const auto& g : generators_) {
        auto next = g.after(elements_[head]);
        if (seen.insert(next.key()).second) {
          elements_.push_back(std::move(next));
          if (elements_.size() > closure_bound) {
            report.add("*", "InfiniteClosure",
                       "generated group exceeds the closure bound of " + std::to_string(closure_bound));
            return report;
          }
        }
      }
    }
    return report;
  }

  DeltaComplex complex_;
  ActionSpec spec_;
  std::vector<CellMap> generators_;
  std::vector<CellMap> elements_;
};

inline ValidationReport validate_action(const DeltaComplex& x, const ActionSpec& spec,
                                        std::size_t closure_bound = kDefaultClosureBound) {
  SimplicialAction scratch;
  return scratch.assemble(x, spec, closure_bound);
}

/// True iff every group element fixing a cell setwise fixes its vertices.
inline bool stabilizers_fix_pointwise(const SimplicialAction& action) {
  const auto& x = action.complex();
  for (const auto& g : action.elements())
    for (const auto& c : x.all_cells())
      if (g(c) == c && !is_identity(g.permutation(c))) return false;
  return true;
}

/// Whether no non-identity element fixes any cell.
inline bool is_free(const SimplicialAction& action) {
  const auto& x = action.complex();
  for (std::size_t e = 1; e < action.elements().size(); ++e)
    for (const auto& c : x.all_cells())
      if (action.elements()[e](c) == c) return false;
  return true;
}

struct RegularizedAction {
  DeltaComplex complex;
  SimplicialAction action;
  int subdivisions = 0;
};

/// The action induced on the barycentric subdivision: (c; S_0 < ...) goes to
/// (g(c); p_c(S_0) < ...).
inline ActionSpec induced_subdivision_action(const SimplicialAction& action) {
  const auto& x = action.complex();
  ActionSpec out;
  out.relations = action.spec().relations;
  std::map<int, std::vector<std::vector<unsigned>>> chains_by_dim;
  for (std::size_t gi = 0; gi < action.num_generators(); ++gi) {
    const auto& g = action.generator(gi);
    ActionSpec::Generator gen{action.generator_name(gi), {}};
    for (const auto& c : x.all_cells()) {
      auto [it, fresh] = chains_by_dim.try_emplace(c.dim);
      if (fresh) it->second = subdivision_chains(c.dim);
      const auto& p = g.permutation(c);
      for (const auto& chain : it->second) {
        std::vector<unsigned> mapped;
        for (auto mask : chain) {
          unsigned m = 0;
          for (unsigned pos = 0; pos < p.size(); ++pos)
            if (mask & (1u << pos)) m |= 1u << p[pos];
          mapped.push_back(m);
        }
        gen.map.emplace(subdivision_cell_id(x, c, chain), subdivision_cell_id(x, g(c), mapped));
      }
    }
    out.generators.push_back(std::move(gen));
  }
  return out;
}

/// Subdivides until the action keeps vertex order (at most twice).
inline RegularizedAction regularize(const SimplicialAction& action) {
  RegularizedAction out{action.complex(), action, 0};
  while (!out.action.is_regular()) {
    if (out.subdivisions == 2)
      throw Error(ErrorKind::RegularizationFailed, "action still not regular after two subdivisions");
    auto subdivided = barycentric_subdivision(out.complex);
    auto spec = induced_subdivision_action(out.action);
    out.action = SimplicialAction::create(subdivided, std::move(spec));
    out.complex = std::move(subdivided);
    ++out.subdivisions;
  }
  return out;
}

struct QuotientOptions {
  bool regularize = false;
};

struct QuotientResult {
  DeltaComplex source;       // the complex actually divided (subdivided when regularized)
  SimplicialAction action;   // the action on `source`
  int subdivisions = 0;
  DeltaComplex complex;      // orbit complex
  CellMap projection;        // source -> complex
};

/// Orbit complex. Each orbit is named after its smallest cell id and
/// inherits that cell's facet order.
inline QuotientResult quotient(const SimplicialAction& action, QuotientOptions options = {}) {
  RegularizedAction regular{action.complex(), action, 0};
  if (!action.is_regular()) {
    if (!options.regularize)
      throw Error(ErrorKind::NotRegularAction,
                  "action does not preserve vertex order; regularize it first (--regularize)");
    regular = regularize(action);
  }
  const auto& x = regular.complex;
  const auto& act = regular.action;

  std::vector<std::vector<std::size_t>> rep(static_cast<std::size_t>(x.dimension() + 1));
  for (int d = 0; d <= x.dimension(); ++d) {
    const std::size_t n = x.num_cells(d);
    boost::disjoint_sets_with_storage<> sets(n);
    for (std::size_t gi = 0; gi < act.num_generators(); ++gi)
      for (std::size_t i = 0; i < n; ++i) sets.union_set(i, act.generator(gi)({d, i}).index);
    auto& r = rep[static_cast<std::size_t>(d)];
    r.assign(n, n);
    std::vector<std::size_t> smallest(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      auto root = sets.find_set(i);
      if (smallest[root] == n) smallest[root] = i;  // cells are sorted by id
      r[i] = smallest[root];
    }
  }

  std::vector<Cell> raw;
  for (const auto& c : x.all_cells()) {
    if (rep[static_cast<std::size_t>(c.dim)][c.index] != c.index) continue;
    Cell cell{x.id(c), c.dim, {}, x.label(c)};
    for (auto f : x.facets(c)) cell.facets.push_back(x.id({c.dim - 1, rep[static_cast<std::size_t>(c.dim - 1)][f]}));
    raw.push_back(std::move(cell));
  }
  auto orbit_complex = DeltaComplex::build(raw);

  CellMap projection = CellMap::shaped_like(x);
  for (const auto& c : x.all_cells()) {
    const CellRef r{c.dim, rep[static_cast<std::size_t>(c.dim)][c.index]};
    projection.set_image(c, orbit_complex.at(x.id(r)).index);
  }
  return {x, act, regular.subdivisions, std::move(orbit_complex), std::move(projection)};
}

/// Sign by which a cell map acts on the orientation class given by
/// `assignment`: s(g c) * sgn(p_c) * s(c), checked to agree on all top cells.
inline int orientation_sign(const DeltaComplex& x, const OrientationAssignment& assignment, const CellMap& g) {
  const int n = x.dimension();
  std::optional<int> sign;
  for (std::size_t t = 0; t < x.num_cells(n); ++t) {
    const CellRef c{n, t};
    const int s = assignment.signs[g(c).index] * permutation_sign(g.permutation(c)) * assignment.signs[t];
    if (sign && *sign != s)
      throw Error(ErrorKind::CriterionDisagreement, "cell map does not act on the orientation class by a sign");
    sign = s;
  }
  return sign.value_or(1);
}

struct GeneratorCharacter {
  std::string generator;
  int sign = 1;
};

/// +1 for orientation-preserving generators, -1 for reversing ones.
inline std::vector<GeneratorCharacter> orientation_character(const SimplicialAction& action) {
  const auto& x = action.complex();
  const auto cls = classify(x);
  if (!cls.is_closed())
    throw Error(ErrorKind::NotClosedPseudoManifold, "orientation character needs a closed pseudo-manifold");
  if (!*cls.orientable) throw Error(ErrorKind::NotOrientable, "orientation character needs an orientable complex");
  const auto assignment = detail::propagate_signs(x);
  std::vector<GeneratorCharacter> out;
  for (std::size_t i = 0; i < action.num_generators(); ++i)
    out.push_back({action.generator_name(i), orientation_sign(x, *assignment, action.generator(i))});
  return out;
}

}  // namespace dualcx
