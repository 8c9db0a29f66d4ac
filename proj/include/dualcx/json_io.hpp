#pragma once

// Interchange JSON for complexes, actions, homology groups, classifications,
// covers and coefficient certificates. Objects keep insertion order so the
// emitted text is deterministic.

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "json.hpp"

#include "dualcx/coefficients.hpp"
#include "dualcx/complex.hpp"
#include "dualcx/double_cover.hpp"
#include "dualcx/errors.hpp"
#include "dualcx/group_action.hpp"
#include "dualcx/homology.hpp"
#include "dualcx/pseudo_manifold.hpp"

namespace dualcx {

using Json = nlohmann::ordered_json;

namespace detail {

[[noreturn]] inline void parse_fail(const std::string& what) { throw Error(ErrorKind::ParseError, what); }

inline const Json& member(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object()) parse_fail(where + ": expected an object");
  auto it = j.find(key);
  if (it == j.end()) parse_fail(where + ": missing \"" + key + "\"");
  return *it;
}

inline std::string string_of(const Json& j, const std::string& where) {
  if (!j.is_string()) parse_fail(where + ": expected a string");
  return j.get<std::string>();
}

}  // namespace detail

inline Json parse_json_text(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::ParseError, e.what());
  }
}

// complexes

inline Json to_json(const DeltaComplex& x) {
  Json cells = Json::array();
  for (const auto& c : x.all_cells()) {
    Json cell{{"id", x.id(c)}, {"dim", c.dim}, {"facets", Json::array()}};
    for (auto f : x.facets(c)) cell["facets"].push_back(x.id({c.dim - 1, f}));
    if (const auto& label = x.label(c)) cell["label"] = *label;
    cells.push_back(std::move(cell));
  }
  return Json{{"cells", std::move(cells)}};
}

/// Raw cells of an interchange document, without validation.
inline std::vector<Cell> cells_from_json(const Json& j) {
  const auto& cells = detail::member(j, "cells", "complex");
  if (!cells.is_array()) detail::parse_fail("complex: \"cells\" must be an array");
  std::vector<Cell> out;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const auto& c = cells[i];
    const std::string where = "cells[" + std::to_string(i) + "]";
    Cell cell;
    cell.id = detail::string_of(detail::member(c, "id", where), where + ".id");
    const auto& dim = detail::member(c, "dim", where);
    if (!dim.is_number_integer()) detail::parse_fail(where + ".dim: expected an integer");
    cell.dim = dim.get<int>();
    const auto& facets = detail::member(c, "facets", where);
    if (!facets.is_array()) detail::parse_fail(where + ".facets: expected an array");
    for (const auto& f : facets) cell.facets.push_back(detail::string_of(f, where + ".facets"));
    if (auto it = c.find("label"); it != c.end() && !it->is_null()) cell.label = detail::string_of(*it, where + ".label");
    out.push_back(std::move(cell));
  }
  return out;
}

inline DeltaComplex complex_from_json(const Json& j) { return DeltaComplex::build(cells_from_json(j)); }

// actions

inline Json to_json(const ActionSpec& spec) {
  Json gens = Json::array();
  for (const auto& g : spec.generators) {
    Json map = Json::object();
    for (const auto& [from, to] : g.map) map[from] = to;
    gens.push_back(Json{{"name", g.name}, {"map", std::move(map)}});
  }
  Json rels = Json::array();
  for (const auto& r : spec.relations) rels.push_back(r);
  return Json{{"generators", std::move(gens)}, {"relations", std::move(rels)}};
}

inline ActionSpec action_from_json(const Json& j) {
  ActionSpec spec;
  const auto& gens = detail::member(j, "generators", "action");
  if (!gens.is_array()) detail::parse_fail("action: \"generators\" must be an array");
  for (std::size_t i = 0; i < gens.size(); ++i) {
    const std::string where = "generators[" + std::to_string(i) + "]";
    ActionSpec::Generator g;
    g.name = detail::string_of(detail::member(gens[i], "name", where), where + ".name");
    const auto& map = detail::member(gens[i], "map", where);
    if (!map.is_object()) detail::parse_fail(where + ".map: expected an object");
    for (const auto& [from, to] : map.items()) g.map[from] = detail::string_of(to, where + ".map");
    spec.generators.push_back(std::move(g));
  }
  if (auto it = j.find("relations"); it != j.end()) {
    if (!it->is_array()) detail::parse_fail("action: \"relations\" must be an array");
    for (const auto& word : *it) {
      if (!word.is_array()) detail::parse_fail("action: each relation must be an array of generator names");
      std::vector<std::string> letters;
      for (const auto& l : word) letters.push_back(detail::string_of(l, "relation"));
      spec.relations.push_back(std::move(letters));
    }
  }
  return spec;
}

// invariants

inline Json big_to_json(const BigInt& v) {
  if (v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max())
    return static_cast<std::int64_t>(v);
  return v.str();
}

inline Json to_json(const HomologyGroup& g) {
  Json j;
  switch (g.coefficients.ring()) {
    case Ring::Integers: j["ring"] = "Z"; break;
    case Ring::Rationals: j["ring"] = "Q"; break;
    case Ring::PrimeField:
      j["ring"] = "Fp";
      j["p"] = g.coefficients.characteristic();
      break;
  }
  j["free_rank"] = g.free_rank;
  j["torsion"] = Json::array();
  for (const auto& t : g.torsion) j["torsion"].push_back(big_to_json(t));
  return j;
}

inline Json ids_to_json(const DeltaComplex& x, const std::vector<CellRef>& cells) {
  Json out = Json::array();
  for (const auto& c : cells) out.push_back(x.id(c));
  return out;
}

inline Json to_json(const DeltaComplex& x, const PMClassification& c) {
  Json j{{"verdict", std::string(to_string(c.verdict))},
         {"dimension", c.dimension},
         {"witness", ids_to_json(x, c.witness)},
         {"boundary", ids_to_json(x, c.boundary_cells)}};
  if (c.orientable) {
    j["orientable"] = *c.orientable;
    j["index"] = *c.orientable ? 1 : 2;
  }
  return j;
}

inline Json cell_map_to_json(const CellMap& map, const DeltaComplex& source, const DeltaComplex& target) {
  Json j = Json::object();
  for (const auto& [from, to] : map.to_id_map(source, target)) j[from] = to;
  return j;
}

inline Json to_json(const DoubleCover& cover) {
  return Json{{"total", to_json(cover.total)},
              {"projection", cell_map_to_json(cover.projection, cover.total, cover.base)},
              {"deck", cell_map_to_json(cover.deck, cover.total, cover.total)},
              {"branch_cells", ids_to_json(cover.base, cover.branch_cells)}};
}

// coefficients

inline Json to_json(const MembershipCertificate& c) {
  Json terms = Json::array();
  for (const auto& t : c.terms) terms.push_back(Json::array({to_string(t.lambda), t.multiplicity}));
  return Json{{"value", to_string(c.value)},
              {"certificate", Json{{"m", c.m}, {"m0", c.m0}, {"terms", std::move(terms)}}}};
}

inline MembershipCertificate certificate_from_json(const Json& j, const Rational& r) {
  MembershipCertificate c;
  c.r = r;
  try {
    c.value = parse_rational(detail::string_of(detail::member(j, "value", "certificate"), "value"));
    const auto& body = detail::member(j, "certificate", "certificate");
    c.m = detail::member(body, "m", "certificate").get<std::int64_t>();
    c.m0 = detail::member(body, "m0", "certificate").get<std::int64_t>();
    for (const auto& t : detail::member(body, "terms", "certificate")) {
      if (!t.is_array() || t.size() != 2) detail::parse_fail("certificate term must be [lambda, multiplicity]");
      c.terms.push_back({parse_rational(detail::string_of(t[0], "term")), t[1].get<std::int64_t>()});
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::ParseError, e.what());
  }
  return c;
}

inline Json to_json(const P1Boundary& b) {
  Json points = Json::array();
  for (const auto& p : b.points) {
    const char* role = p.role == PointRole::Q ? "q" : p.role == PointRole::P ? "p" : "other";
    Json pt = to_json(p.certificate);
    pt["role"] = role;
    points.push_back(std::move(pt));
  }
  return Json{{"degree", to_string(b.degree())}, {"points", std::move(points)}};
}

}  // namespace dualcx
