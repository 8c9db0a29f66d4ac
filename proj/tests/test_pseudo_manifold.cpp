#include <random>

#include <boost/pending/disjoint_sets.hpp>
#include <catch2/catch_amalgamated.hpp>

#include "dualcx/dualcx.hpp"
#include "oracles/oracles.hpp"
#include "support.hpp"

using namespace dualcx;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::AssertionFailure;
}

// Closed surface from k triangles whose 3k edge slots are paired at random.
// Gluings are forced to respect vertex order, as in any Delta-complex.
DeltaComplex random_surface(std::size_t k, std::mt19937_64& rng) {
  std::vector<std::size_t> slots(3 * k);
  for (std::size_t i = 0; i < slots.size(); ++i) slots[i] = i;
  std::shuffle(slots.begin(), slots.end(), rng);
  std::vector<std::size_t> edge_of(3 * k);
  boost::disjoint_sets_with_storage<> verts(3 * k);
  // slot i of triangle t spans the vertices other than i, in order
  auto ends = [](std::size_t slot) {
    const std::size_t t = slot / 3, i = slot % 3;
    const std::size_t a = i == 0 ? 1 : 0, b = i == 2 ? 1 : 2;
    return std::make_pair(3 * t + a, 3 * t + b);
  };
  for (std::size_t e = 0; e < slots.size(); e += 2) {
    edge_of[slots[e]] = edge_of[slots[e + 1]] = e / 2;
    const auto [a0, b0] = ends(slots[e]);
    const auto [a1, b1] = ends(slots[e + 1]);
    verts.union_set(a0, a1);
    verts.union_set(b0, b1);
  }
  std::vector<Cell> cells;
  std::set<std::size_t> roots;
  for (std::size_t v = 0; v < 3 * k; ++v) roots.insert(verts.find_set(v));
  for (auto r : roots) cells.push_back({"v" + std::to_string(r), 0, {}, {}});
  std::vector<bool> made(slots.size() / 2, false);
  for (std::size_t s = 0; s < 3 * k; ++s) {
    const auto e = edge_of[s];
    if (made[e]) continue;
    made[e] = true;
    const auto [a, b] = ends(s);
    cells.push_back({"e" + std::to_string(e), 1,
                     {"v" + std::to_string(verts.find_set(b)), "v" + std::to_string(verts.find_set(a))}, {}});
  }
  for (std::size_t t = 0; t < k; ++t)
    cells.push_back({"t" + std::to_string(t), 2,
                     {"e" + std::to_string(edge_of[3 * t]), "e" + std::to_string(edge_of[3 * t + 1]),
                      "e" + std::to_string(edge_of[3 * t + 2])},
                     {}});
  return DeltaComplex::build(cells);
}

DeltaComplex two_triangles_at_a_vertex() {
  const std::vector<Cell> cells{
      {"a", 0, {}, {}},          {"b", 0, {}, {}},          {"c", 0, {}, {}},          {"d", 0, {}, {}},
      {"e", 0, {}, {}},          {"ab", 1, {"b", "a"}, {}}, {"ac", 1, {"c", "a"}, {}}, {"bc", 1, {"c", "b"}, {}},
      {"ad", 1, {"d", "a"}, {}}, {"ae", 1, {"e", "a"}, {}}, {"de", 1, {"e", "d"}, {}},
      {"abc", 2, {"bc", "ac", "ab"}, {}}, {"ade", 2, {"de", "ae", "ad"}, {}}};
  return DeltaComplex::build(cells);
}

DeltaComplex three_triangles_on_an_edge() {
  std::vector<Cell> cells{{"a", 0, {}, {}}, {"b", 0, {}, {}}, {"ab", 1, {"b", "a"}, {}}};
  for (std::string apex : {"c", "d", "e"}) {
    cells.push_back({apex, 0, {}, {}});
    cells.push_back({"a" + apex, 1, {apex, "a"}, {}});
    cells.push_back({"b" + apex, 1, {apex, "b"}, {}});
    cells.push_back({"ab" + apex, 2, {"b" + apex, "a" + apex, "ab"}, {}});
  }
  return DeltaComplex::build(cells);
}

}  // namespace

TEST_CASE("pseudo-manifold verdicts", "[pseudo_manifold]") {
  SECTION("a single triangle has three boundary edges") {
    const auto c = classify(test_support::filled_triangle());
    CHECK(c.verdict == Verdict::PseudoManifoldWithBoundary);
    CHECK(c.boundary_cells.size() == 3);
    CHECK_FALSE(c.orientable.has_value());
  }
  SECTION("two triangles meeting at a vertex") {
    const auto c = classify(two_triangles_at_a_vertex());
    CHECK(c.verdict == Verdict::NotStronglyConnected);
    CHECK_FALSE(c.witness.empty());
  }
  SECTION("three triangles on one edge") {
    const auto x = three_triangles_on_an_edge();
    const auto c = classify(x);
    CHECK(c.verdict == Verdict::Branching);
    REQUIRE(c.witness.size() == 1);
    CHECK(x.id(c.witness.front()) == "ab");
  }
  SECTION("a triangle with a dangling edge is not pure") {
    auto cells = test_support::filled_triangle().cells();
    cells.push_back({"z", 0, {}, {}});
    cells.push_back({"az", 1, {"z", "a"}, {}});
    const auto x = DeltaComplex::build(cells);
    const auto c = classify(x);
    CHECK(c.verdict == Verdict::NotPure);
    REQUIRE(c.witness.size() == 2);
  }
  SECTION("closed examples") {
    CHECK(classify(hyperoctahedron(3)).orientable == std::optional<bool>(true));
    CHECK(classify(rp2()).orientable == std::optional<bool>(false));
    CHECK(classify(minimal_circle()).is_closed());
    CHECK(classify(suspension(rp2())).orientable == std::optional<bool>(false));
  }
  SECTION("errors") {
    CHECK(kind_of([] { classify(DeltaComplex{}); }) == ErrorKind::EmptyComplex);
    CHECK(kind_of([] { classify(hyperoctahedron(1)); }) == ErrorKind::NotConnected);
    CHECK(kind_of([] { is_orientable(test_support::filled_triangle()); }) == ErrorKind::NotClosedPseudoManifold);
    CHECK(kind_of([] { orientation_assignment(three_triangles_on_an_edge()); }) == ErrorKind::NotPseudoManifold);
  }
}

TEST_CASE("orientability agrees with exhaustive sign search", "[pseudo_manifold][property]") {
  for (const auto& [name, x] : test_support::corpus()) {
    if (connected_components(x).size() != 1) continue;
    const auto c = classify(x);
    if (!c.is_closed()) continue;
    const auto tops = x.num_cells(x.dimension());
    if (tops > 20) continue;
    INFO(name);
    CHECK(*c.orientable == oracle::brute_force_orientable(tops, test_support::incidence_lists(x)));
    CHECK(orientability_criteria(x).agree());
    if (const auto a = orientation_assignment(x)) {
      CHECK(satisfies_cancellation(x, *a));
      CHECK(a->signs.front() == 1);
    }
  }
}

TEST_CASE("random closed surfaces", "[pseudo_manifold][property]") {
  std::mt19937_64 rng(7177);
  std::size_t checked = 0;
  for (int trial = 0; trial < 150; ++trial) {
    const std::size_t k = 2 * (1 + trial % 6);
    const auto x = random_surface(k, rng);
    if (connected_components(x).size() != 1) continue;
    ++checked;
    INFO("trial " << trial);
    const auto c = classify(x);
    REQUIRE(c.verdict == Verdict::ClosedPseudoManifold);
    const bool expected = oracle::brute_force_orientable(k, test_support::incidence_lists(x));
    CHECK(*c.orientable == expected);
    CHECK(orientability_criteria(x).agree());
    CHECK(index_of_pair(x) == (expected ? 1 : 2));
    CHECK((homology(x, 2, Coefficients::integers()).free_rank == 1) == expected);
    CHECK(homology(x, 2, Coefficients::prime_field(2)).free_rank == 1);

    const auto cover = orientation_double_cover(x);
    CHECK(connected_components(cover.total).size() == (expected ? 2u : 1u));
    for (const auto& comp : connected_components(cover.total)) CHECK(is_orientable(subcomplex(cover.total, comp)));
  }
  CHECK(checked > 50);
}

TEST_CASE("pseudo-manifolds with boundary have vanishing top homology", "[pseudo_manifold]") {
  for (const auto& x : {test_support::filled_triangle(), cone(hyperoctahedron(3)), cone(rp2())}) {
    CHECK(classify(x).verdict == Verdict::PseudoManifoldWithBoundary);
    CHECK(homology(x, x.dimension(), Coefficients::integers()).is_zero());
  }
}

TEST_CASE("index of the pair and the coregularity check", "[pseudo_manifold]") {
  CHECK(index_of_pair(hyperoctahedron(3)) == 1);
  CHECK(index_of_pair(rp2()) == 2);
  CHECK(index_of_pair(antipodal_quotient(4)) == 1);
  CHECK(index_of_pair(antipodal_quotient(5)) == 2);
  CHECK(coregularity_zero_check(hyperoctahedron(3), 3));
  CHECK_FALSE(coregularity_zero_check(hyperoctahedron(3), 4));
  CHECK_THROWS_AS(index_of_pair(test_support::filled_triangle()), Error);
}

TEST_CASE("orientation double cover", "[double_cover]") {
  SECTION("orientable base splits into two sheets") {
    const auto cover = orientation_double_cover(hyperoctahedron(3));
    CHECK(connected_components(cover.total).size() == 2);
    CHECK(cover.branch_cells.empty());
    CHECK(euler_characteristic(cover.total) == 4);
  }
  SECTION("projective plane lifts to a sphere") {
    const auto cover = orientation_double_cover(rp2());
    CHECK(connected_components(cover.total).size() == 1);
    CHECK(euler_characteristic(cover.total) == 2);
    CHECK(is_orientable(cover.total));
    CHECK(f_vector(cover.total) == std::vector<std::size_t>{6, 12, 8});
  }
  SECTION("suspended projective plane has two branch points") {
    const auto base = suspension(rp2());
    const auto cover = orientation_double_cover(base);
    CHECK(euler_characteristic(cover.total) == 0);
    CHECK(is_orientable(cover.total));
    std::vector<std::string> branch;
    for (auto c : cover.branch_cells) branch.push_back(base.id(c));
    CHECK(branch == std::vector<std::string>{"p", "q"});
  }
  SECTION("requires a closed pseudo-manifold") {
    CHECK(kind_of([] { orientation_double_cover(test_support::filled_triangle()); }) ==
          ErrorKind::NotClosedPseudoManifold);
    CHECK(kind_of([] { orientation_double_cover(DeltaComplex{}); }) == ErrorKind::NotClosedPseudoManifold);
  }
}

TEST_CASE("double cover structure maps", "[double_cover][property]") {
  for (const auto& [name, x] : test_support::corpus()) {
    if (connected_components(x).size() != 1 || !classify(x).is_closed()) continue;
    INFO(name);
    const auto cover = orientation_double_cover(x);
    const auto& total = cover.total;
    std::vector<bool> covered(x.total_cells(), false);
    for (const auto& c : total.all_cells()) {
      const auto d = cover.deck(c);
      CHECK(cover.deck(d) == c);
      CHECK(cover.projection(d) == cover.projection(c));
      CHECK(cover.projection(c).dim == c.dim);
      covered[x.flat_index(cover.projection(c))] = true;
      // projection commutes with facets
      const auto fs = total.facets(c);
      for (std::size_t i = 0; i < fs.size(); ++i)
        CHECK(cover.projection({c.dim - 1, fs[i]}) == x.facet(cover.projection(c), i));
    }
    CHECK(std::all_of(covered.begin(), covered.end(), [](bool b) { return b; }));

    const auto fibers = cover.fiber_sizes();
    std::size_t branch = 0;
    for (const auto& c : x.all_cells()) {
      const auto s = fibers[x.flat_index(c)];
      CHECK((s == 1 || s == 2 || c.dim < x.dimension() - 1));
      if (s == 1) ++branch;
    }
    CHECK(branch == cover.branch_cells.size());
    const auto top = x.dimension();
    for (std::size_t t = 0; t < x.num_cells(top); ++t) CHECK(fibers[x.flat_index({top, t})] == 2);
    for (const auto& comp : connected_components(total)) CHECK(is_orientable(subcomplex(total, comp)));
    if (cover.branch_cells.empty()) CHECK(euler_characteristic(total) == 2 * euler_characteristic(x));
  }
}

TEST_CASE("cross-polytope constructor", "[constructors]") {
  for (int n = 1; n <= 6; ++n) {
    const auto x = hyperoctahedron(n);
    std::vector<std::int64_t> f;
    for (auto v : f_vector(x)) f.push_back(static_cast<std::int64_t>(v));
    CHECK(f == oracle::cross_polytope_f_vector(n));
    CHECK(euler_characteristic(x) == 1 + (n % 2 == 1 ? 1 : -1));
    CHECK(x.regular());
  }
  CHECK(f_vector(hyperoctahedron(3)) == std::vector<std::size_t>{6, 12, 8});
  CHECK(kind_of([] { hyperoctahedron(0); }) == ErrorKind::BadParams);
  CHECK(kind_of([] { hyperoctahedron(13); }) == ErrorKind::BadParams);
}

TEST_CASE("suspension of a cross-polytope is the next cross-polytope", "[constructors]") {
  for (int n = 1; n <= 5; ++n) {
    INFO("n = " << n);
    const auto x = hyperoctahedron(n);
    const auto s = suspension(x);
    const auto y = hyperoctahedron(n + 1);
    std::map<std::string, std::string> vertices;
    for (std::size_t v = 0; v < x.num_cells(0); ++v) vertices[x.id({0, v})] = x.id({0, v});
    vertices["p"] = "+e" + std::to_string(n + 1);
    vertices["q"] = "-e" + std::to_string(n + 1);
    const auto cells = induced_cell_map(s, y, vertices);
    REQUIRE(cells.has_value());
    CHECK(is_isomorphism(s, y, *cells));
    CHECK(cells->at("+e1*p") == "+e1,+e" + std::to_string(n + 1));
  }
}

TEST_CASE("simplex boundaries are orientable spheres", "[constructors]") {
  for (int m = 2; m <= 7; ++m) {
    INFO("m = " << m);
    const auto x = simplex_boundary(m);
    CHECK(x.dimension() == m - 2);
    CHECK(euler_characteristic(x) == 1 + (m % 2 == 0 ? 1 : -1));
    for (int k = 0; k <= x.dimension(); ++k)
      CHECK(x.num_cells(k) == static_cast<std::size_t>(oracle::binomial(m, k + 1)));
    if (m > 2) CHECK(is_orientable(x));
  }
  CHECK(kind_of([] { simplex_boundary(1); }) == ErrorKind::BadParams);
  CHECK(kind_of([] { simplex_boundary(17); }) == ErrorKind::BadParams);
}

TEST_CASE("cones and suspensions", "[constructors]") {
  const auto s0 = hyperoctahedron(1);
  const auto square = suspension(s0);
  CHECK(f_vector(square) == std::vector<std::size_t>{4, 4});
  CHECK(is_orientable(square));

  const auto srp2 = suspension(rp2());
  CHECK(f_vector(srp2) == std::vector<std::size_t>{5, 12, 16, 8});
  CHECK(euler_characteristic(srp2) == 1);

  const auto c = cone(hyperoctahedron(2));
  CHECK(f_vector(c) == std::vector<std::size_t>{5, 8, 4});
  CHECK(c.find("p"));

  // apex names stay fresh
  const auto cc = cone(c);
  CHECK(cc.find("p'"));
  const auto sc = suspension(c);
  CHECK(sc.find("p'"));
  CHECK(sc.find("q"));
  CHECK(kind_of([] { suspension(DeltaComplex{}); }) == ErrorKind::EmptyComplex);
}

TEST_CASE("named actions and quotients", "[constructors]") {
  CHECK(antipodal_action(3).order() == 2);
  CHECK(cyclic_permutation_action(5).order() == 5);
  CHECK(f_vector(rp2()) == std::vector<std::size_t>{3, 6, 4});
  CHECK(f_vector(minimal_circle()) == std::vector<std::size_t>{1, 1});
  CHECK(kind_of([] { antipodal_action(1); }) == ErrorKind::BadParams);
  CHECK(kind_of([] { cyclic_permutation_action(2); }) == ErrorKind::BadParams);
}
