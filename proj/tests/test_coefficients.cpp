#include <random>

#include <catch2/catch_amalgamated.hpp>

#include "dualcx/dualcx.hpp"
#include "oracles/oracles.hpp"

using namespace dualcx;

namespace {

Rational q(std::int64_t n, std::int64_t d = 1) { return Rational(n, d); }

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::AssertionFailure;
}

std::vector<Rational> fractions_up_to(std::int64_t bound, Rational lo = q(0), Rational hi = q(1)) {
  std::set<Rational> s;
  for (std::int64_t d = 1; d <= bound; ++d)
    for (std::int64_t n = 0; n <= d; ++n)
      if (Rational(n, d) >= lo && Rational(n, d) <= hi) s.insert(Rational(n, d));
  return {s.begin(), s.end()};
}

}  // namespace

TEST_CASE("rational parsing and printing", "[coefficients]") {
  CHECK(parse_rational("3/6") == q(1, 2));
  CHECK(parse_rational("1") == q(1));
  CHECK(parse_rational("-2/4") == q(-1, 2));
  CHECK(to_string(q(2, 3)) == "2/3");
  CHECK(to_string(q(1)) == "1");
  CHECK(to_string(q(0)) == "0");
  for (const char* bad : {"", "1/0", "a", "1/", "/2", "1/-2", "1.5", "99999999999999999999"})
    CHECK(kind_of([&] { parse_rational(bad); }) == ErrorKind::BadRational);
  CHECK(kind_of([] { CoeffSet{q(3, 2)}; }) == ErrorKind::BadRational);
  CHECK(kind_of([] { checked_lcm(std::int64_t{1} << 40, (std::int64_t{1} << 40) - 1); }) == ErrorKind::Overflow);
}

TEST_CASE("Weil index", "[coefficients]") {
  CHECK(weil_index(CoeffSet{q(1, 2), q(1, 3)}) == 6);
  CHECK(weil_index(CoeffSet{q(1, 4), q(2, 3)}) == 12);
  CHECK(weil_index(CoeffSet{}) == 1);
  CHECK(weil_index(CoeffSet{q(1, 2)}, 3) == 6);
  CHECK(adjunction_bound(3) == 6);
  CHECK(adjunction_bound(4) == 4);
  CHECK(kind_of([] { weil_index(CoeffSet{}, 0); }) == ErrorKind::BadParams);
}

TEST_CASE("membership examples", "[coefficients]") {
  SECTION("standard coefficient with empty Lambda") {
    const auto c = dlambda_member(q(1, 2), CoeffSet{}, q(0));
    REQUIRE(c);
    CHECK(c->m == 2);
    CHECK(c->terms.empty());
    CHECK(c->verifies());
  }
  SECTION("two thirds from one third") {
    const auto c = dlambda_member(q(2, 3), CoeffSet{q(1, 3)}, q(0));
    REQUIRE(c);
    CHECK(c->m == 1);
    CHECK(c->terms == std::vector<Term>{{q(1, 3), 2}});
    CHECK(c->verifies());
  }
  SECTION("one third is not reachable from one half") {
    CHECK_FALSE(dlambda_member(q(1, 3), CoeffSet{q(1, 2)}, q(0)));
  }
  SECTION("r is used at least once") {
    const auto c = dlambda_member(q(1, 2), CoeffSet{}, q(1, 2));
    REQUIRE(c);
    CHECK(c->m0 == 1);
    CHECK(c->m == 1);
    CHECK_FALSE(dlambda_member(q(0), CoeffSet{}, q(1, 2)));
    MemberOptions optional;
    optional.optional_r = true;
    CHECK(dlambda_member(q(0), CoeffSet{}, q(1, 2), optional));
  }
  SECTION("fixed m and m0") {
    MemberOptions opts;
    opts.fixed_m = 2;
    CHECK_FALSE(dlambda_member(q(2, 3), CoeffSet{}, q(0), opts));
    const auto c = dlambda_member(q(3, 4), CoeffSet{q(1, 2)}, q(0), opts);
    REQUIRE(c);
    CHECK(c->m == 2);
    CHECK(c->verifies());
    MemberOptions m0;
    m0.fixed_m0 = 2;
    const auto d = dlambda_member(q(1), CoeffSet{}, q(1, 2), m0);
    REQUIRE(d);
    CHECK(d->m0 == 2);
  }
  SECTION("out of range") {
    CHECK(kind_of([] { dlambda_member(q(3, 2), CoeffSet{}, q(0)); }) == ErrorKind::BadParams);
    CHECK(kind_of([] { dlambda_member(q(1, 2), CoeffSet{}, q(2)); }) == ErrorKind::BadRational);
  }
}

TEST_CASE("enumeration", "[coefficients]") {
  const auto v = values(dlambda_enumerate(CoeffSet{}, q(0), 4));
  CHECK(v == std::vector<Rational>{q(0), q(1, 2), q(2, 3), q(3, 4), q(1)});
  CHECK(kind_of([] { dlambda_enumerate(CoeffSet{q(1, 5)}, q(0), 4); }) == ErrorKind::BoundTooSmall);
  CHECK(kind_of([] { dlambda_enumerate(CoeffSet{}, q(1, 7), 6); }) == ErrorKind::BoundTooSmall);
  CHECK(kind_of([] { dlambda_enumerate(CoeffSet{}, q(0), 0); }) == ErrorKind::BadParams);
  for (const auto& c : dlambda_enumerate(CoeffSet{q(1, 3), q(1, 2)}, q(1, 4), 12)) CHECK(c.verifies());
}

TEST_CASE("standard coefficients always belong", "[coefficients][property]") {
  const std::vector<CoeffSet> sets{CoeffSet{}, CoeffSet{q(1, 2)}, CoeffSet{q(1, 3), q(3, 4)}, CoeffSet{q(0), q(1)}};
  for (const auto& lambda : sets)
    for (std::int64_t m = 1; m <= 20; ++m) {
      const auto c = dlambda_member(q(1) - q(1, m), lambda, q(0));
      REQUIRE(c);
      CHECK(c->verifies());
      if (lambda.empty()) {
        CHECK(c->m == m);
        CHECK(c->terms.empty());
      }
    }
  for (const auto& lambda : sets) {
    CHECK(dlambda_member(q(0), lambda, q(0)));
    CHECK(dlambda_member(q(1), lambda, q(0)));
  }
}

TEST_CASE("membership agrees with exhaustive search", "[coefficients][property]") {
  std::mt19937_64 rng(99991);
  const auto pool = fractions_up_to(6);
  const auto xs = fractions_up_to(9);
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
  std::uniform_int_distribution<int> size(0, 3);
  for (int trial = 0; trial < 60; ++trial) {
    std::vector<Rational> elems;
    for (int i = size(rng); i > 0; --i) elems.push_back(pool[pick(rng)]);
    const CoeffSet lambda(elems);
    const Rational r = trial % 3 == 0 ? q(0) : pool[pick(rng)];
    std::vector<oracle::Q> ol;
    for (const auto& e : lambda.elements()) ol.emplace_back(e.numerator(), e.denominator());
    INFO("trial " << trial << " r " << to_string(r));
    for (const auto& x : xs) {
      const auto c = dlambda_member(x, lambda, r);
      const bool expected = oracle::brute_force_member(oracle::Q(x.numerator(), x.denominator()), ol,
                                                       oracle::Q(r.numerator(), r.denominator()));
      CHECK(c.has_value() == expected);
      if (c) {
        CHECK(c->verifies());
        CHECK(c->value == x);
        if (r > 0) CHECK(c->m0 >= 1);
        for (const auto& t : c->terms) CHECK((t.lambda == q(1) || lambda.contains(t.lambda)));
      }
    }
  }
}

TEST_CASE("membership is monotone in Lambda", "[coefficients][property]") {
  const CoeffSet small{q(1, 3)};
  const CoeffSet large{q(1, 3), q(1, 4), q(1, 2)};
  const auto a = values(dlambda_enumerate(small, q(0), 12));
  const auto b = values(dlambda_enumerate(large, q(0), 12));
  CHECK(std::includes(b.begin(), b.end(), a.begin(), a.end()));
  CHECK(b.size() > a.size());
}

TEST_CASE("degree-two boundaries on the projective line", "[coefficients]") {
  const auto sols = p1_solutions(CoeffSet{}, q(0), 2);
  std::set<std::vector<Rational>> got;
  for (const auto& s : sols) got.insert(s.coefficients());
  CHECK(got == std::set<std::vector<Rational>>{{q(1), q(1)}, {q(1), q(1, 2), q(1, 2)}});

  const CoeffSet lambda{q(1, 3), q(1, 2)};
  const Rational r = q(1, 3);
  std::vector<oracle::Q> ol{oracle::Q(1, 3), oracle::Q(1, 2)};
  for (const auto& s : p1_solutions(lambda, r, 6)) {
    CHECK(s.degree() == q(2));
    REQUIRE(s.points.size() >= 2);
    CHECK(s.points[0].role == PointRole::Q);
    CHECK(s.points[0].coefficient == q(1));
    CHECK(s.p().role == PointRole::P);
    CHECK(oracle::brute_force_member(oracle::Q(s.p().coefficient.numerator(), s.p().coefficient.denominator()), ol,
                                     oracle::Q(1, 3)));
    for (std::size_t i = 2; i < s.points.size(); ++i) {
      const auto& c = s.points[i].coefficient;
      CHECK(oracle::brute_force_member(oracle::Q(c.numerator(), c.denominator()), ol, oracle::Q(0)));
      CHECK(s.points[i].certificate.verifies());
      if (i > 2) CHECK(c <= s.points[i - 1].coefficient);
    }
  }
}

TEST_CASE("coefficients at least one half", "[coefficients]") {
  CHECK(geq_half_classification(CoeffSet{q(1, 2), q(1)}, 12) == std::vector<Rational>{q(1, 2), q(1)});
  CHECK(geq_half_classification(CoeffSet{q(2, 3), q(3, 4)}, 12).empty());
  CHECK(geq_half_classification(CoeffSet{q(1)}, 12) == std::vector<Rational>{q(1)});
  CHECK(kind_of([] { geq_half_classification(CoeffSet{q(1, 3)}, 12); }) == ErrorKind::BadParams);
}

TEST_CASE("realized coefficients at least one half are one half or one", "[coefficients][property]") {
  std::mt19937_64 rng(4242);
  const auto pool = fractions_up_to(8, q(1, 2), q(1));
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
  for (int trial = 0; trial < 25; ++trial) {
    std::vector<Rational> elems;
    for (int i = 0; i < 1 + trial % 4; ++i) elems.push_back(pool[pick(rng)]);
    const CoeffSet lambda(elems);
    std::vector<Rational> expected;
    for (const auto& v : lambda.elements())
      if (v == q(1, 2) || v == q(1)) expected.push_back(v);
    CHECK(geq_half_classification(lambda, 8) == expected);
  }
}

TEST_CASE("adjunction divisibility audit", "[coefficients]") {
  CHECK(adjunction_divisibility_audit(6, q(2, 3), 12));
  CHECK(adjunction_divisibility_audit(4, q(3, 4), 12));
  CHECK(adjunction_divisibility_audit(3, q(1, 2), 12));
  CHECK(adjunction_divisibility_audit(2, q(1, 2), 12));
  CHECK(kind_of([] { adjunction_divisibility_audit(2, q(3, 4), 12); }) == ErrorKind::NoSolutionFound);
  CHECK(kind_of([] { adjunction_divisibility_audit(0, q(1, 2), 12); }) == ErrorKind::BadParams);
  CHECK(kind_of([] { adjunction_divisibility_audit(6, q(1, 3), 12); }) == ErrorKind::BadParams);
  for (std::int64_t lambda = 1; lambda <= 8; ++lambda) {
    for (const auto& c : fractions_up_to(8, q(1, 2), q(1))) {
      bool divides = false;
      try {
        divides = adjunction_divisibility_audit(lambda, c, 8);
      } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NoSolutionFound);
        continue;
      }
      if (c != q(1, 2)) CHECK(divides == (lambda % c.denominator() == 0));
    }
  }
}
