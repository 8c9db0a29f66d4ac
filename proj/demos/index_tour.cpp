// Walks through the standard examples: dual complexes of toric boundaries,
// their antipodal and cyclic quotients, a branched double cover, and the
// coefficient arithmetic that bounds the index.

#include <iostream>
#include <sstream>

#include "dualcx/dualcx.hpp"

using namespace dualcx;

namespace {

std::string join(const std::vector<std::size_t>& v) {
  std::ostringstream o;
  for (std::size_t i = 0; i < v.size(); ++i) o << (i ? "," : "") << v[i];
  return "(" + o.str() + ")";
}

std::string join(const std::vector<Rational>& v) {
  std::string out;
  for (const auto& q : v) out += (out.empty() ? "" : ", ") + to_string(q);
  return "{" + out + "}";
}

std::string describe(const HomologyGroup& g) {
  if (g.is_zero()) return "0";
  std::string out;
  if (g.free_rank) out = g.free_rank == 1 ? "Z" : "Z^" + std::to_string(g.free_rank);
  for (const auto& t : g.torsion) out += (out.empty() ? "" : " + ") + ("Z/" + t.str());
  return out;
}

void summarize(const std::string& name, const DeltaComplex& x) {
  const auto cls = classify(x);
  std::cout << "  " << name << ": f=" << join(f_vector(x)) << " chi=" << euler_characteristic(x) << " H=";
  for (int k = 0; k <= x.dimension(); ++k)
    std::cout << (k ? " | " : "") << describe(homology(x, k, Coefficients::integers()));
  std::cout << "  " << to_string(cls.verdict);
  if (cls.is_closed()) std::cout << (*cls.orientable ? ", orientable, index 1" : ", non-orientable, index 2");
  std::cout << "\n";
}

}  // namespace

int main() {
  std::cout << "Boundaries of cross-polytopes (coordinate hyperplanes of P^1 x ... x P^1)\n";
  for (int n = 2; n <= 4; ++n) summarize("n=" + std::to_string(n), hyperoctahedron(n));

  std::cout << "\nAntipodal quotients (real projective spaces)\n";
  for (int n = 3; n <= 5; ++n) {
    const auto a = antipodal_action(n);
    const auto chi = orientation_character(a);
    std::cout << "  n=" << n << " tau acts by " << chi.front().sign << "\n";
    summarize("quotient", quotient(a).complex);
  }

  std::cout << "\nCyclic permutation of homogeneous coordinates\n";
  for (int m = 3; m <= 4; ++m) {
    const auto a = cyclic_permutation_action(m);
    std::cout << "  m=" << m << " order " << a.order() << ", regular " << std::boolalpha << a.is_regular()
              << ", sigma acts by " << orientation_character(a).front().sign << "\n";
    const auto q = quotient(a, {true});
    summarize("quotient after " + std::to_string(q.subdivisions) + " subdivision", q.complex);
  }

  std::cout << "\nBranched orientation double cover of the suspended projective plane\n";
  const auto base = suspension(rp2());
  summarize("base", base);
  const auto cover = orientation_double_cover(base);
  summarize("cover", cover.total);
  std::cout << "  branch cells:";
  for (auto c : cover.branch_cells) std::cout << " " << base.id(c);
  std::cout << "\n  connected unbranched double cover of the base: " << has_connected_double_cover(base)
            << ", of RP^2: " << has_connected_double_cover(rp2()) << "\n";

  std::cout << "\nCoefficient arithmetic\n";
  const CoeffSet lambda{Rational(1, 2), Rational(2, 3)};
  std::cout << "  Weil index of " << join(lambda.elements()) << ": " << weil_index(lambda)
            << ", index bound lcm(lambda, 2) = " << adjunction_bound(weil_index(lambda)) << "\n";
  std::cout << "  D_Lambda for Lambda = {1/3}, denominators <= 6: "
            << join(values(dlambda_enumerate(CoeffSet{Rational(1, 3)}, Rational(0), 6))) << "\n";
  if (const auto c = dlambda_member(Rational(5, 6), CoeffSet{Rational(1, 3)}, Rational(1, 2))) {
    std::cout << "  5/6 in D_{1/3}(1/2): m=" << c->m << " m0=" << c->m0;
    for (const auto& t : c->terms) std::cout << " + " << t.multiplicity << "*" << to_string(t.lambda);
    std::cout << "\n";
  }
  std::cout << "  coefficients >= 1/2 realized on P^1 from {1/2, 2/3, 3/4, 1}: "
            << join(geq_half_classification(CoeffSet{Rational(1, 2), Rational(2, 3), Rational(3, 4), Rational(1)}, 12))
            << "\n";
  std::cout << "  Weil index 6, coefficient 2/3: denominator divides the index: " << std::boolalpha
            << adjunction_divisibility_audit(6, Rational(2, 3), 12) << "\n";
  return 0;
}
