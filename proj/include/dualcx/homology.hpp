#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

#include "dualcx/complex.hpp"
#include "dualcx/errors.hpp"
#include "dualcx/integer_matrix.hpp"
#include "dualcx/smith.hpp"

namespace dualcx {

enum class Ring { Integers, Rationals, PrimeField };

/// Coefficient ring of a (co)homology computation.
class Coefficients {
 public:
  static Coefficients integers() { return Coefficients(Ring::Integers, 0); }
  static Coefficients rationals() { return Coefficients(Ring::Rationals, 0); }
  static Coefficients prime_field(long long p) {
    if (p < 2) throw Error(ErrorKind::BadParams, "field characteristic must be prime, got " + std::to_string(p));
    for (long long d = 2; d * d <= p; ++d)
      if (p % d == 0) throw Error(ErrorKind::BadParams, std::to_string(p) + " is not prime");
    return Coefficients(Ring::PrimeField, p);
  }

  Ring ring() const { return ring_; }
  /// Characteristic; 0 unless the ring is a prime field.
  long long characteristic() const { return p_; }
  bool is_field() const { return ring_ != Ring::Integers; }

  friend bool operator==(const Coefficients&, const Coefficients&) = default;

 private:
  Coefficients(Ring ring, long long p) : ring_(ring), p_(p) {}
  Ring ring_;
  long long p_;
};

struct HomologyGroup {
  Coefficients coefficients = Coefficients::integers();
  std::size_t free_rank = 0;
  std::vector<BigInt> torsion;  // each > 1, each dividing the next; empty over fields

  bool is_zero() const { return free_rank == 0 && torsion.empty(); }

  friend bool operator==(const HomologyGroup&, const HomologyGroup&) = default;
};

namespace detail {

inline IntegerMatrix boundary_or_zero(const DeltaComplex& x, int k) {
  const std::size_t rows = k >= 1 ? x.num_cells(k - 1) : 0;
  IntegerMatrix m(rows, k >= 0 ? x.num_cells(k) : 0);
  if (k < 1 || k > x.dimension()) return m;
  for (std::size_t c = 0; c < x.num_cells(k); ++c) {
    const auto facets = x.facets({k, c});
    for (std::size_t i = 0; i < facets.size(); ++i) m(facets[i], c) += (i % 2 == 0) ? 1 : -1;
  }
  return m;
}

inline std::size_t rank_over(const IntegerMatrix& m, const Coefficients& coeffs) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  switch (coeffs.ring()) {
    case Ring::Integers: return invariant_factors(m).size();
    case Ring::Rationals: return rank_over_rationals(m);
    case Ring::PrimeField: return rank_mod_prime(m, coeffs.characteristic());
  }
  return 0;
}

// Quotient ker(out) / im(in) of a (co)chain complex slot with `cells`
// generators, where `in` maps into the slot and `out` leaves it.
inline HomologyGroup slot_group(std::size_t cells, const IntegerMatrix& in, const IntegerMatrix& out,
                                const Coefficients& coeffs) {
  HomologyGroup g{coeffs, 0, {}};
  std::size_t rank_in = 0;
  if (coeffs.ring() == Ring::Integers && in.rows() != 0 && in.cols() != 0) {
    const auto factors = invariant_factors(in);
    rank_in = factors.size();
    for (const auto& f : factors)
      if (f > 1) g.torsion.push_back(f);
  } else {
    rank_in = rank_over(in, coeffs);
  }
  g.free_rank = cells - rank_over(out, coeffs) - rank_in;
  return g;
}

}  // namespace detail

/// Boundary operator C_k -> C_{k-1}: rows are (k-1)-cells, columns k-cells,
/// facet i contributing (-1)^i.
inline IntegerMatrix boundary_matrix(const DeltaComplex& x, int k) {
  if (k < 1 || k > x.dimension())
    throw Error(ErrorKind::DimensionOutOfRange,
                "boundary degree " + std::to_string(k) + " outside [1, " + std::to_string(x.dimension()) + "]");
  return detail::boundary_or_zero(x, k);
}

inline HomologyGroup homology(const DeltaComplex& x, int k, const Coefficients& coeffs) {
  if (k < 0) throw Error(ErrorKind::DimensionOutOfRange, "negative homology degree");
  if (k > x.dimension()) return {coeffs, 0, {}};
  return detail::slot_group(x.num_cells(k), detail::boundary_or_zero(x, k + 1), detail::boundary_or_zero(x, k),
                            coeffs);
}

/// Computed from the cochain complex (transposed boundaries), independently
/// of homology().
inline HomologyGroup cohomology(const DeltaComplex& x, int k, const Coefficients& coeffs) {
  if (k < 0) throw Error(ErrorKind::DimensionOutOfRange, "negative cohomology degree");
  if (k > x.dimension()) return {coeffs, 0, {}};
  const auto coboundary_in = detail::boundary_or_zero(x, k).transposed();
  const auto coboundary_out = detail::boundary_or_zero(x, k + 1).transposed();
  return detail::slot_group(x.num_cells(k), coboundary_in, coboundary_out, coeffs);
}

/// H_0 .. H_dim.
inline std::vector<HomologyGroup> homology_table(const DeltaComplex& x, const Coefficients& coeffs) {
  std::vector<HomologyGroup> out;
  for (int k = 0; k <= x.dimension(); ++k) out.push_back(homology(x, k, coeffs));
  return out;
}

/// Whether a connected complex has a connected unbranched double cover, i.e.
/// whether H^1(X; F_2) is nonzero.
inline bool has_connected_double_cover(const DeltaComplex& x) {
  if (connected_components(x).size() != 1)
    throw Error(ErrorKind::NotConnected, "double-cover predicate needs a connected complex");
  return cohomology(x, 1, Coefficients::prime_field(2)).free_rank > 0;
}

}  // namespace dualcx
