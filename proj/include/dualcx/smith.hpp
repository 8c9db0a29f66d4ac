#pragma once

#include <cassert>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "dualcx/integer_matrix.hpp"

namespace dualcx {

/// U * M * V == S, with U and V unimodular and S diagonal with
/// d_1 | d_2 | ... | d_r followed by zeros.
struct SmithForm {
  IntegerMatrix U;
  IntegerMatrix S;
  IntegerMatrix V;
  std::vector<BigInt> invariant_factors;
};

namespace detail {

template <bool Track>
class SmithReducer {
 public:
  explicit SmithReducer(IntegerMatrix m) : s_(std::move(m)) {
    if constexpr (Track) {
      u_ = IntegerMatrix::identity(s_.rows());
      v_ = IntegerMatrix::identity(s_.cols());
    }
  }

  void run() {
    const std::size_t limit = std::min(s_.rows(), s_.cols());
    for (std::size_t t = 0; t < limit; ++t) {
      auto pivot = smallest_entry(t);
      if (!pivot) break;
      swap_rows(t, pivot->first);
      swap_cols(t, pivot->second);
      reduce_at(t);
      if (s_(t, t) < 0) negate_row(t);
      factors_.push_back(s_(t, t));
    }
  }

  IntegerMatrix& s() { return s_; }
  IntegerMatrix& u() { return u_; }
  IntegerMatrix& v() { return v_; }
  std::vector<BigInt>& factors() { return factors_; }

 private:
  // Minimal |entry| in the trailing submatrix; ties go to the smallest
  // (row, col). A unit entry cannot be beaten, so the scan stops there.
  std::optional<std::pair<std::size_t, std::size_t>> smallest_entry(std::size_t t) const {
    std::optional<std::pair<std::size_t, std::size_t>> best;
    BigInt best_abs;
    for (std::size_t r = t; r < s_.rows(); ++r)
      for (std::size_t c = t; c < s_.cols(); ++c) {
        const auto& e = s_(r, c);
        if (e == 0) continue;
        BigInt a = abs(e);
        if (!best || a < best_abs) {
          best = {r, c};
          best_abs = std::move(a);
          if (best_abs == 1) return best;
        }
      }
    return best;
  }

  void reduce_at(std::size_t t) {
    for (;;) {
      bool dirty = false;
      for (std::size_t r = t + 1; r < s_.rows(); ++r) {
        if (s_(r, t) == 0) continue;
        add_row_multiple(r, t, -(s_(r, t) / s_(t, t)));
        if (s_(r, t) != 0) dirty = true;
      }
      if (dirty) {
        swap_rows(t, smallest_in_column(t));
        continue;
      }
      for (std::size_t c = t + 1; c < s_.cols(); ++c) {
        if (s_(t, c) == 0) continue;
        add_col_multiple(c, t, -(s_(t, c) / s_(t, t)));
        if (s_(t, c) != 0) dirty = true;
      }
      if (dirty) {
        swap_cols(t, smallest_in_row(t));
        continue;
      }
      // the pivot must divide the whole trailing block
      bool divides_all = true;
      for (std::size_t r = t + 1; r < s_.rows() && divides_all; ++r)
        for (std::size_t c = t + 1; c < s_.cols(); ++c)
          if (s_(r, c) % s_(t, t) != 0) {
            add_row_multiple(t, r, 1);
            divides_all = false;
            break;
          }
      if (divides_all) return;
    }
  }

  std::size_t smallest_in_column(std::size_t t) const {
    std::size_t best = t;
    for (std::size_t r = t + 1; r < s_.rows(); ++r)
      if (s_(r, t) != 0 && (s_(best, t) == 0 || abs(s_(r, t)) < abs(s_(best, t)))) best = r;
    return best;
  }

  std::size_t smallest_in_row(std::size_t t) const {
    std::size_t best = t;
    for (std::size_t c = t + 1; c < s_.cols(); ++c)
      if (s_(t, c) != 0 && (s_(t, best) == 0 || abs(s_(t, c)) < abs(s_(t, best)))) best = c;
    return best;
  }

  void swap_rows(std::size_t a, std::size_t b) {
    s_.swap_rows(a, b);
    if constexpr (Track) u_.swap_rows(a, b);
  }
  void swap_cols(std::size_t a, std::size_t b) {
    s_.swap_cols(a, b);
    if constexpr (Track) v_.swap_cols(a, b);
  }
  void add_row_multiple(std::size_t target, std::size_t source, const BigInt& factor) {
    s_.add_row_multiple(target, source, factor);
    if constexpr (Track) u_.add_row_multiple(target, source, factor);
  }
  void add_col_multiple(std::size_t target, std::size_t source, const BigInt& factor) {
    s_.add_col_multiple(target, source, factor);
    if constexpr (Track) v_.add_col_multiple(target, source, factor);
  }
  void negate_row(std::size_t r) {
    s_.negate_row(r);
    if constexpr (Track) u_.negate_row(r);
  }

  IntegerMatrix s_;
  IntegerMatrix u_;
  IntegerMatrix v_;
  std::vector<BigInt> factors_;
};

}  // namespace detail

inline SmithForm smith_normal_form(const IntegerMatrix& m) {
  detail::SmithReducer<true> reducer(m);
  reducer.run();
  SmithForm out{std::move(reducer.u()), std::move(reducer.s()), std::move(reducer.v()),
                std::move(reducer.factors())};
#ifndef NDEBUG
  assert(out.U * m * out.V == out.S);
#endif
  return out;
}

/// Invariant factors only; skips the transform bookkeeping.
inline std::vector<BigInt> invariant_factors(const IntegerMatrix& m) {
  detail::SmithReducer<false> reducer(m);
  reducer.run();
  return std::move(reducer.factors());
}

}  // namespace dualcx
