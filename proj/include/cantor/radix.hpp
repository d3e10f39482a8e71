#pragma once

#include <cstdint>
#include <vector>

#include "cantor/rational.hpp"

namespace cantor {

enum class RadixKind { Constant, Periodic, Table };

/// Finitely described base sequence (q_j): q_0 = 1 implied, q_j >= 2 for j >= 1.
/// Positions are indexed so that q(j) is the j-th base; weights Q_y = q_0 * ... * q_y.
class RadixSequence {
 public:
  static RadixSequence constant(std::int64_t q);
  static RadixSequence periodic(std::vector<std::int64_t> qs);
  static RadixSequence table(std::vector<std::int64_t> prefix, std::int64_t dflt);

  RadixKind kind() const { return kind_; }
  const std::vector<std::int64_t>& values() const { return values_; }
  std::int64_t table_default() const { return default_; }

  /// q_j; q(0) == 1.
  std::int64_t q(std::size_t j) const;

  /// Q_y = prod_{j<=y} q_j.
  Int weight(std::size_t y) const;

  /// The sequence (q'_j) with q'_0 = 1 and q'_k = q_{n+k}: the base system of
  /// the n-th tail.
  RadixSequence shifted(std::size_t n) const;

  /// Index from which the sequence is purely periodic (0 for constant/periodic).
  std::size_t preperiod_length() const;
  /// Length of the eventual period (1 for constant and for table tails).
  std::size_t period_length() const;

  bool operator==(const RadixSequence&) const = default;

 private:
  RadixSequence(RadixKind k, std::vector<std::int64_t> v, std::int64_t d);

  RadixKind kind_;
  std::vector<std::int64_t> values_;  // periodic body or table prefix
  std::int64_t default_;              // table tail value (unused otherwise)
};

/// One sparse digit: value * Q_pos, with 1 <= value <= q_{pos+1} - 1.
struct Digit {
  std::size_t pos;
  std::int64_t value;
  bool operator==(const Digit&) const = default;
};

/// Sparse digit vector, positions strictly increasing, no zero entries.
using DigitVector = std::vector<Digit>;

/// Q_0 .. Q_n.
std::vector<Int> cumulative_products(const RadixSequence& radix, std::size_t n);

DigitVector to_digits(const Int& n, const RadixSequence& radix);

/// Sum of value * Q_pos. Accepts zero digits (skipped); throws DigitOutOfRange
/// if some value is negative or >= q_{pos+1}.
Int from_digits(const DigitVector& digits, const RadixSequence& radix);

/// Smallest x >= 1 such that the digits of x*l have lowest nonzero digit 1
/// followed by at least t zero positions. Throws SearchExhausted past the cap.
Int find_sparse_multiple(const Int& l, std::size_t t, const RadixSequence& radix,
                         const Int& search_cap);

}  // namespace cantor
