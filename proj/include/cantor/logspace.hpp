#pragma once

#include <map>
#include <utility>

#include "cantor/rational.hpp"

namespace cantor {

/// Certified bracket lo <= log2(n) <= hi with hi - lo <= 2^-prec, n >= 1.
/// Endpoints are dyadic rationals; exact (lo == hi) when n is a power of two.
std::pair<Rat, Rat> log2_bracket(const Int& n, unsigned prec);

/// Exact representation of  constant + sum_i coeff_i * log2(k_i)  where the
/// k_i are integers >= 3 with powers of two and perfect powers folded out and
/// small prime factors split off. Comparisons are certified by bracketing the
/// irrational terms at escalating precision; they never guess.
class Log2Sum {
 public:
  Log2Sum() = default;
  explicit Log2Sum(Rat constant) : constant_(std::move(constant)) {}

  /// log2 k for integer k >= 1.
  static Log2Sum of_int(const Int& k);
  /// log2 |x| for rational x != 0.
  static Log2Sum of_rat_abs(const Rat& x);

  Log2Sum& operator+=(const Log2Sum& o);
  Log2Sum& operator-=(const Log2Sum& o);
  Log2Sum& operator*=(const Rat& c);
  friend Log2Sum operator+(Log2Sum a, const Log2Sum& b) { return a += b; }
  friend Log2Sum operator-(Log2Sum a, const Log2Sum& b) { return a -= b; }
  friend Log2Sum operator*(Log2Sum a, const Rat& c) { return a *= c; }

  void add_constant(const Rat& c) { constant_ += c; }

  /// True when no irrational term remains; value() is then exact.
  bool is_exact() const { return terms_.empty(); }
  const Rat& exact_value() const;

  /// Certified enclosure at the given precision (width <= #terms * 2^-prec
  /// scaled by coefficients).
  std::pair<Rat, Rat> bracket(unsigned prec) const;

  const Rat& constant() const { return constant_; }
  const std::map<Int, Rat>& terms() const { return terms_; }

 private:
  void add_term(const Int& k, const Rat& coeff);

  Rat constant_ = 0;
  std::map<Int, Rat> terms_;
};

enum class Cmp { Less, Equal, Greater };

/// Certified three-way comparison of a and b. Equal is returned only when the
/// difference is exactly representable and zero; otherwise precision escalates
/// until the sign separates (PrecisionExhausted if it never does).
Cmp log2_compare(const Log2Sum& a, const Log2Sum& b);

/// A log2 magnitude with an exact symbolic part plus a rational slack
/// interval, for quantities like log2(1 + x) that are not products of powers.
struct LogQuantity {
  Log2Sum sum;
  Rat slack_lo = 0;
  Rat slack_hi = 0;

  LogQuantity& operator+=(const LogQuantity& o) {
    sum += o.sum;
    slack_lo += o.slack_lo;
    slack_hi += o.slack_hi;
    return *this;
  }
  LogQuantity& operator+=(const Log2Sum& s) {
    sum += s;
    return *this;
  }
  bool is_exact() const { return sum.is_exact() && slack_lo == slack_hi; }
  std::pair<Rat, Rat> bracket(unsigned prec) const;
};

/// Certified comparison of two LogQuantity values; Equal only when both are
/// exact and equal.
Cmp log2_compare(const LogQuantity& a, const LogQuantity& b);

}  // namespace cantor
