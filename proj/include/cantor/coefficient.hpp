#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "cantor/logspace.hpp"
#include "cantor/rational.hpp"

namespace cantor {

enum class CoeffKind { Rational, BigPow, UnitRoot };

/// Exact coefficient scalar: a rational, a rational with a huge power
/// denominator num / base^exp kept symbolic, or a root of unity e^(2 pi i r/L)
/// stored as the residue r mod L. Rationals and unit roots never mix.
class CoefficientValue {
 public:
  CoefficientValue() = default;  // rational zero

  static CoefficientValue rational(Rat v);
  static CoefficientValue one() { return rational(1); }
  static CoefficientValue zero() { return rational(0); }
  /// num / base^exp, base >= 2, exp >= 0; common base factors are folded out.
  static CoefficientValue bigpow(Int num, Int base, Int exp);
  static CoefficientValue unit_root(std::int64_t residue, std::int64_t order);

  CoeffKind kind() const { return kind_; }
  bool is_zero() const;
  bool is_one() const;

  CoefficientValue operator*(const CoefficientValue& o) const;
  CoefficientValue operator+(const CoefficientValue& o) const;
  CoefficientValue operator-(const CoefficientValue& o) const;
  CoefficientValue operator/(const CoefficientValue& o) const;
  CoefficientValue negated() const;
  CoefficientValue abs() const;
  bool operator==(const CoefficientValue& o) const;

  /// Exact rational form; throws CapExceeded past the materialization cap and
  /// DomainMismatch for unit roots.
  Rat to_rat() const;
  bool materializable() const;

  /// log2 of |value|; requires value != 0. Exact-symbolic even for huge exps.
  Log2Sum abs_log2() const;
  /// log2 |numerator| and log2 denominator of the value in lowest terms.
  Log2Sum num_abs_log2() const;
  Log2Sum den_log2() const;

  int sign() const;  // -1, 0, +1 (DomainMismatch for unit roots)

  // accessors for serialization
  const Rat& rat() const { return rat_; }
  const Int& bp_num() const { return num_; }
  const Int& bp_base() const { return base_; }
  const Int& bp_exp() const { return exp_; }
  std::int64_t residue() const { return residue_; }
  std::int64_t order() const { return order_; }

  std::string str() const;

  /// Materialization cap in bits of the expanded power; defaults to 2^20,
  /// overridable by CANTOR_MAX_BITS or set_max_bits.
  static Int max_bits();
  static void set_max_bits(std::optional<Int> bits);

 private:
  CoeffKind kind_ = CoeffKind::Rational;
  Rat rat_;
  Int num_, base_, exp_;
  std::int64_t residue_ = 0, order_ = 1;

  static bool pow_fits(const Int& base, const Int& exp);
  std::optional<Int> den_as_base_power(const Int& base) const;
};

}  // namespace cantor
