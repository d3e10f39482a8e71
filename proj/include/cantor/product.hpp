#pragma once

#include <cstdint>
#include <mutex>
#include <optional>
#include <vector>

#include "cantor/coefficient.hpp"
#include "cantor/radix.hpp"

namespace cantor {

enum class Domain { Rational, UnitRoot };

/// Coefficients of one factor: how c(s, y) looks across s for a fixed y.
struct CoeffEntry {
  enum class Kind { Uniform, List, LinearResidue };
  Kind kind = Kind::Uniform;
  CoefficientValue uniform;              // same value for every s
  std::vector<CoefficientValue> list;    // value for s = 1, 2, ... (index s-1)
  std::int64_t linear_c = 0;             // unit-root domain: residue c*s mod L

  static CoeffEntry all_s(CoefficientValue v);
  static CoeffEntry per_s(std::vector<CoefficientValue> vs);
  static CoeffEntry linear_residue(std::int64_t c);
};

enum class CoeffRuleKind { Constant, PeriodicY, Table, FactorialSupport };

struct CoeffRule {
  CoeffRuleKind kind = CoeffRuleKind::Constant;
  std::vector<CoeffEntry> entries;  // constant: [0]; periodic: body; table: prefix
  CoeffEntry dflt;                  // table tail
  Int fact_base = 2;                // factorial support

  static CoeffRule constant(CoeffEntry e);
  static CoeffRule periodic_y(std::vector<CoeffEntry> body);
  static CoeffRule table(std::vector<CoeffEntry> prefix, CoeffEntry dflt);
  static CoeffRule factorial_support(Int base);

  std::size_t preperiod_length() const;
  std::size_t period_length() const;
};

/// f_0(z) = prod_y (1 + sum_s c(s,y) z^{s Q_y}) described by a radix sequence
/// and a coefficient rule.
class ProductSpec {
 public:
  ProductSpec(RadixSequence radix, Domain domain, CoeffRule rule, std::int64_t unit_order = 1);

  const RadixSequence& radix() const { return radix_; }
  Domain domain() const { return domain_; }
  std::int64_t unit_order() const { return unit_order_; }
  const CoeffRule& rule() const { return rule_; }

  /// c(s, y) for 1 <= s <= q_{y+1} - 1.
  CoefficientValue coeff(std::int64_t s, std::size_t y) const;

  /// Rational upper bound on sup |c(s,y)| over the whole rule (convergence
  /// and tail bounds); throws DivergentSpec when no finite bound exists.
  Rat coeff_abs_bound() const;

  /// Distinct primes dividing any listed numerator/denominator, by rule
  /// inspection (never by factoring materialized products).
  std::vector<Int> prime_set() const;

 private:
  void validate() const;

  RadixSequence radix_;
  Domain domain_;
  std::int64_t unit_order_;
  CoeffRule rule_;
};

/// a_n(m) by the digit-product formula: product over the digits of m in the
/// n-shifted base system of c(digit, n + position).
CoefficientValue coefficient(const ProductSpec& spec, std::size_t tail, const Int& m);

/// First N coefficients of f_n by truncated multiplication of the factor
/// polynomials; the independent route against coefficient().
std::vector<CoefficientValue> expand(const ProductSpec& spec, std::size_t tail, std::size_t N);

/// Lazily extended, cached view of (a_n(m))_m. Concurrent reads of already
/// computed prefixes are safe; extension is serialized.
class CoefficientStream {
 public:
  CoefficientStream(ProductSpec spec, std::size_t tail);

  const ProductSpec& spec() const { return spec_; }
  std::size_t tail() const { return tail_; }

  CoefficientValue at(std::size_t m) const;
  /// Digit-product route, bypassing the cache (works for huge m).
  CoefficientValue value(const Int& m) const;
  std::vector<CoefficientValue> prefix(std::size_t n) const;

 private:
  void extend(std::size_t n) const;

  ProductSpec spec_;
  std::size_t tail_;
  mutable std::vector<CoefficientValue> cache_;
  mutable std::mutex mutex_;
};

struct CopyStructure {
  std::vector<CoefficientValue> scalars;  // f_{l,n}, scalars[0] == 1
  std::optional<Int> violation_at;        // first offending coefficient index
};

/// Block scalars of (a_0(m)) in blocks of length Q_n; every block must be a
/// scalar multiple of block zero.
CopyStructure copy_structure(const ProductSpec& spec, std::size_t block_level,
                             std::size_t num_blocks);
/// Same check over explicit coefficients (block_len entries per block).
CopyStructure copy_structure_of(const std::vector<CoefficientValue>& coeffs,
                                std::size_t block_len);

struct RatInterval {
  Rat lo, hi;
  Rat width() const { return hi - lo; }
  Rat mid() const { return (lo + hi) / 2; }
  bool contains(const Rat& v) const { return lo <= v && v <= hi; }
  bool contains(const RatInterval& o) const { return lo <= o.lo && o.hi <= hi; }
  bool intersects(const RatInterval& o) const { return lo <= o.hi && o.lo <= hi; }
};

/// Exact value of the product of the first `depth` factors at z = 1/b.
/// Throws ZeroFactor when a factor vanishes there.
Rat partial_product_at(const ProductSpec& spec, const Int& b, std::size_t depth);

/// Enclosure of f_0(1/b) from the partial product through `depth` factors
/// plus a closed-form geometric tail bound.
RatInterval evaluate_at_depth(const ProductSpec& spec, const Int& b, std::size_t depth);

/// Enclosure of width <= 2 * target_abs_error.
RatInterval evaluate(const ProductSpec& spec, const Int& b, const Rat& target_abs_error);

struct BoundednessReport {
  CoefficientValue sup_ratio;      // max |a_n(m)| / |a_0(m)| observed
  std::size_t arg_n = 0;
  std::size_t arg_m = 0;
  std::vector<std::size_t> incomparable_at;  // a_0(m) = 0 but a_n(m) != 0
};

/// Empirical lower bound for the uniform comparison constant between tails
/// and the base stream; never a proof.
BoundednessReport boundedness_report(const ProductSpec& spec, std::size_t n_max,
                                     std::size_t m_max);

}  // namespace cantor
