#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cantor/product.hpp"

namespace cantor {

/// Indices (s, t) with a_n(t) != 0, a_n(t+s) != 0 and the exact ratio
/// a_n(t+s) / a_n(t); the seed of the one-pole approximant.
struct RepetitionWitness {
  std::size_t tail = 0;
  std::int64_t s = 1;
  std::int64_t t = 0;
  CoefficientValue ratio;  // alpha / beta in lowest terms
  std::int64_t window = 1;  // the L bound: s <= L, t + s <= L

  /// |alpha|, beta as exact log2 magnitudes (work even past the cap).
  Log2Sum alpha_abs_log2() const { return ratio.num_abs_log2(); }
  Log2Sum beta_log2() const { return ratio.den_log2(); }
};

/// Lexicographically least (t, s) witness inside the window, skipping zero
/// anchors. Throws NoWitness when the window has no nonzero pair.
RepetitionWitness find_repetition(const ProductSpec& spec, std::size_t n, std::int64_t window);

/// Certified log2(1 + |v|) for v != 0: exact-symbolic when v materializes,
/// otherwise a sound slack interval around the dominant part.
LogQuantity log2_one_plus_abs(const CoefficientValue& v);

/// p_n plus the clearing constant: (1 - (alpha/beta) z^s) f_n(z) = p_n(z) +
/// O(z^{s+t+1}), deg p_n <= s+t-1, C_n p_n integral.
struct RationalApproximant {
  RepetitionWitness witness;
  std::vector<Rat> p;            // coefficient i of z^i
  Int clearing_constant = 1;     // C_n
  std::vector<Rat> remainder_probe;  // remainder coefficients s+t+1 .. s+t+4
};

RationalApproximant build_approximant(const ProductSpec& spec, const RepetitionWitness& w);

enum class IneqVariant { Thm21First, Thm21Second, Prop23Main, Prop23Remark };

std::string variant_name(IneqVariant v);

struct IneqRow {
  Int index;           // n (tail) or y
  bool holds = false;
  bool lhs_neg_inf = false;  // zero left side (numerator 0)
  bool lhs_exact = false, rhs_exact = false;
  Rat lhs_log2, rhs_log2;  // directed bounds: comparing them reproduces `holds`
};

struct InequalityReport {
  IneqVariant variant;
  Rat epsilon;
  std::vector<IneqRow> rows;
  std::optional<Int> first_failure;
  std::vector<Int> prime_set;      // finite-prime-set variants
  std::vector<Rat> decay_log2;     // upper bounds of log2(|alpha/beta| b^-Q_n) per row
  bool decay_monotone = true;
  std::vector<bool> gcd_ok;        // prop23: gcd(f_y, c) == 1 per row
  std::vector<std::string> notes;

  bool all_hold() const { return !first_failure.has_value(); }
};

/// Per-tail check of the height inequality against b^{(1-L eps) Q_n}, in
/// certified log2 arithmetic. `second` selects the finite-prime-set variant.
InequalityReport check_theorem21(const ProductSpec& spec, const Int& b, const Rat& epsilon,
                                 IneqVariant variant, std::int64_t n_lo, std::int64_t n_hi,
                                 std::int64_t window);

/// Finitely described integer sequence for the binary-support criterion.
struct IntSeq {
  enum class Kind { Constant, Periodic, Table, GeomPow };
  Kind kind = Kind::Constant;
  std::vector<Int> values;  // constant: [0]; periodic body; table prefix
  Int dflt = 0;             // table tail
  Int base = 2, coeff = 1, ratio = 2;  // geom_pow: base^(coeff * ratio^y)

  static IntSeq constant(Int v);
  static IntSeq periodic(std::vector<Int> body);
  static IntSeq table(std::vector<Int> prefix, Int dflt);
  static IntSeq geom_pow(Int base, Int coeff, Int ratio);

  bool zero_at(std::size_t y) const;
  int sign_at(std::size_t y) const;
  Log2Sum abs_log2_at(std::size_t y) const;  // requires nonzero
  Int value_at(std::size_t y) const;         // materialized; CapExceeded for huge powers
  bool coprime_with(const Int& c, std::size_t y) const;
  std::vector<Int> prime_set() const;
};

/// |f_y / F_y| <= (|F_0 ... F_{y-1}|)^-(eps+2) b^(-eps 2^y) per y (exponent
/// eps+1 for the finite-prime-set remark variant).
InequalityReport check_prop23(const IntSeq& f, const IntSeq& F, const Int& b, const Int& c,
                              const Rat& epsilon, bool remark, std::int64_t y_lo,
                              std::int64_t y_hi);

/// Binary-radix spec with coefficient 1 / base^(2^y) at factorial positions y
/// and 1 elsewhere.
ProductSpec corollary22_spec(const Int& base = Int(2));

struct SchmidtTriple {
  std::size_t n = 0;
  Int x1, x2, x3;
  RatInterval linear_form;     // (x1 - x2) f_0(1/b) - x3
  RatInterval product_bound;   // (1+|a/b|)|C^3 B^3 beta^2 alpha| / b^{Q_n}, leading constant 1
  RatInterval subspace_product;  // |x1||x2||Lambda| * prod_{p|b} |x1 x2 x3|_p
  Int max_height;
  // rough doubles for plots; set when the enclosure certifies Lambda != 0
  std::optional<double> log_linear_form;
  std::optional<double> log_height;
  std::optional<double> decay_ratio;
};

std::vector<SchmidtTriple> schmidt_triples(const ProductSpec& spec, const Int& b,
                                           std::int64_t n_lo, std::int64_t n_hi,
                                           std::int64_t window);

}  // namespace cantor
