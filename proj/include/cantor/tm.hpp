#pragma once

#include <cstdint>
#include <vector>

#include "cantor/product.hpp"

namespace cantor {

/// Residues mod L for one index y: how mu_y(s) looks across s.
struct MuEntry {
  enum class Kind { Const, Linear, List };
  Kind kind = Kind::Const;
  std::int64_t c = 0;               // Const: mu = c; Linear: mu = c*s mod L
  std::vector<std::int64_t> list;   // List: mu for s = 1, 2, ... (index s-1)

  static MuEntry constant(std::int64_t r);
  static MuEntry linear(std::int64_t c);
  static MuEntry per_s(std::vector<std::int64_t> rs);

  std::int64_t residue(std::int64_t s, std::int64_t L) const;
};

struct MuRule {
  enum class Kind { Constant, Periodic, Table };
  Kind kind = Kind::Constant;
  std::vector<MuEntry> entries;
  MuEntry dflt;

  static MuRule constant(MuEntry e);
  static MuRule periodic(std::vector<MuEntry> body);
  static MuRule table(std::vector<MuEntry> prefix, MuEntry dflt);

  const MuEntry& at(std::size_t y) const;
  std::size_t preperiod_length() const;
  std::size_t period_length() const;
};

/// Word description of type (L, (q_n), (mu_n)).
class TMSpec {
 public:
  TMSpec(std::int64_t L, RadixSequence radix, MuRule mu);

  std::int64_t L() const { return L_; }
  const RadixSequence& radix() const { return radix_; }
  const MuRule& mu_rule() const { return mu_; }

  /// mu_y(s) for 1 <= s <= q_{y+1} - 1.
  std::int64_t mu(std::int64_t s, std::size_t y) const;

 private:
  std::int64_t L_;
  RadixSequence radix_;
  MuRule mu_;
};

struct Word {
  std::vector<std::int64_t> letters;
  std::size_t level = 0;  // letters.size() == Q_level
};

/// Letter shift r -> (r + j) mod L applied to every letter.
Word morphism_apply(const Word& w, std::int64_t j, std::int64_t L);

/// A_n from A_0 = (0) by the recursion A_{n+1} = A_n f^{mu_n(1)}(A_n) ...
Word build_word(const TMSpec& spec, std::size_t n);

/// Closed form: sum of mu_y(s_y) over the digits of m, mod L.
std::int64_t tm_letter(const TMSpec& spec, const Int& m);

struct PeriodicityResult {
  enum class Kind { Found, NoneUpTo, DecidedNone };
  Kind kind = Kind::NoneUpTo;
  std::int64_t offset = -1;  // the A of a Found verdict
  std::size_t depth = 0;
};

/// Decides whether some offset A makes mu_{A+y}(s) == mu_A(1) * s *
/// prod_{j=A+1}^{A+y} q_j (mod L) for all s, y. Candidates are checked
/// symbolically over one full cycle of the rule states, so Found verdicts are
/// exact; DecidedNone needs depth to reach past all table prefixes plus one
/// period.
PeriodicityResult periodicity_witness(const TMSpec& spec, std::size_t depth);

enum class ValueMap { UnitRoot, Digit };

/// Value in the basis {1, w} with w^2 + w + 1 = 0 (v is zero for L <= 2).
struct CyclotomicInterval {
  RatInterval u, v;
};

/// Enclosure of sum_k value(a(N + k l)) / b^(k+1), componentwise width
/// <= 2 * target. UnitRoot maps residues to powers of the L-th root of unity
/// (L <= 3); Digit sums the residues themselves.
CyclotomicInterval subsequence_value(const TMSpec& spec, ValueMap map, const Int& N, const Int& l,
                                     const Int& b, const Rat& target);

struct PeriodScan {
  bool periodic = false;
  std::size_t preperiod = 0;
  std::size_t period = 0;
  std::size_t max_period = 0;
  std::size_t horizon = 0;
};

/// Exhaustive ultimate-periodicity scan of the letters a(N + n l), n <
/// horizon, with period <= max_period and preperiod <= horizon / 2.
PeriodScan subsequence_period_scan(const TMSpec& spec, const Int& N, const Int& l,
                                   std::size_t max_period, std::size_t horizon);

/// The unit-root product whose coefficient stream carries the word: the
/// coefficient at m is the root of unity with residue letter(m).
ProductSpec to_product_spec(const TMSpec& spec);

}  // namespace cantor
