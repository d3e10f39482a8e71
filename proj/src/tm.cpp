#include "cantor/tm.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <tuple>

namespace cantor {

namespace {

constexpr std::size_t kMaxWordLetters = std::size_t(1) << 26;

std::int64_t mod(std::int64_t v, std::int64_t L) { return ((v % L) + L) % L; }

}  // namespace

MuEntry MuEntry::constant(std::int64_t r) {
  MuEntry e;
  e.kind = Kind::Const;
  e.c = r;
  return e;
}

MuEntry MuEntry::linear(std::int64_t c) {
  MuEntry e;
  e.kind = Kind::Linear;
  e.c = c;
  return e;
}

MuEntry MuEntry::per_s(std::vector<std::int64_t> rs) {
  if (rs.empty()) raise(ErrorCode::SpecInvalid, "empty residue list");
  MuEntry e;
  e.kind = Kind::List;
  e.list = std::move(rs);
  return e;
}

std::int64_t MuEntry::residue(std::int64_t s, std::int64_t L) const {
  switch (kind) {
    case Kind::Const: return mod(c, L);
    case Kind::Linear: return mod(c * s, L);
    case Kind::List:
      if (s < 1 || static_cast<std::size_t>(s) > list.size())
        raise(ErrorCode::SpecInvalid, "residue list shorter than digit range");
      return mod(list[static_cast<std::size_t>(s - 1)], L);
  }
  return 0;
}

MuRule MuRule::constant(MuEntry e) {
  MuRule r;
  r.kind = Kind::Constant;
  r.entries = {std::move(e)};
  return r;
}

MuRule MuRule::periodic(std::vector<MuEntry> body) {
  if (body.empty()) raise(ErrorCode::SpecInvalid, "empty periodic residue rule");
  MuRule r;
  r.kind = Kind::Periodic;
  r.entries = std::move(body);
  return r;
}

MuRule MuRule::table(std::vector<MuEntry> prefix, MuEntry dflt) {
  MuRule r;
  r.kind = Kind::Table;
  r.entries = std::move(prefix);
  r.dflt = std::move(dflt);
  return r;
}

const MuEntry& MuRule::at(std::size_t y) const {
  switch (kind) {
    case Kind::Constant: return entries[0];
    case Kind::Periodic: return entries[y % entries.size()];
    case Kind::Table: return y < entries.size() ? entries[y] : dflt;
  }
  return dflt;
}

std::size_t MuRule::preperiod_length() const {
  return kind == Kind::Table ? entries.size() : 0;
}

std::size_t MuRule::period_length() const {
  return kind == Kind::Periodic ? entries.size() : 1;
}

TMSpec::TMSpec(std::int64_t L, RadixSequence radix, MuRule mu)
    : L_(L), radix_(std::move(radix)), mu_(std::move(mu)) {
  if (L_ < 1) raise(ErrorCode::SpecInvalid, "alphabet size must be >= 1");
}

std::int64_t TMSpec::mu(std::int64_t s, std::size_t y) const {
  if (s < 1 || s > radix_.q(y + 1) - 1)
    raise(ErrorCode::BadArgument, "mu index s out of range");
  return mu_.at(y).residue(s, L_);
}

Word morphism_apply(const Word& w, std::int64_t j, std::int64_t L) {
  if (j < 0) raise(ErrorCode::BadArgument, "morphism power must be >= 0");
  Word out = w;
  for (auto& r : out.letters) r = mod(r + j, L);
  return out;
}

Word build_word(const TMSpec& spec, std::size_t n) {
  Word w;
  w.letters = {0};
  w.level = 0;
  for (std::size_t level = 0; level < n; ++level) {
    const std::int64_t q_next = spec.radix().q(level + 1);
    if (w.letters.size() > kMaxWordLetters / static_cast<std::size_t>(q_next))
      raise(ErrorCode::DepthTooLarge, "word would exceed the letter budget");
    std::vector<std::int64_t> next;
    next.reserve(w.letters.size() * static_cast<std::size_t>(q_next));
    next.insert(next.end(), w.letters.begin(), w.letters.end());
    for (std::int64_t s = 1; s <= q_next - 1; ++s) {
      const std::int64_t shift = spec.mu(s, level);
      for (auto r : w.letters) next.push_back(mod(r + shift, spec.L()));
    }
    w.letters = std::move(next);
    w.level = level + 1;
  }
  return w;
}

std::int64_t tm_letter(const TMSpec& spec, const Int& m) {
  if (m < 0) raise(ErrorCode::BadArgument, "letter index must be >= 0");
  std::int64_t acc = 0;
  Int rest = m;
  for (std::size_t y = 0; rest > 0; ++y) {
    Int q(spec.radix().q(y + 1));
    Int d = rest % q;
    rest /= q;
    if (d != 0) acc = mod(acc + spec.mu(static_cast<std::int64_t>(d), y), spec.L());
  }
  return acc;
}

namespace {

// Checks the congruence family for one offset A over a full cycle of the
// (radix state, mu state, running product) machine; exact verdict.
bool offset_satisfies(const TMSpec& spec, std::size_t A) {
  const std::int64_t L = spec.L();
  const std::int64_t lead = spec.mu(1, A);  // needs q_{A+1} >= 2, always true
  const std::size_t radix_pre = spec.radix().preperiod_length();
  const std::size_t radix_per = spec.radix().period_length();
  const std::size_t mu_pre = spec.mu_rule().preperiod_length();
  const std::size_t mu_per = spec.mu_rule().period_length();

  auto radix_state = [&](std::size_t j) {  // state of the q-rule at index j
    return j < radix_pre + 1 ? j : radix_pre + 1 + (j - radix_pre - 1) % radix_per;
  };
  auto mu_state = [&](std::size_t y) {
    return y < mu_pre ? y : mu_pre + (y - mu_pre) % mu_per;
  };

  std::set<std::tuple<std::size_t, std::size_t, std::int64_t>> seen;
  std::int64_t running = 1;  // prod_{j=A+1}^{A+y} q_j  (mod L)
  for (std::size_t y = 0;; ++y) {
    auto state = std::make_tuple(radix_state(A + y + 1), mu_state(A + y), running);
    if (!seen.insert(state).second) return true;  // full cycle verified
    const std::int64_t q_next = spec.radix().q(A + y + 1);
    for (std::int64_t s = 1; s <= q_next - 1; ++s) {
      if (spec.mu(s, A + y) != mod(lead * s % L * running, L)) return false;
    }
    running = mod(running * (spec.radix().q(A + y + 1) % L), L);
  }
}

}  // namespace

PeriodicityResult periodicity_witness(const TMSpec& spec, std::size_t depth) {
  if (depth < 1) raise(ErrorCode::BadArgument, "depth must be >= 1");
  PeriodicityResult out;
  out.depth = depth;
  // offsets beyond every table prefix repeat with the combined rule period
  const std::size_t settle =
      std::max(spec.radix().preperiod_length(), spec.mu_rule().preperiod_length());
  const std::size_t period =
      std::lcm(spec.radix().period_length(), spec.mu_rule().period_length());
  const std::size_t decisive = settle + period;

  for (std::size_t A = 0; A < depth; ++A) {
    if (offset_satisfies(spec, A)) {
      out.kind = PeriodicityResult::Kind::Found;
      out.offset = static_cast<std::int64_t>(A);
      return out;
    }
    if (A + 1 >= decisive) break;  // later offsets repeat refuted states
  }
  out.kind = depth >= decisive ? PeriodicityResult::Kind::DecidedNone
                               : PeriodicityResult::Kind::NoneUpTo;
  return out;
}

namespace {

// letter value in the basis {1, w}, w = exp(2 pi i / L), for L <= 3
std::pair<Rat, Rat> root_coords(std::int64_t residue, std::int64_t L) {
  if (residue == 0) return {Rat(1), Rat(0)};
  if (L == 2) return {Rat(-1), Rat(0)};
  if (L == 3) {
    if (residue == 1) return {Rat(0), Rat(1)};
    return {Rat(-1), Rat(-1)};  // w^2 = -1 - w
  }
  raise(ErrorCode::BadArgument, "unit-root values are supported for L <= 3 only");
}

}  // namespace

CyclotomicInterval subsequence_value(const TMSpec& spec, ValueMap map, const Int& N, const Int& l,
                                     const Int& b, const Rat& target) {
  if (l < 1) raise(ErrorCode::BadArgument, "step l must be >= 1");
  if (N < 0) raise(ErrorCode::BadArgument, "offset N must be >= 0");
  if (b < 2) raise(ErrorCode::BadArgument, "base must be >= 2");
  if (target <= 0) raise(ErrorCode::BadArgument, "target error must be positive");
  if (map == ValueMap::UnitRoot && spec.L() > 3)
    raise(ErrorCode::BadArgument, "unit-root values are supported for L <= 3 only");

  const Rat max_abs = map == ValueMap::Digit ? Rat(spec.L() - 1 > 0 ? spec.L() - 1 : 1) : Rat(1);
  Rat u = 0, v = 0;
  Rat scale = Rat(1, b);
  Int index = N;
  for (std::size_t k = 0;; ++k) {
    // scale is b^-(k+1); the tail past k-1 terms is max_abs * b^-k / (b-1)
    Rat tail = max_abs * scale * Rat(b, b - 1);
    if (tail <= target) {
      CyclotomicInterval out;
      out.u = {u - tail, u + tail};
      out.v = {v - tail, v + tail};
      return out;
    }
    std::int64_t r = tm_letter(spec, index);
    if (map == ValueMap::Digit) {
      u += Rat(r) * scale;
    } else {
      auto [cu, cv] = root_coords(r, spec.L());
      u += cu * scale;
      v += cv * scale;
    }
    scale /= Rat(b);
    index += l;
    if (k > 1000000) raise(ErrorCode::DepthTooLarge, "summation did not converge");
  }
}

PeriodScan subsequence_period_scan(const TMSpec& spec, const Int& N, const Int& l,
                                   std::size_t max_period, std::size_t horizon) {
  if (max_period < 1) raise(ErrorCode::BadArgument, "max_period must be >= 1");
  if (horizon < 2 * max_period)
    raise(ErrorCode::BadArgument, "horizon must be at least twice max_period");
  std::vector<std::int64_t> seq;
  seq.reserve(horizon);
  Int index = N;
  for (std::size_t k = 0; k < horizon; ++k) {
    seq.push_back(tm_letter(spec, index));
    index += l;
  }
  PeriodScan out;
  out.max_period = max_period;
  out.horizon = horizon;
  for (std::size_t p = 1; p <= max_period; ++p) {
    std::size_t last_mismatch = 0;
    bool any = false;
    for (std::size_t k = horizon - p; k-- > 0;) {
      if (seq[k] != seq[k + p]) {
        last_mismatch = k;
        any = true;
        break;
      }
    }
    std::size_t preperiod = any ? last_mismatch + 1 : 0;
    if (preperiod <= horizon / 2) {
      out.periodic = true;
      out.preperiod = preperiod;
      out.period = p;
      return out;
    }
  }
  return out;
}

ProductSpec to_product_spec(const TMSpec& spec) {
  const std::int64_t L = spec.L();
  auto convert_entry = [&](const MuEntry& e) {
    switch (e.kind) {
      case MuEntry::Kind::Const:
        return CoeffEntry::all_s(CoefficientValue::unit_root(e.c, L));
      case MuEntry::Kind::Linear: return CoeffEntry::linear_residue(e.c);
      case MuEntry::Kind::List: {
        std::vector<CoefficientValue> vs;
        vs.reserve(e.list.size());
        for (auto r : e.list) vs.push_back(CoefficientValue::unit_root(r, L));
        return CoeffEntry::per_s(std::move(vs));
      }
    }
    return CoeffEntry::all_s(CoefficientValue::unit_root(0, L));
  };
  const MuRule& mu = spec.mu_rule();
  CoeffRule rule;
  switch (mu.kind) {
    case MuRule::Kind::Constant: rule = CoeffRule::constant(convert_entry(mu.entries[0])); break;
    case MuRule::Kind::Periodic: {
      std::vector<CoeffEntry> body;
      for (const auto& e : mu.entries) body.push_back(convert_entry(e));
      rule = CoeffRule::periodic_y(std::move(body));
      break;
    }
    case MuRule::Kind::Table: {
      std::vector<CoeffEntry> prefix;
      for (const auto& e : mu.entries) prefix.push_back(convert_entry(e));
      rule = CoeffRule::table(std::move(prefix), convert_entry(mu.dflt));
      break;
    }
  }
  return ProductSpec(spec.radix(), Domain::UnitRoot, std::move(rule), L);
}

}  // namespace cantor
