#include "cantor/product.hpp"

#include <algorithm>
#include <set>

namespace cantor {

namespace {

using boost::multiprecision::abs;

bool is_factorial(std::size_t y) {
  if (y == 0) return false;
  Int f = 1;
  for (Int m = 1; f < y; ++m) f *= m;
  return f == y;
}

std::vector<Int> primes_of(Int n, std::set<Int>& seen) {
  n = abs(n);
  std::vector<Int> out;
  auto take = [&](const Int& p) {
    bool hit = false;
    while (n % p == 0) {
      n /= p;
      hit = true;
    }
    if (hit) seen.insert(p);
  };
  take(2);
  take(3);
  for (Int p = 5; p * p <= n && p < 1000000; p += 6) {
    take(p);
    take(p + 2);
  }
  if (n > 1) seen.insert(n);  // prime or a product of primes above the trial bound
  return out;
}

}  // namespace

CoeffEntry CoeffEntry::all_s(CoefficientValue v) {
  CoeffEntry e;
  e.kind = Kind::Uniform;
  e.uniform = std::move(v);
  return e;
}

CoeffEntry CoeffEntry::per_s(std::vector<CoefficientValue> vs) {
  CoeffEntry e;
  e.kind = Kind::List;
  e.list = std::move(vs);
  return e;
}

CoeffEntry CoeffEntry::linear_residue(std::int64_t c) {
  CoeffEntry e;
  e.kind = Kind::LinearResidue;
  e.linear_c = c;
  return e;
}

CoeffRule CoeffRule::constant(CoeffEntry e) {
  CoeffRule r;
  r.kind = CoeffRuleKind::Constant;
  r.entries = {std::move(e)};
  return r;
}

CoeffRule CoeffRule::periodic_y(std::vector<CoeffEntry> body) {
  if (body.empty()) raise(ErrorCode::SpecInvalid, "empty periodic coefficient rule");
  CoeffRule r;
  r.kind = CoeffRuleKind::PeriodicY;
  r.entries = std::move(body);
  return r;
}

CoeffRule CoeffRule::table(std::vector<CoeffEntry> prefix, CoeffEntry dflt) {
  CoeffRule r;
  r.kind = CoeffRuleKind::Table;
  r.entries = std::move(prefix);
  r.dflt = std::move(dflt);
  return r;
}

CoeffRule CoeffRule::factorial_support(Int base) {
  if (base < 2) raise(ErrorCode::SpecInvalid, "factorial support base must be >= 2");
  CoeffRule r;
  r.kind = CoeffRuleKind::FactorialSupport;
  r.fact_base = std::move(base);
  return r;
}

std::size_t CoeffRule::preperiod_length() const {
  return kind == CoeffRuleKind::Table ? entries.size() : 0;
}

std::size_t CoeffRule::period_length() const {
  return kind == CoeffRuleKind::PeriodicY ? entries.size() : 1;
}

ProductSpec::ProductSpec(RadixSequence radix, Domain domain, CoeffRule rule,
                         std::int64_t unit_order)
    : radix_(std::move(radix)), domain_(domain), unit_order_(unit_order), rule_(std::move(rule)) {
  validate();
}

void ProductSpec::validate() const {
  if (domain_ == Domain::UnitRoot && unit_order_ < 1)
    raise(ErrorCode::SpecInvalid, "unit-root order must be >= 1");
  if (domain_ == Domain::Rational && unit_order_ != 1)
    raise(ErrorCode::SpecInvalid, "rational domain carries no unit-root order");
  if (rule_.kind == CoeffRuleKind::FactorialSupport && domain_ != Domain::Rational)
    raise(ErrorCode::SpecInvalid, "factorial support lives in the rational domain");
  auto check_entry = [&](const CoeffEntry& e) {
    switch (e.kind) {
      case CoeffEntry::Kind::Uniform:
        if ((e.uniform.kind() == CoeffKind::UnitRoot) != (domain_ == Domain::UnitRoot))
          raise(ErrorCode::SpecInvalid, "coefficient domain mismatch");
        if (e.uniform.kind() == CoeffKind::UnitRoot && e.uniform.order() != unit_order_)
          raise(ErrorCode::SpecInvalid, "unit-root order mismatch");
        break;
      case CoeffEntry::Kind::List:
        if (e.list.empty()) raise(ErrorCode::SpecInvalid, "empty coefficient list");
        for (const auto& v : e.list) {
          if ((v.kind() == CoeffKind::UnitRoot) != (domain_ == Domain::UnitRoot))
            raise(ErrorCode::SpecInvalid, "coefficient domain mismatch");
          if (v.kind() == CoeffKind::UnitRoot && v.order() != unit_order_)
            raise(ErrorCode::SpecInvalid, "unit-root order mismatch");
        }
        break;
      case CoeffEntry::Kind::LinearResidue:
        if (domain_ != Domain::UnitRoot)
          raise(ErrorCode::SpecInvalid, "linear residue entries need the unit-root domain");
        break;
    }
  };
  for (const auto& e : rule_.entries) check_entry(e);
  if (rule_.kind == CoeffRuleKind::Table) check_entry(rule_.dflt);
}

namespace {

CoefficientValue entry_value(const CoeffEntry& e, std::int64_t s, std::int64_t q_next,
                             std::int64_t unit_order) {
  if (s < 1 || s > q_next - 1)
    raise(ErrorCode::BadArgument, "coefficient index s out of range");
  switch (e.kind) {
    case CoeffEntry::Kind::Uniform: return e.uniform;
    case CoeffEntry::Kind::List:
      if (static_cast<std::size_t>(s) > e.list.size())
        raise(ErrorCode::SpecInvalid, "coefficient list shorter than digit range");
      return e.list[static_cast<std::size_t>(s - 1)];
    case CoeffEntry::Kind::LinearResidue:
      return CoefficientValue::unit_root(e.linear_c * s, unit_order);
  }
  return CoefficientValue::zero();
}

}  // namespace

CoefficientValue ProductSpec::coeff(std::int64_t s, std::size_t y) const {
  std::int64_t q_next = radix_.q(y + 1);
  if (rule_.kind == CoeffRuleKind::FactorialSupport) {
    if (s < 1 || s > q_next - 1) raise(ErrorCode::BadArgument, "coefficient index s out of range");
    if (!is_factorial(y)) return CoefficientValue::one();
    return CoefficientValue::bigpow(1, rule_.fact_base, Int(1) << y);
  }
  const CoeffEntry* e = nullptr;
  switch (rule_.kind) {
    case CoeffRuleKind::Constant: e = &rule_.entries[0]; break;
    case CoeffRuleKind::PeriodicY: e = &rule_.entries[y % rule_.entries.size()]; break;
    case CoeffRuleKind::Table:
      e = y < rule_.entries.size() ? &rule_.entries[y] : &rule_.dflt;
      break;
    case CoeffRuleKind::FactorialSupport: break;
  }
  return entry_value(*e, s, q_next, unit_order_);
}

Rat ProductSpec::coeff_abs_bound() const {
  if (domain_ == Domain::UnitRoot) return Rat(1);
  if (rule_.kind == CoeffRuleKind::FactorialSupport) return Rat(1);
  Rat bound = 0;
  auto fold = [&](const CoeffEntry& e) {
    auto fold_value = [&](const CoefficientValue& v) {
      // |num/base^exp| <= |num| is enough for a tail bound
      Rat m = v.kind() == CoeffKind::BigPow ? Rat(abs(v.bp_num()))
                                            : boost::multiprecision::abs(v.rat());
      bound = std::max(bound, m);
    };
    if (e.kind == CoeffEntry::Kind::Uniform) fold_value(e.uniform);
    if (e.kind == CoeffEntry::Kind::List)
      for (const auto& v : e.list) fold_value(v);
  };
  for (const auto& e : rule_.entries) fold(e);
  if (rule_.kind == CoeffRuleKind::Table) fold(rule_.dflt);
  return bound;
}

std::vector<Int> ProductSpec::prime_set() const {
  std::set<Int> seen;
  auto fold_value = [&](const CoefficientValue& v) {
    if (v.kind() == CoeffKind::BigPow) {
      primes_of(v.bp_num(), seen);
      primes_of(v.bp_base(), seen);
    } else if (v.kind() == CoeffKind::Rational && v.rat() != 0) {
      primes_of(num(v.rat()), seen);
      primes_of(den(v.rat()), seen);
    }
  };
  auto fold = [&](const CoeffEntry& e) {
    if (e.kind == CoeffEntry::Kind::Uniform) fold_value(e.uniform);
    if (e.kind == CoeffEntry::Kind::List)
      for (const auto& v : e.list) fold_value(v);
  };
  for (const auto& e : rule_.entries) fold(e);
  if (rule_.kind == CoeffRuleKind::Table) fold(rule_.dflt);
  if (rule_.kind == CoeffRuleKind::FactorialSupport) primes_of(rule_.fact_base, seen);
  seen.erase(Int(1));
  return {seen.begin(), seen.end()};
}

CoefficientValue coefficient(const ProductSpec& spec, std::size_t tail, const Int& m) {
  if (m < 0) raise(ErrorCode::BadArgument, "coefficient index must be >= 0");
  const RadixSequence& radix = spec.radix();
  CoefficientValue acc = spec.domain() == Domain::UnitRoot
                             ? CoefficientValue::unit_root(0, spec.unit_order())
                             : CoefficientValue::one();
  Int rest = m;
  for (std::size_t k = 0; rest > 0; ++k) {
    Int q(radix.q(tail + k + 1));
    Int d = rest % q;
    rest /= q;
    if (d != 0) acc = acc * spec.coeff(static_cast<std::int64_t>(d), tail + k);
  }
  return acc;
}

std::vector<CoefficientValue> expand(const ProductSpec& spec, std::size_t tail, std::size_t N) {
  if (N < 1) raise(ErrorCode::BadArgument, "expand needs N >= 1");
  const RadixSequence& radix = spec.radix();
  std::vector<CoefficientValue> acc(N, CoefficientValue::zero());
  acc[0] = spec.domain() == Domain::UnitRoot ? CoefficientValue::unit_root(0, spec.unit_order())
                                             : CoefficientValue::one();
  Int weight = 1;  // Q_{tail+k} / Q_tail
  for (std::size_t k = 0;; ++k) {
    if (weight >= N) break;
    const std::size_t w = static_cast<std::size_t>(weight);
    const std::int64_t q_next = radix.q(tail + k + 1);
    // in-place convolution with 1 + sum_s c(s, tail+k) z^{s w}
    for (std::size_t i = N; i-- > w;) {
      for (std::int64_t s = 1; s <= q_next - 1; ++s) {
        const std::size_t shift = static_cast<std::size_t>(s) * w;
        if (shift > i) break;
        if (acc[i - shift].is_zero()) continue;
        CoefficientValue term = acc[i - shift] * spec.coeff(s, tail + k);
        acc[i] = acc[i].is_zero() ? term : acc[i] + term;
      }
    }
    weight *= q_next;
  }
  return acc;
}

CoefficientStream::CoefficientStream(ProductSpec spec, std::size_t tail)
    : spec_(std::move(spec)), tail_(tail) {}

void CoefficientStream::extend(std::size_t n) const {
  if (cache_.size() >= n) return;
  std::size_t target = std::max<std::size_t>(64, cache_.size() * 2);
  while (target < n) target *= 2;
  cache_ = expand(spec_, tail_, target);
}

CoefficientValue CoefficientStream::at(std::size_t m) const {
  std::lock_guard<std::mutex> lock(mutex_);
  extend(m + 1);
  return cache_[m];
}

CoefficientValue CoefficientStream::value(const Int& m) const {
  return coefficient(spec_, tail_, m);
}

std::vector<CoefficientValue> CoefficientStream::prefix(std::size_t n) const {
  std::lock_guard<std::mutex> lock(mutex_);
  extend(n);
  return {cache_.begin(), cache_.begin() + static_cast<std::ptrdiff_t>(n)};
}

CopyStructure copy_structure_of(const std::vector<CoefficientValue>& coeffs,
                                std::size_t block_len) {
  if (block_len == 0 || coeffs.size() % block_len != 0)
    raise(ErrorCode::BadArgument, "coefficients must cover whole blocks");
  CopyStructure out;
  const std::size_t blocks = coeffs.size() / block_len;
  out.scalars.reserve(blocks);
  for (std::size_t l = 0; l < blocks; ++l) {
    const CoefficientValue& scalar = coeffs[l * block_len];
    out.scalars.push_back(scalar);
    for (std::size_t r = 0; r < block_len; ++r) {
      const CoefficientValue& expect = scalar * coeffs[r];
      if (!(coeffs[l * block_len + r] == expect)) {
        out.violation_at = Int(l * block_len + r);
        return out;
      }
    }
  }
  return out;
}

CopyStructure copy_structure(const ProductSpec& spec, std::size_t block_level,
                             std::size_t num_blocks) {
  if (num_blocks < 1) raise(ErrorCode::BadArgument, "need at least one block");
  Int block = spec.radix().weight(block_level);
  if (block * num_blocks > 100000000)
    raise(ErrorCode::DepthTooLarge, "copy-structure request too large");
  const std::size_t block_len = static_cast<std::size_t>(block);
  auto coeffs = expand(spec, 0, block_len * num_blocks);
  return copy_structure_of(coeffs, block_len);
}

namespace {

// Exact value of one factor at z = 1/b.
Rat factor_at(const ProductSpec& spec, const Int& b, std::size_t y, const Int& weight) {
  Rat sum = 1;
  const std::int64_t q_next = spec.radix().q(y + 1);
  for (std::int64_t s = 1; s <= q_next - 1; ++s) {
    CoefficientValue c = spec.coeff(s, y);
    if (c.is_zero()) continue;
    sum += c.to_rat() / Rat(ipow(b, weight * s));
  }
  return sum;
}

// Partial product and the tail-sum bound; false when the bound is not yet
// below 1 (tail not contractive at this depth).
bool enclose_at_depth(const ProductSpec& spec, const Int& b, std::size_t depth,
                      RatInterval& out) {
  if (spec.domain() != Domain::Rational)
    raise(ErrorCode::DomainMismatch, "evaluate needs the rational domain");
  if (b < 2) raise(ErrorCode::BadArgument, "evaluation base must be >= 2");
  Rat max_abs = spec.coeff_abs_bound();  // DivergentSpec when unbounded
  Rat partial = 1;
  Int weight = 1;
  for (std::size_t y = 0; y < depth; ++y) {
    Rat f = factor_at(spec, b, y, weight);
    if (f == 0)
      raise(ErrorCode::ZeroFactor, "factor " + std::to_string(y) + " vanishes at 1/" + b.str());
    partial *= f;
    weight *= spec.radix().q(y + 1);
  }
  // sum of tail term bounds: max_abs * (b/(b-1))^2 * b^-Q_depth
  Rat geom = Rat(b, b - 1);
  Rat tail_sum = max_abs * geom * geom / Rat(ipow(b, weight));
  if (tail_sum >= 1) return false;
  Rat lo_mult = 1 - tail_sum;
  Rat hi_mult = Rat(1) / (1 - tail_sum);
  if (partial >= 0) {
    out.lo = partial * lo_mult;
    out.hi = partial * hi_mult;
  } else {
    out.lo = partial * hi_mult;
    out.hi = partial * lo_mult;
  }
  return true;
}

}  // namespace

Rat partial_product_at(const ProductSpec& spec, const Int& b, std::size_t depth) {
  if (b < 2) raise(ErrorCode::BadArgument, "evaluation base must be >= 2");
  Rat partial = 1;
  Int weight = 1;
  for (std::size_t y = 0; y < depth; ++y) {
    Rat f = factor_at(spec, b, y, weight);
    if (f == 0)
      raise(ErrorCode::ZeroFactor, "factor " + std::to_string(y) + " vanishes at 1/" + b.str());
    partial *= f;
    weight *= spec.radix().q(y + 1);
  }
  return partial;
}

RatInterval evaluate_at_depth(const ProductSpec& spec, const Int& b, std::size_t depth) {
  RatInterval out;
  if (!enclose_at_depth(spec, b, depth, out))
    raise(ErrorCode::BadArgument, "tail bound unusable at this depth; go deeper");
  return out;
}

RatInterval evaluate(const ProductSpec& spec, const Int& b, const Rat& target_abs_error) {
  if (target_abs_error <= 0) raise(ErrorCode::BadArgument, "target error must be positive");
  for (std::size_t depth = 1; depth <= 10000; ++depth) {
    RatInterval iv;
    if (!enclose_at_depth(spec, b, depth, iv)) continue;
    if (iv.width() <= 2 * target_abs_error) return iv;
  }
  raise(ErrorCode::DivergentSpec, "evaluation did not reach the target width");
}

BoundednessReport boundedness_report(const ProductSpec& spec, std::size_t n_max,
                                     std::size_t m_max) {
  BoundednessReport out;
  out.sup_ratio = CoefficientValue::one();  // n = 0, m = 0 gives ratio 1
  auto base = expand(spec, 0, m_max + 1);
  for (std::size_t n = 0; n <= n_max; ++n) {
    auto tail = n == 0 ? base : expand(spec, n, m_max + 1);
    for (std::size_t m = 0; m <= m_max; ++m) {
      if (tail[m].is_zero()) continue;
      if (base[m].is_zero()) {
        out.incomparable_at.push_back(m);
        continue;
      }
      CoefficientValue ratio = (tail[m] / base[m]).abs();
      bool bigger;
      if (ratio.materializable() && out.sup_ratio.materializable()) {
        bigger = ratio.to_rat() > out.sup_ratio.to_rat();
      } else {
        bigger = log2_compare(ratio.abs_log2(), out.sup_ratio.abs_log2()) == Cmp::Greater;
      }
      if (bigger) {
        out.sup_ratio = ratio;
        out.arg_n = n;
        out.arg_m = m;
      }
    }
  }
  std::sort(out.incomparable_at.begin(), out.incomparable_at.end());
  out.incomparable_at.erase(std::unique(out.incomparable_at.begin(), out.incomparable_at.end()),
                            out.incomparable_at.end());
  return out;
}

}  // namespace cantor
