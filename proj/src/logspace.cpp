#include "cantor/logspace.hpp"

#include <mutex>
#include <vector>

namespace cantor {

namespace {

using boost::multiprecision::abs;
using boost::multiprecision::msb;

// floor(2^prec * frac(log2 n)) by binary digit extraction on a fixed-point
// interval; both interval ends are maintained with outward rounding so every
// extracted bit is certified. Returns false when a digit stays ambiguous at
// the working precision (caller retries wider).
bool frac_log2_bits(const Int& n, unsigned prec, unsigned guard, Int& frac_out, unsigned& bits_out) {
  const std::size_t k = msb(n);
  const unsigned F = prec + guard;
  Int lo = (n << F) >> k;  // floor(n * 2^F / 2^k), value in [2^F, 2^{F+1})
  Int hi = lo + 1;
  const Int two = Int(1) << (F + 1);
  const Int scale = Int(1) << F;
  Int frac = 0;
  for (unsigned i = 0; i < prec; ++i) {
    lo = (lo * lo) >> F;
    hi = ((hi * hi) + scale - 1) >> F;
    frac <<= 1;
    if (hi < two) {
      // bit 0
    } else if (lo >= two) {
      frac |= 1;
      lo >>= 1;
      hi = (hi + 1) >> 1;
    } else {
      bits_out = i;
      frac_out = frac >> 1;
      return false;
    }
  }
  frac_out = frac;
  bits_out = prec;
  return true;
}

std::pair<Rat, Rat> log2_bracket_uncached(const Int& n, unsigned prec) {
  if (n <= 0) raise(ErrorCode::BadArgument, "log2 of nonpositive integer");
  if (is_pow2(n)) {
    Rat v(n == 1 ? 0 : static_cast<long>(msb(n)));
    return {v, v};
  }
  const long k = static_cast<long>(msb(n));
  Int frac;
  unsigned got = 0;
  for (unsigned guard = 32;; guard *= 4) {
    if (frac_log2_bits(n, prec, guard, frac, got)) break;
    if (guard >= 2048) break;  // give a wider but still certified bracket
  }
  Rat lo = Rat(k) + Rat(frac, Int(1) << got);
  Rat hi = lo + Rat(1, Int(1) << got);
  return {lo, hi};
}

std::mutex cache_mutex;
std::map<std::pair<Int, unsigned>, std::pair<Rat, Rat>> bracket_cache;

// Split off prime factors below the trial bound; the leftover cofactor (prime
// or a product of large primes) stays as a single term.
std::vector<std::pair<Int, unsigned>> small_factorization(Int n) {
  std::vector<std::pair<Int, unsigned>> out;
  auto take = [&](const Int& p) {
    unsigned e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (e) out.emplace_back(p, e);
  };
  take(2);
  take(3);
  for (Int p = 5; p * p <= n && p < 65536; p += 6) {
    take(p);
    take(p + 2);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

// Largest e with n = m^e; returns (m, e).
std::pair<Int, unsigned> perfect_power_root(const Int& n) {
  if (n < 4) return {n, 1};
  const std::size_t bits = msb(n) + 1;
  for (unsigned e = static_cast<unsigned>(bits); e >= 2; --e) {
    // integer e-th root by Newton iteration
    Int x = Int(1) << (bits / e + 1);
    while (true) {
      Int xe = ipow(x, e - 1);
      Int next = ((e - 1) * x + n / xe) / e;
      if (next >= x) break;
      x = next;
    }
    if (ipow(x, e) == n) {
      auto [m, e2] = perfect_power_root(x);
      return {m, e * e2};
    }
  }
  return {n, 1};
}

}  // namespace

std::pair<Rat, Rat> log2_bracket(const Int& n, unsigned prec) {
  {
    std::lock_guard<std::mutex> lock(cache_mutex);
    auto it = bracket_cache.find({n, prec});
    if (it != bracket_cache.end()) return it->second;
  }
  auto r = log2_bracket_uncached(n, prec);
  {
    std::lock_guard<std::mutex> lock(cache_mutex);
    if (bracket_cache.size() > 4096) bracket_cache.clear();
    bracket_cache[{n, prec}] = r;
  }
  return r;
}

void Log2Sum::add_term(const Int& k, const Rat& coeff) {
  if (coeff == 0 || k == 1) return;
  for (const auto& [p, e] : small_factorization(k)) {
    if (is_pow2(p)) {
      constant_ += coeff * Rat(Int(e) * static_cast<long>(msb(p)));
      continue;
    }
    auto [root, re] = perfect_power_root(p);
    Rat c = coeff * Rat(Int(e) * re);
    auto it = terms_.find(root);
    if (it == terms_.end()) {
      terms_.emplace(root, c);
    } else {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }
}

Log2Sum Log2Sum::of_int(const Int& k) {
  if (k < 1) raise(ErrorCode::BadArgument, "log2 of nonpositive integer");
  Log2Sum s;
  s.add_term(k, 1);
  return s;
}

Log2Sum Log2Sum::of_rat_abs(const Rat& x) {
  if (x == 0) raise(ErrorCode::BadArgument, "log2 of zero");
  Log2Sum s;
  s.add_term(boost::multiprecision::abs(num(x)), 1);
  s.add_term(den(x), -1);
  return s;
}

Log2Sum& Log2Sum::operator+=(const Log2Sum& o) {
  constant_ += o.constant_;
  for (const auto& [k, c] : o.terms_) {
    auto it = terms_.find(k);
    if (it == terms_.end()) {
      terms_.emplace(k, c);
    } else {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }
  return *this;
}

Log2Sum& Log2Sum::operator-=(const Log2Sum& o) {
  Log2Sum neg = o;
  neg *= Rat(-1);
  return *this += neg;
}

Log2Sum& Log2Sum::operator*=(const Rat& c) {
  if (c == 0) {
    constant_ = 0;
    terms_.clear();
    return *this;
  }
  constant_ *= c;
  for (auto& [k, coeff] : terms_) coeff *= c;
  return *this;
}

const Rat& Log2Sum::exact_value() const {
  if (!is_exact()) raise(ErrorCode::PrecisionExhausted, "log sum has irrational terms");
  return constant_;
}

std::pair<Rat, Rat> Log2Sum::bracket(unsigned prec) const {
  Rat lo = constant_, hi = constant_;
  for (const auto& [k, c] : terms_) {
    auto [blo, bhi] = log2_bracket(k, prec);
    if (c >= 0) {
      lo += c * blo;
      hi += c * bhi;
    } else {
      lo += c * bhi;
      hi += c * blo;
    }
  }
  return {lo, hi};
}

std::pair<Rat, Rat> LogQuantity::bracket(unsigned prec) const {
  auto [lo, hi] = sum.bracket(prec);
  return {lo + slack_lo, hi + slack_hi};
}

namespace {

// Sign of (sum + [slack_lo, slack_hi]) with escalating precision.
Cmp sign_of(const Log2Sum& sum, const Rat& slack_lo, const Rat& slack_hi) {
  if (sum.is_exact()) {
    Rat lo = sum.exact_value() + slack_lo;
    Rat hi = sum.exact_value() + slack_hi;
    if (hi < 0) return Cmp::Less;
    if (lo > 0) return Cmp::Greater;
    if (lo == 0 && hi == 0) return Cmp::Equal;
    raise(ErrorCode::PrecisionExhausted, "slack interval straddles zero");
  }
  for (unsigned prec = 64; prec <= 8192; prec *= 2) {
    auto [lo, hi] = sum.bracket(prec);
    if (hi + slack_hi < 0) return Cmp::Less;
    if (lo + slack_lo > 0) return Cmp::Greater;
  }
  raise(ErrorCode::PrecisionExhausted, "log2 comparison did not separate at 8192 bits");
}

}  // namespace

Cmp log2_compare(const Log2Sum& a, const Log2Sum& b) {
  return sign_of(a - b, Rat(0), Rat(0));
}

Cmp log2_compare(const LogQuantity& a, const LogQuantity& b) {
  return sign_of(a.sum - b.sum, a.slack_lo - b.slack_hi, a.slack_hi - b.slack_lo);
}

}  // namespace cantor
