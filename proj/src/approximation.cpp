#include "cantor/approximation.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace cantor {

namespace {

using boost::multiprecision::abs;
using boost::multiprecision::gcd;
using boost::multiprecision::lcm;

Int ceil_rat(const Rat& r) {
  Int q = num(r) / den(r);
  if (q * den(r) < num(r)) ++q;
  return q;
}

// 2^k as a rational for integer k of either sign.
Rat pow2_rat(const Int& k) {
  if (k >= 0) return Rat(Int(1) << static_cast<std::size_t>(k));
  return Rat(1, Int(1) << static_cast<std::size_t>(-k));
}

}  // namespace

LogQuantity log2_one_plus_abs(const CoefficientValue& ratio) {
  using boost::multiprecision::abs;
  LogQuantity q;
  if (ratio.materializable()) {
    Rat x = abs(ratio.to_rat());
    q.sum = Log2Sum::of_rat_abs(1 + x);
    return q;
  }
  Log2Sum lx = ratio.abs_log2();
  auto [klo, khi] = lx.bracket(64);
  if (khi <= -1) {
    // x <= 1/2: 0 < log2(1+x) <= 2x <= 2^(khi+1)
    q.slack_hi = pow2_rat(ceil_rat(khi) + 1);
  } else if (klo >= 1) {
    // x >= 2: log2 x < log2(1+x) <= log2 x + 2^(1-klo)
    q.sum = lx;
    q.slack_hi = pow2_rat(ceil_rat(1 - klo));
  } else {
    // max(1, x) < 1+x <= 2 max(1, x)
    q.slack_lo = std::max(Rat(0), klo);
    q.slack_hi = std::max(Rat(0), khi) + 1;
  }
  return q;
}

namespace {

// sum over y < n, 1 <= s <= q_{y+1}-1 of log2 of the reduced denominators.
Log2Sum denominator_product_log2(const ProductSpec& spec, std::size_t n) {
  Log2Sum acc;
  for (std::size_t y = 0; y < n; ++y) {
    const std::int64_t q_next = spec.radix().q(y + 1);
    for (std::int64_t s = 1; s <= q_next - 1; ++s) acc += spec.coeff(s, y).den_log2();
  }
  return acc;
}

double rough_log2(const Rat& x) {
  Int p = abs(num(x)), q = den(x);
  if (p == 0) return -std::numeric_limits<double>::infinity();
  auto part = [](const Int& v) {
    std::size_t bits = bit_length(v);
    if (bits <= 53) return std::log2(v.convert_to<double>());
    Int top = v >> (bits - 53);
    return std::log2(top.convert_to<double>()) + static_cast<double>(bits - 53);
  };
  return part(p) - part(q);
}

}  // namespace

std::string variant_name(IneqVariant v) {
  switch (v) {
    case IneqVariant::Thm21First: return "THM21_FIRST";
    case IneqVariant::Thm21Second: return "THM21_SECOND";
    case IneqVariant::Prop23Main: return "PROP23";
    case IneqVariant::Prop23Remark: return "PROP23_REMARK";
  }
  return "?";
}

RepetitionWitness find_repetition(const ProductSpec& spec, std::size_t n, std::int64_t window) {
  if (window < 1) raise(ErrorCode::BadArgument, "witness window must be >= 1");
  std::vector<CoefficientValue> a;
  a.reserve(static_cast<std::size_t>(window) + 1);
  for (std::int64_t m = 0; m <= window; ++m) a.push_back(coefficient(spec, n, Int(m)));
  for (std::int64_t t = 0; t < window; ++t) {
    if (a[static_cast<std::size_t>(t)].is_zero()) continue;
    for (std::int64_t s = 1; t + s <= window; ++s) {
      const CoefficientValue& hi = a[static_cast<std::size_t>(t + s)];
      if (hi.is_zero()) continue;
      RepetitionWitness w;
      w.tail = n;
      w.s = s;
      w.t = t;
      w.ratio = hi / a[static_cast<std::size_t>(t)];
      w.window = window;
      return w;
    }
  }
  raise(ErrorCode::NoWitness, "no nonzero coefficient pair within window " +
                                  std::to_string(window) + " at tail " + std::to_string(n));
}

RationalApproximant build_approximant(const ProductSpec& spec, const RepetitionWitness& w) {
  if (w.s < 1 || w.t < 0 || w.s > w.window || w.t + w.s > w.window)
    raise(ErrorCode::WitnessInvalid, "witness indices out of range");
  const std::size_t s = static_cast<std::size_t>(w.s);
  const std::size_t t = static_cast<std::size_t>(w.t);
  const std::size_t probe_to = s + t + 4;
  std::vector<Rat> a(probe_to + 1);
  for (std::size_t m = 0; m <= probe_to; ++m) a[m] = coefficient(spec, w.tail, Int(m)).to_rat();
  const Rat r = w.ratio.to_rat();
  if (r == 0) raise(ErrorCode::WitnessInvalid, "witness ratio must be nonzero");

  auto series = [&](std::size_t m) {  // coefficient m of (1 - r z^s) f_n
    Rat v = a[m];
    if (m >= s) v -= r * a[m - s];
    return v;
  };

  RationalApproximant out;
  out.witness = w;
  out.p.resize(s + t);
  for (std::size_t m = 0; m < s + t; ++m) out.p[m] = series(m);
  while (!out.p.empty() && out.p.back() == 0) out.p.pop_back();

  // remainder must vanish through degree s+t; degree s+t is the witness
  // equation itself
  for (std::size_t m = 0; m <= s + t; ++m) {
    Rat rem = series(m) - (m < out.p.size() ? out.p[m] : Rat(0));
    if (rem != 0)
      raise(ErrorCode::WitnessInvalid,
            "remainder order violated at degree " + std::to_string(m));
  }
  for (std::size_t m = s + t + 1; m <= probe_to; ++m) out.remainder_probe.push_back(series(m));

  Int c = 1;
  for (const auto& coeffv : out.p) c = lcm(c, den(coeffv));
  out.clearing_constant = c;
  return out;
}

InequalityReport check_theorem21(const ProductSpec& spec, const Int& b, const Rat& epsilon,
                                 IneqVariant variant, std::int64_t n_lo, std::int64_t n_hi,
                                 std::int64_t window) {
  if (variant != IneqVariant::Thm21First && variant != IneqVariant::Thm21Second)
    raise(ErrorCode::BadArgument, "variant must be THM21_FIRST or THM21_SECOND");
  if (spec.domain() != Domain::Rational)
    raise(ErrorCode::DomainMismatch, "the height inequality needs rational coefficients");
  if (b < 2) raise(ErrorCode::BadArgument, "base must be >= 2");
  if (epsilon <= 0) raise(ErrorCode::BadArgument, "epsilon must be positive");
  if (n_lo < 0 || n_hi < n_lo) raise(ErrorCode::BadArgument, "bad tail range");

  InequalityReport rep;
  rep.variant = variant;
  rep.epsilon = epsilon;
  if (variant == IneqVariant::Thm21Second) rep.prime_set = spec.prime_set();
  rep.notes.push_back("denominators b_{s,y} are taken from coefficients in lowest terms");

  const Log2Sum log_b = Log2Sum::of_int(b);
  std::optional<LogQuantity> prev_decay;
  for (std::int64_t n = n_lo; n <= n_hi; ++n) {
    const std::size_t nn = static_cast<std::size_t>(n);
    RepetitionWitness w = find_repetition(spec, nn, window);
    RationalApproximant ap = build_approximant(spec, w);

    Log2Sum dens = denominator_product_log2(spec, nn);
    dens += Log2Sum::of_int(ap.clearing_constant);  // C_n * prod b_{s,y}
    Log2Sum alpha = w.alpha_abs_log2();
    Log2Sum beta = w.beta_log2();

    LogQuantity lhs = log2_one_plus_abs(w.ratio);
    if (variant == IneqVariant::Thm21First) {
      lhs += alpha * (1 + epsilon);
      lhs += beta * (2 + epsilon);
      lhs += dens * (3 + epsilon);
    } else {
      lhs += alpha * epsilon;
      lhs += (beta + dens) * (1 + epsilon);
    }
    const Int weight = spec.radix().weight(nn);
    LogQuantity rhs;
    rhs.sum = log_b * (Rat(weight) * (1 - Rat(window) * epsilon));

    Cmp cmp = log2_compare(lhs, rhs);
    IneqRow row;
    row.index = n;
    row.holds = cmp == Cmp::Less;
    row.lhs_exact = lhs.is_exact();
    row.rhs_exact = rhs.is_exact();
    auto [llo, lhi] = lhs.bracket(128);
    auto [rlo, rhi] = rhs.bracket(128);
    row.lhs_log2 = row.holds ? lhi : llo;
    row.rhs_log2 = row.holds ? rlo : rhi;
    rep.rows.push_back(row);
    if (!row.holds && !rep.first_failure) rep.first_failure = Int(n);

    // decay of (alpha/beta) b^-Q_n
    LogQuantity decay;
    decay.sum = alpha - beta - log_b * Rat(weight);
    rep.decay_log2.push_back(decay.bracket(128).second);
    if (prev_decay && log2_compare(decay, *prev_decay) != Cmp::Less) rep.decay_monotone = false;
    prev_decay = decay;
  }
  return rep;
}

IntSeq IntSeq::constant(Int v) {
  IntSeq s;
  s.kind = Kind::Constant;
  s.values = {std::move(v)};
  return s;
}

IntSeq IntSeq::periodic(std::vector<Int> body) {
  if (body.empty()) raise(ErrorCode::SpecInvalid, "empty periodic sequence");
  IntSeq s;
  s.kind = Kind::Periodic;
  s.values = std::move(body);
  return s;
}

IntSeq IntSeq::table(std::vector<Int> prefix, Int dflt) {
  IntSeq s;
  s.kind = Kind::Table;
  s.values = std::move(prefix);
  s.dflt = std::move(dflt);
  return s;
}

IntSeq IntSeq::geom_pow(Int base, Int coeff, Int ratio) {
  if (base < 2 || coeff < 1 || ratio < 2)
    raise(ErrorCode::SpecInvalid, "geom_pow needs base >= 2, coeff >= 1, ratio >= 2");
  IntSeq s;
  s.kind = Kind::GeomPow;
  s.base = std::move(base);
  s.coeff = std::move(coeff);
  s.ratio = std::move(ratio);
  return s;
}

namespace {

const Int& seq_listed(const IntSeq& s, std::size_t y) {
  switch (s.kind) {
    case IntSeq::Kind::Constant: return s.values[0];
    case IntSeq::Kind::Periodic: return s.values[y % s.values.size()];
    case IntSeq::Kind::Table: return y < s.values.size() ? s.values[y] : s.dflt;
    default: raise(ErrorCode::BadArgument, "not a listed sequence");
  }
}

}  // namespace

bool IntSeq::zero_at(std::size_t y) const {
  if (kind == Kind::GeomPow) return false;
  return seq_listed(*this, y) == 0;
}

int IntSeq::sign_at(std::size_t y) const {
  if (kind == Kind::GeomPow) return 1;
  const Int& v = seq_listed(*this, y);
  return v == 0 ? 0 : (v < 0 ? -1 : 1);
}

Log2Sum IntSeq::abs_log2_at(std::size_t y) const {
  if (kind == Kind::GeomPow) return Log2Sum::of_int(base) * Rat(coeff * ipow(ratio, Int(y)));
  const Int& v = seq_listed(*this, y);
  if (v == 0) raise(ErrorCode::BadArgument, "log2 of zero sequence entry");
  return Log2Sum::of_int(abs(v));
}

Int IntSeq::value_at(std::size_t y) const {
  if (kind != Kind::GeomPow) return seq_listed(*this, y);
  Int exp = coeff * ipow(ratio, Int(y));
  if (exp * Int(bit_length(base)) > CoefficientValue::max_bits())
    raise(ErrorCode::CapExceeded, "sequence value exceeds the bit cap at y=" + std::to_string(y));
  return ipow(base, exp);
}

bool IntSeq::coprime_with(const Int& c, std::size_t y) const {
  if (kind == Kind::GeomPow) return gcd(base, c) == 1;
  return gcd(abs(seq_listed(*this, y)), c) == 1;
}

std::vector<Int> IntSeq::prime_set() const {
  std::set<Int> seen;
  auto fold = [&](Int n) {
    n = abs(n);
    for (Int p = 2; p * p <= n && p < 1000000; p == 2 ? ++p : p += 2)
      while (n % p == 0) {
        n /= p;
        seen.insert(p);
      }
    if (n > 1) seen.insert(n);
  };
  if (kind == Kind::GeomPow) {
    fold(base);
  } else {
    for (const auto& v : values)
      if (v != 0) fold(v);
    if (kind == Kind::Table && dflt != 0) fold(dflt);
  }
  return {seen.begin(), seen.end()};
}

InequalityReport check_prop23(const IntSeq& f, const IntSeq& F, const Int& b, const Int& c,
                              const Rat& epsilon, bool remark, std::int64_t y_lo,
                              std::int64_t y_hi) {
  if (b < 2 || c < 2 || c > b) raise(ErrorCode::BadArgument, "need 2 <= c <= b");
  if (epsilon <= 0) raise(ErrorCode::BadArgument, "epsilon must be positive");
  if (y_lo < 0 || y_hi < y_lo) raise(ErrorCode::BadArgument, "bad index range");

  InequalityReport rep;
  rep.variant = remark ? IneqVariant::Prop23Remark : IneqVariant::Prop23Main;
  rep.epsilon = epsilon;
  rep.prime_set = F.prime_set();
  const Rat exponent = epsilon + (remark ? 1 : 2);
  const Log2Sum log_b = Log2Sum::of_int(b);

  Log2Sum hist;  // sum_{j < y} log2 |F_j|
  for (std::int64_t y = 0; y <= y_hi; ++y) {
    const std::size_t yy = static_cast<std::size_t>(y);
    if (F.zero_at(yy))
      raise(ErrorCode::HypothesisViolated, "F_y = 0 at y = " + std::to_string(y));
    if (!f.zero_at(yy) &&
        log2_compare(f.abs_log2_at(yy), F.abs_log2_at(yy)) == Cmp::Greater)
      raise(ErrorCode::HypothesisViolated, "|f_y| > |F_y| at y = " + std::to_string(y));
    if (y >= y_lo) {
      IneqRow row;
      row.index = y;
      LogQuantity rhs;
      rhs.sum = hist * (-exponent) - log_b * (epsilon * pow2_rat(Int(y)));
      if (f.zero_at(yy)) {
        row.holds = true;
        row.lhs_neg_inf = true;
        row.lhs_exact = true;
        row.rhs_exact = rhs.is_exact();
        row.rhs_log2 = rhs.bracket(128).first;
      } else {
        LogQuantity lhs;
        lhs.sum = f.abs_log2_at(yy) - F.abs_log2_at(yy);
        Cmp cmp = log2_compare(lhs, rhs);
        row.holds = cmp != Cmp::Greater;  // the bound is non-strict
        row.lhs_exact = lhs.is_exact();
        row.rhs_exact = rhs.is_exact();
        auto [llo, lhi] = lhs.bracket(128);
        auto [rlo, rhi] = rhs.bracket(128);
        row.lhs_log2 = row.holds ? lhi : llo;
        row.rhs_log2 = row.holds ? rlo : rhi;
      }
      rep.rows.push_back(row);
      if (!row.holds && !rep.first_failure) rep.first_failure = Int(y);
      rep.gcd_ok.push_back(f.coprime_with(c, yy));
    }
    hist += F.abs_log2_at(yy);
  }
  return rep;
}

ProductSpec corollary22_spec(const Int& base) {
  return ProductSpec(RadixSequence::constant(2), Domain::Rational,
                     CoeffRule::factorial_support(base));
}

std::vector<SchmidtTriple> schmidt_triples(const ProductSpec& spec, const Int& b,
                                           std::int64_t n_lo, std::int64_t n_hi,
                                           std::int64_t window) {
  if (spec.domain() != Domain::Rational)
    raise(ErrorCode::DomainMismatch, "triples need rational coefficients");
  if (b < 2) raise(ErrorCode::BadArgument, "base must be >= 2");
  if (n_lo < 0 || n_hi < n_lo) raise(ErrorCode::BadArgument, "bad tail range");

  std::vector<Int> b_primes;
  {
    Int n = b;
    for (Int p = 2; p * p <= n; p == 2 ? ++p : p += 2)
      while (n % p == 0) {
        n /= p;
        if (b_primes.empty() || b_primes.back() != p) b_primes.push_back(p);
      }
    if (n > 1) b_primes.push_back(n);
  }

  std::vector<SchmidtTriple> out;
  for (std::int64_t n = n_lo; n <= n_hi; ++n) {
    const std::size_t nn = static_cast<std::size_t>(n);
    RepetitionWitness w = find_repetition(spec, nn, window);
    RationalApproximant ap = build_approximant(spec, w);
    const Rat ratio = w.ratio.to_rat();
    const Int alpha = num(ratio), beta = den(ratio);
    const Int weight = spec.radix().weight(nn);
    const Int st = Int(w.s + w.t);

    if ((st + 2) * weight * Int(bit_length(b)) > CoefficientValue::max_bits())
      raise(ErrorCode::CapExceeded, "triple exponents exceed the bit cap at n=" +
                                        std::to_string(n));

    // product of the reduced coefficient denominators through the head
    Int denom_prod = 1;
    for (std::size_t y = 0; y < nn; ++y) {
      const std::int64_t q_next = spec.radix().q(y + 1);
      for (std::int64_t s = 1; s <= q_next - 1; ++s)
        denom_prod *= den(spec.coeff(s, y).to_rat());
    }

    const Int& C = ap.clearing_constant;
    const Int pow_st = ipow(b, st * weight);
    const Int pow_t = ipow(b, Int(w.t) * weight);
    SchmidtTriple tr;
    tr.n = nn;
    tr.x1 = C * denom_prod * pow_st * beta;
    tr.x2 = C * denom_prod * alpha * pow_t;

    Rat head = partial_product_at(spec, b, nn);
    Rat p_at = 0;
    const Rat binv = Rat(1, ipow(b, weight));
    Rat z = 1;
    for (const Rat& pk : ap.p) {
      p_at += pk * z;
      z *= binv;
    }
    Rat x3r = Rat(tr.x1) * head * p_at;
    if (den(x3r) != 1)
      raise(ErrorCode::WitnessInvalid, "triple third entry failed to clear denominators");
    tr.x3 = num(x3r);

    // enclosure of Lambda = (x1 - x2) f0(1/b) - x3
    const Int spread = abs(tr.x1 - tr.x2);
    Rat target = Rat(1, ipow(b, (st + 2) * weight)) / Rat(spread + 1);
    RatInterval f0 = evaluate(spec, b, target);
    RatInterval lambda;
    const Int d = tr.x1 - tr.x2;
    if (d >= 0) {
      lambda.lo = Rat(d) * f0.lo - Rat(tr.x3);
      lambda.hi = Rat(d) * f0.hi - Rat(tr.x3);
    } else {
      lambda.lo = Rat(d) * f0.hi - Rat(tr.x3);
      lambda.hi = Rat(d) * f0.lo - Rat(tr.x3);
    }
    tr.linear_form = lambda;

    Rat pb = (1 + abs(ratio)) * Rat(abs(C * C * C) * denom_prod * denom_prod * denom_prod *
                                    beta * beta * abs(alpha)) /
             Rat(ipow(b, weight));
    tr.product_bound = {pb, pb};

    // p-adic weights over the primes of b
    Rat padic = 1;
    bool zero_entry = tr.x3 == 0;
    if (!zero_entry) {
      for (const Int& p : b_primes) {
        for (Int v : {tr.x1, tr.x2, tr.x3}) {
          while (v % p == 0) {
            v /= p;
            padic /= Rat(p);
          }
        }
      }
    }
    RatInterval abs_lambda;
    if (lambda.lo >= 0) {
      abs_lambda = lambda;
    } else if (lambda.hi <= 0) {
      abs_lambda = {-lambda.hi, -lambda.lo};
    } else {
      abs_lambda = {Rat(0), std::max(Rat(-lambda.lo), lambda.hi)};
    }
    Rat scale = zero_entry ? Rat(0) : Rat(abs(tr.x1) * abs(tr.x2)) * padic;
    tr.subspace_product = {abs_lambda.lo * scale, abs_lambda.hi * scale};

    tr.max_height = std::max({abs(tr.x1), abs(tr.x2), abs(tr.x3)});
    if (abs_lambda.lo > 0) {
      tr.log_linear_form = rough_log2(abs_lambda.lo);
      tr.log_height = rough_log2(Rat(tr.max_height));
      if (*tr.log_height > 0) tr.decay_ratio = *tr.log_linear_form / *tr.log_height;
    }
    out.push_back(std::move(tr));
  }
  return out;
}

}  // namespace cantor
