#include "cantor/coefficient.hpp"

#include <atomic>
#include <cstdlib>
#include <mutex>

namespace cantor {

namespace {

using boost::multiprecision::abs;

std::mutex cap_mutex;
std::optional<Int> cap_override;

Int env_or_default_cap() {
  if (const char* env = std::getenv("CANTOR_MAX_BITS")) {
    try {
      Int v(env);
      if (v > 0) return v;
    } catch (const std::runtime_error&) {
    }
  }
  return Int(1) << 20;
}

}  // namespace

Int CoefficientValue::max_bits() {
  std::lock_guard<std::mutex> lock(cap_mutex);
  if (cap_override) return *cap_override;
  return env_or_default_cap();
}

void CoefficientValue::set_max_bits(std::optional<Int> bits) {
  std::lock_guard<std::mutex> lock(cap_mutex);
  cap_override = std::move(bits);
}

bool CoefficientValue::pow_fits(const Int& base, const Int& exp) {
  // upper estimate of bit size: exp * bits(base)
  return exp * Int(bit_length(base)) <= max_bits();
}

CoefficientValue CoefficientValue::rational(Rat v) {
  CoefficientValue c;
  c.kind_ = CoeffKind::Rational;
  c.rat_ = std::move(v);
  return c;
}

CoefficientValue CoefficientValue::bigpow(Int n, Int base, Int exp) {
  if (base < 2) raise(ErrorCode::SpecInvalid, "bigpow base must be >= 2");
  if (exp < 0) raise(ErrorCode::SpecInvalid, "bigpow exponent must be >= 0");
  if (n == 0) return rational(0);
  while (exp > 0 && n % base == 0) {
    n /= base;
    --exp;
  }
  if (exp == 0) return rational(Rat(n));
  if (pow_fits(base, exp)) return rational(Rat(n, ipow(base, exp)));
  CoefficientValue c;
  c.kind_ = CoeffKind::BigPow;
  c.num_ = std::move(n);
  c.base_ = std::move(base);
  c.exp_ = std::move(exp);
  return c;
}

CoefficientValue CoefficientValue::unit_root(std::int64_t residue, std::int64_t order) {
  if (order < 1) raise(ErrorCode::SpecInvalid, "unit root order must be >= 1");
  CoefficientValue c;
  c.kind_ = CoeffKind::UnitRoot;
  c.residue_ = ((residue % order) + order) % order;
  c.order_ = order;
  return c;
}

bool CoefficientValue::is_zero() const {
  return kind_ == CoeffKind::Rational && rat_ == 0;
}

bool CoefficientValue::is_one() const {
  if (kind_ == CoeffKind::Rational) return rat_ == 1;
  if (kind_ == CoeffKind::UnitRoot) return residue_ == 0;
  return false;
}

std::optional<Int> CoefficientValue::den_as_base_power(const Int& base) const {
  // rational with denominator base^k -> k
  Int d = den(rat_);
  Int k = 0;
  while (d % base == 0) {
    d /= base;
    ++k;
  }
  if (d == 1) return k;
  return std::nullopt;
}

CoefficientValue CoefficientValue::operator*(const CoefficientValue& o) const {
  if (kind_ == CoeffKind::UnitRoot || o.kind_ == CoeffKind::UnitRoot) {
    if (kind_ != o.kind_ || order_ != o.order_) {
      // 1 * w and 0 * w come up when seeding accumulators
      if (is_one()) return o;
      if (o.is_one()) return *this;
      if (is_zero() || o.is_zero()) return zero();
      raise(ErrorCode::DomainMismatch, "unit-root multiplied with rational");
    }
    return unit_root(residue_ + o.residue_, order_);
  }
  if (kind_ == CoeffKind::Rational && o.kind_ == CoeffKind::Rational)
    return rational(rat_ * o.rat_);
  if (kind_ == CoeffKind::BigPow && o.kind_ == CoeffKind::BigPow) {
    if (base_ == o.base_) return bigpow(num_ * o.num_, base_, exp_ + o.exp_);
    raise(ErrorCode::CapExceeded, "bigpow product with mismatched bases");
  }
  const CoefficientValue& bp = kind_ == CoeffKind::BigPow ? *this : o;
  const CoefficientValue& rt = kind_ == CoeffKind::BigPow ? o : *this;
  if (rt.rat_ == 0) return zero();
  if (auto k = rt.den_as_base_power(bp.base_))
    return bigpow(bp.num_ * num(rt.rat_), bp.base_, bp.exp_ + *k);
  raise(ErrorCode::CapExceeded, "bigpow times rational with incompatible denominator");
}

CoefficientValue CoefficientValue::operator+(const CoefficientValue& o) const {
  if (is_zero()) return o;
  if (o.is_zero()) return *this;
  if (kind_ == CoeffKind::UnitRoot || o.kind_ == CoeffKind::UnitRoot)
    raise(ErrorCode::DomainMismatch, "unit roots have no additive form here");
  if (kind_ == CoeffKind::Rational && o.kind_ == CoeffKind::Rational)
    return rational(rat_ + o.rat_);
  if (kind_ == CoeffKind::BigPow && o.kind_ == CoeffKind::BigPow) {
    if (base_ != o.base_) raise(ErrorCode::CapExceeded, "bigpow sum with mismatched bases");
    const bool le = exp_ <= o.exp_;
    const Int& elo = le ? exp_ : o.exp_;
    const Int& ehi = le ? o.exp_ : exp_;
    const Int& nlo = le ? num_ : o.num_;
    const Int& nhi = le ? o.num_ : num_;
    Int diff = ehi - elo;
    if (!pow_fits(base_, diff))
      raise(ErrorCode::CapExceeded, "bigpow sum needs " + diff.str() + " base digits");
    return bigpow(nlo * ipow(base_, diff) + nhi, base_, ehi);
  }
  const CoefficientValue& bp = kind_ == CoeffKind::BigPow ? *this : o;
  const CoefficientValue& rt = kind_ == CoeffKind::BigPow ? o : *this;
  if (auto k = rt.den_as_base_power(bp.base_))
    return bp + bigpow(num(rt.rat_), bp.base_, *k);
  raise(ErrorCode::CapExceeded, "bigpow sum with incompatible rational");
}

CoefficientValue CoefficientValue::negated() const {
  switch (kind_) {
    case CoeffKind::Rational: return rational(-rat_);
    case CoeffKind::BigPow: return bigpow(-num_, base_, exp_);
    case CoeffKind::UnitRoot:
      raise(ErrorCode::DomainMismatch, "unit roots have no negation here");
  }
  return zero();
}

CoefficientValue CoefficientValue::operator-(const CoefficientValue& o) const {
  return *this + o.negated();
}

CoefficientValue CoefficientValue::operator/(const CoefficientValue& o) const {
  if (o.is_zero()) raise(ErrorCode::BadArgument, "division by zero coefficient");
  switch (o.kind_) {
    case CoeffKind::UnitRoot:
      if (kind_ != CoeffKind::UnitRoot || order_ != o.order_)
        raise(ErrorCode::DomainMismatch, "unit-root division domain mismatch");
      return unit_root(residue_ - o.residue_, order_);
    case CoeffKind::Rational: {
      if (kind_ == CoeffKind::Rational) return rational(rat_ / o.rat_);
      // bigpow / rational: multiply by inverse
      Rat inv = Rat(den(o.rat_), num(o.rat_));
      return *this * rational(inv);
    }
    case CoeffKind::BigPow: {
      // x / (n/b^e) = x * b^e / n ; exact only if n divides the numerator part
      if (kind_ == CoeffKind::BigPow) {
        if (base_ != o.base_) raise(ErrorCode::CapExceeded, "bigpow quotient base mismatch");
        if (num_ % o.num_ == 0 && exp_ >= o.exp_)
          return bigpow(num_ / o.num_, base_, exp_ - o.exp_);
        if (num_ % o.num_ == 0) {
          Int diff = o.exp_ - exp_;
          if (!pow_fits(base_, diff)) raise(ErrorCode::CapExceeded, "bigpow quotient too large");
          return rational(Rat(ipow(base_, diff) * (num_ / o.num_)));
        }
        raise(ErrorCode::CapExceeded, "bigpow quotient is not exactly representable");
      }
      if (kind_ == CoeffKind::Rational) {
        if (rat_ == 0) return zero();
        Rat scaled = rat_ / Rat(o.num_);
        if (!pow_fits(o.base_, o.exp_))
          raise(ErrorCode::CapExceeded, "rational over bigpow exceeds cap");
        return rational(scaled * Rat(ipow(o.base_, o.exp_)));
      }
      break;
    }
  }
  raise(ErrorCode::DomainMismatch, "unsupported coefficient division");
}

CoefficientValue CoefficientValue::abs() const {
  switch (kind_) {
    case CoeffKind::Rational: return rational(rat_ < 0 ? -rat_ : rat_);
    case CoeffKind::BigPow: return bigpow(num_ < 0 ? -num_ : num_, base_, exp_);
    case CoeffKind::UnitRoot: return rational(1);
  }
  return zero();
}

bool CoefficientValue::operator==(const CoefficientValue& o) const {
  if (kind_ == CoeffKind::UnitRoot || o.kind_ == CoeffKind::UnitRoot) {
    if (kind_ != o.kind_) return false;
    return order_ == o.order_ && residue_ == o.residue_;
  }
  if (kind_ == o.kind_ && kind_ == CoeffKind::Rational) return rat_ == o.rat_;
  if (kind_ == o.kind_ && base_ == o.base_) return num_ == o.num_ && exp_ == o.exp_;
  return (*this - o).is_zero();
}

Rat CoefficientValue::to_rat() const {
  switch (kind_) {
    case CoeffKind::Rational: return rat_;
    case CoeffKind::BigPow:
      if (!pow_fits(base_, exp_))
        raise(ErrorCode::CapExceeded,
              "materializing " + base_.str() + "^" + exp_.str() + " exceeds the bit cap");
      return Rat(num_, ipow(base_, exp_));
    case CoeffKind::UnitRoot:
      if (residue_ == 0) return Rat(1);
      if (order_ % 2 == 0 && residue_ == order_ / 2) return Rat(-1);
      raise(ErrorCode::DomainMismatch, "unit root is not rational");
  }
  return Rat(0);
}

bool CoefficientValue::materializable() const {
  if (kind_ == CoeffKind::BigPow) return pow_fits(base_, exp_);
  if (kind_ == CoeffKind::UnitRoot)
    return residue_ == 0 || (order_ % 2 == 0 && residue_ == order_ / 2);
  return true;
}

Log2Sum CoefficientValue::abs_log2() const {
  if (is_zero()) raise(ErrorCode::BadArgument, "log2 of zero coefficient");
  return num_abs_log2() - den_log2();
}

Log2Sum CoefficientValue::num_abs_log2() const {
  switch (kind_) {
    case CoeffKind::Rational: return Log2Sum::of_int(boost::multiprecision::abs(num(rat_)));
    case CoeffKind::BigPow: return Log2Sum::of_int(boost::multiprecision::abs(num_));
    case CoeffKind::UnitRoot: return Log2Sum();
  }
  return Log2Sum();
}

Log2Sum CoefficientValue::den_log2() const {
  switch (kind_) {
    case CoeffKind::Rational: return Log2Sum::of_int(den(rat_));
    case CoeffKind::BigPow: return Log2Sum::of_int(base_) * Rat(exp_);
    case CoeffKind::UnitRoot: return Log2Sum();
  }
  return Log2Sum();
}

int CoefficientValue::sign() const {
  switch (kind_) {
    case CoeffKind::Rational: return rat_ == 0 ? 0 : (rat_ < 0 ? -1 : 1);
    case CoeffKind::BigPow: return num_ < 0 ? -1 : 1;
    case CoeffKind::UnitRoot:
      if (residue_ == 0) return 1;
      if (order_ % 2 == 0 && residue_ == order_ / 2) return -1;
      raise(ErrorCode::DomainMismatch, "complex unit root has no sign");
  }
  return 0;
}

std::string CoefficientValue::str() const {
  switch (kind_) {
    case CoeffKind::Rational: return rat_str(rat_);
    case CoeffKind::BigPow:
      return num_.str() + "/" + base_.str() + "^" + exp_.str();
    case CoeffKind::UnitRoot:
      return "w" + std::to_string(order_) + "^" + std::to_string(residue_);
  }
  return "0";
}

}  // namespace cantor
