#include "cantor/radix.hpp"

#include <numeric>

namespace cantor {

RadixSequence::RadixSequence(RadixKind k, std::vector<std::int64_t> v, std::int64_t d)
    : kind_(k), values_(std::move(v)), default_(d) {
  for (auto q : values_)
    if (q < 2) raise(ErrorCode::SpecInvalid, "radix entry must be >= 2");
  if (kind_ == RadixKind::Periodic && values_.empty())
    raise(ErrorCode::SpecInvalid, "empty periodic radix");
  if (kind_ == RadixKind::Table && default_ < 2)
    raise(ErrorCode::SpecInvalid, "radix default must be >= 2");
}

RadixSequence RadixSequence::constant(std::int64_t q) {
  if (q < 2) raise(ErrorCode::SpecInvalid, "constant radix must be >= 2");
  return RadixSequence(RadixKind::Constant, {q}, q);
}

RadixSequence RadixSequence::periodic(std::vector<std::int64_t> qs) {
  return RadixSequence(RadixKind::Periodic, std::move(qs), 2);
}

RadixSequence RadixSequence::table(std::vector<std::int64_t> prefix, std::int64_t dflt) {
  return RadixSequence(RadixKind::Table, std::move(prefix), dflt);
}

std::int64_t RadixSequence::q(std::size_t j) const {
  if (j == 0) return 1;
  std::size_t i = j - 1;
  switch (kind_) {
    case RadixKind::Constant: return values_[0];
    case RadixKind::Periodic: return values_[i % values_.size()];
    case RadixKind::Table: return i < values_.size() ? values_[i] : default_;
  }
  return 2;
}

Int RadixSequence::weight(std::size_t y) const {
  Int w = 1;
  for (std::size_t j = 1; j <= y; ++j) w *= q(j);
  return w;
}

RadixSequence RadixSequence::shifted(std::size_t n) const {
  if (n == 0) return *this;
  switch (kind_) {
    case RadixKind::Constant: return *this;
    case RadixKind::Periodic: {
      std::vector<std::int64_t> rot(values_.size());
      for (std::size_t i = 0; i < values_.size(); ++i) rot[i] = values_[(i + n) % values_.size()];
      return periodic(std::move(rot));
    }
    case RadixKind::Table: {
      if (n >= values_.size()) return constant(default_);
      return table(std::vector<std::int64_t>(values_.begin() + static_cast<std::ptrdiff_t>(n),
                                             values_.end()),
                   default_);
    }
  }
  return *this;
}

std::size_t RadixSequence::preperiod_length() const {
  return kind_ == RadixKind::Table ? values_.size() : 0;
}

std::size_t RadixSequence::period_length() const {
  return kind_ == RadixKind::Periodic ? values_.size() : 1;
}

std::vector<Int> cumulative_products(const RadixSequence& radix, std::size_t n) {
  std::vector<Int> out;
  out.reserve(n + 1);
  Int w = 1;
  out.push_back(w);
  for (std::size_t y = 1; y <= n; ++y) {
    w *= radix.q(y);
    out.push_back(w);
  }
  return out;
}

DigitVector to_digits(const Int& n, const RadixSequence& radix) {
  if (n < 0) raise(ErrorCode::BadArgument, "to_digits requires n >= 0");
  DigitVector out;
  Int rest = n;
  for (std::size_t y = 0; rest > 0; ++y) {
    Int q(radix.q(y + 1));
    Int d = rest % q;
    rest /= q;
    if (d != 0) out.push_back({y, static_cast<std::int64_t>(d)});
  }
  return out;
}

Int from_digits(const DigitVector& digits, const RadixSequence& radix) {
  Int acc = 0;
  for (const auto& d : digits) {
    std::int64_t bound = radix.q(d.pos + 1) - 1;
    if (d.value < 0 || d.value > bound)
      raise(ErrorCode::DigitOutOfRange, "digit " + std::to_string(d.value) + " at position " +
                                            std::to_string(d.pos) + " exceeds bound " +
                                            std::to_string(bound));
    if (d.value == 0) continue;
    acc += Int(d.value) * radix.weight(d.pos);
  }
  return acc;
}

namespace {

bool sparse_pattern_holds(const DigitVector& digits, std::size_t t) {
  if (digits.empty()) return false;
  if (digits.front().value != 1) return false;
  if (digits.size() == 1) return true;
  return digits[1].pos > digits.front().pos + t;
}

}  // namespace

Int find_sparse_multiple(const Int& l, std::size_t t, const RadixSequence& radix,
                         const Int& search_cap) {
  if (l < 1) raise(ErrorCode::BadArgument, "l must be positive");
  if (search_cap < 1) raise(ErrorCode::BadArgument, "search_cap must be positive");
  for (Int x = 1; x <= search_cap; ++x) {
    DigitVector d = to_digits(x * l, radix);
    if (sparse_pattern_holds(d, t)) {
      // paranoia: the returned witness must reproduce x*l exactly
      if (from_digits(d, radix) != x * l)
        raise(ErrorCode::SpecInvalid, "digit roundtrip failed in sparse search");
      return x;
    }
  }
  raise(ErrorCode::SearchExhausted,
        "no sparse multiple of " + l.str() + " with gap " + std::to_string(t) + " up to cap " +
            search_cap.str());
}

}  // namespace cantor
