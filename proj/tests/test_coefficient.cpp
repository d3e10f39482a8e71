#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "test_util.hpp"

#include "cantor/coefficient.hpp"

using namespace cantor;

namespace {

struct CapGuard {
  explicit CapGuard(Int bits) { CoefficientValue::set_max_bits(std::move(bits)); }
  ~CapGuard() { CoefficientValue::set_max_bits(std::nullopt); }
};

}  // namespace

TEST_CASE("bigpow values normalize and materialize under the cap") {
  auto small = CoefficientValue::bigpow(1, 2, 10);
  CHECK(small.kind() == CoeffKind::Rational);
  CHECK(small.rat() == Rat(1, 1024));

  // common base factors fold out
  auto folded = CoefficientValue::bigpow(8, 2, 5);
  CHECK(folded.rat() == Rat(1, 4));

  CapGuard guard(64);
  auto big = CoefficientValue::bigpow(3, 2, 100);
  CHECK(big.kind() == CoeffKind::BigPow);
  CHECK_FALSE(big.materializable());
  CHECK_THROWS_AS(big.to_rat(), Error);
  try {
    big.to_rat();
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::CapExceeded);
  }
}

TEST_CASE("environment cap override") {
  CHECK(CoefficientValue::max_bits() == Int(1) << 20);
  CapGuard guard(128);
  CHECK(CoefficientValue::max_bits() == 128);
}

TEST_CASE("bigpow arithmetic stays exact") {
  CapGuard guard(64);
  auto a = CoefficientValue::bigpow(3, 2, 100);
  auto b = CoefficientValue::bigpow(5, 2, 30);
  auto prod = a * b;
  CHECK(prod.kind() == CoeffKind::BigPow);
  CHECK(prod.bp_num() == 15);
  CHECK(prod.bp_exp() == 130);

  auto sum = a + CoefficientValue::bigpow(1, 2, 110);  // 3/2^100 + 1/2^110
  CHECK(sum.bp_num() == 3 * 1024 + 1);
  CHECK(sum.bp_exp() == 110);

  // a 2^300 alignment gap cannot materialize under a 64-bit cap
  CHECK_THROWS_AS(a + CoefficientValue::bigpow(1, 2, 400), Error);

  // integer rationals fold into the numerator
  auto scaled = a * CoefficientValue::rational(Rat(7));
  CHECK(scaled.bp_num() == 21);
  // halves move into the exponent
  auto shifted = a * CoefficientValue::rational(Rat(1, 2));
  CHECK(shifted.bp_exp() == 101);

  auto quot = prod / a;
  CHECK(quot.kind() == CoeffKind::Rational);
  CHECK(quot.rat() == Rat(5, Int(1) << 30));
}

TEST_CASE("division and equality over mixed forms") {
  auto a = CoefficientValue::rational(Rat(3, 8));
  auto b = CoefficientValue::bigpow(3, 2, 3);
  CHECK(a == b);
  CHECK((a / b).is_one());
  CHECK((a - b).is_zero());
  CHECK(a.abs() == a);
  CHECK(CoefficientValue::rational(Rat(-3, 8)).abs() == a);
}

TEST_CASE("unit roots multiply by residue addition") {
  auto w1 = CoefficientValue::unit_root(1, 3);
  auto w2 = CoefficientValue::unit_root(2, 3);
  CHECK((w1 * w2).residue() == 0);
  CHECK((w1 * w1).residue() == 2);
  CHECK((w1 / w2).residue() == 2);
  CHECK(w1.abs().is_one());
  CHECK_FALSE(w1.is_zero());
  CHECK_THROWS_AS(w1 + w2, Error);
  CHECK_THROWS_AS(w1 * CoefficientValue::rational(Rat(2)), Error);
  // rational +-1 conversions
  CHECK(CoefficientValue::unit_root(1, 2).to_rat() == -1);
  CHECK(CoefficientValue::unit_root(0, 5).to_rat() == 1);
  CHECK_THROWS_AS(CoefficientValue::unit_root(1, 3).to_rat(), Error);
}

TEST_CASE("log2 magnitudes of huge powers stay symbolic") {
  CapGuard guard(64);
  auto v = CoefficientValue::bigpow(3, 2, 1000);
  Log2Sum l = v.abs_log2();
  auto [lo, hi] = l.bracket(64);
  CHECK(lo < Rat(-998));
  CHECK(hi > Rat(-999));
  CHECK(v.den_log2().is_exact());
  CHECK(v.den_log2().exact_value() == 1000);
}

TEST_CASE("sign of values") {
  CHECK(CoefficientValue::rational(Rat(-2, 3)).sign() == -1);
  CHECK(CoefficientValue::zero().sign() == 0);
  CHECK(CoefficientValue::bigpow(-7, 3, 50).sign() == -1);
  CHECK(CoefficientValue::unit_root(1, 2).sign() == -1);
  CHECK_THROWS_AS(CoefficientValue::unit_root(1, 3).sign(), Error);
}

TEST_CASE("randomized field laws on materializable values") {
  testutil::Rng rng(99);
  for (int i = 0; i < 200; ++i) {
    auto a = testutil::random_value(rng, 9, 9, false);
    auto b = testutil::random_value(rng, 9, 9, false);
    auto c = testutil::random_value(rng, 9, 9, false);
    CHECK(((a + b) + c) == (a + (b + c)));
    CHECK((a * b) == (b * a));
    CHECK((a * (b + c)) == (a * b + a * c));
    if (!b.is_zero()) CHECK(((a / b) * b) == a);
  }
}
