#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "mpfr_oracle.hpp"
#include "test_util.hpp"

#include "cantor/logspace.hpp"

using namespace cantor;

TEST_CASE("log2 brackets of powers of two are exact") {
  for (unsigned k = 0; k < 40; ++k) {
    auto [lo, hi] = log2_bracket(Int(1) << k, 64);
    CHECK(lo == hi);
    CHECK(lo == Rat(k));
  }
}

TEST_CASE("log2 brackets enclose the mpfr value and meet the width bound") {
  testutil::Rng rng(11);
  for (int i = 0; i < 60; ++i) {
    Int n = Int(rng.range(2, 1'000'000)) * Int(rng.range(1, 1'000'000));
    for (unsigned prec : {32u, 64u, 128u}) {
      auto [lo, hi] = log2_bracket(n, prec);
      CHECK(hi - lo <= Rat(1, Int(1) << prec));
      auto iv = oracle::log2_int(n);
      // rational endpoints vs 200-bit enclosure
      CHECK(static_cast<double>(Rat(lo).convert_to<double>()) <= iv.hi_d());
      CHECK(static_cast<double>(Rat(hi).convert_to<double>()) >= iv.lo_d());
    }
  }
}

TEST_CASE("log sums fold powers and perfect powers") {
  // 8 -> constant 3
  Log2Sum a = Log2Sum::of_int(8);
  CHECK(a.is_exact());
  CHECK(a.exact_value() == 3);
  // 9 = 3^2 and 27 = 3^3 share a term
  Log2Sum b = Log2Sum::of_int(9) - (Log2Sum::of_int(27) * Rat(2, 3));
  CHECK(b.is_exact());
  CHECK(b.exact_value() == 0);
  // 6 = 2 * 3: the even part moves into the constant
  Log2Sum c = Log2Sum::of_int(6) - Log2Sum::of_int(3);
  CHECK(c.is_exact());
  CHECK(c.exact_value() == 1);
  // 15 = 3 * 5 cancels against of_int(3) + of_int(5)
  Log2Sum d = Log2Sum::of_int(15) - Log2Sum::of_int(3) - Log2Sum::of_int(5);
  CHECK(d.is_exact());
  CHECK(d.exact_value() == 0);
}

TEST_CASE("rational logs split into numerator and denominator terms") {
  Log2Sum r = Log2Sum::of_rat_abs(Rat(-4, 9));
  Log2Sum manual = Log2Sum(Rat(2)) - (Log2Sum::of_int(3) * Rat(2));
  CHECK(log2_compare(r, manual) == Cmp::Equal);
}

TEST_CASE("certified comparisons agree with mpfr on random products") {
  testutil::Rng rng(5);
  for (int i = 0; i < 80; ++i) {
    // a = c1 log2 k1 + c2 log2 k2, b = c3 log2 k3
    Int k1(rng.range(2, 50)), k2(rng.range(2, 50)), k3(rng.range(2, 50));
    Rat c1(rng.range(-9, 9), rng.range(1, 9));
    Rat c2(rng.range(-9, 9), rng.range(1, 9));
    Rat c3(rng.range(-9, 9), rng.range(1, 9));
    Log2Sum a = Log2Sum::of_int(k1) * c1 + Log2Sum::of_int(k2) * c2;
    Log2Sum b = Log2Sum::of_int(k3) * c3;
    Cmp got = log2_compare(a, b);
    oracle::Iv oa = oracle::log2_int(k1).scaled(c1);
    oa += oracle::log2_int(k2).scaled(c2);
    oracle::Iv ob = oracle::log2_int(k3).scaled(c3);
    if (oa.certainly_less(ob)) CHECK(got == Cmp::Less);
    if (oa.certainly_greater(ob)) CHECK(got == Cmp::Greater);
  }
}

TEST_CASE("exact ties are decided as equalities, near ties escalate") {
  // log2(3) + log2(27) == 4 log2(3) - 2 log2(3) + ... build a disguised zero
  Log2Sum a = Log2Sum::of_int(3) * Rat(4);
  Log2Sum b = Log2Sum::of_int(81);
  CHECK(log2_compare(a, b) == Cmp::Equal);
  // 2^100 vs 2^100 + 1: separated only at high precision
  Log2Sum big = Log2Sum::of_int((Int(1) << 100) + 1);
  Log2Sum pw(Rat(100));
  CHECK(log2_compare(big, pw) == Cmp::Greater);
}

TEST_CASE("slack intervals participate in quantity comparisons") {
  LogQuantity a;
  a.sum = Log2Sum(Rat(10));
  a.slack_hi = Rat(1, 2);
  LogQuantity b;
  b.sum = Log2Sum(Rat(11));
  CHECK(log2_compare(a, b) == Cmp::Less);
  b.sum = Log2Sum(Rat(10));
  b.slack_lo = Rat(3, 4);
  b.slack_hi = Rat(3, 4);
  CHECK(log2_compare(a, b) == Cmp::Less);
  // overlapping slacks cannot be decided
  b.slack_lo = Rat(1, 4);
  b.slack_hi = Rat(1, 4);
  CHECK_THROWS_AS(log2_compare(a, b), Error);
}
