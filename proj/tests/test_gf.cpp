#include <gtest/gtest.h>

#include "oracles.hpp"
#include "steinhaus/gf.hpp"

using namespace steinhaus;

TEST(Gf, ModFloorAndDivFloor) {
  EXPECT_EQ(mod_floor(-2, 3), 1);
  EXPECT_EQ(div_floor(-2, 3), -1);
  EXPECT_EQ(mod_floor(7, 3), 1);
  EXPECT_EQ(div_floor(7, 3), 2);
  for (std::int64_t a = -50; a <= 50; ++a)
    for (std::int64_t m = 2; m <= 9; ++m) {
      EXPECT_EQ(div_floor(a, m) * m + mod_floor(a, m), a);
      EXPECT_GE(mod_floor(a, m), 0);
      EXPECT_LT(mod_floor(a, m), m);
    }
}

TEST(Gf, PrimeRejectsTwoAndComposites) {
  EXPECT_THROW(Prime(2), Error);
  EXPECT_THROW(Prime(9), Error);
  EXPECT_THROW(Prime(1), Error);
  EXPECT_THROW(Prime(-3), Error);
  try {
    Prime(15);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotPrime);
  }
  EXPECT_EQ(Prime(101).value(), 101);
}

TEST(Gf, IsPrimeMatchesTrialDivision) {
  for (std::int64_t n = -3; n <= 2000; ++n) EXPECT_EQ(is_prime(n), oracle::prime(n)) << n;
}

TEST(Gf, InverseExamples) {
  EXPECT_EQ(mod_inv(FpElement(2, Prime(3))).value(), 2);
  EXPECT_EQ(mod_inv(FpElement(3, Prime(7))).value(), 5);
  try {
    mod_inv(FpElement(0, Prime(5)));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotInvertible);
  }
}

TEST(Gf, SqrtExamples) {
  auto r = sqrt_mod(FpElement(4, Prime(7)));
  ASSERT_EQ(r.size(), 2U);
  EXPECT_EQ(r[0].value(), 2);
  EXPECT_EQ(r[1].value(), 5);
  EXPECT_TRUE(sqrt_mod(FpElement(3, Prime(5))).empty());
  r = sqrt_mod(FpElement(0, Prime(11)));
  ASSERT_EQ(r.size(), 1U);
  EXPECT_EQ(r[0].value(), 0);
}

TEST(Gf, ExhaustiveFieldLawsUpTo100) {
  for (std::int64_t q = 3; q <= 100; ++q) {
    if (!oracle::prime(q)) continue;
    const Prime p(q);
    std::int64_t residues = 0;
    for (std::int64_t a = 0; a < q; ++a) {
      const FpElement x(a, p);
      if (a != 0) EXPECT_EQ((x * mod_inv(x)).value(), 1) << a << " mod " << q;
      const auto roots = sqrt_mod(x);
      for (const auto& r : roots) EXPECT_EQ((r * r).value(), a);
      bool square = false;
      for (std::int64_t b = 0; b < q; ++b) square |= (b * b) % q == a;
      EXPECT_EQ(!roots.empty(), square);
      if (roots.size() == 2) {
        EXPECT_LT(roots[0].value(), roots[1].value());
        EXPECT_EQ((roots[0] + roots[1]).value(), 0);
      }
      residues += a != 0 && square;
    }
    EXPECT_EQ(residues, (q - 1) / 2);
    EXPECT_EQ((FpElement(2, p) * FpElement(half(p), p)).value(), 1);
  }
}

TEST(Gf, ArithmeticWraps) {
  const Prime p(7);
  EXPECT_EQ((FpElement(5, p) + FpElement(4, p)).value(), 2);
  EXPECT_EQ((FpElement(1, p) - FpElement(4, p)).value(), 4);
  EXPECT_EQ((-FpElement(3, p)).value(), 4);
  EXPECT_EQ(FpElement(-1, p).value(), 6);
  EXPECT_EQ(FpElement(10, p), FpElement(3, p));
}
