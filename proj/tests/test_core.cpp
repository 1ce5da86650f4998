#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "steinhaus/core.hpp"
#include "steinhaus/fixture.hpp"

using namespace steinhaus;

namespace {

PartialMap zero_map(std::int64_t m) { return PartialMap::constant(m, {0, 0, 0}); }

/// Witness must actually exhibit an integral squared distance.
void expect_pair_sound(const PartialMap& L, const Verdict& v) {
  ASSERT_FALSE(v.valid);
  const auto* w = std::get_if<PairWitness>(&v.witness);
  ASSERT_NE(w, nullptr);
  EXPECT_NE(w->x, w->z);
  const auto d = oracle::squared_distance(L, w->x, w->z);
  EXPECT_EQ(d.denominator(), 1);
  EXPECT_EQ(d.numerator(), w->squared_distance);
}

void expect_collision_sound(const PartialMap& L, const Verdict& v) {
  ASSERT_FALSE(v.valid);
  const auto* w = std::get_if<PermutationWitness>(&v.witness);
  ASSERT_NE(w, nullptr);
  EXPECT_NE(w->t, w->s);
  EXPECT_EQ(oracle::pi(L, w->lambda, w->x, w->t), w->value);
  EXPECT_EQ(oracle::pi(L, w->lambda, w->x, w->s), w->value);
}

}  // namespace

TEST(PartialMapType, AssignmentAndValidation) {
  PartialMap L(3);
  EXPECT_EQ(L.size(), 27);
  EXPECT_FALSE(L.complete());
  EXPECT_EQ(L.assigned_count(), 0);
  L.set(IntVec3{1, 2, 0}, {2, 2, 2});
  EXPECT_EQ(L.value(IntVec3{1, 2, 0}), (IntVec3{2, 2, 2}));
  EXPECT_EQ(L.assigned_count(), 1);
  EXPECT_THROW(L.set(IntVec3{3, 0, 0}, {0, 0, 0}), Error);
  EXPECT_THROW(L.set(IntVec3{0, 0, 0}, {0, 3, 0}), Error);
  try {
    L.value(0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::IncompleteMap);
  }
  L.clear(cube_index({1, 2, 0}, 3));
  EXPECT_EQ(L.assigned_count(), 0);
}

TEST(PiTable, ZeroMapExamples) {
  const auto L = zero_map(3);
  auto tab = pi_table(L, IsoVector({2, 2, 1}, Prime(3)), CubePoint({0, 0, 0}, 3));
  EXPECT_EQ(tab.values, (std::vector<std::int64_t>{0, 0, 2}));
  EXPECT_FALSE(tab.is_permutation());
  ASSERT_TRUE(tab.first_collision());
  EXPECT_EQ(*tab.first_collision(), (std::pair<std::int64_t, std::int64_t>{0, 1}));
  tab = pi_table(L, IsoVector({1, 1, 1}, Prime(3)), CubePoint({0, 0, 0}, 3));
  EXPECT_EQ(tab.values, (std::vector<std::int64_t>{0, 2, 1}));
  EXPECT_TRUE(tab.is_permutation());
  EXPECT_FALSE(tab.first_collision());
}

TEST(PiTable, MatchesDefinitionAndStartsAtLambdaDotL) {
  std::mt19937_64 rng(11);
  for (std::int64_t q : {3, 5, 7}) {
    const auto L = oracle::random_map(q, rng);
    for (const auto& l : enumerate_lambda(Prime(q)))
      for (std::int64_t i = 0; i < q * q * q; i += 5) {
        const CubePoint x = CubePoint::from_index(i, q);
        const auto tab = pi_table(L, l, x);
        for (std::int64_t t = 0; t < q; ++t) {
          EXPECT_EQ(tab.values[t], oracle::pi(L, l.lambda(), x.coords(), t));
        }
        EXPECT_EQ(tab.values[0], oracle::md(dot(l.lambda(), L.value(i)), q));
      }
  }
}

TEST(PiTable, IncompleteMapThrows) {
  PartialMap L(3);
  try {
    pi_table(L, IsoVector({1, 1, 1}, Prime(3)), CubePoint({0, 0, 0}, 3));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::IncompleteMap);
  }
}

TEST(Verify, FixtureIsValidEverywhere) {
  const auto L = fixture_map();
  ASSERT_TRUE(L.complete());
  EXPECT_TRUE(verify_bruteforce(L).valid);
  const auto v = verify_perms(L);
  EXPECT_TRUE(v.valid);
  EXPECT_EQ(v.checks, 36);
  EXPECT_TRUE(verify_all_perms(L).valid);
  EXPECT_TRUE(oracle::condition_plus(L));
  EXPECT_TRUE(oracle::all_permutations(L));
}

TEST(Verify, ZeroMapInvalid) {
  const auto L = zero_map(3);
  const auto b = verify_bruteforce(L);
  expect_pair_sound(L, b);
  // the pair (0,0,0), (2,2,1) also lies at distance 1
  const auto d = oracle::squared_distance(L, {0, 0, 0}, {2, 2, 1});
  EXPECT_EQ(d, oracle::Q(1));
  const auto perm = verify_perms(L);
  expect_collision_sound(L, perm);
  EXPECT_FALSE(verify_all_perms(L).valid);
}

TEST(Verify, IncompleteAndUnsupported) {
  PartialMap L(3);
  try {
    verify_bruteforce(L);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::IncompleteMap);
  }
  try {
    verify_perms(zero_map(4));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::UnsupportedModulus);
  }
  // composite moduli are still handled by the pairwise test; at m = 4 no
  // difference vector with entries in (-4, 4) has squared norm 16 or 32
  EXPECT_TRUE(verify_bruteforce(zero_map(4)).valid);
  EXPECT_TRUE(oracle::condition_plus(zero_map(4)));
  EXPECT_FALSE(verify_bruteforce(zero_map(5)).valid);
}

TEST(Verify, RandomMapsAgreeWithOracles) {
  std::mt19937_64 rng(2024);
  for (int i = 0; i < 100; ++i) {
    const auto L = oracle::random_map(3, rng);
    const bool truth = oracle::condition_plus(L);
    const auto b = verify_bruteforce(L);
    const auto p = verify_perms(L);
    EXPECT_EQ(b.valid, truth);
    EXPECT_EQ(p.valid, truth);
    EXPECT_EQ(verify_all_perms(L).valid, truth);
    EXPECT_EQ(oracle::all_permutations(L), truth);
    if (!truth) {
      expect_pair_sound(L, b);
      expect_collision_sound(L, p);
    }
  }
  for (int i = 0; i < 20; ++i) {
    const auto L = oracle::random_map(5, rng);
    const bool truth = oracle::condition_plus(L);
    EXPECT_EQ(verify_bruteforce(L).valid, truth);
    EXPECT_EQ(verify_perms(L).valid, truth);
  }
}

TEST(Verify, ConditionPlusOnCompositeModuli) {
  std::mt19937_64 rng(5);
  for (std::int64_t m : {2, 4, 6}) {
    for (int i = 0; i < 10; ++i) {
      const auto L = oracle::random_map(m, rng);
      EXPECT_EQ(verify_bruteforce(L).valid, oracle::condition_plus(L)) << "m=" << m;
    }
  }
}

TEST(Gauge, ShiftedFixtureStaysValid) {
  const auto L = fixture_map();
  std::mt19937_64 rng(77);
  std::uniform_int_distribution<std::int64_t> g(-4, 4);
  for (int round = 0; round < 10; ++round) {
    RawMap raw{3, {}};
    for (std::int64_t i = 0; i < 27; ++i) raw.values.push_back(L.value(i) + 3 * IntVec3{g(rng), g(rng), g(rng)});
    EXPECT_TRUE(verify_condition_plus(raw).valid);
    const auto n = normalize_map(raw);
    EXPECT_EQ(n, L);
    EXPECT_TRUE(verify_bruteforce(n).valid);
  }
}

TEST(Gauge, TranslationByConstantPreservesValidity) {
  const auto L = fixture_map();
  for (std::int64_t i = 0; i < 27; ++i) {
    const IntVec3 c = cube_point(i, 3);
    RawMap raw{3, {}};
    for (std::int64_t j = 0; j < 27; ++j) raw.values.push_back(L.value(j) + c);
    EXPECT_TRUE(verify_perms(normalize_map(raw)).valid);
  }
}

TEST(Normalize, Examples) {
  RawMap raw{3, std::vector<IntVec3>(27, IntVec3{4, -2, 3})};
  const auto n = normalize_map(raw);
  EXPECT_EQ(n.value(0), (IntVec3{1, 1, 0}));
  const auto f = fixture_map();
  RawMap same{3, {}};
  for (std::int64_t i = 0; i < 27; ++i) same.values.push_back(f.value(i));
  EXPECT_EQ(normalize_map(same), f);
}

TEST(PointSet, FixtureValid) {
  const auto pts = fixture_points();
  ASSERT_EQ(pts.size(), 27U);
  EXPECT_TRUE(verify_point_set(pts, 3).valid);
  EXPECT_EQ(from_point_set(pts, 3), fixture_map());
  const auto back = to_point_set(fixture_map());
  EXPECT_TRUE(verify_point_set(back, 3).valid);
  // same set of points, possibly in a different order
  for (const auto& p : pts) EXPECT_NE(std::find(back.begin(), back.end(), p), back.end());
}

TEST(PointSet, MissingCoset) {
  auto pts = fixture_points();
  const RationalPoint gone{{3, 6, 6}, 3};
  pts.erase(std::find(pts.begin(), pts.end(), gone));
  try {
    verify_point_set(pts, 3);
    FAIL();
  } catch (const CosetCoverageError& e) {
    ASSERT_EQ(e.missing().size(), 1U);
    EXPECT_EQ(e.missing()[0], (IntVec3{0, 0, 0}));
    EXPECT_TRUE(e.duplicated().empty());
    EXPECT_EQ(e.code(), ErrorCode::CosetCoverage);
  }
}

TEST(PointSet, DuplicateAndStray) {
  auto pts = fixture_points();
  pts[0] = RationalPoint{{4, 1, 1}, 3};  // second point in coset (1,1,1)
  try {
    verify_point_set(pts, 3);
    FAIL();
  } catch (const CosetCoverageError& e) {
    EXPECT_EQ(e.duplicated(), (std::vector<IntVec3>{{1, 1, 1}}));
    EXPECT_EQ(e.missing(), (std::vector<IntVec3>{{0, 0, 0}}));
  }
  pts = fixture_points();
  pts[0] = RationalPoint{{1, 1, 1}, 2};
  try {
    verify_point_set(pts, 3);
    FAIL();
  } catch (const CosetCoverageError& e) {
    EXPECT_EQ(e.stray().size(), 1U);
  }
}

TEST(PointSet, UnshiftedCubeInvalid) {
  std::vector<RationalPoint> pts;
  for (std::int64_t i = 0; i < 27; ++i) pts.push_back({cube_point(i, 3), 3});
  const auto v = verify_point_set(pts, 3);
  ASSERT_FALSE(v.valid);
  const auto* w = std::get_if<PointPairWitness>(&v.witness);
  ASSERT_NE(w, nullptr);
  oracle::Q d = 0;
  for (int i = 0; i < 3; ++i) {
    const auto diff = oracle::Q(w->a.num[i], w->a.den) - oracle::Q(w->b.num[i], w->b.den);
    d += diff * diff;
  }
  EXPECT_EQ(d.denominator(), 1);
  EXPECT_EQ(d.numerator(), w->squared_distance);
  // (0,0,0) and (2/3,2/3,1/3) collide as well
  const auto z = PartialMap::constant(3, {0, 0, 0});
  EXPECT_EQ(oracle::squared_distance(z, {0, 0, 0}, {2, 2, 1}), oracle::Q(1));
}

TEST(Restrict, Examples) {
  const auto L = fixture_map();
  const auto one = restrict_map(L, 1);
  EXPECT_EQ(one.size(), 1);
  EXPECT_TRUE(verify_bruteforce(one).valid);
  EXPECT_EQ(restrict_map(L, 3), L);
  try {
    restrict_map(L, 2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InvalidDivisor);
  }
}

TEST(Restrict, PicksThePointInEachCoarseCoset) {
  // The point of coset x'/m' + Z^3 is (s x')/m + L(s x') with s = m/m'; the
  // restricted map keeps it up to an integer translation.
  std::mt19937_64 rng(8);
  const auto L = oracle::random_map(6, rng);
  for (std::int64_t mp : {1, 2, 3, 6}) {
    const auto R = restrict_map(L, mp);
    ASSERT_EQ(R.modulus(), mp);
    const std::int64_t s = 6 / mp;
    for (std::int64_t i = 0; i < mp * mp * mp; ++i) {
      const IntVec3 xp = cube_point(i, mp);
      const IntVec3 diff = L.value(s * xp) - R.value(i);
      for (int k = 0; k < 3; ++k) EXPECT_EQ(oracle::md(diff[k], mp), 0) << "m'=" << mp;
    }
    if (verify_bruteforce(L).valid) EXPECT_TRUE(verify_bruteforce(R).valid);
  }
  // a valid map at m = 4 restricts to a valid map at m' = 2
  const auto Z = zero_map(4);
  EXPECT_TRUE(verify_bruteforce(restrict_map(Z, 2)).valid);
}

TEST(PiIdentities, TrivialCases) {
  std::mt19937_64 rng(3);
  const Prime p(5);
  const auto L = oracle::random_map(5, rng);
  for (const auto& l : enumerate_lambda(p)) {
    const auto r = pi_identity_check(L, l, CubePoint({1, 2, 3}, 5), FpElement(0, p), FpElement(1, p));
    EXPECT_TRUE(r.translation.holds());
    EXPECT_TRUE(r.scaling.holds());
    EXPECT_TRUE(r.translation_corrected.holds());
    EXPECT_TRUE(r.scaling_corrected.holds());
  }
  const auto r = pi_identity_check(L, IsoVector({0, 1, 2}, p), CubePoint({0, 0, 0}, 5), FpElement(1, p),
                               FpElement(0, p));
  EXPECT_FALSE(r.scaling.evaluated);
}

TEST(PiIdentities, CorrectedFormsAlwaysHold) {
  std::mt19937_64 rng(36);
  for (std::int64_t q : {3, 5, 7}) {
    const Prime p(q);
    const auto lambdas = enumerate_lambda(p);
    std::uniform_int_distribution<std::int64_t> u(0, q - 1), cell(0, q * q * q - 1);
    std::uniform_int_distribution<std::size_t> pick(0, lambdas.size() - 1);
    for (int i = 0; i < 300; ++i) {
      const auto L = oracle::random_map(q, rng);
      const auto& l = lambdas[pick(rng)];
      const auto x = CubePoint::from_index(cell(rng), q);
      const FpElement a(u(rng), p), alpha(1 + u(rng) % (q - 1), p);
      const auto r = pi_identity_check(L, l, x, a, alpha);
      EXPECT_TRUE(r.translation_corrected.holds());
      EXPECT_TRUE(r.translation_unreduced.holds());
      EXPECT_TRUE(r.scaling_corrected.holds());
      // independent restatement of the scaling relation
      for (std::int64_t t = 0; t < q; ++t) {
        EXPECT_EQ(oracle::pi(L, reduce(alpha.value() * l.lambda(), q), x.coords(), t),
                  oracle::md(alpha.value() * oracle::pi(L, l.lambda(), x.coords(), alpha.value() * t), q));
      }
    }
  }
}

TEST(PiIdentities, LiteralFormsHaveCounterexamples) {
  // With x + a lambda reduced into X_p the translation identity misses the
  // term lambda . eps(x + a lambda); the scaling identity misses a factor alpha.
  const Prime p(3);
  const auto L = PartialMap::constant(3, {0, 0, 0});
  const IsoVector l({2, 2, 1}, p);
  const auto r = pi_identity_check(L, l, CubePoint({0, 0, 0}, 3), FpElement(2, p), FpElement(2, p));
  EXPECT_FALSE(r.translation.holds());
  EXPECT_TRUE(r.translation_corrected.holds());
  EXPECT_FALSE(r.scaling.holds());
  EXPECT_TRUE(r.scaling_corrected.holds());
  ASSERT_TRUE(r.translation.first_failure());
}
