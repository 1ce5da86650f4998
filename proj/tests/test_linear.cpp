#include <gtest/gtest.h>

#include <random>
#include <set>

#include "steinhaus/linear.hpp"

using namespace steinhaus;

TEST(Linear, ToySingleEquation) {
  GFpLinearSystem sys{Prime(3), 2, {}, {}, {}};
  sys.add_row({1, 1}, 1);
  const auto space = solve(sys);
  EXPECT_TRUE(space.consistent);
  EXPECT_EQ(space.rank, 1);
  EXPECT_EQ(space.kernel_dimension(), 1);
  const auto sols = sample_solutions(space, Prime(3), 3, 0);
  ASSERT_EQ(sols.size(), 3U);
  std::set<std::vector<std::int64_t>> distinct(sols.begin(), sols.end());
  EXPECT_EQ(distinct.size(), 3U);
  for (const auto& s : sols) EXPECT_TRUE(sys.satisfied_by(s));
}

TEST(Linear, ToyInconsistent) {
  GFpLinearSystem sys{Prime(3), 1, {}, {}, {}};
  sys.add_row({1}, 0);
  sys.add_row({1}, 1);
  const auto space = solve(sys);
  EXPECT_FALSE(space.consistent);
  EXPECT_TRUE(sample_solutions(space, Prime(3), 5, 0).empty());
  EXPECT_TRUE(solve_and_sample(sys, 5, 0).empty());
}

TEST(Linear, RandomSystemsAgainstEnumeration) {
  std::mt19937_64 rng(1);
  const Prime p(5);
  std::uniform_int_distribution<std::int64_t> u(0, 4);
  for (int round = 0; round < 30; ++round) {
    const std::int64_t vars = 4;
    GFpLinearSystem sys{p, vars, {}, {}, {}};
    const int rows = 1 + round % 5;
    for (int r = 0; r < rows; ++r) sys.add_row({u(rng), u(rng), u(rng), u(rng)}, u(rng));
    std::int64_t count = 0;
    for (std::int64_t code = 0; code < 625; ++code) {
      std::vector<std::int64_t> v{code % 5, code / 5 % 5, code / 25 % 5, code / 125};
      count += sys.satisfied_by(v);
    }
    const auto space = solve(sys);
    if (count == 0) {
      EXPECT_FALSE(space.consistent);
      continue;
    }
    ASSERT_TRUE(space.consistent);
    std::int64_t expected = 1;
    for (std::int64_t k = 0; k < space.kernel_dimension(); ++k) expected *= 5;
    EXPECT_EQ(count, expected);
    EXPECT_EQ(space.rank + space.kernel_dimension(), vars);
    const auto all = sample_solutions(space, p, 1000, 0);
    EXPECT_EQ(static_cast<std::int64_t>(all.size()), count);
    for (const auto& s : all) EXPECT_TRUE(sys.satisfied_by(s));
  }
}

TEST(Linear, SystemShapes) {
  auto s3 = build_system(AffineAnsatz::unit(Prime(3)));
  EXPECT_EQ(s3.rows(), 72U);
  EXPECT_EQ(s3.num_vars, 81);
  EXPECT_EQ(s3.tags.size(), 72U);
  auto s5 = build_system(AffineAnsatz::unit(Prime(5)));
  EXPECT_EQ(s5.rows(), 600U);
  EXPECT_EQ(s5.num_vars, 375);
}

TEST(Linear, AnsatzValidation) {
  EXPECT_EQ(AffineAnsatz::unit(Prime(3)).slopes().size(), 36U);
  EXPECT_THROW(AffineAnsatz(Prime(3), std::vector<std::int64_t>(35, 1)), Error);
  std::vector<std::int64_t> bad(36, 1);
  bad[7] = 3;
  EXPECT_THROW(AffineAnsatz(Prime(3), bad), Error);
  const auto random = AffineAnsatz::random(Prime(7), 4);
  for (auto s : random.slopes()) {
    EXPECT_GT(s, 0);
    EXPECT_LT(s, 7);
  }
}

TEST(Linear, UnitSlopesAtThreeGiveSteinhausFunctions) {
  const auto sys = build_system(AffineAnsatz::unit(Prime(3)));
  const auto maps = solve_and_sample(sys, 50, 7);
  ASSERT_FALSE(maps.empty());
  for (const auto& L : maps) {
    EXPECT_TRUE(verify_perms(L).valid);
    EXPECT_TRUE(verify_bruteforce(L).valid);
    EXPECT_TRUE(sys.satisfied_by(map_variables(L)));
  }
}

TEST(Linear, SolutionsSatisfyTheirRows) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto sys = build_system(AffineAnsatz::random(Prime(3), seed));
    for (const auto& L : solve_and_sample(sys, 5, seed)) {
      EXPECT_TRUE(sys.satisfied_by(map_variables(L)));
      EXPECT_TRUE(verify_perms(L).valid);
    }
  }
}

TEST(Linear, AssembleRoundTrip) {
  std::vector<std::int64_t> v(81);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = static_cast<std::int64_t>(i % 3);
  const auto L = assemble_map(Prime(3), v);
  EXPECT_EQ(map_variables(L), v);
  EXPECT_EQ(L.value(IntVec3{0, 0, 1}), (IntVec3{v[variable_index(1, 0)], v[variable_index(1, 1)], v[variable_index(1, 2)]}));
}
