#include <gtest/gtest.h>

#include <random>

#include "extri/abgroup.hpp"
#include "support.hpp"

using namespace extri;
namespace tst = extri::testing;

namespace {

FgAbelianGroup grp(unsigned rank, std::vector<Integer> torsion = {}) { return FgAbelianGroup(rank, torsion); }

GradedGroup graded(std::initializer_list<std::pair<int, FgAbelianGroup>> parts, int modulus = 2) {
  GradedGroup g(modulus);
  for (const auto& [h, a] : parts) g.set(h, a);
  return g;
}

FgAbelianGroup random_finite(std::mt19937_64& rng, long max_order) {
  std::uniform_int_distribution<int> n(1, 3), f(2, 6);
  while (true) {
    std::vector<Integer> fs;
    long order = 1;
    int k = n(rng);
    for (int i = 0; i < k; ++i) {
      int x = f(rng);
      fs.push_back(x);
      order *= x;
    }
    if (order <= max_order) return grp(0, fs);
  }
}

}  // namespace

TEST(FgAbelianGroup, CanonicalForm) {
  EXPECT_EQ(grp(0, {2, 3}), FgAbelianGroup::cyclic(6));
  EXPECT_EQ(grp(0, {4, 6}).to_string(), "Z/2 + Z/12");
  EXPECT_EQ(grp(2, {1, 1}), FgAbelianGroup::free(2));
  FgAbelianGroup g = grp(1, {12, 18, 5});
  EXPECT_EQ(FgAbelianGroup(g.rank(), g.invariant_factors()), g);
}

TEST(FgAbelianGroup, DirectSum) {
  EXPECT_EQ(direct_sum(FgAbelianGroup::cyclic(2), FgAbelianGroup::cyclic(3)), FgAbelianGroup::cyclic(6));
  FgAbelianGroup a = grp(1, {4});
  EXPECT_EQ(direct_sum(a, FgAbelianGroup()), a);
  std::mt19937_64 rng(1);
  for (int t = 0; t < 100; ++t) {
    FgAbelianGroup x = random_finite(rng, 200), y = random_finite(rng, 200), z = random_finite(rng, 200);
    EXPECT_EQ(direct_sum(x, y), direct_sum(y, x));
    EXPECT_EQ(direct_sum(direct_sum(x, y), z), direct_sum(x, direct_sum(y, z)));
    for (std::uint64_t p : {2u, 3u, 5u}) EXPECT_EQ(dim_mod_p(direct_sum(x, y), p), dim_mod_p(x, p) + dim_mod_p(y, p));
  }
}

TEST(FgAbelianGroup, DimModP) {
  EXPECT_EQ(graded({{0, grp(1)}, {1, grp(0, {2})}}).dim_mod_p(2), 3u);
  EXPECT_EQ(dim_mod_p(grp(5), 7), 5u);
  EXPECT_EQ(dim_mod_p(grp(0, {4, 8}), 2), 4u);
}

TEST(GradedGroup, Shift) {
  EXPECT_EQ(graded({{0, grp(1)}}).shift(1), graded({{1, grp(1)}}));
  GradedGroup g = graded({{0, grp(2)}, {1, grp(0, {2})}});
  EXPECT_EQ(g.shift(2), g);
  GradedGroup h = graded({{1, grp(1)}, {0, grp(0, {3})}});
  EXPECT_EQ(h.shift(1), graded({{0, grp(1)}, {1, grp(0, {3})}}));
  GradedGroup z4 = graded({{3, grp(1)}}, 4);
  EXPECT_EQ(z4.shift(2), graded({{1, grp(1)}}, 4));
}

TEST(GradedGroup, DirectSumComponentwise) {
  GradedGroup a = graded({{0, grp(2)}}), b = graded({{1, grp(0, {2})}});
  EXPECT_EQ(direct_sum(a, b), graded({{0, grp(2)}, {1, grp(0, {2})}}));
}

TEST(GradedGroup, EulerCharacteristic) {
  EXPECT_EQ(graded({{0, grp(5)}}).euler_characteristic(), 5);
  EXPECT_EQ(graded({{0, grp(1)}, {1, grp(0, {2})}}).euler_characteristic(), 1);
  EXPECT_EQ(GradedGroup(2).euler_characteristic(), 0);
  EXPECT_THROW(graded({{0, grp(1)}}, 3).euler_characteristic(), std::domain_error);
}

TEST(LSpace, Examples) {
  EXPECT_TRUE(is_l_space(graded({{0, grp(5)}}), Field::prime(2)));
  GradedGroup p = graded({{0, grp(1)}, {1, grp(0, {2})}});
  EXPECT_FALSE(is_l_space(p, Field::prime(2)));
  EXPECT_TRUE(is_l_space(p, Field::rationals()));
}

TEST(LSpace, PrimeEquivalence) {
  std::mt19937_64 rng(2);
  std::uniform_int_distribution<unsigned> r(0, 3);
  for (int t = 0; t < 300; ++t) {
    GradedGroup g = graded({{0, direct_sum(grp(r(rng)), random_finite(rng, 60))},
                            {1, direct_sum(grp(r(rng) % 2), random_finite(rng, 60))}});
    for (std::uint64_t p : {2u, 3u, 5u}) {
      bool p_torsion = g.at(0).p_rank(p) > 0 || g.at(1).p_rank(p) > 0;
      EXPECT_EQ(is_l_space(g, Field::prime(p)), is_l_space(g, Field::rationals()) && !p_torsion) << g.to_string();
    }
  }
}

TEST(Extensions, Examples) {
  auto z2 = FgAbelianGroup::cyclic(2);
  auto four = enumerate_extensions(z2, z2);
  ASSERT_EQ(four.size(), 2u);
  EXPECT_NE(std::find(four.begin(), four.end(), FgAbelianGroup::cyclic(4)), four.end());
  EXPECT_NE(std::find(four.begin(), four.end(), grp(0, {2, 2})), four.end());
  EXPECT_EQ(enumerate_extensions(z2, FgAbelianGroup()), std::vector<FgAbelianGroup>{z2});
  EXPECT_EQ(enumerate_extensions(z2, FgAbelianGroup::cyclic(3)), std::vector<FgAbelianGroup>{FgAbelianGroup::cyclic(6)});
  EXPECT_THROW(enumerate_extensions(grp(1), z2), std::invalid_argument);
}

TEST(Extensions, MatchBruteForceSubgroupSearch) {
  std::vector<FgAbelianGroup> small;
  for (long n = 1; n <= 8; ++n)
    for (const auto& g : tst::brute_groups_of_order(n)) small.push_back(g);
  for (const auto& h : small)
    for (const auto& k : small) {
      if (h.order() * k.order() > 16) continue;
      auto got = enumerate_extensions(h, k);
      auto want = tst::brute_extensions(h, k);
      std::sort(got.begin(), got.end(), [](const auto& a, const auto& b) { return a.to_string() < b.to_string(); });
      std::sort(want.begin(), want.end(), [](const auto& a, const auto& b) { return a.to_string() < b.to_string(); });
      EXPECT_EQ(got, want) << h.to_string() << " by " << k.to_string();
    }
}

TEST(Extensions, OrderAndDimensionBounds) {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 60; ++t) {
    FgAbelianGroup h = random_finite(rng, 16), k = random_finite(rng, 16);
    for (const auto& g : enumerate_extensions(h, k)) {
      EXPECT_EQ(g.order(), h.order() * k.order());
      for (std::uint64_t p : {2u, 3u}) {
        unsigned dg = g.p_rank(p), dh = h.p_rank(p), dk = k.p_rank(p);
        EXPECT_GE(dg, std::max(dh, dk));
        EXPECT_LE(dg, dh + dk);
      }
    }
  }
}

TEST(Extensions, GroupsOfOrderMatchesPartitionCount) {
  for (long n = 1; n <= 64; ++n) EXPECT_EQ(groups_of_order(n).size(), tst::brute_groups_of_order(n).size()) << n;
}

TEST(SubgroupQuotientPairs, MatchBruteForce) {
  for (long n = 1; n <= 16; ++n)
    for (const auto& g : tst::brute_groups_of_order(n)) {
      std::set<std::pair<std::string, std::string>> want;
      auto e = tst::explicit_group(g);
      for (const auto& s : tst::all_subgroups(e)) {
        auto [ss, qs] = tst::sub_quotient_signature(e, s, n);
        long so = tst::count_members(s);
        want.insert({tst::identify(so, ss, n).to_string(), tst::identify(n / so, qs, n).to_string()});
      }
      std::set<std::pair<std::string, std::string>> got;
      for (const auto& [s, q] : subgroup_quotient_pairs(g)) got.insert({s.to_string(), q.to_string()});
      EXPECT_EQ(got, want) << g.to_string();
    }
}
