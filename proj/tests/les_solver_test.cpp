#include <gtest/gtest.h>

#include <random>
#include <set>

#include "extri/les_solver.hpp"
#include "support.hpp"

using namespace extri;
namespace tst = extri::testing;

namespace {

FgAbelianGroup grp(unsigned rank, std::vector<Integer> torsion = {}) { return FgAbelianGroup(rank, torsion); }

GradedGroup graded(const FgAbelianGroup& g0, const FgAbelianGroup& g1) {
  GradedGroup g(2);
  g.set(0, g0);
  g.set(1, g1);
  return g;
}

TrianglePuzzle first_triangle() {
  auto in = PoincareInputs::standard();
  TrianglePuzzle p;
  p.corners = {std::nullopt, SymbolicGroup::from_graded(in.lens_space), SymbolicGroup::from_graded(in.knot)};
  p.unknown_name = "A3";
  p.rank_constraint = in.rank_n3;
  return p;
}

TrianglePuzzle second_triangle(std::optional<std::set<std::uint64_t>> primes = std::set<std::uint64_t>{2}) {
  auto in = PoincareInputs::standard();
  SolveResult first = apply_rules(first_triangle());
  TrianglePuzzle p;
  p.corners = {std::nullopt, first.families.at(0).group, SymbolicGroup::from_graded(in.knot)};
  p.unknown_name = "A1";
  p.rank_constraint = in.rank_n1;
  p.allowed_primes = primes;
  p.symbols = first.families.at(0).symbols;
  return p;
}

using Pair = std::pair<std::string, std::string>;

std::set<Pair> as_pairs(const std::vector<GradedGroup>& gs) {
  std::set<Pair> out;
  for (const auto& g : gs) out.insert({g.at(0).to_string(), g.at(1).to_string()});
  return out;
}

int mod2(int x) { return ((x % 2) + 2) % 2; }

// Every X fitting 0 -> coker f -> X -> ker f -> 0 in both grades, over all
// graded homomorphisms f between the known corners.
std::set<Pair> brute_solutions(const TrianglePuzzle& p, std::size_t u) {
  std::size_t s = (u + 1) % 3, t = (u + 2) % 3;
  GradedGroup S = p.corners[s]->to_graded(), T = p.corners[t]->to_graded();
  int ds = p.degrees[s], dt = p.degrees[t], du = p.degrees[u];
  std::array<std::set<std::pair<std::vector<Integer>, std::vector<Integer>>>, 2> kc;
  for (int g = 0; g < 2; ++g) kc[g] = tst::brute_ker_coker(S.at(g), T.at(g + ds));
  std::set<Pair> out;
  for (const auto& p0 : kc[0])
    for (const auto& p1 : kc[1]) {
      std::array<const std::pair<std::vector<Integer>, std::vector<Integer>>*, 2> f{&p0, &p1};
      std::array<std::vector<FgAbelianGroup>, 2> xs;
      for (int h = 0; h < 2; ++h) {
        FgAbelianGroup coker(0, f[mod2(h - dt - ds)]->second);
        FgAbelianGroup ker(0, f[mod2(h + du)]->first);
        xs[h] = tst::brute_extensions(coker, ker);
      }
      for (const auto& x0 : xs[0])
        for (const auto& x1 : xs[1]) out.insert({x0.to_string(), x1.to_string()});
    }
  return out;
}

FgAbelianGroup small_finite(std::mt19937_64& rng) {
  static const std::vector<std::vector<Integer>> pool{{}, {}, {2}, {3}, {4}, {2, 2}, {2}, {6}};
  return grp(0, pool[rng() % pool.size()]);
}

}  // namespace

TEST(SplitLes, PoincareTriangles) {
  SesSchema s = split_les(first_triangle());
  EXPECT_EQ(s.unknown_corner, 0u);
  EXPECT_EQ(s.coker_shift, 1);
  EXPECT_EQ(s.to_string("A3"), "0 -> coker(f)[1] -> A3 -> ker(f) -> 0");
  EXPECT_EQ(split_les(second_triangle()).coker_shift, 1);
}

TEST(SplitLes, ZeroCornerGivesIsomorphism) {
  TrianglePuzzle p;
  GradedGroup b = graded(grp(0, {2}), grp(0, {3}));
  p.corners = {std::nullopt, SymbolicGroup::from_graded(GradedGroup(2)), SymbolicGroup::from_graded(b)};
  SolveResult r = apply_rules(p);
  ASSERT_TRUE(r.concrete);
  // X = coker(0 -> B)[1] = B shifted by one.
  EXPECT_EQ(*r.concrete, std::vector<GradedGroup>{b.shift(1)});
}

TEST(ApplyRules, FirstStep) {
  SolveResult r = apply_rules(first_triangle());
  ASSERT_EQ(r.families.size(), 1u);
  EXPECT_EQ(r.families[0].group.to_string(), "(Z^3)_(0) + K_(1)");
  EXPECT_TRUE(replay_trace(r.trace));
}

TEST(ApplyRules, SecondStep) {
  SolveResult r = apply_rules(second_triangle());
  ASSERT_EQ(r.families.size(), 1u);
  const auto& f = r.families[0];
  EXPECT_EQ(f.group.to_string(), "Z_(0) + G_(1)");
  ASSERT_TRUE(f.torsion_primes);
  EXPECT_EQ(*f.torsion_primes, std::set<std::uint64_t>{2});
  EXPECT_TRUE(f.symbols.at("G").nonzero);
  EXPECT_TRUE(replay_trace(r.trace));
  auto l = family_is_l_space(f, Field::prime(2));
  ASSERT_TRUE(l);
  EXPECT_FALSE(*l);
}

TEST(ApplyRules, PipelineReport) {
  PoincareReport rep = poincare_pipeline(PoincareInputs::standard());
  EXPECT_EQ(rep.a3, "(Z^3)_(0) + K_(1)");
  EXPECT_EQ(rep.a1, "Z_(0) + G_(1)");
  EXPECT_EQ(rep.verdict, "not an F2 L-space");
  EXPECT_FALSE(rep.f2_l_space);
}

TEST(ApplyRules, TracesReplayAndTamperingIsCaught) {
  SolveResult r = apply_rules(second_triangle());
  ASSERT_TRUE(replay_trace(r.trace));
  for (std::size_t i = 0; i < r.trace.steps.size(); ++i) {
    if (r.trace.steps[i].data.empty()) continue;
    DeductionTrace bad = r.trace;
    bad.steps[i].data[0] += 7;
    EXPECT_FALSE(replay_trace(bad)) << rule_name(bad.steps[i].rule);
  }
}

TEST(ApplyRules, InconsistentConstraintsThrow) {
  TrianglePuzzle p = second_triangle();
  p.rank_constraint = std::array<unsigned, 2>{5, 0};
  EXPECT_THROW(apply_rules(p), std::domain_error);
}

TEST(ApplyRules, ConcreteMatchesBruteForce) {
  std::mt19937_64 rng(31);
  int checked = 0;
  for (int t = 0; t < 120; ++t) {
    TrianglePuzzle p;
    std::size_t u = rng() % 3;
    for (std::size_t i = 0; i < 3; ++i)
      if (i != u) p.corners[i] = SymbolicGroup::from_graded(graded(small_finite(rng), small_finite(rng)));
    for (auto& d : p.degrees) d = static_cast<int>(rng() % 2);
    SolveResult r;
    try {
      r = apply_rules(p);
    } catch (const std::domain_error&) {
      ADD_FAILURE() << "finite puzzles always have a solution";
      continue;
    }
    ASSERT_TRUE(r.concrete);
    EXPECT_EQ(as_pairs(*r.concrete), brute_solutions(p, u));
    EXPECT_TRUE(replay_trace(r.trace));
    ++checked;
  }
  EXPECT_EQ(checked, 120);
}

TEST(ApplyRules, ConstraintsOnlyShrink) {
  std::mt19937_64 rng(32);
  for (int t = 0; t < 60; ++t) {
    TrianglePuzzle p;
    p.corners[1] = SymbolicGroup::from_graded(graded(small_finite(rng), small_finite(rng)));
    p.corners[2] = SymbolicGroup::from_graded(graded(small_finite(rng), small_finite(rng)));
    auto loose = as_pairs(*apply_rules(p).concrete);
    for (std::uint64_t q : {2u, 3u}) {
      TrianglePuzzle tight = p;
      tight.allowed_primes = std::set<std::uint64_t>{q};
      std::set<Pair> narrowed;
      try {
        narrowed = as_pairs(*apply_rules(tight).concrete);
      } catch (const std::domain_error&) {
      }
      for (const auto& x : narrowed) EXPECT_TRUE(loose.count(x)) << x.first << " " << x.second;
      EXPECT_LE(narrowed.size(), loose.size());
    }
  }
}

TEST(ApplyRules, PrimeRestrictionOnFamilyOnlyShrinks) {
  TrianglePuzzle tight = second_triangle(), loose = second_triangle(std::nullopt);
  for (const auto& torsion : std::vector<std::vector<Integer>>{{2}, {4}, {2, 2}, {3}, {6}, {5}, {}}) {
    GradedGroup cand = graded(grp(1), grp(0, torsion));
    if (verify_solution(tight, cand).ok) EXPECT_TRUE(verify_solution(loose, cand).ok) << cand.to_string();
  }
}

TEST(Verify, Candidates) {
  TrianglePuzzle p = second_triangle();
  auto v = verify_solution(p, graded(grp(1), grp(0, {2})));
  EXPECT_TRUE(v.ok) << v.reason;
  EXPECT_EQ(v.witness.at("G"), FgAbelianGroup::cyclic(2));
  EXPECT_EQ(v.witness.at("H"), FgAbelianGroup::cyclic(2));
  EXPECT_TRUE(v.witness.at("K").is_trivial());

  auto zero = verify_solution(p, graded(grp(1), grp(0)));
  EXPECT_FALSE(zero.ok);

  auto three = verify_solution(p, graded(grp(1), grp(0, {3})));
  EXPECT_FALSE(three.ok);
  EXPECT_NE(three.reason.find("3"), std::string::npos);

  EXPECT_FALSE(verify_solution(p, graded(grp(2), grp(0, {2}))).ok);
}

TEST(Corollary, Statements) {
  auto full = corollary_check(second_triangle());
  EXPECT_TRUE(full.verified);
  EXPECT_FALSE(full.vacuous);
  EXPECT_NE(full.text.find("2-torsion"), std::string::npos);
  EXPECT_NE(full.text.find("odd grading"), std::string::npos);

  auto weak = corollary_check(second_triangle(std::nullopt));
  EXPECT_TRUE(weak.verified);
  EXPECT_NE(weak.text.find("finite"), std::string::npos);

  // Z -> 0 leaves X = Z up to shift.
  TrianglePuzzle free_one;
  free_one.corners = {std::nullopt, SymbolicGroup::from_graded(graded(grp(1), grp(0))),
                      SymbolicGroup::from_graded(GradedGroup(2))};
  auto vac = corollary_check(free_one);
  EXPECT_TRUE(vac.vacuous) << vac.text;
}

TEST(Cokernel, RealizabilitySearch) {
  CokernelOrigin o{grp(1), grp(2), 1};
  EXPECT_TRUE(cokernel_realizable(o, FgAbelianGroup::cyclic(3)));
  EXPECT_TRUE(cokernel_realizable(o, grp(0)));
  // Z -> Z^2 has a cyclic cokernel torsion.
  EXPECT_FALSE(cokernel_realizable(o, grp(0, {2, 2})));
}
