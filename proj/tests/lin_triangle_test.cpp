#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "extri/lin_triangle.hpp"
#include "extri/snf.hpp"
#include "support.hpp"

using namespace extri;

namespace {

TriangleHypotheses zero_instance() {
  TriangleHypotheses h;
  for (int i = 0; i < 3; ++i) {
    h.d[i] = IntMatrix(0, 0);
    h.f[i] = h.g[i] = h.H[i] = IntMatrix(0, 0);
    h.F[i] = h.G[i] = IntMatrix(0, 0);
  }
  return h;
}

// A = Z + Z with d = [[0, 2], [0, 0]] (generators in grades 0 and 1),
// B = Z in grade 0, f2 = inclusion into the first summand.
TriangleHypotheses small_rotation() {
  IntMatrix a{{0, 2}, {0, 0}}, sa{{1, 0}, {0, -1}};
  IntMatrix b{{0}}, sb{{1}};
  IntMatrix f2{{1}, {0}};
  return rotation_instance(a, sa, b, sb, f2);
}

// y lies in the column lattice of d: appending it leaves the cokernel unchanged
// (finitely generated modules are Hopfian).
bool in_column_lattice(const IntMatrix& d, const IntMatrix& y) {
  return cokernel_presentation(d.transpose()) == cokernel_presentation(IntMatrix::hstack(d, y).transpose());
}

std::vector<std::string> sorted(std::vector<std::string> v) {
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace

TEST(Hypotheses, ZeroComplexesPass) {
  auto rep = verify_hypotheses(zero_instance());
  EXPECT_TRUE(rep.all_passed());
  EXPECT_EQ(rep.checks.size(), 16u);
}

TEST(Hypotheses, RotationInstance) {
  TriangleHypotheses h = small_rotation();
  EXPECT_TRUE(verify_hypotheses(h).all_passed());
  // F0 = -s_a and F1 = s_a + (-s_b) are isomorphisms with eigenvalues of both
  // signs, so they are not of the form +-(Id + N).
  EXPECT_EQ(sorted(verify_hypotheses(h, QuasiIsoMode::Certificate).failing()),
            (std::vector<std::string>{"quasi_iso_0", "quasi_iso_1"}));
  EXPECT_TRUE(is_acyclic(build_total(h)));

  DeltaReport d = build_delta(h);
  EXPECT_TRUE(d.anti_chain);
  EXPECT_TRUE(d.quasi_iso);
  // delta = (-H1, f1) with the f1 block the projection onto B.
  IntMatrix want = IntMatrix::vstack(IntMatrix(-h.H[1]), h.f[1]);
  EXPECT_EQ(d.delta, want);

  for (std::uint64_t p : {2u, 3u}) EXPECT_TRUE(run_six_step_ss(build_phi_cone(h), p).ok());
}

TEST(Hypotheses, NonzeroG1IsReported) {
  TriangleHypotheses h = small_rotation();
  h.g[1](0, 0) += 1;
  auto rep = verify_hypotheses(h);
  EXPECT_FALSE(rep.all_passed());
  auto failing = rep.failing();
  EXPECT_NE(std::find(failing.begin(), failing.end(), "g1_zero"), failing.end());
  EXPECT_FALSE(rep.get("g1_zero").residual.is_zero());
  // The stored g1 no longer matches f2 f1 - (d H1 + H1 d).
  EXPECT_EQ(sorted(failing), (std::vector<std::string>{"g1_zero", "null_homotopy_1"}));
  // The total complex sees only d, f, H, so it is still a complex.
  IntMatrix t = build_total(h);
  EXPECT_TRUE((t * t).is_zero());
}

TEST(Generator, ValidInstances) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    TriangleHypotheses h = generate_valid_instance(seed);
    ASSERT_TRUE(verify_hypotheses(h).all_passed()) << seed;
    IntMatrix t = build_total(h);
    EXPECT_TRUE((t * t).is_zero());
    EXPECT_TRUE(is_acyclic(t)) << seed;
    EXPECT_TRUE(build_delta(h).quasi_iso) << seed;
  }
}

TEST(Generator, Deterministic) {
  TriangleHypotheses a = generate_valid_instance(42), b = generate_valid_instance(42);
  for (int i = 0; i < 3; ++i) {
    EXPECT_EQ(a.d[i], b.d[i]);
    EXPECT_EQ(a.H[i], b.H[i]);
    EXPECT_EQ(a.G[i], b.G[i]);
  }
}

TEST(Generator, UnperturbedIsRotation) {
  GeneratorOptions opt;
  opt.perturb = false;
  TriangleHypotheses h = generate_valid_instance(1, opt);
  EXPECT_TRUE(verify_hypotheses(h).all_passed());
  for (int i = 0; i < 3; ++i) {
    EXPECT_TRUE(h.g[i].is_zero());
    EXPECT_TRUE(h.G[i].is_zero());
  }
  EXPECT_TRUE(h.H[0].is_zero());
}

TEST(SixStep, CollapsesOverTwoAndThree) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    TriangleHypotheses h = generate_valid_instance(seed);
    PhiCone cone = build_phi_cone(h);
    for (std::uint64_t p : {2u, 3u}) {
      SixStepReport r = run_six_step_ss(cone, p);
      EXPECT_TRUE(r.ok()) << "seed " << seed << " p " << p;
      EXPECT_LE(r.ss.collapse_page, 4);
      EXPECT_TRUE(r.ss.abutment_ok);
    }
  }
}

TEST(SixStep, NonQuasiIsoIsDetected) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    TriangleHypotheses h = non_quasi_iso_instance(seed);
    auto rep = verify_hypotheses(h);
    EXPECT_EQ(rep.failing(), std::vector<std::string>{"quasi_iso_0"});
    EXPECT_FALSE(run_six_step_ss(build_phi_cone(h), 2).e4_zero);
  }
}

TEST(Phi, MatchesBlockFormulaAndKillsHomology) {
  std::mt19937_64 rng(5);
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    TriangleHypotheses h = generate_valid_instance(seed);
    PhiCone cone = build_phi_cone(h);
    EXPECT_EQ(cone.phi, phi_block_formula(h));
    EXPECT_TRUE((cone.total * cone.phi + cone.phi * cone.total).is_zero());
    IntMatrix z = integer_kernel(cone.total);
    if (z.cols() == 0) continue;
    for (int t = 0; t < 5; ++t) {
      IntMatrix c = extri::testing::random_matrix(rng, z.cols(), 1, -3, 3);
      EXPECT_TRUE(in_column_lattice(cone.total, cone.phi * (z * c))) << seed;
    }
  }
}

TEST(Faults, EachIsCaughtByItsCheck) {
  int injected = 0;
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    TriangleHypotheses h = generate_valid_instance(seed);
    for (Fault f : all_faults()) {
      auto fc = inject_fault(h, f, seed);
      if (!fc) continue;
      ++injected;
      EXPECT_EQ(sorted(verify_hypotheses(fc->data).failing()), sorted(fc->expected_failures))
          << fault_name(f) << " seed " << seed;
    }
  }
  EXPECT_GE(injected, 100);
}

TEST(IteratedCone, SingleTriangle) {
  TriangleHypotheses h = small_rotation();
  Filtration f = iterated_cone_filtration({h});
  EXPECT_EQ(f.max_level() - f.min_level(), 1);
  auto ss = spectral_sequence(f, 2);
  EXPECT_TRUE(ss.abutment_ok);
  std::uint64_t e1 = ss.page(1).total();
  std::uint64_t want = 0;
  for (int i : {0, 2}) want += homology_dims(ZComplex::differential_module(h.d[i]), Field::prime(2)).at(0);
  EXPECT_EQ(e1, want);
}

TEST(IteratedCone, TwoTriangles) {
  TriangleHypotheses h = small_rotation();
  Filtration f = iterated_cone_filtration({h, h});
  EXPECT_EQ(f.max_level() - f.min_level(), 2);
  auto ss = spectral_sequence(f, 2);
  EXPECT_TRUE(ss.abutment_ok);
  auto dim = [](const IntMatrix& d) {
    return homology_dims(ZComplex::differential_module(d), Field::prime(2)).at(0);
  };
  // Kunneth over F2: four summands A A, A B, B A, B B on E1.
  std::uint64_t a = dim(h.d[0]), b = dim(h.d[2]);
  EXPECT_EQ(ss.page(1).total(), (a + b) * (a + b));
}
