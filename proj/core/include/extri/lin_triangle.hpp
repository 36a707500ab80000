#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "extri/chain.hpp"
#include "extri/matrix.hpp"

namespace extri {

// Three differential modules C0, C1, C2 over Z with maps (indices mod 3)
//   f[i] : C_i -> C_{i+1}          chain maps
//   H[i], g[i] : C_i -> C_{i+2}    d H + H d = f[i+1] f[i] - g[i], with g[1] = 0
//   F[i], G[i] : C_i -> C_i        d G - G d = F[i] - (f[i+2] H[i] - H[i+1] f[i])
// and each F[i] a quasi-isomorphism.
struct TriangleHypotheses {
  std::array<IntMatrix, 3> d;
  std::array<IntMatrix, 3> f;
  std::array<IntMatrix, 3> g;
  std::array<IntMatrix, 3> H;
  std::array<IntMatrix, 3> F;
  std::array<IntMatrix, 3> G;
  // Optional involutions with parity[i] d[i] = -d[i] parity[i]; needed to
  // chain cones of f[2] together.
  std::optional<std::array<IntMatrix, 3>> parity;

  std::size_t dim(int i) const { return d[static_cast<std::size_t>(((i % 3) + 3) % 3)].rows(); }
  void validate_shapes() const;
};

enum class QuasiIsoMode {
  // Mapping cone of F[i] acyclic over Z.
  Homology,
  // F[i] = +-(Id + N) with N nilpotent, so F[i] is an isomorphism.
  Certificate,
};

struct HypothesisCheck {
  std::string name;
  bool passed = false;
  IntMatrix residual;
  std::string detail;
};

struct HypothesisReport {
  std::vector<HypothesisCheck> checks;

  bool all_passed() const;
  std::vector<std::string> failing() const;
  const HypothesisCheck& get(const std::string& name) const;
};

// Check names: complex_i, chain_map_i, null_homotopy_i, g1_zero,
// homotopy_identity_i, quasi_iso_i for i = 0, 1, 2.
HypothesisReport verify_hypotheses(const TriangleHypotheses& h, QuasiIsoMode mode = QuasiIsoMode::Homology);

// +1 when d F + F d = 0 (anti-chain map), -1 when d F - F d = 0 (chain map),
// nothing otherwise. Anti-chain wins when both hold.
std::optional<int> map_commutation_sign(const IntMatrix& d, const IntMatrix& map);

// Total complex on C0 + C2 + C1 with
//   d = [[d0, f2, -H1], [0, -d2, f1], [0, 0, d1]].
IntMatrix build_total(const TriangleHypotheses& h);
std::array<std::size_t, 3> total_block_sizes(const TriangleHypotheses& h);

struct PhiCone {
  IntMatrix total;   // d on C0 + C2 + C1
  IntMatrix G;       // [[G0, 0, 0], [H0, -G2, 0], [f0, H2, G1]]
  IntMatrix phi;     // d G - G d, anti-commutes with d
  IntMatrix M;       // [[d, phi], [0, d]] on six column blocks
  std::array<std::size_t, 6> columns;
  Filtration filtration;  // column j sits at level j
};

PhiCone build_phi_cone(const TriangleHypotheses& h);
// phi as the explicit block matrix in terms of the hypothesis data.
IntMatrix phi_block_formula(const TriangleHypotheses& h);

struct SixStepReport {
  SpectralSequence ss;
  bool d1_cross_zero = false;      // d1 from column 3 to column 2
  bool d2_columns_zero = false;    // d2 out of columns 3 and 4
  bool d3_isomorphisms = false;    // d3 from columns 3,4,5 onto 0,1,2
  bool e4_zero = false;
  bool ok() const { return d1_cross_zero && d2_columns_zero && d3_isomorphisms && e4_zero; }
};

SixStepReport run_six_step_ss(const PhiCone& cone, std::uint64_t p = 2);

struct DeltaReport {
  IntMatrix delta;        // C1 -> C0 + C2, equal to (-H1, f1)
  IntMatrix cone_f2;      // [[d0, f2], [0, -d2]]
  bool anti_chain = false;
  bool quasi_iso = false;
};

DeltaReport build_delta(const TriangleHypotheses& h);

// Tensor product of the cones of f[2] over the given data, filtered by the
// number of C2 factors. All but the last datum must carry parities.
Filtration iterated_cone_filtration(const std::vector<TriangleHypotheses>& hs);

// d_A (x) Id + s_A (x) d_B.
IntMatrix tensor_differential(const IntMatrix& d_a, const IntMatrix& s_a, const IntMatrix& d_b);
IntMatrix kronecker(const IntMatrix& a, const IntMatrix& b);

// --- Generators -----------------------------------------------------------

struct GeneratorOptions {
  std::size_t max_base_rank = 2;
  bool perturb = true;
  int max_attempts = 50;
};

// Rotation of a chain map f2 : B -> A with parities s_a, s_b.
TriangleHypotheses rotation_instance(const IntMatrix& a, const IntMatrix& s_a, const IntMatrix& b,
                                     const IntMatrix& s_b, const IntMatrix& f2);

// Seeded random instance satisfying every hypothesis.
TriangleHypotheses generate_valid_instance(std::uint64_t seed, const GeneratorOptions& opt = {});

// Identities hold, C1 and C2 acyclic, C0 not; only F[0] fails to be a quasi-isomorphism.
TriangleHypotheses non_quasi_iso_instance(std::uint64_t seed);

enum class Fault {
  PerturbG0,
  PerturbG2,
  NonzeroG1,
  PerturbGMap0,
  PerturbGMap1,
  PerturbGMap2,
  ShiftF0,
  ShiftF1,
  ShiftF2,
};

struct FaultCase {
  TriangleHypotheses data;
  std::vector<std::string> expected_failures;
};

std::vector<Fault> all_faults();
std::string fault_name(Fault f);
// Breaks exactly the targeted equation; nothing when the instance cannot
// carry the fault (e.g. a zero differential for a commutator shift).
std::optional<FaultCase> inject_fault(const TriangleHypotheses& h, Fault fault, std::uint64_t seed);

}  // namespace extri
