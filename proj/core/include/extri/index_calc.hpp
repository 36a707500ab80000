#pragma once

#include <optional>
#include <string>
#include <vector>

#include "extri/matrix.hpp"

namespace extri {

// Topological input of the index formula for a pair (Z, Sigma). The term
// (3/2)(chi + sigma) may be given directly or as 3(1 - b1 + b+); when both are
// present they must agree.
struct ClosedPairTopology {
  std::optional<Integer> chi;
  std::optional<Integer> sigma;
  std::optional<Integer> b1;
  std::optional<Integer> b_plus;
  Integer chi_surface = 0;
  Integer self_intersection = 0;

  static ClosedPairTopology from_chi_sigma(const Integer& chi, const Integer& sigma);
  static ClosedPairTopology from_betti(const Integer& b1, const Integer& b_plus);
  ClosedPairTopology with_surface(const Integer& chi_s, const Integer& self_int) const;
};

// Flat limit b on a boundary component with h^j(b) = dim H^j.
struct FlatLimit {
  std::string name;
  unsigned h0 = 0;
  unsigned h1 = 0;

  void validate() const;
  static FlatLimit trivial_su2() { return {"trivial", 3, 0}; }
};

bool is_integral(const Rational& q);

// (3/2)(chi + sigma), or 3(1 - b1 + b+); throws std::domain_error when the
// two supplied forms disagree and std::invalid_argument when neither is set.
Rational topological_term(const ClosedPairTopology& t);

// 8 kappa - (3/2)(chi + sigma) + chi(Sigma) + (1/2) Sigma.Sigma.
Rational index_closed(const ClosedPairTopology& t, const Rational& kappa);

// Disjoint union; only the chi/sigma form survives since 1 - b1 + b+ is not additive.
ClosedPairTopology disjoint_union(const ClosedPairTopology& a, const ClosedPairTopology& b);

// Ind(A1 u A2) = Ind(A1) + Ind(A2) + h0(b) + h1(b).
Integer glue_index(const Integer& i1, const Integer& i2, const FlatLimit& b);
// Gluing the two ends of a single piece along b.
Integer close_up_index(const Integer& ind, const FlatLimit& b);

enum class IndexConvention {
  Plain,
  // Ind+ : subtracts h0 of the limit.
  Plus,
};

Integer convert_index(const Integer& ind, const FlatLimit& limit, IndexConvention from, IndexConvention to);

// Cylinder on RP^3 with flat limits at both ends.
struct Rp3IndexSet {
  bool same_limits = false;
  bool kappa_positive = false;
  Integer modulus;  // admissible indices form residue + modulus * N
  Integer residue;
  Integer minimum;
  std::vector<Integer> indices;  // scanned members, ascending
  std::vector<Rational> kappas;  // matching energies
  bool contains_one = false;
};

// Admissible indices for kappa <= kappa_bound.
Rp3IndexSet rp3_cylinder_indices(bool same_limits, bool kappa_positive, const Integer& kappa_bound = 100);

// Closed index of the capped-off unequal-limit cylinder minus Ind(A), computed
// from the cap indices and limits by the gluing formula.
Integer rp3_unequal_cap_shift();

// Cylinder on S^2 x S^1 capped by two flat S^1 x D^3 pieces.
struct S2xS1Bound {
  Integer offset;                 // 8 kappa = Ind + offset
  Integer index;                  // flat: kappa = 0; otherwise minimal kappa
  Integer kappa;
  std::optional<Integer> bound;   // Ind >= bound when not flat
};

S2xS1Bound s2xs1_breaking_bound(bool flat);

// Expected index at a central limit from the one at a generic limit:
// Ind drops by h0(central) - h0(generic).
Integer central_limit_index(const Integer& generic_index, const FlatLimit& generic, const FlatLimit& central);

struct ChargePoint {
  Rational k0;
  Rational l0;
  Rational kappa;
  Integer index;
};

// Pairs (k0, l0) in (1/4)Z x (1/2)Z with |k0|, |l0| <= bound and
// kappa = k0 + l0/2 + 1/8 >= 0; index 8 kappa - 3 + 2 - 1. Sorted by
// (index, k0, l0).
std::vector<ChargePoint> charge_index_scan(const Rational& bound);
ChargePoint charge_point(Rational k0, Rational l0);

// dim Q with -dim Q = -3(1 - b1 + b+) + chi(S) + (1/2) S.S; throws
// std::domain_error when the right side is not an integer.
Integer expected_dimension(const Integer& b1, const Integer& b_plus, const Integer& chi_surface,
                           const Integer& self_intersection);

}  // namespace extri
