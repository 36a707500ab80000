#pragma once

#include <string>
#include <vector>

#include "extri/matrix.hpp"

namespace extri {

using LatticePoint = std::vector<Integer>;

// Integer points a with sum_i (a_i - c_i)^2 = target.
struct LatticeProblem {
  std::vector<Rational> offsets;
  Rational target;

  void validate() const;
};

// Exact search inside |a_i - c_i| <= sqrt(remaining target); points in
// lexicographic order.
std::vector<LatticePoint> enumerate_reducibles(const LatticeProblem& p);
// Plain scan of the box |a_i| <= ceil(max|c_i|) + ceil(sqrt(target)) + 1.
std::vector<LatticePoint> enumerate_reducibles_bruteforce(const LatticeProblem& p);

// Curvature class a - c in a basis e_i with e_i.e_i = -1. The singular
// surface has class s, t lifts the extra Stiefel-Whitney class, and the
// offsets are c = -(s/4 + t/2).
struct ChargeFrame {
  std::vector<Integer> s;
  std::vector<Integer> t;

  LatticeProblem problem(const Rational& kappa) const;
  std::vector<Rational> offsets() const;
  // <w2, Sigma> mod 2 and w2^2 mod 4 for the negative definite form.
  Integer w2_sigma() const;
  Integer w2_square() const;
  bool boundary_trivial() const;
};

struct ReducibleSolution {
  LatticePoint a;
  ChargeFrame frame;
  Rational kappa;
  Rational k;
  Rational l;

  std::string boundary_limit() const { return frame.boundary_trivial() ? "trivial" : "nontrivial"; }
  friend bool operator==(const ReducibleSolution& x, const ReducibleSolution& y) {
    return x.a == y.a && x.frame.s == y.frame.s && x.frame.t == y.frame.t && x.kappa == y.kappa && x.k == y.k &&
           x.l == y.l;
  }
};

// x = a - c, kappa = |x|^2, l = (x - s/4).s, k = kappa - l/2 - s.s/16.
// Throws std::domain_error unless 2l = <w2, Sigma> (mod 2) and
// 4k + w2^2 = 0 (mod 4); the overrides replace the frame's own w2 data.
ReducibleSolution assemble_charges(const LatticePoint& a, const ChargeFrame& frame);
ReducibleSolution assemble_charges(const LatticePoint& a, const ChargeFrame& frame, const Integer& w2_sigma,
                                   const Integer& w2_square);

// x -> -x with t -> twist - t. Needs s + twist even and twist not even.
ReducibleSolution xi_twist(const ReducibleSolution& sol, const std::vector<Integer>& twist);

// All reducibles of energy kappa in the frame, with charges.
std::vector<ReducibleSolution> reducibles_with_charges(const ChargeFrame& frame, const Rational& kappa);

}  // namespace extri
