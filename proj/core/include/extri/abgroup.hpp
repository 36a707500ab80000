#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "extri/matrix.hpp"

namespace extri {

// Z^rank + Z/d1 + ... + Z/dk with 1 < d1 | d2 | ... | dk.
class FgAbelianGroup {
 public:
  FgAbelianGroup() = default;
  // Any list of positive orders is accepted; it is brought to invariant-factor form.
  FgAbelianGroup(unsigned rank, const std::vector<Integer>& cyclic_orders);

  static FgAbelianGroup free(unsigned rank) { return FgAbelianGroup(rank, {}); }
  static FgAbelianGroup cyclic(const Integer& n);

  unsigned rank() const { return rank_; }
  const std::vector<Integer>& invariant_factors() const { return factors_; }
  bool is_trivial() const { return rank_ == 0 && factors_.empty(); }
  bool is_finite() const { return rank_ == 0; }
  bool is_free() const { return factors_.empty(); }
  // Order of the torsion subgroup.
  Integer torsion_order() const;
  // Order of the group; throws when the rank is positive.
  Integer order() const;
  // Minimal number of generators.
  unsigned min_generators() const { return rank_ + static_cast<unsigned>(factors_.size()); }
  FgAbelianGroup torsion() const { return FgAbelianGroup(0, factors_); }
  // Prime-power cyclic orders, sorted.
  std::vector<Integer> elementary_divisors() const;
  std::vector<Integer> torsion_primes() const;
  // Number of invariant factors divisible by p.
  unsigned p_rank(std::uint64_t p) const;

  std::string to_string() const;

  friend bool operator==(const FgAbelianGroup& a, const FgAbelianGroup& b) {
    return a.rank_ == b.rank_ && a.factors_ == b.factors_;
  }
  friend bool operator!=(const FgAbelianGroup& a, const FgAbelianGroup& b) { return !(a == b); }
  friend bool operator<(const FgAbelianGroup& a, const FgAbelianGroup& b) {
    if (a.rank_ != b.rank_) return a.rank_ < b.rank_;
    return a.factors_ < b.factors_;
  }

 private:
  unsigned rank_ = 0;
  std::vector<Integer> factors_;
};

FgAbelianGroup direct_sum(const FgAbelianGroup& a, const FgAbelianGroup& b);

// Prime factorization by trial division; intended for the small orders that
// occur in extension enumeration.
std::vector<std::pair<Integer, unsigned>> factorize(const Integer& n);

// Dimension over F_p of a group read as homology: each free summand gives one
// dimension and each torsion summand of order divisible by p gives two (one in
// its own degree, one from Tor in the next).
std::uint64_t dim_mod_p(const FgAbelianGroup& g, std::uint64_t p);

// Graded group with grading in Z/modulus; modulus 0 means Z-graded.
class GradedGroup {
 public:
  GradedGroup() = default;
  explicit GradedGroup(int modulus);

  int modulus() const { return modulus_; }
  int normalize(int grade) const;
  const FgAbelianGroup& at(int grade) const;
  void set(int grade, const FgAbelianGroup& g);
  // Nonzero components only.
  const std::map<int, FgAbelianGroup>& components() const { return components_; }

  GradedGroup shift(int n) const;
  unsigned total_rank() const;
  // Sum of even-graded ranks minus odd-graded ranks. Needs even modulus or Z grading.
  long euler_characteristic() const;
  std::uint64_t dim_mod_p(std::uint64_t p) const;
  bool is_trivial() const { return components_.empty(); }

  std::string to_string() const;

  friend bool operator==(const GradedGroup& a, const GradedGroup& b) {
    return a.modulus_ == b.modulus_ && a.components_ == b.components_;
  }
  friend bool operator!=(const GradedGroup& a, const GradedGroup& b) { return !(a == b); }

 private:
  int modulus_ = 2;
  std::map<int, FgAbelianGroup> components_;
};

GradedGroup direct_sum(const GradedGroup& a, const GradedGroup& b);

// Coefficient field: a prime p, or 0 for the rationals.
struct Field {
  std::uint64_t characteristic = 0;
  static Field rationals() { return {0}; }
  static Field prime(std::uint64_t p);
};

// Field dimension of the graded group read as homology with coefficients K.
std::uint64_t field_dimension(const GradedGroup& g, Field k);
// dim_K equals the Euler characteristic.
bool is_l_space(const GradedGroup& g, Field k);

// Abelian groups G with a subgroup isomorphic to H whose quotient is
// isomorphic to K. H and K must be finite and |H||K| <= bound.
std::vector<FgAbelianGroup> enumerate_extensions(const FgAbelianGroup& h, const FgAbelianGroup& k,
                                                 const Integer& bound = 4096);

// All abelian groups of the given order, in canonical sorted order.
std::vector<FgAbelianGroup> groups_of_order(const Integer& n);

// True when the finite p-group of type lambda has a subgroup of type mu with
// quotient of type nu (partitions of exponents, weakly decreasing).
bool has_subgroup_with_quotient(const std::vector<unsigned>& lambda, const std::vector<unsigned>& mu,
                                const std::vector<unsigned>& nu);

// Every (S, A/S) up to isomorphism for subgroups S of the finite group A.
std::vector<std::pair<FgAbelianGroup, FgAbelianGroup>> subgroup_quotient_pairs(const FgAbelianGroup& a,
                                                                          const Integer& bound = 4096);

}  // namespace extri
