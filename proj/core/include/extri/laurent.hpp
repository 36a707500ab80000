#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "extri/matrix.hpp"

namespace extri {

// Element of Z[T, T^-1], stored as exponent -> nonzero coefficient.
class LaurentPoly {
 public:
  LaurentPoly() = default;
  LaurentPoly(int c) { set(0, Integer(c)); }
  LaurentPoly(const Integer& c) { set(0, c); }

  static LaurentPoly monomial(long exponent, const Integer& coeff = 1);
  static LaurentPoly T() { return monomial(1); }
  static LaurentPoly T_inv() { return monomial(-1); }

  const std::map<long, Integer>& terms() const { return terms_; }
  Integer coeff(long exponent) const;
  void set(long exponent, const Integer& c);
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  long min_degree() const;
  long max_degree() const;

  Integer eval_at_one() const;
  // Image in F_p under T -> unit. Requires unit invertible mod p.
  std::uint64_t eval_mod_p(std::uint64_t p, std::uint64_t unit) const;

  LaurentPoly& operator+=(const LaurentPoly& o);
  LaurentPoly& operator-=(const LaurentPoly& o);
  LaurentPoly& operator*=(const LaurentPoly& o);
  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  friend LaurentPoly operator*(LaurentPoly a, const LaurentPoly& b) { return a *= b; }
  friend LaurentPoly operator-(LaurentPoly a);
  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) { return a.terms_ == b.terms_; }
  friend bool operator!=(const LaurentPoly& a, const LaurentPoly& b) { return !(a == b); }

  // Ascending exponents, e.g. "-T^-1 + 2 + 3*T^2".
  std::string to_string() const;

 private:
  std::map<long, Integer> terms_;
};

inline bool ring_is_zero(const LaurentPoly& x) { return x.is_zero(); }

using LaurentMatrix = Matrix<LaurentPoly>;

LaurentMatrix extend_scalars(const IntMatrix& m);
IntMatrix eval_at_one(const LaurentMatrix& m);
bool is_constant(const LaurentMatrix& m);

}  // namespace extri
