#include "extri/index_calc.hpp"

#include <algorithm>
#include <stdexcept>

namespace extri {

ClosedPairTopology ClosedPairTopology::from_chi_sigma(const Integer& chi, const Integer& sigma) {
  ClosedPairTopology t;
  t.chi = chi;
  t.sigma = sigma;
  return t;
}

ClosedPairTopology ClosedPairTopology::from_betti(const Integer& b1, const Integer& b_plus) {
  ClosedPairTopology t;
  t.b1 = b1;
  t.b_plus = b_plus;
  return t;
}

ClosedPairTopology ClosedPairTopology::with_surface(const Integer& chi_s, const Integer& self_int) const {
  ClosedPairTopology t = *this;
  t.chi_surface = chi_s;
  t.self_intersection = self_int;
  return t;
}

void FlatLimit::validate() const {
  if (h0 > 3) throw std::invalid_argument("flat limit " + name + " has h0 > 3");
}

bool is_integral(const Rational& q) { return q.get_den() == 1; }

Rational topological_term(const ClosedPairTopology& t) {
  std::optional<Rational> a, b;
  if (t.chi.has_value() != t.sigma.has_value()) throw std::invalid_argument("chi and sigma must be given together");
  if (t.b1.has_value() != t.b_plus.has_value()) throw std::invalid_argument("b1 and b+ must be given together");
  if (t.chi) a = Rational(3, 2) * Rational(*t.chi + *t.sigma);
  if (t.b1) b = Rational(3 * (1 - *t.b1 + *t.b_plus));
  if (a && b && *a != *b)
    throw std::domain_error("(3/2)(chi + sigma) = " + a->get_str() + " but 3(1 - b1 + b+) = " + b->get_str());
  if (a) return *a;
  if (b) return *b;
  throw std::invalid_argument("topology needs chi/sigma or b1/b+");
}

Rational index_closed(const ClosedPairTopology& t, const Rational& kappa) {
  Rational r = 8 * kappa - topological_term(t) + Rational(t.chi_surface) + Rational(t.self_intersection) / 2;
  r.canonicalize();
  return r;
}

ClosedPairTopology disjoint_union(const ClosedPairTopology& a, const ClosedPairTopology& b) {
  Rational ta = topological_term(a), tb = topological_term(b);
  // Carry the sum of the topological terms as chi with sigma = 0.
  Rational sum = (ta + tb) * Rational(2, 3);
  if (!is_integral(sum)) throw std::domain_error("topological term is not a multiple of 3/2");
  ClosedPairTopology t = ClosedPairTopology::from_chi_sigma(sum.get_num(), 0);
  t.chi_surface = a.chi_surface + b.chi_surface;
  t.self_intersection = a.self_intersection + b.self_intersection;
  return t;
}

Integer glue_index(const Integer& i1, const Integer& i2, const FlatLimit& b) {
  b.validate();
  return i1 + i2 + b.h0 + b.h1;
}

Integer close_up_index(const Integer& ind, const FlatLimit& b) {
  b.validate();
  return ind + b.h0 + b.h1;
}

Integer convert_index(const Integer& ind, const FlatLimit& limit, IndexConvention from, IndexConvention to) {
  limit.validate();
  if (from == to) return ind;
  if (to == IndexConvention::Plus) return ind - limit.h0;
  return ind + limit.h0;
}

Integer rp3_unequal_cap_shift() {
  FlatLimit theta_minus{"theta_-", 3, 0};
  FlatLimit theta_plus{"theta_+", 3, 0};
  Integer cap_minus = -6, cap_plus = -3;
  Integer x = 0;
  Integer closed = glue_index(glue_index(x, cap_minus, theta_minus), cap_plus, theta_plus);
  return closed - x;
}

Rp3IndexSet rp3_cylinder_indices(bool same_limits, bool kappa_positive, const Integer& kappa_bound) {
  Rp3IndexSet out;
  out.same_limits = same_limits;
  out.kappa_positive = kappa_positive;
  out.modulus = 8;
  if (same_limits) {
    // S^1 x L(2,1): b1 = 1, b+ = 0. kappa = -p1/4 with p1 = 0 mod 4, p1 <= 0.
    auto top = ClosedPairTopology::from_betti(1, 0);
    FlatLimit alpha = FlatLimit::trivial_su2();
    for (Integer m = kappa_positive ? 1 : 0; m <= kappa_bound; ++m) {
      Rational closed = index_closed(top, Rational(m));
      out.indices.push_back(closed.get_num() - alpha.h0 - alpha.h1);
      out.kappas.emplace_back(m);
    }
  } else {
    // S^2 x S^2: b1 = 0, b+ = 1. kappa = -p1/4 with p1 = 2 mod 4, p1 <= 0.
    // Ind(A) = Ind(A') + shift, with the sign as used in the source argument.
    auto top = ClosedPairTopology::from_betti(0, 1);
    Integer shift = rp3_unequal_cap_shift();
    for (Integer p1 = -2;; p1 -= 4) {
      Rational kappa(-p1, 4);
      kappa.canonicalize();
      if (kappa > kappa_bound) break;
      Rational closed = index_closed(top, kappa);
      out.indices.push_back(closed.get_num() + shift);
      out.kappas.push_back(kappa);
    }
  }
  if (out.indices.empty()) throw std::invalid_argument("kappa bound admits no configurations");
  out.minimum = out.indices.front();
  Integer r = out.minimum % out.modulus;
  if (r < 0) r += out.modulus;
  out.residue = r;
  out.contains_one = std::find(out.indices.begin(), out.indices.end(), Integer(1)) != out.indices.end();
  return out;
}

S2xS1Bound s2xs1_breaking_bound(bool flat) {
  FlatLimit generic{"generic", 1, 1};
  Integer cap = -1;
  Integer x = 0;
  S2xS1Bound out;
  out.offset = glue_index(glue_index(cap, x, generic), cap, generic) - x;
  out.kappa = flat ? 0 : 1;
  out.index = 8 * out.kappa - out.offset;
  if (!flat) out.bound = out.index;
  return out;
}

Integer central_limit_index(const Integer& generic_index, const FlatLimit& generic, const FlatLimit& central) {
  generic.validate();
  central.validate();
  return generic_index - (Integer(central.h0) - generic.h0);
}

ChargePoint charge_point(Rational k0, Rational l0) {
  k0.canonicalize();
  l0.canonicalize();
  if (!is_integral(4 * k0)) throw std::domain_error("k0 must lie in (1/4)Z");
  if (!is_integral(2 * l0)) throw std::domain_error("l0 must lie in (1/2)Z");
  ChargePoint p;
  p.k0 = k0;
  p.l0 = l0;
  p.kappa = k0 + l0 / 2 + Rational(1, 8);
  p.kappa.canonicalize();
  auto top = ClosedPairTopology::from_betti(0, 0).with_surface(2, -2);
  Rational ind = index_closed(top, p.kappa);
  if (!is_integral(ind)) throw std::domain_error("non-integral index");
  p.index = ind.get_num();
  return p;
}

std::vector<ChargePoint> charge_index_scan(const Rational& bound) {
  std::vector<ChargePoint> out;
  Rational q4 = 4 * bound, q2 = 2 * bound;
  q4.canonicalize();
  q2.canonicalize();
  Integer kb = q4.get_num() / q4.get_den();
  Integer lb = q2.get_num() / q2.get_den();
  for (Integer a = -kb; a <= kb; ++a)
    for (Integer b = -lb; b <= lb; ++b) {
      ChargePoint p = charge_point(Rational(a, 4), Rational(b, 2));
      if (p.kappa >= 0) out.push_back(p);
    }
  std::sort(out.begin(), out.end(), [](const ChargePoint& x, const ChargePoint& y) {
    if (x.index != y.index) return x.index < y.index;
    if (x.k0 != y.k0) return x.k0 < y.k0;
    return x.l0 < y.l0;
  });
  return out;
}

Integer expected_dimension(const Integer& b1, const Integer& b_plus, const Integer& chi_surface,
                           const Integer& self_intersection) {
  Rational rhs = Rational(-3 * (1 - b1 + b_plus)) + Rational(chi_surface) + Rational(self_intersection) / 2;
  rhs.canonicalize();
  if (!is_integral(rhs)) throw std::domain_error("dimension condition is not integral: " + rhs.get_str());
  return -rhs.get_num();
}

}  // namespace extri
