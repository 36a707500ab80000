#include "extri/moduli_enum.hpp"

#include <stdexcept>

namespace extri {

namespace {

Rational canon(Rational q) {
  q.canonicalize();
  return q;
}

Rational frac(const Integer& num, long den) { return canon(Rational(num, den)); }

Integer floor_q(const Rational& q) {
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

Integer ceil_q(const Rational& q) {
  Integer r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

Integer isqrt(const Integer& n) {
  Integer r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

void search(const LatticeProblem& p, std::size_t i, const Rational& remaining, LatticePoint& cur,
            std::vector<LatticePoint>& out) {
  if (i == p.offsets.size()) {
    if (sgn(remaining) == 0) out.push_back(cur);
    return;
  }
  // (q a - num)^2 <= floor(remaining q^2), with c = num / q.
  const Rational& c = p.offsets[i];
  Integer q = c.get_den();
  Integer s = isqrt(floor_q(remaining * Rational(q * q)));
  Integer lo = ceil_q(canon(Rational(c.get_num() - s, q)));
  Integer hi = floor_q(canon(Rational(c.get_num() + s, q)));
  for (Integer a = lo; a <= hi; ++a) {
    Rational x = Rational(a) - c;
    Rational rest = remaining - x * x;
    if (sgn(rest) < 0) continue;
    cur.push_back(a);
    search(p, i + 1, rest, cur, out);
    cur.pop_back();
  }
}

Rational dot(const std::vector<Rational>& a, const std::vector<Rational>& b) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

std::vector<Rational> as_rational(const std::vector<Integer>& v) { return {v.begin(), v.end()}; }

Integer mod(const Integer& a, long m) {
  Integer r = a % m;
  if (r < 0) r += m;
  return r;
}

}  // namespace

void LatticeProblem::validate() const {
  if (sgn(target) < 0) throw std::invalid_argument("lattice target must be nonnegative");
}

std::vector<LatticePoint> enumerate_reducibles(const LatticeProblem& p) {
  p.validate();
  LatticeProblem q = p;
  for (auto& c : q.offsets) c.canonicalize();
  q.target.canonicalize();
  std::vector<LatticePoint> out;
  LatticePoint cur;
  search(q, 0, q.target, cur, out);
  return out;
}

std::vector<LatticePoint> enumerate_reducibles_bruteforce(const LatticeProblem& p) {
  p.validate();
  std::size_t n = p.offsets.size();
  Integer reach = isqrt(ceil_q(canon(p.target))) + 2;
  std::vector<Integer> lo(n), hi(n);
  for (std::size_t i = 0; i < n; ++i) {
    Rational c = canon(p.offsets[i]);
    lo[i] = floor_q(c) - reach;
    hi[i] = ceil_q(c) + reach;
  }
  std::vector<LatticePoint> out;
  if (n == 0) {
    if (sgn(p.target) == 0) out.emplace_back();
    return out;
  }
  LatticePoint a = lo;
  while (true) {
    Rational sum = 0;
    for (std::size_t i = 0; i < n; ++i) {
      Rational x = Rational(a[i]) - canon(p.offsets[i]);
      sum += x * x;
    }
    if (sum == canon(p.target)) out.push_back(a);
    std::size_t i = n;
    while (i > 0) {
      --i;
      if (a[i] < hi[i]) {
        ++a[i];
        break;
      }
      a[i] = lo[i];
      if (i == 0) return out;
    }
  }
}

std::vector<Rational> ChargeFrame::offsets() const {
  if (s.size() != t.size()) throw std::invalid_argument("frame vectors differ in length");
  std::vector<Rational> c;
  for (std::size_t i = 0; i < s.size(); ++i) c.push_back(-(frac(s[i], 4) + frac(t[i], 2)));
  return c;
}

LatticeProblem ChargeFrame::problem(const Rational& kappa) const { return {offsets(), canon(kappa)}; }

Integer ChargeFrame::w2_sigma() const {
  Integer d = 0;
  for (std::size_t i = 0; i < t.size(); ++i) d += t[i] * s[i];
  return mod(d, 2);
}

Integer ChargeFrame::w2_square() const {
  Integer d = 0;
  for (const auto& x : t) d -= x * x;
  return mod(d, 4);
}

bool ChargeFrame::boundary_trivial() const {
  for (const auto& x : t)
    if (mod(x, 2) != 0) return false;
  return true;
}

ReducibleSolution assemble_charges(const LatticePoint& a, const ChargeFrame& frame) {
  return assemble_charges(a, frame, frame.w2_sigma(), frame.w2_square());
}

ReducibleSolution assemble_charges(const LatticePoint& a, const ChargeFrame& frame, const Integer& w2_sigma,
                                   const Integer& w2_square) {
  auto c = frame.offsets();
  if (a.size() != c.size()) throw std::invalid_argument("point and frame differ in length");
  std::vector<Rational> x(a.size()), shifted(a.size());
  auto s = as_rational(frame.s);
  for (std::size_t i = 0; i < a.size(); ++i) {
    x[i] = Rational(a[i]) - c[i];
    shifted[i] = x[i] - s[i] / 4;
  }
  ReducibleSolution sol;
  sol.a = a;
  sol.frame = frame;
  sol.kappa = canon(dot(x, x));
  sol.l = canon(dot(shifted, s));
  sol.k = canon(sol.kappa - sol.l / 2 - dot(s, s) / 16);

  Rational two_l = 2 * sol.l, four_k = 4 * sol.k;
  if (two_l.get_den() != 1 || mod(two_l.get_num() - w2_sigma, 2) != 0)
    throw std::domain_error("parity violation: 2l = " + two_l.get_str() + " against <w2, Sigma> = " +
                            w2_sigma.get_str());
  if (four_k.get_den() != 1 || mod(four_k.get_num() + w2_square, 4) != 0)
    throw std::domain_error("parity violation: 4k = " + four_k.get_str() + " against w2^2 = " + w2_square.get_str());
  return sol;
}

ReducibleSolution xi_twist(const ReducibleSolution& sol, const std::vector<Integer>& twist) {
  const auto& f = sol.frame;
  if (twist.size() != f.s.size()) throw std::invalid_argument("twist length mismatch");
  ChargeFrame g{f.s, {}};
  bool odd = false;
  for (std::size_t i = 0; i < twist.size(); ++i) {
    if (mod(f.s[i] + twist[i], 2) != 0) throw std::invalid_argument("s + twist must be even");
    if (mod(twist[i], 2) != 0) odd = true;
    g.t.push_back(twist[i] - f.t[i]);
  }
  if (!odd) throw std::invalid_argument("twist must be nonzero mod 2");
  // a' = -x + c' = -a - (s + twist) / 2.
  LatticePoint a2;
  for (std::size_t i = 0; i < twist.size(); ++i) {
    Integer h = f.s[i] + twist[i];
    a2.push_back(-sol.a[i] - h / 2);
  }
  return assemble_charges(a2, g);
}

std::vector<ReducibleSolution> reducibles_with_charges(const ChargeFrame& frame, const Rational& kappa) {
  std::vector<ReducibleSolution> out;
  for (const auto& a : enumerate_reducibles(frame.problem(kappa))) out.push_back(assemble_charges(a, frame));
  return out;
}

}  // namespace extri
