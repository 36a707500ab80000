#include "extri/abgroup.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "extri/modp.hpp"

namespace extri {

namespace {

std::vector<Integer> canonical_factors(std::vector<Integer> v) {
  for (const auto& x : v)
    if (sgn(x) <= 0) throw std::invalid_argument("cyclic orders must be positive");
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = i + 1; j < v.size(); ++j) {
      Integer g, l;
      mpz_gcd(g.get_mpz_t(), v[i].get_mpz_t(), v[j].get_mpz_t());
      mpz_lcm(l.get_mpz_t(), v[i].get_mpz_t(), v[j].get_mpz_t());
      v[i] = g;
      v[j] = l;
    }
  std::vector<Integer> out;
  for (auto& x : v)
    if (x != 1) out.push_back(x);
  return out;
}

}  // namespace

FgAbelianGroup::FgAbelianGroup(unsigned rank, const std::vector<Integer>& cyclic_orders)
    : rank_(rank), factors_(canonical_factors(cyclic_orders)) {}

FgAbelianGroup FgAbelianGroup::cyclic(const Integer& n) {
  if (sgn(n) == 0) return free(1);
  return FgAbelianGroup(0, {abs(n)});
}

Integer FgAbelianGroup::torsion_order() const {
  Integer o = 1;
  for (const auto& d : factors_) o *= d;
  return o;
}

Integer FgAbelianGroup::order() const {
  if (rank_ > 0) throw std::domain_error("order of an infinite group");
  return torsion_order();
}

std::vector<std::pair<Integer, unsigned>> factorize(const Integer& n) {
  if (sgn(n) <= 0) throw std::invalid_argument("factorize needs a positive integer");
  std::vector<std::pair<Integer, unsigned>> out;
  Integer m = n;
  for (Integer p = 2; p * p <= m; ++p) {
    unsigned e = 0;
    while (mpz_divisible_p(m.get_mpz_t(), p.get_mpz_t())) {
      m /= p;
      ++e;
    }
    if (e) out.emplace_back(p, e);
  }
  if (m > 1) out.emplace_back(m, 1);
  return out;
}

std::vector<Integer> FgAbelianGroup::elementary_divisors() const {
  std::vector<Integer> out;
  for (const auto& d : factors_)
    for (const auto& [p, e] : factorize(d)) {
      Integer q;
      mpz_pow_ui(q.get_mpz_t(), p.get_mpz_t(), e);
      out.push_back(q);
    }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Integer> FgAbelianGroup::torsion_primes() const {
  if (factors_.empty()) return {};
  std::vector<Integer> out;
  for (const auto& [p, e] : factorize(factors_.back())) out.push_back(p);
  return out;
}

unsigned FgAbelianGroup::p_rank(std::uint64_t p) const {
  unsigned n = 0;
  for (const auto& d : factors_)
    if (mpz_divisible_ui_p(d.get_mpz_t(), p)) ++n;
  return n;
}

std::string FgAbelianGroup::to_string() const {
  if (is_trivial()) return "0";
  std::ostringstream os;
  bool first = true;
  if (rank_ > 0) {
    os << "Z";
    if (rank_ > 1) os << "^" << rank_;
    first = false;
  }
  for (const auto& d : factors_) {
    if (!first) os << " + ";
    os << "Z/" << d.get_str();
    first = false;
  }
  return os.str();
}

FgAbelianGroup direct_sum(const FgAbelianGroup& a, const FgAbelianGroup& b) {
  std::vector<Integer> f = a.invariant_factors();
  f.insert(f.end(), b.invariant_factors().begin(), b.invariant_factors().end());
  return FgAbelianGroup(a.rank() + b.rank(), f);
}

std::uint64_t dim_mod_p(const FgAbelianGroup& g, std::uint64_t p) {
  if (!is_prime(p)) throw std::invalid_argument("dim_mod_p needs a prime");
  return g.rank() + 2ull * g.p_rank(p);
}

GradedGroup::GradedGroup(int modulus) : modulus_(modulus) {
  if (modulus < 0) throw std::invalid_argument("negative grading modulus");
}

int GradedGroup::normalize(int grade) const {
  if (modulus_ == 0) return grade;
  return ((grade % modulus_) + modulus_) % modulus_;
}

const FgAbelianGroup& GradedGroup::at(int grade) const {
  static const FgAbelianGroup trivial;
  auto it = components_.find(normalize(grade));
  return it == components_.end() ? trivial : it->second;
}

void GradedGroup::set(int grade, const FgAbelianGroup& g) {
  int k = normalize(grade);
  if (g.is_trivial())
    components_.erase(k);
  else
    components_[k] = g;
}

GradedGroup GradedGroup::shift(int n) const {
  GradedGroup out(modulus_);
  for (const auto& [k, g] : components_) out.set(k + n, g);
  return out;
}

unsigned GradedGroup::total_rank() const {
  unsigned r = 0;
  for (const auto& [k, g] : components_) r += g.rank();
  return r;
}

long GradedGroup::euler_characteristic() const {
  if (modulus_ % 2 != 0) throw std::domain_error("Euler characteristic needs an even grading modulus");
  long chi = 0;
  for (const auto& [k, g] : components_) chi += (k % 2 == 0 ? 1 : -1) * static_cast<long>(g.rank());
  return chi;
}

std::uint64_t GradedGroup::dim_mod_p(std::uint64_t p) const {
  std::uint64_t d = 0;
  for (const auto& [k, g] : components_) d += extri::dim_mod_p(g, p);
  return d;
}

std::string GradedGroup::to_string() const {
  if (components_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, g] : components_) {
    if (!first) os << " + ";
    first = false;
    bool compound = g.min_generators() > 1;
    os << (compound ? "(" : "") << g.to_string() << (compound ? ")" : "") << "_(" << k << ")";
  }
  return os.str();
}

GradedGroup direct_sum(const GradedGroup& a, const GradedGroup& b) {
  if (a.modulus() != b.modulus()) throw std::invalid_argument("direct sum of differently graded groups");
  GradedGroup out = a;
  for (const auto& [k, g] : b.components()) out.set(k, direct_sum(out.at(k), g));
  return out;
}

Field Field::prime(std::uint64_t p) {
  if (!is_prime(p)) throw std::invalid_argument("field characteristic must be prime");
  return {p};
}

std::uint64_t field_dimension(const GradedGroup& g, Field k) {
  if (k.characteristic == 0) return g.total_rank();
  return g.dim_mod_p(k.characteristic);
}

bool is_l_space(const GradedGroup& g, Field k) {
  long chi = g.euler_characteristic();
  return chi >= 0 && field_dimension(g, k) == static_cast<std::uint64_t>(chi);
}

}  // namespace extri
