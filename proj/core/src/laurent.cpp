#include "extri/laurent.hpp"

#include <sstream>
#include <stdexcept>

namespace extri {

LaurentPoly LaurentPoly::monomial(long exponent, const Integer& coeff) {
  LaurentPoly p;
  p.set(exponent, coeff);
  return p;
}

Integer LaurentPoly::coeff(long exponent) const {
  auto it = terms_.find(exponent);
  return it == terms_.end() ? Integer(0) : it->second;
}

void LaurentPoly::set(long exponent, const Integer& c) {
  if (sgn(c) == 0)
    terms_.erase(exponent);
  else
    terms_[exponent] = c;
}

bool LaurentPoly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == 0);
}

long LaurentPoly::min_degree() const {
  if (terms_.empty()) throw std::domain_error("degree of zero Laurent polynomial");
  return terms_.begin()->first;
}

long LaurentPoly::max_degree() const {
  if (terms_.empty()) throw std::domain_error("degree of zero Laurent polynomial");
  return terms_.rbegin()->first;
}

Integer LaurentPoly::eval_at_one() const {
  Integer s = 0;
  for (const auto& [e, c] : terms_) s += c;
  return s;
}

namespace {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1 % p;
  a %= p;
  while (e) {
    if (e & 1) r = mulmod(r, a, p);
    a = mulmod(a, a, p);
    e >>= 1;
  }
  return r;
}

}  // namespace

std::uint64_t LaurentPoly::eval_mod_p(std::uint64_t p, std::uint64_t unit) const {
  if (p < 2) throw std::invalid_argument("modulus must be at least 2");
  unit %= p;
  if (unit == 0) throw std::invalid_argument("T must specialize to a unit");
  std::uint64_t inv = powmod(unit, p - 2, p);
  std::uint64_t s = 0;
  Integer P(static_cast<unsigned long>(p));
  for (const auto& [e, c] : terms_) {
    Integer r;
    mpz_fdiv_r(r.get_mpz_t(), c.get_mpz_t(), P.get_mpz_t());
    std::uint64_t cr = r.get_ui();
    std::uint64_t t = e >= 0 ? powmod(unit, static_cast<std::uint64_t>(e), p)
                             : powmod(inv, static_cast<std::uint64_t>(-e), p);
    s = (s + mulmod(cr, t, p)) % p;
  }
  return s;
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
  for (const auto& [e, c] : o.terms_) set(e, coeff(e) + c);
  return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) {
  for (const auto& [e, c] : o.terms_) set(e, coeff(e) - c);
  return *this;
}

LaurentPoly& LaurentPoly::operator*=(const LaurentPoly& o) {
  std::map<long, Integer> out;
  for (const auto& [e1, c1] : terms_)
    for (const auto& [e2, c2] : o.terms_) out[e1 + e2] += c1 * c2;
  terms_.clear();
  for (const auto& [e, c] : out)
    if (sgn(c) != 0) terms_.emplace(e, c);
  return *this;
}

LaurentPoly operator-(LaurentPoly a) {
  for (auto& [e, c] : a.terms_) c = -c;
  return a;
}

std::string LaurentPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    Integer mag = abs(c);
    if (first) {
      if (sgn(c) < 0) os << "-";
    } else {
      os << (sgn(c) < 0 ? " - " : " + ");
    }
    first = false;
    if (e == 0) {
      os << mag.get_str();
      continue;
    }
    if (mag != 1) os << mag.get_str() << "*";
    os << "T";
    if (e != 1) os << "^" << e;
  }
  return os.str();
}

LaurentMatrix extend_scalars(const IntMatrix& m) {
  LaurentMatrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = LaurentPoly(m(i, j));
  return out;
}

IntMatrix eval_at_one(const LaurentMatrix& m) {
  IntMatrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = m(i, j).eval_at_one();
  return out;
}

bool is_constant(const LaurentMatrix& m) {
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (!m(i, j).is_constant()) return false;
  return true;
}

}  // namespace extri
