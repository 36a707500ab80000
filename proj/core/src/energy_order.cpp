#include "extri/energy_order.hpp"

#include <random>
#include <stdexcept>

namespace extri {

namespace {

using Rng = std::mt19937_64;

LaurentMatrix scale(const LaurentMatrix& m, const LaurentPoly& s) { return m * s; }

CertificateStep step(std::string relation, const LaurentMatrix& residual) {
  return {std::move(relation), residual.is_zero(), residual};
}

LaurentPoly random_poly(Rng& rng) {
  std::uniform_int_distribution<int> coeff(-2, 2);
  LaurentPoly p;
  for (long e = -1; e <= 1; ++e) p += LaurentPoly::monomial(e, coeff(rng));
  return p;
}

bool coin(Rng& rng, double prob) { return std::bernoulli_distribution(prob)(rng); }

}  // namespace

void OrderedBasis::validate() const {
  order.validate();
  if (labels.size() != order.size()) throw std::invalid_argument("basis labels do not match the order");
  for (int g : order.grade)
    if (g < 0 || g > 3) throw std::invalid_argument("grading must lie in Z/4");
}

OrderedBasis OrderedBasis::by_index(const std::vector<int>& grades) {
  OrderedBasis b;
  b.order.grade = grades;
  for (std::size_t i = 0; i < grades.size(); ++i) {
    b.labels.push_back("e" + std::to_string(i));
    b.order.position.push_back(i);
  }
  return b;
}

EnergyOrderCheck check_energy_ordered(const LaurentMatrix& l, const OrderedBasis& basis, bool strict) {
  basis.validate();
  if (!l.is_square() || l.rows() != basis.size()) throw std::invalid_argument("basis does not match the matrix");
  EnergyOrderCheck out;
  const auto& o = basis.order;
  for (std::size_t i = 0; i < l.rows(); ++i)
    for (std::size_t j = 0; j < l.cols(); ++j) {
      if (l(i, j).is_zero()) continue;
      std::string why;
      if (o.grade[i] != o.grade[j])
        why = "entry joins gradings " + std::to_string(o.grade[j]) + " and " + std::to_string(o.grade[i]);
      else if (o.position[i] > o.position[j] || (strict && o.position[i] == o.position[j]))
        why = "entry below the order";
      if (!why.empty()) {
        out.offending = std::make_pair(i, j);
        out.reason = why + " at (" + basis.labels[i] + ", " + basis.labels[j] + ")";
        return out;
      }
    }
  out.ok = true;
  return out;
}

void PiAlgebraDatum::validate_shapes() const {
  basis.validate();
  std::size_t n = basis.size();
  for (const LaurentMatrix* m : {&d, &pi_plus, &pi_minus, &n_plus, &n_minus, &k_sum, &k_plus, &k_minus})
    if (m->rows() != n || m->cols() != n) throw std::invalid_argument("Pi-algebra matrices must be square of basis size");
}

LaurentMatrix homotopy_bracket(const LaurentMatrix& d, const LaurentMatrix& k) { return d * k + k * d; }

PiCertificate pi_combination_certificate(const PiAlgebraDatum& x) {
  x.validate_shapes();
  const std::size_t n = x.size();
  const LaurentMatrix id = LaurentMatrix::identity(n);
  const LaurentPoly t = LaurentPoly::T(), ti = LaurentPoly::T_inv();
  PiCertificate c;
  auto fail = [&](const std::string& what) {
    c.ok = false;
    c.failure = what;
    return c;
  };

  c.log.push_back(step("d^2 = 0", x.d * x.d));
  c.log.push_back(step("pi_plus chain map", x.d * x.pi_plus - x.pi_plus * x.d));
  c.log.push_back(step("pi_minus chain map", x.d * x.pi_minus - x.pi_minus * x.d));
  c.log.push_back(step("pi_plus + pi_minus - Id = [k_sum]",
                       x.pi_plus + x.pi_minus - id - homotopy_bracket(x.d, x.k_sum)));
  c.log.push_back(step("pi_plus^2 - pi_plus + n_plus = [k_plus]",
                       x.pi_plus * x.pi_plus - x.pi_plus + x.n_plus - homotopy_bracket(x.d, x.k_plus)));
  c.log.push_back(step("pi_minus^2 - pi_minus + n_minus = [k_minus]",
                       x.pi_minus * x.pi_minus - x.pi_minus + x.n_minus - homotopy_bracket(x.d, x.k_minus)));
  for (const auto& s : c.log)
    if (!s.holds) return fail(s.relation);

  for (const auto* m : {&x.n_plus, &x.n_minus}) {
    auto chk = check_energy_ordered(*m, x.basis, true);
    if (!chk.ok) {
      c.log.push_back({"n strictly upper triangular", false, *m});
      return fail("n_plus and n_minus strictly upper triangular: " + chk.reason);
    }
  }

  c.n = -x.n_minus + x.n_plus * (t + ti - LaurentPoly(1));
  auto nil = is_nilpotent_upper(c.n, x.basis.order);
  if (!nil.nilpotent) return fail("n nilpotent");
  c.nilpotency_exponent = nil.exponent;
  c.inverse = invert_id_plus_nilpotent(c.n);
  c.log.push_back(step("(Id + n) inverse = Id", (id + c.n) * c.inverse - id));

  c.k_total = x.k_sum + x.k_plus + x.k_minus + scale(x.pi_plus * x.k_sum, t) + scale(x.k_sum * x.pi_plus, ti) -
              scale(x.k_plus, t + ti);
  LaurentMatrix m = x.pi_plus + scale(x.pi_minus, ti);
  LaurentMatrix m_bar = x.pi_plus + scale(x.pi_minus, t);
  LaurentMatrix prod = m * m_bar;
  c.log.push_back(step("M M' - (Id + n) = [k_total]", prod - (id + c.n) - homotopy_bracket(x.d, c.k_total)));
  c.log.push_back(step("M M' (Id + n)^-1 - Id = [k_total (Id + n)^-1]",
                       prod * c.inverse - id - homotopy_bracket(x.d, c.k_total * c.inverse)));
  for (const auto& s : c.log)
    if (!s.holds) return fail(s.relation);
  c.ok = true;
  return c;
}

bool replay_certificate(const PiAlgebraDatum& datum, const PiCertificate& cert) {
  if (!cert.ok) return false;
  PiCertificate again = pi_combination_certificate(datum);
  if (!again.ok || again.n != cert.n || again.inverse != cert.inverse || again.k_total != cert.k_total) return false;
  const LaurentMatrix id = LaurentMatrix::identity(datum.size());
  LaurentMatrix m = datum.pi_plus + scale(datum.pi_minus, LaurentPoly::T_inv());
  LaurentMatrix m_bar = datum.pi_plus + scale(datum.pi_minus, LaurentPoly::T());
  return (m * m_bar * cert.inverse - id - homotopy_bracket(datum.d, cert.k_total * cert.inverse)).is_zero();
}

bool specialization_commutes(const PiAlgebraDatum& datum, const PiCertificate& cert) {
  if (!cert.ok) return false;
  IntMatrix n1 = eval_at_one(datum.n_plus) - eval_at_one(datum.n_minus);
  if (eval_at_one(cert.n) != n1) return false;
  IntMatrix inv1 = invert_id_plus_nilpotent(n1);
  if (eval_at_one(cert.inverse) != inv1) return false;
  IntMatrix id = IntMatrix::identity(datum.size());
  IntMatrix p = eval_at_one(datum.pi_plus), q = eval_at_one(datum.pi_minus), d = eval_at_one(datum.d);
  IntMatrix k = eval_at_one(cert.k_total) * inv1;
  return ((p + q) * (p + q) * inv1 - id - (d * k + k * d)).is_zero();
}

PiAlgebraDatum synthetic_pi_datum(std::uint64_t seed, std::size_t pairs, std::size_t singles) {
  Rng rng(seed);
  // Index order: y_0, x_0, y_1, x_1, ..., then singles. d x_i = y_i.
  std::vector<int> grades;
  for (std::size_t i = 0; i < pairs; ++i) {
    grades.push_back(0);
    grades.push_back(1);
  }
  for (std::size_t i = 0; i < singles; ++i) grades.push_back(0);
  const std::size_t n = grades.size();
  PiAlgebraDatum x;
  x.basis = OrderedBasis::by_index(grades);
  x.d = LaurentMatrix(n, n);
  for (std::size_t i = 0; i < pairs; ++i) x.d(2 * i, 2 * i + 1) = LaurentPoly(coin(rng, 0.5) ? 1 : -1);

  // V: degree +1, strictly above the diagonal. U = [V] + U0 with U0 on the singles.
  LaurentMatrix v(n, n), u0(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = r + 1; c < n; ++c) {
      if (grades[r] == grades[c] + 1 && coin(rng, 0.6)) v(r, c) = random_poly(rng);
      if (r >= 2 * pairs && coin(rng, 0.6)) u0(r, c) = random_poly(rng);
    }
  LaurentMatrix u = homotopy_bracket(x.d, v) + u0;

  // E: diagonal idempotent, constant on each pair.
  LaurentMatrix e(n, n);
  for (std::size_t i = 0; i < pairs; ++i)
    if (coin(rng, 0.5)) e(2 * i, 2 * i) = e(2 * i + 1, 2 * i + 1) = LaurentPoly(1);
  for (std::size_t i = 2 * pairs; i < n; ++i)
    if (coin(rng, 0.5)) e(i, i) = LaurentPoly(1);

  auto random_homotopy = [&]() {
    LaurentMatrix j(n, n);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c)
        if (grades[r] == grades[c] + 1 && coin(rng, 0.4)) j(r, c) = random_poly(rng);
    return j;
  };

  const LaurentMatrix id = LaurentMatrix::identity(n);
  LaurentMatrix p = e + u;
  LaurentMatrix q = id - p;
  LaurentMatrix j = random_homotopy();
  x.k_sum = random_homotopy();
  LaurentMatrix jm = x.k_sum - j;

  // For a chain map P and Pi = P + [J]: Pi^2 - Pi + (P - P^2) = [P J + J P + J d J + J J d - J].
  auto witness = [&](const LaurentMatrix& base, const LaurentMatrix& jj) {
    return base * jj + jj * base + jj * x.d * jj + jj * jj * x.d - jj;
  };
  x.pi_plus = p + homotopy_bracket(x.d, j);
  x.pi_minus = q + homotopy_bracket(x.d, jm);
  x.n_plus = p - p * p;
  x.n_minus = q - q * q;
  x.k_plus = witness(p, j);
  x.k_minus = witness(q, jm);
  return x;
}

}  // namespace extri
