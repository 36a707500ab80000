#include "extri/snf.hpp"

#include <stdexcept>

namespace extri {

std::vector<Integer> SmithDecomposition::diagonal() const {
  std::vector<Integer> d;
  std::size_t n = std::min(D.rows(), D.cols());
  for (std::size_t i = 0; i < n; ++i) d.push_back(D(i, i));
  return d;
}

std::size_t SmithDecomposition::rank() const {
  std::size_t r = 0;
  for (const auto& x : diagonal())
    if (sgn(x) != 0) ++r;
  return r;
}

namespace {

// Smallest nonzero |entry| in the trailing block starting at (t, t).
bool find_pivot(const IntMatrix& d, std::size_t t, std::size_t& pi, std::size_t& pj) {
  bool found = false;
  Integer best;
  for (std::size_t i = t; i < d.rows(); ++i)
    for (std::size_t j = t; j < d.cols(); ++j) {
      if (sgn(d(i, j)) == 0) continue;
      if (!found || abs(d(i, j)) < best) {
        best = abs(d(i, j));
        pi = i;
        pj = j;
        found = true;
        if (best == 1) return true;
      }
    }
  return found;
}

}  // namespace

SmithDecomposition smith_normal_form(const IntMatrix& m) {
  const std::size_t rows = m.rows(), cols = m.cols();
  IntMatrix d = m;
  IntMatrix u = IntMatrix::identity(rows);
  IntMatrix v = IntMatrix::identity(cols);

  auto row_op = [&](std::size_t dst, std::size_t src, const Integer& k) {
    d.add_row_multiple(dst, src, k);
    u.add_row_multiple(dst, src, k);
  };
  auto col_op = [&](std::size_t dst, std::size_t src, const Integer& k) {
    d.add_col_multiple(dst, src, k);
    v.add_col_multiple(dst, src, k);
  };

  const std::size_t n = std::min(rows, cols);
  for (std::size_t t = 0; t < n; ++t) {
    while (true) {
      std::size_t pi = 0, pj = 0;
      if (!find_pivot(d, t, pi, pj)) break;
      d.swap_rows(t, pi);
      u.swap_rows(t, pi);
      d.swap_cols(t, pj);
      v.swap_cols(t, pj);

      bool dirty = false;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (sgn(d(i, t)) == 0) continue;
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), d(i, t).get_mpz_t(), d(t, t).get_mpz_t());
        row_op(i, t, -q);
        if (sgn(d(i, t)) != 0) dirty = true;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (sgn(d(t, j)) == 0) continue;
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), d(t, j).get_mpz_t(), d(t, t).get_mpz_t());
        col_op(j, t, -q);
        if (sgn(d(t, j)) != 0) dirty = true;
      }
      if (dirty) continue;

      // Enforce divisibility of the remaining block by the pivot.
      bool fixed = false;
      for (std::size_t i = t + 1; i < rows && !fixed; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (!mpz_divisible_p(d(i, j).get_mpz_t(), d(t, t).get_mpz_t())) {
            row_op(t, i, 1);
            fixed = true;
            break;
          }
      if (!fixed) break;
    }
    if (sgn(d(t, t)) < 0) {
      d.negate_row(t);
      u.negate_row(t);
    }
  }
  return {u, d, v};
}

FgAbelianGroup cokernel_presentation(const IntMatrix& relations) {
  auto s = smith_normal_form(relations);
  unsigned rank = static_cast<unsigned>(relations.cols());
  std::vector<Integer> torsion;
  for (const auto& x : s.diagonal()) {
    if (sgn(x) == 0) continue;
    --rank;
    if (x != 1) torsion.push_back(x);
  }
  return FgAbelianGroup(rank, torsion);
}

IntMatrix integer_kernel(const IntMatrix& m) {
  auto s = smith_normal_form(m);
  std::size_t r = s.rank();
  return s.V.block(0, r, m.cols(), m.cols() - r);
}

IntMatrix integer_left_kernel(const IntMatrix& m) { return integer_kernel(m.transpose()); }

IntMatrix unimodular_inverse(const IntMatrix& m) {
  if (!m.is_square()) throw std::invalid_argument("inverse of non-square matrix");
  auto s = smith_normal_form(m);
  for (const auto& x : s.diagonal())
    if (x != 1) throw std::domain_error("matrix is not unimodular");
  // U M V = I  =>  M^-1 = V U
  return s.V * s.U;
}

}  // namespace extri
