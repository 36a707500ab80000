#include "extri/modp.hpp"

#include <stdexcept>

namespace extri {

namespace {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
}

std::uint64_t reduce_integer(const Integer& x, std::uint64_t p) {
  Integer r;
  Integer P(static_cast<unsigned long>(p));
  mpz_fdiv_r(r.get_mpz_t(), x.get_mpz_t(), P.get_mpz_t());
  return r.get_ui();
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  Integer N(static_cast<unsigned long>(n));
  return mpz_probab_prime_p(N.get_mpz_t(), 40) > 0;
}

std::uint64_t mod_inverse(std::uint64_t a, std::uint64_t p) {
  Integer A(static_cast<unsigned long>(a % p)), P(static_cast<unsigned long>(p)), inv;
  if (mpz_invert(inv.get_mpz_t(), A.get_mpz_t(), P.get_mpz_t()) == 0)
    throw std::domain_error("element is not invertible mod p");
  return inv.get_ui();
}

ModpMatrix::ModpMatrix(std::uint64_t p, std::size_t rows, std::size_t cols)
    : p_(p), rows_(rows), cols_(cols), data_(rows * cols, 0) {
  if (p < 2 || p >= (std::uint64_t{1} << 62)) throw std::invalid_argument("unsupported modulus");
}

ModpMatrix ModpMatrix::identity(std::uint64_t p, std::size_t n) {
  ModpMatrix m(p, n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

ModpMatrix ModpMatrix::reduce(const IntMatrix& m, std::uint64_t p) {
  ModpMatrix out(p, m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = reduce_integer(m(i, j), p);
  return out;
}

ModpMatrix ModpMatrix::specialize(const LaurentMatrix& m, std::uint64_t p, std::uint64_t unit) {
  ModpMatrix out(p, m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = m(i, j).eval_mod_p(p, unit);
  return out;
}

bool ModpMatrix::is_zero() const {
  for (auto x : data_)
    if (x) return false;
  return true;
}

ModpMatrix ModpMatrix::transpose() const {
  ModpMatrix t(p_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

ModpMatrix ModpMatrix::select_rows(const std::vector<std::size_t>& idx) const {
  ModpMatrix out(p_, idx.size(), cols_);
  for (std::size_t a = 0; a < idx.size(); ++a)
    for (std::size_t j = 0; j < cols_; ++j) out(a, j) = (*this)(idx[a], j);
  return out;
}

ModpMatrix ModpMatrix::select_cols(const std::vector<std::size_t>& idx) const {
  ModpMatrix out(p_, rows_, idx.size());
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t b = 0; b < idx.size(); ++b) out(i, b) = (*this)(i, idx[b]);
  return out;
}

ModpMatrix operator*(const ModpMatrix& a, const ModpMatrix& b) {
  if (a.cols_ != b.rows_ || a.p_ != b.p_) throw std::invalid_argument("mod-p product mismatch");
  ModpMatrix c(a.p_, a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      std::uint64_t x = a(i, k);
      if (!x) continue;
      for (std::size_t j = 0; j < b.cols_; ++j)
        if (b(k, j)) c(i, j) = (c(i, j) + mulmod(x, b(k, j), a.p_)) % a.p_;
    }
  return c;
}

ModpMatrix operator+(const ModpMatrix& a, const ModpMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_ || a.p_ != b.p_)
    throw std::invalid_argument("mod-p sum mismatch");
  ModpMatrix c = a;
  for (std::size_t k = 0; k < c.data_.size(); ++k) c.data_[k] = (c.data_[k] + b.data_[k]) % a.p_;
  return c;
}

bool operator==(const ModpMatrix& a, const ModpMatrix& b) {
  return a.p_ == b.p_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

std::vector<std::size_t> ModpMatrix::rref() {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols_ && r < rows_; ++c) {
    std::size_t piv = r;
    while (piv < rows_ && (*this)(piv, c) == 0) ++piv;
    if (piv == rows_) continue;
    if (piv != r)
      for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(piv, j), (*this)(r, j));
    std::uint64_t inv = mod_inverse((*this)(r, c), p_);
    for (std::size_t j = 0; j < cols_; ++j) (*this)(r, j) = mulmod((*this)(r, j), inv, p_);
    for (std::size_t i = 0; i < rows_; ++i) {
      if (i == r || (*this)(i, c) == 0) continue;
      std::uint64_t f = (*this)(i, c);
      for (std::size_t j = 0; j < cols_; ++j) {
        std::uint64_t sub = mulmod(f, (*this)(r, j), p_);
        (*this)(i, j) = ((*this)(i, j) + p_ - sub) % p_;
      }
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

std::size_t ModpMatrix::rank() const {
  ModpMatrix t = *this;
  return t.rref().size();
}

ModpMatrix ModpMatrix::kernel() const {
  ModpMatrix t = *this;
  auto pivots = t.rref();
  std::vector<bool> is_pivot(cols_, false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<std::size_t> free_cols;
  for (std::size_t c = 0; c < cols_; ++c)
    if (!is_pivot[c]) free_cols.push_back(c);
  ModpMatrix k(p_, cols_, free_cols.size());
  for (std::size_t b = 0; b < free_cols.size(); ++b) {
    std::size_t fc = free_cols[b];
    k(fc, b) = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r)
      k(pivots[r], b) = (p_ - t(r, fc)) % p_;
  }
  return k;
}

ModpMatrix ModpMatrix::row_basis() const {
  ModpMatrix t = *this;
  auto pivots = t.rref();
  ModpMatrix out(p_, pivots.size(), cols_);
  for (std::size_t r = 0; r < pivots.size(); ++r)
    for (std::size_t j = 0; j < cols_; ++j) out(r, j) = t(r, j);
  return out;
}

ModpMatrix ModpMatrix::vstack(const ModpMatrix& a, const ModpMatrix& b) {
  if (a.cols_ != b.cols_) throw std::invalid_argument("vstack column mismatch");
  ModpMatrix m(a.p_, a.rows_ + b.rows_, a.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t j = 0; j < a.cols_; ++j) m(i, j) = a(i, j);
  for (std::size_t i = 0; i < b.rows_; ++i)
    for (std::size_t j = 0; j < b.cols_; ++j) m(a.rows_ + i, j) = b(i, j);
  return m;
}

ModpMatrix ModpMatrix::hstack(const ModpMatrix& a, const ModpMatrix& b) {
  return vstack(a.transpose(), b.transpose()).transpose();
}

}  // namespace extri
