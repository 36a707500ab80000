#pragma once

#include <cstdint>
#include <vector>

#include "extri/laurent.hpp"
#include "extri/matrix.hpp"

namespace extri {

bool is_prime(std::uint64_t n);

// Dense matrix over F_p for a prime p < 2^62.
class ModpMatrix {
 public:
  ModpMatrix() = default;
  ModpMatrix(std::uint64_t p, std::size_t rows, std::size_t cols);

  static ModpMatrix identity(std::uint64_t p, std::size_t n);
  static ModpMatrix reduce(const IntMatrix& m, std::uint64_t p);
  // T -> unit, entries reduced mod p.
  static ModpMatrix specialize(const LaurentMatrix& m, std::uint64_t p, std::uint64_t unit);

  std::uint64_t prime() const { return p_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::uint64_t& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  std::uint64_t operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  bool is_zero() const;
  ModpMatrix transpose() const;
  ModpMatrix select_rows(const std::vector<std::size_t>& idx) const;
  ModpMatrix select_cols(const std::vector<std::size_t>& idx) const;

  friend ModpMatrix operator*(const ModpMatrix& a, const ModpMatrix& b);
  friend ModpMatrix operator+(const ModpMatrix& a, const ModpMatrix& b);
  friend bool operator==(const ModpMatrix& a, const ModpMatrix& b);

  std::size_t rank() const;
  // Columns spanning the null space {x : A x = 0}, returned as a cols x k matrix.
  ModpMatrix kernel() const;
  // Rows forming a basis of the row space.
  ModpMatrix row_basis() const;

  static ModpMatrix vstack(const ModpMatrix& a, const ModpMatrix& b);
  static ModpMatrix hstack(const ModpMatrix& a, const ModpMatrix& b);

 private:
  // Reduced row echelon form in place; returns pivot columns.
  std::vector<std::size_t> rref();

  std::uint64_t p_ = 2;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::uint64_t> data_;
};

std::uint64_t mod_inverse(std::uint64_t a, std::uint64_t p);

}  // namespace extri
