#pragma once

#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "extri/laurent.hpp"
#include "extri/matrix.hpp"

namespace extri {

// Basis partitioned by grading class, with a total order inside each class.
// position[i] is the rank of basis element i in the order.
struct BasisOrder {
  std::vector<int> grade;
  std::vector<std::size_t> position;

  std::size_t size() const { return grade.size(); }
  // Identity order with every element in grading class 0.
  static BasisOrder trivial(std::size_t n);
  void validate() const;
};

struct NilpotencyResult {
  bool nilpotent = false;
  // Smallest k with N^k = 0 when nilpotent.
  unsigned exponent = 0;
  // First entry breaking strict upper-triangularity, if any.
  std::optional<std::pair<std::size_t, std::size_t>> offending;
};

template <class R>
NilpotencyResult is_nilpotent_upper(const Matrix<R>& n, const BasisOrder& order) {
  order.validate();
  if (!n.is_square() || n.rows() != order.size()) throw std::invalid_argument("order does not match matrix");
  NilpotencyResult res;
  for (std::size_t i = 0; i < n.rows(); ++i)
    for (std::size_t j = 0; j < n.cols(); ++j) {
      if (ring_is_zero(n(i, j))) continue;
      if (order.grade[i] != order.grade[j] || order.position[i] >= order.position[j]) {
        res.offending = std::make_pair(i, j);
        return res;
      }
    }
  res.nilpotent = true;
  Matrix<R> power = Matrix<R>::identity(n.rows());
  while (!power.is_zero()) {
    power = power * n;
    ++res.exponent;
  }
  return res;
}

// Smallest k <= size with N^k = 0, or nothing when N is not nilpotent.
template <class R>
std::optional<unsigned> nilpotency_exponent(const Matrix<R>& n) {
  if (!n.is_square()) throw std::invalid_argument("nilpotency of non-square matrix");
  Matrix<R> power = Matrix<R>::identity(n.rows());
  for (unsigned k = 0; k <= n.rows(); ++k) {
    if (power.is_zero()) return k;
    power = power * n;
  }
  return std::nullopt;
}

// (Id + N)^-1 = sum_{j<k} (-N)^j for nilpotent N.
template <class R>
Matrix<R> invert_id_plus_nilpotent(const Matrix<R>& n) {
  auto k = nilpotency_exponent(n);
  if (!k) throw std::domain_error("matrix is not nilpotent");
  Matrix<R> minus_n = -n;
  Matrix<R> term = Matrix<R>::identity(n.rows());
  Matrix<R> sum(n.rows(), n.cols());
  for (unsigned j = 0; j < *k; ++j) {
    sum += term;
    term = term * minus_n;
  }
  return sum;
}

}  // namespace extri
