#include "extri/nilpotent.hpp"

#include <algorithm>

namespace extri {

BasisOrder BasisOrder::trivial(std::size_t n) {
  BasisOrder o;
  o.grade.assign(n, 0);
  for (std::size_t i = 0; i < n; ++i) o.position.push_back(i);
  return o;
}

void BasisOrder::validate() const {
  if (grade.size() != position.size()) throw std::invalid_argument("basis order size mismatch");
  std::vector<std::size_t> sorted = position;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < sorted.size(); ++i)
    if (sorted[i] != i) throw std::invalid_argument("basis order positions must be a permutation");
}

}  // namespace extri
