#pragma once

#include <vector>

#include "extri/abgroup.hpp"
#include "extri/matrix.hpp"

namespace extri {

// U * M * V = D with U, V unimodular and D diagonal, d1 | d2 | ... , di >= 0.
struct SmithDecomposition {
  IntMatrix U;
  IntMatrix D;
  IntMatrix V;

  std::vector<Integer> diagonal() const;
  std::size_t rank() const;
};

SmithDecomposition smith_normal_form(const IntMatrix& m);

// Z^cols modulo the row space of the relation matrix (one relation per row).
FgAbelianGroup cokernel_presentation(const IntMatrix& relations);

// Columns forming a Z-basis of {x : M x = 0}.
IntMatrix integer_kernel(const IntMatrix& m);
// Columns forming a Z-basis of {y : y^T M = 0}.
IntMatrix integer_left_kernel(const IntMatrix& m);

// Inverse of a unimodular matrix.
IntMatrix unimodular_inverse(const IntMatrix& m);

}  // namespace extri
