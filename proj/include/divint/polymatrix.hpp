#pragma once

#include <vector>

#include "divint/ring.hpp"

namespace divint {

/// Dense matrix of GradedPoly entries, row-major.  Desk scale: determinant
/// and minor enumeration assume at most 32 rows/columns.
struct PolyMatrix {
  size_t rows = 0, cols = 0;
  RingPtr ring;
  std::vector<GradedPoly> a;

  PolyMatrix() = default;
  PolyMatrix(RingPtr r, size_t nr, size_t nc)
      : rows(nr), cols(nc), ring(std::move(r)), a(nr * nc, GradedPoly::zero(ring)) {}

  GradedPoly& at(size_t i, size_t j) { return a[i * cols + j]; }
  const GradedPoly& at(size_t i, size_t j) const { return a[i * cols + j]; }

  static PolyMatrix identity(RingPtr r, size_t n);
  bool operator==(const PolyMatrix& o) const { return rows == o.rows && cols == o.cols && a == o.a; }
};

/// Determinant of a square PolyMatrix.  Constant matrices go through exact
/// rational elimination; symbolic ones through cofactor expansion with
/// sub-minors memoized on (row set, column set).
GradedPoly det(const PolyMatrix& m);

/// All k x k minor determinants, ordered lexicographically by (row set,
/// column set).  k = 0 gives [1]; k beyond the shape gives [].
std::vector<GradedPoly> matrix_minors(const PolyMatrix& m, size_t k);

/// Determinant of the submatrix on the given (strictly increasing) index sets.
GradedPoly minor_det(const PolyMatrix& m, const std::vector<size_t>& rows,
                     const std::vector<size_t>& cols);

}  // namespace divint
