#pragma once

#include <nlohmann/json_fwd.hpp>

#include "divint/oracle.hpp"
#include "divint/polymatrix.hpp"

namespace divint {

/// Finitely presented module M = coker(A : R^{p1} -> R^{p0}), rows indexing
/// the target basis.
struct Presentation {
  PolyMatrix matrix;
  std::vector<std::string> row_labels;  // optional
  std::vector<std::string> col_labels;

  size_t p0() const { return matrix.rows; }
  size_t p1() const { return matrix.cols; }

  nlohmann::ordered_json to_json() const;
  static Presentation from_json(const RingPtr&, const nlohmann::json&);
};

/// I_j(M) = ideal of (p0 - j)-minors; the unit ideal for j >= p0.
IdealGens fitting_ideal(const Presentation& p, size_t j);

/// min { r : I_r(M) != 0 }; a generator list is nonzero iff some generator is
/// a nonzero polynomial.
size_t fitting_rank(const Presentation& p);

Presentation direct_sum(const Presentation& a, const Presentation& b);

/// Same module presented with q0 extra rows and columns:
/// chi_1(u, v) = (A u - theta v, v).  theta defaults to zero and must be
/// p0 x q0 when given.  Fitting ideals are unchanged (prop-fitting).
Presentation stabilize(const Presentation& p, size_t q0, const PolyMatrix* theta = nullptr);

}  // namespace divint
