#pragma once

#include <gmpxx.h>

#include <optional>
#include <vector>

namespace divint {

using ZRow = std::vector<mpz_class>;
using ZMat = std::vector<ZRow>;

/// Canonical row Hermite normal form: echelon, positive pivots, entries above
/// a pivot reduced into [0, pivot); zero rows dropped.  Two row sets span the
/// same lattice iff their HNFs are identical.
ZMat hnf(ZMat a);

struct HnfTransform {
  ZMat h;                         // full HNF including zero rows at the bottom
  ZMat u;                         // unimodular, u * a = h
  std::vector<size_t> pivot_cols; // one per nonzero row of h
  size_t rank = 0;
};
HnfTransform hnf_with_transform(ZMat a);

/// Invariant factors d_1 | d_2 | ... of the row span (all positive; no zeros).
std::vector<mpz_class> snf_invariant_factors(ZMat a);

size_t rank_q(ZMat a);
size_t rank_mod_p(ZMat a, unsigned long p);

/// Basis rows for { x : x * a = 0 } over Z (a saturated lattice).
ZMat left_kernel(const ZMat& a, size_t nrows);

/// Integer solution of x * a = b, if one exists.
std::optional<ZRow> solve_left(const ZMat& a, const ZRow& b);

bool lattice_equal(const ZMat& a, const ZMat& b);
bool lattice_contains(const ZMat& a, const ZRow& b);

/// Generators for rowspan(a) ∩ rowspan(b).
ZMat lattice_intersection(const ZMat& a, const ZMat& b, size_t ncols);

/// dim over Q (p = 0) or F_p of the right kernel { v : a v = 0 }.
size_t right_kernel_dim(const ZMat& a, size_t ncols, unsigned long p);

}  // namespace divint
