#pragma once

#include "divint/divisor.hpp"
#include "divint/oracle.hpp"
#include "divint/universal.hpp"

namespace divint {

/// The scheme P_kD of ordered k-tuples of points with divisor sum <= D.
/// O_{P_kD} = O_S[x_0..x_{k-1}] / J_k with J_k = (a_{k0},..,a_{k,k-1}) =
/// (b_0,..,b_{k-1}); the x_j live in an extension of the base ring.
struct PkdContext {
  Divisor divisor;
  unsigned k = 0;
  RingPtr ext;                 // base variables + x_0..x_{k-1}, grading 1
  std::vector<size_t> xvars;   // indices of the x_j in ext
  UPoly f;                     // lifted equation over ext (variable t)
  std::vector<UPoly> p;        // p_i(t) = prod_{j<i} (t - x_j), i = 0..k
  std::vector<UPoly> q;        // quotients f = q_i p_i + r_i
  std::vector<UPoly> r;        // remainders, deg r_i < i
  std::vector<std::vector<GradedPoly>> a;  // a[i][j]: coefficient of t^j in r_i
  std::vector<GradedPoly> b;   // b_i = a_{i+1,i} = q_i(x_i), i < k

  GradedPoly x(unsigned j) const { return GradedPoly::variable(ext, xvars[j]); }
  QuotientRing odk() const;    // O_{D^k}: reduction divisors f(x_j)
  IdealGens jk_b() const { return IdealGens(ext, b); }
  IdealGens jk_a() const;      // generated by a_{k,0..k-1}
};

/// Runs the division chain; k <= deg D required.  The invariants
/// f = q_i p_i + r_i and r_{i+1} = b_i p_i + r_i hold exactly provided the
/// truncation is at least deg D.
PkdContext division_chain(const Divisor& d, unsigned k);

/// Exact division of p by (hi - lo), both variables of grading 1; throws
/// std::logic_error when the division is not exact.
GradedPoly exact_divide_binomial(const GradedPoly& p, size_t hi, size_t lo);

/// Vandermonde v_j = prod_{0 <= i < i' < j} (x_{i'} - x_i).
GradedPoly vandermonde(const PkdContext&, unsigned j);

/// B_j: j x j matrix over x_0..x_{j-1} with columns 1, x_i, .., x_i^{j-2},
/// f(x_i) (prop-b-det's index convention: b_j = det(B_{j+1}) / v_{j+1},
/// starting from b_0 = det([f(x_0)]) / 1).
PolyMatrix b_matrix(const PkdContext&, unsigned j);

/// All relators by the determinant formula; equals division_chain's b list.
std::vector<GradedPoly> pkd_relators_det(const PkdContext&);

/// Monomial basis x^alpha, 0 <= alpha_i <= d-1-i; count = d!/(d-k)!.
std::vector<Monomial> pkd_basis_monomials(const PkdContext&);
size_t pkd_basis_count(const PkdContext&, unsigned degree);  // with base monomials, degreewise

/// Degreewise freeness of O_{P_kD} over O_S against the monomial basis.
VerifyReport pkd_basis_report(const PkdContext&, unsigned max_degree, unsigned threads = 1);

/// The a-family and b-family generate the same ideal in the free ring.
IdealEqualResult relator_families_agree(const PkdContext&, unsigned up_to_degree);

/// Integer matrices of the adjacent-transposition generators of Sigma_k on
/// the degree-d component of O_{P_kD} in the monomial basis; group relations
/// are verified on the generators.
std::vector<ZMat> sigma_action_matrices(const PkdContext&, unsigned degree);

/// dim_K of the Sigma_k-invariants of the degree-d component of O_{P_kD}.
size_t sigma_invariant_dim(const PkdContext&, const CoeffField& field, unsigned degree);

/// prop-invariant: degreewise over Z, the kernel of O_{D^k}^{Sigma_k} ->
/// O_{P_kD} equals the invariant sublattice of the J_k span, and the image
/// has the rank of O_{Sub_k(D)} (C(d,k) over O_S) over Q.
VerifyReport verify_invariant_kernel(const PkdContext&, unsigned max_degree);

}  // namespace divint
