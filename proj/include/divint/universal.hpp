#pragma once

#include "divint/divisor.hpp"
#include "divint/oracle.hpp"

namespace divint {

/// Universal pair of divisors of degrees d0, d1 with r <= min(d0, d1):
/// ambient Z[u_1..u_{d0}, v_1..v_{d1}] (deg u_i = deg v_i = i), target
/// Z[a_1..a_n, b_1..b_m, c_1..c_r] with n = d0 - r, m = d1 - r.
struct UniversalSetup {
  unsigned d0, d1, r, trunc;
  RingPtr ambient;
  RingPtr target;
  Divisor taut0, taut1;  // tautological divisors over the ambient ring

  UniversalSetup(unsigned d0, unsigned d1, unsigned r, unsigned trunc);
  unsigned n() const { return d0 - r; }
  unsigned m() const { return d1 - r; }
  size_t uvar(unsigned i) const { return i - 1; }            // u_i, 1-based
  size_t vvar(unsigned j) const { return d0 + j - 1; }       // v_j
  size_t avar(unsigned i) const { return i - 1; }            // a_i in target
  size_t bvar(unsigned j) const { return n() + j - 1; }      // b_j
  size_t cvar(unsigned k) const { return n() + m() + k - 1; }  // c_k
};

/// Minors of the universal Sylvester matrix of size d0 + d1 - r + 1; the
/// defining ideal of Int_r(d0, d1).
IdealGens int_ideal_universal(const UniversalSetup&);

/// Free-generator monomials of O_{Int_r} over Z[u_1..u_{d0-r}, v_*]:
/// monomials in u_{d0-r+1}..u_{d0} of weight (total exponent) <= d1 - r.
std::vector<Monomial> int_basis_monomials(const UniversalSetup&);

/// Count of degree-d products (free-base monomial) x (basis monomial); these
/// are exactly the ambient monomials whose u-tail weight is <= d1 - r.
size_t int_basis_count(const UniversalSetup&, unsigned degree);

struct DegreeRow {
  unsigned degree = 0;
  long expected = 0;
  long computed = 0;
  std::vector<std::string> torsion;
  bool ok = true;
};

struct VerifyReport {
  std::string check;
  bool pass = true;
  int first_failure = -1;
  std::vector<DegreeRow> rows;

  void add(DegreeRow row);
};

/// thm-int-dec, basis half: degreewise quotient rank of the minors ideal
/// equals the product-basis count (with empty torsion over Z).
VerifyReport verify_int_basis(const UniversalSetup&, unsigned max_degree, const CoeffField& field,
                              unsigned threads = 1);

/// pi*: u_i -> coeff of x^{d0-i} in f h, v_j -> coeff of x^{d1-j} in g h.
std::map<size_t, GradedPoly> pi_star_images(const UniversalSetup&);
GradedPoly pi_star(const UniversalSetup&, const GradedPoly&);

/// thm-int-dec, split-mono half: degreewise over Q the pi* images of the
/// product basis stay linearly independent in A (x) B (x) C.
VerifyReport verify_pi_split_mono(const UniversalSetup&, unsigned max_degree,
                                  unsigned threads = 1);

/// lem-leading: Schur determinant M_{ij} = u_{n+r+i-gamma_j} over
/// Z[u_1..u_{n+r}] with u_0 = 1 and out-of-range indices 0.
struct SchurLeading {
  GradedPoly determinant;
  GradedPoly claimed_lowest;  // product of the diagonal entries
  GradedPoly actual_lowest;   // minimal term of det under the paper's order
  bool lowest_matches = false;
  unsigned max_term_weight = 0;
};
SchurLeading schur_leading_term(unsigned n, unsigned r, const std::vector<unsigned>& gamma);

/// lem-ucw as an identity: mod (u_i : i < n) and all v_j we have
/// u_{n+j} = u_n c_j + w_j with w_j a polynomial in c only.
struct UcwReport {
  bool pass = true;
  std::vector<GradedPoly> w;  // w_1..w_r in the target ring (c variables only)
};
UcwReport verify_lemma_ucw(const UniversalSetup&);

// --- Poincare series (variable w, w <-> t^2 of the paper) ---------------

using PowerSeries = std::vector<mpz_class>;  // index = degree, length D+1

PowerSeries ps_free(const std::vector<unsigned>& generator_degrees, unsigned max_degree);
PowerSeries ps_int(unsigned d0, unsigned d1, unsigned r, unsigned max_degree);
PowerSeries ps_sub(unsigned d0, unsigned d1, unsigned r, unsigned max_degree);

struct PsIdentityReport {
  bool pass = true;
  int first_failure = -1;
  PowerSeries lhs, rhs;  // PS(Int_r) - PS(Int_{r+1})  vs  w^{(d0-r)(d1-r)} PS(Sub_r)
};
PsIdentityReport verify_ps_identity(unsigned d0, unsigned d1, unsigned r, unsigned max_degree);

/// Anchor case Int_min = Sub_min: the two series agree termwise.
PsIdentityReport verify_ps_anchor(unsigned d0, unsigned d1, unsigned max_degree);

}  // namespace divint
