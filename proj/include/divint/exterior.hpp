#pragma once

#include "divint/divisor.hpp"
#include "divint/oracle.hpp"
#include "divint/pkd.hpp"
#include "divint/universal.hpp"

namespace divint {

/// Element of O_D^{(x) k}: coefficients over the base indexed by exponent
/// tuples (alpha_0..alpha_{k-1}) with 0 <= alpha_i < d.
struct TensorElement {
  RingPtr base;
  unsigned d = 0, k = 0;
  std::map<std::vector<unsigned>, GradedPoly> terms;

  TensorElement(RingPtr b, unsigned d_, unsigned k_) : base(std::move(b)), d(d_), k(k_) {}
  static TensorElement pure(const RingPtr& base, unsigned d, std::vector<unsigned> alpha);
  void add(const std::vector<unsigned>& alpha, const GradedPoly& c);
  bool is_zero() const { return terms.empty(); }
  TensorElement operator+(const TensorElement&) const;
  TensorElement operator-(const TensorElement&) const;
  bool operator==(const TensorElement&) const;
};

/// Element of lambda^k O_D: wedges x^{beta_0} ^ ... ^ x^{beta_{k-1}} in
/// strictly decreasing normal form beta_0 > ... > beta_{k-1}.
struct WedgeElement {
  RingPtr base;
  unsigned d = 0, k = 0;
  std::map<std::vector<unsigned>, GradedPoly> terms;

  WedgeElement(RingPtr b, unsigned d_, unsigned k_) : base(std::move(b)), d(d_), k(k_) {}
  static WedgeElement pure(const RingPtr& base, unsigned d, std::vector<unsigned> beta);
  void add(const std::vector<unsigned>& beta_decreasing, const GradedPoly& c);
  bool is_zero() const { return terms.empty(); }
  WedgeElement operator+(const WedgeElement&) const;
  WedgeElement operator-(const WedgeElement&) const;
  bool operator==(const WedgeElement&) const;
};

/// mu_k: the usual projection; repeated indices die, others sort with a sign.
WedgeElement mu_k(const TensorElement&);

/// psi_k: wedge |-> sum over permutations with signs (coproduct component).
TensorElement psi_k(const WedgeElement&);

/// alt_k(a) = sum_sigma sgn(sigma) sigma.a with
/// sigma.(a_0 (x) ... ) = a_{sigma^{-1}(0)} (x) ...
TensorElement alt_k(const TensorElement&);
TensorElement sigma_dot(const TensorElement&, const std::vector<unsigned>& sigma);

/// Slotwise product in O_{D^k} (each slot reduced mod the divisor equation).
TensorElement tensor_mul(const Divisor&, const TensorElement&, const TensorElement&);

/// Image of an O_{D^k} class (reduced polynomial in x_0..x_{k-1}) as a
/// TensorElement.
TensorElement tensor_from_odk(const Divisor&, const PkdContext&, const GradedPoly& reduced);

/// lem-alt-Jk: a degreewise spanning set of the J_k span maps to zero.
VerifyReport mu_kills_jk(const Divisor&, unsigned k, unsigned max_degree);

/// Module action of a Sigma_k-symmetric s on lambda^k O_D through a tensor
/// lift of w; s must be symmetric (checked).
WedgeElement sub_action(const Divisor&, unsigned k, const TensorElement& s,
                        const WedgeElement& w);

/// Subdivisor coefficient ring of D: ext = base + c_1..c_k and the relation
/// ideal (coefficients of f mod h).
struct SubRingContext {
  RingPtr ext;
  std::vector<size_t> cvars;
  std::vector<GradedPoly> relations;
};
SubRingContext sub_ring_of(const Divisor&, unsigned k);

/// phi: reduce each x^{beta_i} mod h over the subdivisor ring and expand the
/// wedge on the rank-one module x^{k-1} ^ ... ^ x^0; returns the coefficient
/// as a polynomial in the c variables.
GradedPoly phi_map(const Divisor&, unsigned k, const std::vector<unsigned>& beta_decreasing);

/// Closing determinant formula: shuffle sign times det(c_{k+i-gamma_j}) for
/// gamma the increasing complement of beta.  Agrees exactly with phi_map.
GradedPoly phi_determinant(const Divisor&, unsigned k,
                           const std::vector<unsigned>& beta_decreasing);

/// prop-phi-iso: the degreewise matrix of phi from the wedge basis to the
/// O_{Sub_k(D)} monomial basis is unimodular.
VerifyReport verify_phi_iso(const Divisor&, unsigned k, unsigned max_degree);

}  // namespace divint
