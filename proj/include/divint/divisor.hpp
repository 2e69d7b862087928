#pragma once

#include <nlohmann/json_fwd.hpp>

#include "divint/fitting.hpp"
#include "divint/upoly.hpp"

namespace divint {

/// Divisor of degree d on the formal affine line over a truncated graded
/// base: f(x) = x^d + c_1 x^{d-1} + ... + c_d with every c_i of positive
/// minimal degree (nilpotent under truncation).
struct Divisor {
  RingPtr base;
  unsigned degree = 0;
  std::vector<GradedPoly> coeffs;  // c_1 .. c_d

  Divisor(RingPtr b, unsigned d, std::vector<GradedPoly> cs);
  UPoly equation() const;
  static Divisor from_equation(RingPtr base, const UPoly& f);

  nlohmann::ordered_json to_json() const;
  static Divisor from_json(const nlohmann::json&);
};

/// Universal divisor of degree d: tautological coefficients become fresh
/// variables prefix1..prefixd of grading 1..d over Z, truncation N.
Divisor universal_divisor(unsigned d, unsigned trunc, const std::string& prefix = "c");

Divisor divisor_sum(const Divisor& d0, const Divisor& d1);

/// phi : O_{D0+D1} -> O_{D0} + O_{D1}, g |-> (g mod f0, -g mod f1);
/// coker = O_{D0 cap D1}.  (d0+d1) x (d0+d1).
Presentation presentation_pushout(const Divisor& d0, const Divisor& d1);

/// Columns are the coefficient vectors of x^j f0 (j < d1) then x^j f1
/// (j < d0) in the basis 1, x, ..., x^{d0+d1-1}, row x^0 on top.
PolyMatrix sylvester_matrix(const Divisor& d0, const Divisor& d1);
Presentation presentation_sylvester(const Divisor& d0, const Divisor& d1);

/// Multiplication by f1 on O_{D0} (d0 x d0); `mirrored` multiplies by f0 on
/// O_{D1} instead.
Presentation presentation_mu(const Divisor& d0, const Divisor& d1, bool mirrored = false);

/// Coefficients of f0/f1 = x^{d0-d1} (c_0 + c_1 x^{-1} + ...): c_0 = 1 and
/// all later c_i nilpotent.  Returns c_0..c_count.
std::vector<GradedPoly> laurent_coeffs(const Divisor& d0, const Divisor& d1, size_t count);

/// Phi_{ij} = c_{d0+i-j} for 0 <= i,j < d1 (the paper displays this matrix
/// with rows and columns simultaneously reversed).
PolyMatrix laurent_matrix(const Divisor& d0, const Divisor& d1);
Presentation presentation_laurent(const Divisor& d0, const Divisor& d1);

/// Fitting rank of O_{D0 cap D1} over the base (via the mu presentation).
size_t intersection_rank(const Divisor& d0, const Divisor& d1);

/// Generators of I_{r-1}(O_{D0 cap D1}); zero ideal iff int >= r everywhere.
/// r = 0 gives the zero ideal (Int_0 = S).
IdealGens int_obstruction_ideal(const Divisor& d0, const Divisor& d1, size_t r);

/// det of the Sylvester presentation.
GradedPoly resultant(const Divisor& d0, const Divisor& d1);

/// det(Psi_r), (Psi_r)_{ij} = c_{d0-r+i-j} for 0 <= i,j < d1-r; lies in
/// I_r(O_{D0 cap D1}).
GradedPoly thom_porteous_minor(const Divisor& d0, const Divisor& d1, size_t r);

/// Relation ideal of Sub_r(D0,D1) inside ext = base + {c_1..c_r}: the
/// coefficients of (f0 mod h) and (f1 mod h) where h = x^r + c_1 x^{r-1} +
/// ... + c_r.  cvars lists the indices of c_1..c_r in ext.
std::vector<GradedPoly> sub_divisor_relations(const Divisor& d0, const Divisor& d1,
                                              const RingPtr& ext,
                                              const std::vector<size_t>& cvars);

/// Lift of a divisor's equation into an extension ring that contains all base
/// variables under the same names.
UPoly lift_equation(const Divisor& d, const RingPtr& ext);

}  // namespace divint
