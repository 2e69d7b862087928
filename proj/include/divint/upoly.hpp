#pragma once

#include <utility>
#include <vector>

#include "divint/ring.hpp"

namespace divint {

/// Polynomial in one auxiliary variable with GradedPoly coefficients.
/// The auxiliary variable is not part of the RingSpec; it carries weighted
/// degree 1 wherever gradings matter (divisor equations, division chains).
struct UPoly {
  RingPtr ring;                 // ring of the coefficients
  std::vector<GradedPoly> c;    // c[i] = coefficient of t^i; no trailing zeros

  explicit UPoly(RingPtr r) : ring(std::move(r)) {}

  int deg() const { return static_cast<int>(c.size()) - 1; }
  bool is_zero() const { return c.empty(); }
  bool is_monic() const;

  GradedPoly coeff(size_t i) const;  // zero beyond deg
  void normalize();                  // drop trailing zeros

  static UPoly zero(RingPtr r) { return UPoly(std::move(r)); }
  static UPoly constant(RingPtr r, GradedPoly a);
  static UPoly from_coeffs(RingPtr r, std::vector<GradedPoly> coeffs);
  /// t^d + a_1 t^{d-1} + ... + a_d from the list (a_1, ..., a_d).
  static UPoly monic_from_lower(RingPtr r, unsigned d, const std::vector<GradedPoly>& lower);
  /// t - root and t + shift building blocks.
  static UPoly linear(RingPtr r, const GradedPoly& constant_term);

  UPoly operator+(const UPoly&) const;
  UPoly operator-(const UPoly&) const;
  UPoly operator*(const UPoly&) const;
  UPoly scaled(const GradedPoly&) const;
  bool operator==(const UPoly&) const;
};

/// Quotient and remainder of num by a monic divisor; exact in the truncated
/// ring (num = q*den + r with deg r < deg den).
std::pair<UPoly, UPoly> upoly_divmod_monic(const UPoly& num, const UPoly& den);

GradedPoly upoly_eval(const UPoly& p, const GradedPoly& at);

}  // namespace divint
