#include "divint/upoly.hpp"

namespace divint {

bool UPoly::is_monic() const {
  return !c.empty() && c.back() == GradedPoly::constant(ring, 1);
}

GradedPoly UPoly::coeff(size_t i) const {
  if (i < c.size()) return c[i];
  return GradedPoly::zero(ring);
}

void UPoly::normalize() {
  while (!c.empty() && c.back().is_zero()) c.pop_back();
}

UPoly UPoly::constant(RingPtr r, GradedPoly a) {
  UPoly p(std::move(r));
  if (!a.is_zero()) p.c.push_back(std::move(a));
  return p;
}

UPoly UPoly::from_coeffs(RingPtr r, std::vector<GradedPoly> coeffs) {
  UPoly p(std::move(r));
  p.c = std::move(coeffs);
  p.normalize();
  return p;
}

UPoly UPoly::monic_from_lower(RingPtr r, unsigned d, const std::vector<GradedPoly>& lower) {
  if (lower.size() != d) throw structural_error("monic_from_lower: need exactly d coefficients");
  UPoly p(r);
  p.c.resize(d + 1, GradedPoly::zero(r));
  for (unsigned i = 1; i <= d; ++i) p.c[d - i] = lower[i - 1];  // a_i multiplies t^{d-i}
  p.c[d] = GradedPoly::constant(r, 1);
  return p;
}

UPoly UPoly::linear(RingPtr r, const GradedPoly& constant_term) {
  UPoly p(r);
  p.c.push_back(constant_term);
  p.c.push_back(GradedPoly::constant(r, 1));
  return p;
}

UPoly UPoly::operator+(const UPoly& o) const {
  UPoly out(ring);
  out.c.resize(std::max(c.size(), o.c.size()), GradedPoly::zero(ring));
  for (size_t i = 0; i < out.c.size(); ++i) {
    if (i < c.size()) out.c[i] = out.c[i] + c[i];
    if (i < o.c.size()) out.c[i] = out.c[i] + o.c[i];
  }
  out.normalize();
  return out;
}

UPoly UPoly::operator-(const UPoly& o) const {
  UPoly out(ring);
  out.c.resize(std::max(c.size(), o.c.size()), GradedPoly::zero(ring));
  for (size_t i = 0; i < out.c.size(); ++i) {
    if (i < c.size()) out.c[i] = out.c[i] + c[i];
    if (i < o.c.size()) out.c[i] = out.c[i] - o.c[i];
  }
  out.normalize();
  return out;
}

UPoly UPoly::operator*(const UPoly& o) const {
  if (is_zero() || o.is_zero()) return UPoly(ring);
  UPoly out(ring);
  out.c.resize(c.size() + o.c.size() - 1, GradedPoly::zero(ring));
  for (size_t i = 0; i < c.size(); ++i)
    for (size_t j = 0; j < o.c.size(); ++j) out.c[i + j] = out.c[i + j] + c[i] * o.c[j];
  out.normalize();
  return out;
}

UPoly UPoly::scaled(const GradedPoly& s) const {
  UPoly out(ring);
  out.c.reserve(c.size());
  for (const auto& a : c) out.c.push_back(a * s);
  out.normalize();
  return out;
}

bool UPoly::operator==(const UPoly& o) const { return c == o.c; }

std::pair<UPoly, UPoly> upoly_divmod_monic(const UPoly& num, const UPoly& den) {
  if (!den.is_monic()) throw structural_error("upoly_divmod_monic: divisor not monic");
  UPoly r = num;
  UPoly q(num.ring);
  int dd = den.deg();
  if (r.deg() >= dd) q.c.resize(r.deg() - dd + 1, GradedPoly::zero(num.ring));
  while (r.deg() >= dd) {
    int shift = r.deg() - dd;
    GradedPoly lead = r.c.back();
    q.c[shift] = q.c[shift] + lead;
    // r -= lead * t^shift * den
    for (int i = 0; i <= dd; ++i) r.c[i + shift] = r.c[i + shift] - lead * den.c[i];
    r.normalize();
    if (r.deg() >= dd + shift) throw std::logic_error("division failed to reduce degree");
  }
  q.normalize();
  return {q, r};
}

GradedPoly upoly_eval(const UPoly& p, const GradedPoly& at) {
  GradedPoly acc = GradedPoly::zero(p.ring);
  for (size_t i = p.c.size(); i-- > 0;) acc = acc * at + p.c[i];
  return acc;
}

}  // namespace divint
