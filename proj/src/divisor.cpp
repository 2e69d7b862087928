#include "divint/divisor.hpp"

#include <nlohmann/json.hpp>

namespace divint {

using nlohmann::ordered_json;

Divisor::Divisor(RingPtr b, unsigned d, std::vector<GradedPoly> cs)
    : base(std::move(b)), degree(d), coeffs(std::move(cs)) {
  if (coeffs.size() != degree) throw structural_error("Divisor: need exactly d coefficients");
  for (const auto& c : coeffs) {
    if (!same_ring(c.ring(), base)) throw structural_error("Divisor: coefficient in wrong ring");
    if (!c.is_zero() && c.constant_value() != 0)
      throw structural_error("Divisor: coefficients must vanish in degree 0 (f = x^d mod nilpotents)");
  }
}

UPoly Divisor::equation() const {
  return UPoly::monic_from_lower(base, degree, coeffs);
}

Divisor Divisor::from_equation(RingPtr base, const UPoly& f) {
  if (!f.is_monic()) throw structural_error("Divisor: equation must be monic");
  unsigned d = static_cast<unsigned>(f.deg());
  std::vector<GradedPoly> cs;
  for (unsigned i = 1; i <= d; ++i) cs.push_back(f.coeff(d - i));
  return Divisor(std::move(base), d, std::move(cs));
}

Divisor universal_divisor(unsigned d, unsigned trunc, const std::string& prefix) {
  std::vector<VarSpec> vars;
  for (unsigned i = 1; i <= d; ++i) vars.push_back({prefix + std::to_string(i), i});
  auto ring = make_ring(CoeffField::Z(), vars, trunc);
  std::vector<GradedPoly> cs;
  for (unsigned i = 0; i < d; ++i) cs.push_back(GradedPoly::variable(ring, i));
  return Divisor(ring, d, std::move(cs));
}

static void require_same_base(const Divisor& a, const Divisor& b, const char* op) {
  if (!same_ring(a.base, b.base))
    throw structural_error(std::string(op) + ": divisors over different bases");
}

Divisor divisor_sum(const Divisor& d0, const Divisor& d1) {
  require_same_base(d0, d1, "divisor_sum");
  return Divisor::from_equation(d0.base, d0.equation() * d1.equation());
}

Presentation presentation_pushout(const Divisor& d0, const Divisor& d1) {
  require_same_base(d0, d1, "presentation_pushout");
  const RingPtr& R = d0.base;
  unsigned n = d0.degree + d1.degree;
  UPoly f0 = d0.equation(), f1 = d1.equation();
  PolyMatrix m(R, n, n);
  std::vector<std::string> rows, cols;
  for (unsigned j = 0; j < n; ++j) {
    // x^j as element of O_{D0+D1}; map to (x^j mod f0, -x^j mod f1)
    UPoly xj(R);
    xj.c.assign(j + 1, GradedPoly::zero(R));
    xj.c[j] = GradedPoly::constant(R, 1);
    UPoly r0 = d0.degree ? upoly_divmod_monic(xj, f0).second : UPoly::zero(R);
    UPoly r1 = d1.degree ? upoly_divmod_monic(xj, f1).second : UPoly::zero(R);
    for (unsigned i = 0; i < d0.degree; ++i) m.at(i, j) = r0.coeff(i);
    for (unsigned i = 0; i < d1.degree; ++i) m.at(d0.degree + i, j) = -r1.coeff(i);
    cols.push_back("x^" + std::to_string(j));
  }
  for (unsigned i = 0; i < d0.degree; ++i) rows.push_back("D0:x^" + std::to_string(i));
  for (unsigned i = 0; i < d1.degree; ++i) rows.push_back("D1:x^" + std::to_string(i));
  return Presentation{std::move(m), std::move(rows), std::move(cols)};
}

PolyMatrix sylvester_matrix(const Divisor& d0, const Divisor& d1) {
  require_same_base(d0, d1, "presentation_sylvester");
  const RingPtr& R = d0.base;
  unsigned n = d0.degree + d1.degree;
  UPoly f0 = d0.equation(), f1 = d1.equation();
  PolyMatrix m(R, n, n);
  for (unsigned j = 0; j < d1.degree; ++j)        // columns x^j f0
    for (unsigned k = j; k <= d0.degree + j && k < n; ++k)
      m.at(k, j) = f0.coeff(k - j);
  for (unsigned j = 0; j < d0.degree; ++j)        // columns x^j f1
    for (unsigned k = j; k <= d1.degree + j && k < n; ++k)
      m.at(k, d1.degree + j) = f1.coeff(k - j);
  return m;
}

Presentation presentation_sylvester(const Divisor& d0, const Divisor& d1) {
  PolyMatrix m = sylvester_matrix(d0, d1);
  std::vector<std::string> rows, cols;
  for (unsigned k = 0; k < d0.degree + d1.degree; ++k) rows.push_back("x^" + std::to_string(k));
  for (unsigned j = 0; j < d1.degree; ++j) cols.push_back("x^" + std::to_string(j) + "*f0");
  for (unsigned j = 0; j < d0.degree; ++j) cols.push_back("x^" + std::to_string(j) + "*f1");
  return Presentation{std::move(m), std::move(rows), std::move(cols)};
}

Presentation presentation_mu(const Divisor& d0, const Divisor& d1, bool mirrored) {
  require_same_base(d0, d1, "presentation_mu");
  const Divisor& host = mirrored ? d1 : d0;    // module O_{host}
  const Divisor& mult = mirrored ? d0 : d1;    // multiply by its equation
  const RingPtr& R = d0.base;
  unsigned n = host.degree;
  UPoly fh = host.equation(), fm = mult.equation();
  PolyMatrix m(R, n, n);
  for (unsigned j = 0; j < n; ++j) {
    UPoly xj(R);
    xj.c.assign(j + 1, GradedPoly::zero(R));
    xj.c[j] = GradedPoly::constant(R, 1);
    UPoly rem = upoly_divmod_monic(xj * fm, fh).second;
    for (unsigned i = 0; i < n; ++i) m.at(i, j) = rem.coeff(i);
  }
  return Presentation{std::move(m), {}, {}};
}

std::vector<GradedPoly> laurent_coeffs(const Divisor& d0, const Divisor& d1, size_t count) {
  require_same_base(d0, d1, "laurent_coeffs");
  const RingPtr& R = d0.base;
  // tau = f1 / x^{d1} = 1 + sum_{i>=1} c_{1i} x^{-i}; invert as a series in
  // x^{-1}: e_0 = 1, e_b = -sum_{i=1..b} c_{1i} e_{b-i}.  Terminates exactly
  // because the c_{1i} are nilpotent under truncation.
  std::vector<GradedPoly> e(count + 1, GradedPoly::zero(R));
  e[0] = GradedPoly::constant(R, 1);
  auto tau = [&](size_t i) {
    return i == 0 ? GradedPoly::constant(R, 1)
                  : (i <= d1.degree ? d1.coeffs[i - 1] : GradedPoly::zero(R));
  };
  for (size_t b = 1; b <= count; ++b) {
    GradedPoly acc(R);
    for (size_t i = 1; i <= b && i <= d1.degree; ++i) acc = acc + tau(i) * e[b - i];
    e[b] = -acc;
  }
  // c = (f0 / x^{d0}) * e
  auto f0c = [&](size_t i) {
    return i == 0 ? GradedPoly::constant(R, 1)
                  : (i <= d0.degree ? d0.coeffs[i - 1] : GradedPoly::zero(R));
  };
  std::vector<GradedPoly> c(count + 1, GradedPoly::zero(R));
  for (size_t i = 0; i <= count; ++i)
    for (size_t a = 0; a <= i && a <= d0.degree; ++a) c[i] = c[i] + f0c(a) * e[i - a];
  return c;
}

PolyMatrix laurent_matrix(const Divisor& d0, const Divisor& d1) {
  const RingPtr& R = d0.base;
  unsigned n = d1.degree;
  size_t need = n ? d0.degree + n - 1 : 0;
  auto c = laurent_coeffs(d0, d1, need);
  PolyMatrix m(R, n, n);
  for (unsigned i = 0; i < n; ++i)
    for (unsigned j = 0; j < n; ++j) {
      long k = static_cast<long>(d0.degree) + i - j;
      if (k >= 0) m.at(i, j) = c[static_cast<size_t>(k)];  // c_k = 0 for k < 0
    }
  return m;
}

Presentation presentation_laurent(const Divisor& d0, const Divisor& d1) {
  return Presentation{laurent_matrix(d0, d1), {}, {}};
}

size_t intersection_rank(const Divisor& d0, const Divisor& d1) {
  // smallest matrix: multiply on O_{D0} if d0 <= d1, else mirrored
  return fitting_rank(presentation_mu(d0, d1, d0.degree > d1.degree));
}

IdealGens int_obstruction_ideal(const Divisor& d0, const Divisor& d1, size_t r) {
  auto P = presentation_mu(d0, d1, d0.degree > d1.degree);
  if (r == 0) return IdealGens(d0.base, {});  // Int_0 = S: no obstruction
  return fitting_ideal(P, r - 1);
}

GradedPoly resultant(const Divisor& d0, const Divisor& d1) {
  if (d0.degree + d1.degree == 0) return GradedPoly::constant(d0.base, 1);
  return det(sylvester_matrix(d0, d1));
}

GradedPoly thom_porteous_minor(const Divisor& d0, const Divisor& d1, size_t r) {
  require_same_base(d0, d1, "thom_porteous_minor");
  if (r > d1.degree) throw structural_error("thom_porteous_minor: r exceeds d1");
  const RingPtr& R = d0.base;
  size_t n = d1.degree - r;
  if (n == 0) return GradedPoly::constant(R, 1);
  auto c = laurent_coeffs(d0, d1, d0.degree + n - 1);
  PolyMatrix psi(R, n, n);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      long k = static_cast<long>(d0.degree) - static_cast<long>(r) + static_cast<long>(i) -
               static_cast<long>(j);
      if (k >= 0) psi.at(i, j) = c[static_cast<size_t>(k)];
    }
  return det(psi);
}

UPoly lift_equation(const Divisor& d, const RingPtr& ext) {
  std::map<size_t, GradedPoly> images;
  for (size_t v = 0; v < d.base->nvars(); ++v) {
    auto idx = ext->var_index(d.base->var_name(v));
    if (!idx) throw structural_error("lift_equation: extension ring misses " + d.base->var_name(v));
    images.emplace(v, GradedPoly::variable(ext, *idx));
  }
  std::vector<GradedPoly> cs;
  for (const auto& c : d.coeffs) cs.push_back(substitute(c, ext, images));
  return UPoly::monic_from_lower(ext, d.degree, cs);
}

std::vector<GradedPoly> sub_divisor_relations(const Divisor& d0, const Divisor& d1,
                                              const RingPtr& ext,
                                              const std::vector<size_t>& cvars) {
  require_same_base(d0, d1, "sub_divisor_relations");
  std::vector<GradedPoly> lower;
  for (size_t v : cvars) lower.push_back(GradedPoly::variable(ext, v));
  UPoly h = UPoly::monic_from_lower(ext, static_cast<unsigned>(cvars.size()), lower);
  std::vector<GradedPoly> rels;
  for (const Divisor* d : {&d0, &d1}) {
    UPoly rem = upoly_divmod_monic(lift_equation(*d, ext), h).second;
    for (int i = 0; i <= rem.deg(); ++i)
      if (!rem.c[i].is_zero()) rels.push_back(rem.c[i]);
  }
  return rels;
}

ordered_json Divisor::to_json() const {
  ordered_json cs = ordered_json::array();
  for (const auto& c : coeffs) cs.push_back(poly_to_json(c));
  return ordered_json{{"base", base->to_json()},
                      {"divisor", ordered_json{{"degree", degree}, {"coeffs", std::move(cs)}}}};
}

Divisor Divisor::from_json(const nlohmann::json& j) {
  auto base = RingSpec::from_json(j.at("base"));
  const auto& dv = j.at("divisor");
  unsigned d = dv.at("degree").get<unsigned>();
  std::vector<GradedPoly> cs;
  for (const auto& c : dv.at("coeffs")) {
    if (c.is_string())
      cs.push_back(parse_poly(base, c.get<std::string>()));
    else
      cs.push_back(poly_from_json(base, c));
  }
  return Divisor(base, d, std::move(cs));
}

}  // namespace divint
