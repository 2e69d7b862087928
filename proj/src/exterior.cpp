#include "divint/exterior.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace divint {

namespace {

void check_range(const std::vector<unsigned>& idx, unsigned d, unsigned k, const char* what) {
  if (idx.size() != k) throw structural_error(std::string(what) + ": index tuple length != k");
  for (unsigned e : idx)
    if (e >= d) throw structural_error(std::string(what) + ": exponent out of range");
}

int sort_sign_decreasing(std::vector<unsigned>& v) {
  // bubble sort into strictly decreasing order; -1 per swap, 0 on repeats
  int sign = 1;
  for (size_t i = 0; i < v.size(); ++i)
    for (size_t j = 0; j + 1 < v.size() - i; ++j) {
      if (v[j] == v[j + 1]) return 0;
      if (v[j] < v[j + 1]) {
        std::swap(v[j], v[j + 1]);
        sign = -sign;
      }
    }
  return sign;
}

int perm_sign(const std::vector<unsigned>& sigma) {
  int sign = 1;
  for (size_t i = 0; i < sigma.size(); ++i)
    for (size_t j = i + 1; j < sigma.size(); ++j)
      if (sigma[i] > sigma[j]) sign = -sign;
  return sign;
}

void for_each_permutation(unsigned k, const std::function<void(const std::vector<unsigned>&, int)>& fn) {
  std::vector<unsigned> sigma(k);
  std::iota(sigma.begin(), sigma.end(), 0);
  do {
    fn(sigma, perm_sign(sigma));
  } while (std::next_permutation(sigma.begin(), sigma.end()));
}

}  // namespace

TensorElement TensorElement::pure(const RingPtr& base, unsigned d, std::vector<unsigned> alpha) {
  TensorElement t(base, d, static_cast<unsigned>(alpha.size()));
  check_range(alpha, d, t.k, "TensorElement");
  t.terms.emplace(std::move(alpha), GradedPoly::constant(base, 1));
  return t;
}

void TensorElement::add(const std::vector<unsigned>& alpha, const GradedPoly& c) {
  check_range(alpha, d, k, "TensorElement");
  if (c.is_zero()) return;
  auto [it, inserted] = terms.emplace(alpha, c);
  if (!inserted) {
    it->second = it->second + c;
    if (it->second.is_zero()) terms.erase(it);
  }
}

TensorElement TensorElement::operator+(const TensorElement& o) const {
  TensorElement out = *this;
  for (const auto& [a, c] : o.terms) out.add(a, c);
  return out;
}

TensorElement TensorElement::operator-(const TensorElement& o) const {
  TensorElement out = *this;
  for (const auto& [a, c] : o.terms) out.add(a, -c);
  return out;
}

bool TensorElement::operator==(const TensorElement& o) const {
  return d == o.d && k == o.k && terms == o.terms;
}

WedgeElement WedgeElement::pure(const RingPtr& base, unsigned d, std::vector<unsigned> beta) {
  WedgeElement w(base, d, static_cast<unsigned>(beta.size()));
  w.add(beta, GradedPoly::constant(base, 1));
  return w;
}

void WedgeElement::add(const std::vector<unsigned>& beta, const GradedPoly& c) {
  check_range(beta, d, k, "WedgeElement");
  for (size_t i = 0; i + 1 < beta.size(); ++i)
    if (beta[i] <= beta[i + 1])
      throw structural_error("WedgeElement: indices must be strictly decreasing");
  if (c.is_zero()) return;
  auto [it, inserted] = terms.emplace(beta, c);
  if (!inserted) {
    it->second = it->second + c;
    if (it->second.is_zero()) terms.erase(it);
  }
}

WedgeElement WedgeElement::operator+(const WedgeElement& o) const {
  WedgeElement out = *this;
  for (const auto& [b, c] : o.terms) out.add(b, c);
  return out;
}

WedgeElement WedgeElement::operator-(const WedgeElement& o) const {
  WedgeElement out = *this;
  for (const auto& [b, c] : o.terms) out.add(b, -c);
  return out;
}

bool WedgeElement::operator==(const WedgeElement& o) const {
  return d == o.d && k == o.k && terms == o.terms;
}

WedgeElement mu_k(const TensorElement& t) {
  WedgeElement out(t.base, t.d, t.k);
  for (const auto& [alpha, c] : t.terms) {
    std::vector<unsigned> beta = alpha;
    int sign = sort_sign_decreasing(beta);
    if (sign == 0) continue;
    out.add(beta, sign > 0 ? c : -c);
  }
  return out;
}

TensorElement psi_k(const WedgeElement& w) {
  TensorElement out(w.base, w.d, w.k);
  for (const auto& [beta, c] : w.terms) {
    for_each_permutation(w.k, [&](const std::vector<unsigned>& sigma, int sign) {
      std::vector<unsigned> alpha(w.k);
      for (unsigned i = 0; i < w.k; ++i) alpha[i] = beta[sigma[i]];
      out.add(alpha, sign > 0 ? c : -c);
    });
  }
  return out;
}

TensorElement sigma_dot(const TensorElement& t, const std::vector<unsigned>& sigma) {
  TensorElement out(t.base, t.d, t.k);
  for (const auto& [alpha, c] : t.terms) {
    // sigma.(a_0 (x) ...) puts slot i's factor into slot sigma(i)
    std::vector<unsigned> moved(t.k);
    for (unsigned i = 0; i < t.k; ++i) moved[sigma[i]] = alpha[i];
    out.add(moved, c);
  }
  return out;
}

TensorElement alt_k(const TensorElement& t) {
  TensorElement out(t.base, t.d, t.k);
  for_each_permutation(t.k, [&](const std::vector<unsigned>& sigma, int sign) {
    TensorElement moved = sigma_dot(t, sigma);
    for (const auto& [a, c] : moved.terms) out.add(a, sign > 0 ? c : -c);
  });
  return out;
}

namespace {

// x^e mod f in the basis x^0..x^{d-1}, for e up to 2(d-1)
std::vector<std::vector<GradedPoly>> power_table(const Divisor& dv) {
  const RingPtr& R = dv.base;
  unsigned d = dv.degree;
  std::vector<std::vector<GradedPoly>> table;
  std::vector<GradedPoly> cur(d, GradedPoly::zero(R));
  cur[0] = GradedPoly::constant(R, 1);
  table.push_back(cur);
  for (unsigned e = 1; e <= 2 * (d - 1); ++e) {
    std::vector<GradedPoly> next(d, GradedPoly::zero(R));
    // multiply by x: shift up, reduce the overflow with x^d = -sum c_i x^{d-i}
    GradedPoly top = cur[d - 1];
    for (unsigned i = d - 1; i >= 1; --i) next[i] = cur[i - 1];
    next[0] = GradedPoly::zero(R);
    if (!top.is_zero())
      for (unsigned i = 1; i <= d; ++i) next[d - i] = next[d - i] - dv.coeffs[i - 1] * top;
    table.push_back(next);
    cur = next;
  }
  return table;
}

}  // namespace

TensorElement tensor_mul(const Divisor& dv, const TensorElement& s, const TensorElement& t) {
  if (s.k != t.k || s.d != t.d) throw structural_error("tensor_mul: shape mismatch");
  auto table = power_table(dv);
  TensorElement out(s.base, s.d, s.k);
  for (const auto& [a1, c1] : s.terms) {
    for (const auto& [a2, c2] : t.terms) {
      GradedPoly coef = c1 * c2;
      if (coef.is_zero()) continue;
      // expand prod_i (x^{a1_i + a2_i} mod f) into the tensor basis
      std::vector<unsigned> idx(s.k, 0);
      std::function<void(unsigned, const GradedPoly&)> rec = [&](unsigned slot,
                                                                 const GradedPoly& acc) {
        if (acc.is_zero()) return;
        if (slot == s.k) {
          out.add(idx, acc);
          return;
        }
        const auto& red = table[a1[slot] + a2[slot]];
        for (unsigned e = 0; e < s.d; ++e) {
          if (red[e].is_zero()) continue;
          idx[slot] = e;
          rec(slot + 1, acc * red[e]);
        }
        idx[slot] = 0;
      };
      rec(0, coef);
    }
  }
  return out;
}

TensorElement tensor_from_odk(const Divisor& dv, const PkdContext& ctx,
                              const GradedPoly& reduced) {
  TensorElement out(dv.base, dv.degree, ctx.k);
  size_t nbase = dv.base->nvars();
  for (const auto& [m, c] : reduced.terms()) {
    std::vector<unsigned> alpha(ctx.k);
    for (unsigned j = 0; j < ctx.k; ++j) {
      alpha[j] = m.exps[ctx.xvars[j]];
      if (alpha[j] >= dv.degree)
        throw structural_error("tensor_from_odk: element not reduced");
    }
    std::vector<unsigned> bexps(m.exps.begin(), m.exps.begin() + nbase);
    out.add(alpha, GradedPoly::monomial(dv.base, Monomial::make(*dv.base, bexps), c));
  }
  return out;
}

VerifyReport mu_kills_jk(const Divisor& dv, unsigned k, unsigned max_degree) {
  PkdContext ctx = division_chain(dv, k);
  QuotientRing q = ctx.odk();
  IdealGens jk = ctx.jk_b();
  VerifyReport rep;
  rep.check = "mu-kills-jk d=" + std::to_string(dv.degree) + " k=" + std::to_string(k);
  for (unsigned deg = 0; deg <= max_degree; ++deg) {
    GradedLattice span = ideal_degree_span(jk, &q, deg);
    long bad = 0;
    for (const auto& row : span.rows) {
      GradedPoly elem(ctx.ext);
      for (size_t i = 0; i < row.size(); ++i)
        if (row[i] != 0) elem.add_term(span.basis[i], mpq_class(row[i]));
      if (!mu_k(tensor_from_odk(dv, ctx, elem)).is_zero()) ++bad;
    }
    DegreeRow r;
    r.degree = deg;
    r.expected = 0;
    r.computed = bad;
    r.ok = bad == 0;
    rep.add(std::move(r));
  }
  return rep;
}

WedgeElement sub_action(const Divisor& dv, unsigned k, const TensorElement& s,
                        const WedgeElement& w) {
  if (s.k != k || w.k != k) throw structural_error("sub_action: shape mismatch");
  // s must be Sigma_k-symmetric
  for (unsigned t = 0; t + 1 < k; ++t) {
    std::vector<unsigned> sigma(k);
    std::iota(sigma.begin(), sigma.end(), 0);
    std::swap(sigma[t], sigma[t + 1]);
    if (!(sigma_dot(s, sigma) == s))
      throw structural_error("sub_action: s is not Sigma_k-symmetric");
  }
  // canonical tensor lift of w: decreasing tuples taken verbatim
  TensorElement lift(w.base, w.d, w.k);
  for (const auto& [beta, c] : w.terms) lift.add(beta, c);
  return mu_k(tensor_mul(dv, s, lift));
}

SubRingContext sub_ring_of(const Divisor& dv, unsigned k) {
  std::vector<VarSpec> vars = dv.base->vars();
  SubRingContext out;
  for (unsigned i = 1; i <= k; ++i) {
    std::string name = "c" + std::to_string(i);
    if (dv.base->var_index(name))
      throw structural_error("sub_ring_of: base ring already uses variable " + name);
    out.cvars.push_back(vars.size());
    vars.push_back({name, i});
  }
  out.ext = make_ring(dv.base->field(), vars, dv.base->trunc());
  std::vector<GradedPoly> lower;
  for (size_t v : out.cvars) lower.push_back(GradedPoly::variable(out.ext, v));
  UPoly h = UPoly::monic_from_lower(out.ext, k, lower);
  UPoly rem = upoly_divmod_monic(lift_equation(dv, out.ext), h).second;
  for (int i = 0; i <= rem.deg(); ++i)
    if (!rem.c[i].is_zero()) out.relations.push_back(rem.c[i]);
  return out;
}

namespace {

void check_beta(const std::vector<unsigned>& beta, unsigned d, unsigned k) {
  if (beta.size() != k) throw structural_error("phi: beta must have k entries");
  for (size_t i = 0; i + 1 < beta.size(); ++i)
    if (beta[i] <= beta[i + 1]) throw structural_error("phi: beta must be strictly decreasing");
  for (unsigned b : beta)
    if (b >= d) throw structural_error("phi: beta entry out of range");
}

}  // namespace

GradedPoly phi_map(const Divisor& dv, unsigned k, const std::vector<unsigned>& beta) {
  check_beta(beta, dv.degree, k);
  SubRingContext sub = sub_ring_of(dv, k);
  std::vector<GradedPoly> lower;
  for (size_t v : sub.cvars) lower.push_back(GradedPoly::variable(sub.ext, v));
  UPoly h = UPoly::monic_from_lower(sub.ext, k, lower);
  PolyMatrix w(sub.ext, k, k);
  for (unsigned i = 0; i < k; ++i) {
    UPoly xb(sub.ext);
    xb.c.assign(beta[i] + 1, GradedPoly::zero(sub.ext));
    xb.c[beta[i]] = GradedPoly::constant(sub.ext, 1);
    UPoly rem = upoly_divmod_monic(xb, h).second;
    // column l holds the coefficient of x^{k-1-l}
    for (unsigned l = 0; l < k; ++l) w.at(i, l) = rem.coeff(k - 1 - l);
  }
  return det(w);
}

GradedPoly phi_determinant(const Divisor& dv, unsigned k, const std::vector<unsigned>& beta) {
  check_beta(beta, dv.degree, k);
  unsigned d = dv.degree;
  SubRingContext sub = sub_ring_of(dv, k);
  // gamma: increasing complement of beta in {0..d-1}
  std::vector<bool> used(d, false);
  for (unsigned b : beta) used[b] = true;
  std::vector<unsigned> gamma;
  for (unsigned i = 0; i < d; ++i)
    if (!used[i]) gamma.push_back(i);
  // shuffle sign: inversions between increasing beta and gamma
  std::vector<unsigned> binc(beta.rbegin(), beta.rend());
  long inversions = 0;
  for (unsigned b : binc)
    for (unsigned g : gamma)
      if (b > g) ++inversions;
  auto centry = [&](long l) {
    if (l < 0 || l > static_cast<long>(k)) return GradedPoly::zero(sub.ext);
    if (l == 0) return GradedPoly::constant(sub.ext, 1);
    return GradedPoly::variable(sub.ext, sub.cvars[static_cast<size_t>(l - 1)]);
  };
  PolyMatrix m(sub.ext, d - k, d - k);
  for (unsigned i = 0; i < d - k; ++i)
    for (unsigned j = 0; j < d - k; ++j)
      m.at(i, j) = centry(static_cast<long>(k) + i - gamma[j]);
  GradedPoly out = det(m);
  return inversions % 2 == 0 ? out : -out;
}

VerifyReport verify_phi_iso(const Divisor& dv, unsigned k, unsigned max_degree) {
  unsigned d = dv.degree;
  SubRingContext sub = sub_ring_of(dv, k);
  IdealGens rel(sub.ext, sub.relations);
  unsigned offset = k * (k - 1) / 2;
  VerifyReport rep;
  rep.check = "phi-iso d=" + std::to_string(d) + " k=" + std::to_string(k);

  // wedge basis: strictly decreasing k-tuples below d
  std::vector<std::vector<unsigned>> wedges;
  std::vector<unsigned> cur;
  std::function<void(int, unsigned)> build = [&](int maxv, unsigned left) {
    if (left == 0) {
      wedges.push_back(cur);
      return;
    }
    for (int v = maxv; v >= static_cast<int>(left) - 1; --v) {
      cur.push_back(static_cast<unsigned>(v));
      build(v - 1, left - 1);
      cur.pop_back();
    }
  };
  build(static_cast<int>(d) - 1, k);

  std::vector<GradedPoly> phi_of_wedge;
  for (const auto& beta : wedges) phi_of_wedge.push_back(phi_map(dv, k, beta));

  // lift of base monomials into the extension ring
  auto lift_base_mono = [&](const Monomial& m) {
    std::vector<unsigned> exps(sub.ext->nvars(), 0);
    for (size_t v = 0; v < dv.base->nvars(); ++v) exps[v] = m.exps[v];
    return Monomial::make(*sub.ext, exps);
  };

  for (unsigned deg = offset; deg <= max_degree; ++deg) {
    unsigned tdeg = deg - offset;
    // target product basis: ext monomials of degree tdeg with c-weight <= d-k
    std::vector<Monomial> tbasis;
    for (const auto& m : degree_basis(*sub.ext, tdeg)) {
      unsigned weight = 0;
      for (size_t v : sub.cvars) weight += m.exps[v];
      if (weight <= d - k) tbasis.push_back(m);
    }
    auto ambient = degree_basis(*sub.ext, tdeg);
    std::map<Monomial, size_t, MonoLess> aidx;
    for (size_t i = 0; i < ambient.size(); ++i) aidx.emplace(ambient[i], i);
    ZMat basis_rows;
    for (const auto& m : tbasis) {
      ZRow row(ambient.size(), 0);
      row[aidx.at(m)] = 1;
      basis_rows.push_back(std::move(row));
    }
    GradedLattice span = ideal_degree_span(rel, nullptr, tdeg);

    // wedge-side basis of this degree: (base monomial) x (wedge)
    ZMat mat;
    size_t wedge_dim = 0;
    for (size_t wi = 0; wi < wedges.size(); ++wi) {
      unsigned wdeg = 0;
      for (unsigned b : wedges[wi]) wdeg += b;
      if (wdeg > deg) continue;
      if (deg - wdeg > dv.base->trunc()) continue;
      for (const auto& bm : degree_basis(*dv.base, deg - wdeg)) {
        ++wedge_dim;
        GradedPoly val =
            GradedPoly::monomial(sub.ext, lift_base_mono(bm), 1) * phi_of_wedge[wi];
        auto coords = coords_modulo(basis_rows, span.rows, coeff_row(val, ambient));
        if (!coords) throw std::logic_error("verify_phi_iso: coordinate solve failed");
        mat.push_back(*coords);
      }
    }
    auto factors = snf_invariant_factors(mat);
    bool unimodular = factors.size() == tbasis.size() && wedge_dim == tbasis.size();
    for (const auto& f : factors)
      if (f != 1) unimodular = false;
    DegreeRow row;
    row.degree = deg;
    row.expected = static_cast<long>(tbasis.size());
    row.computed = static_cast<long>(factors.size());
    row.ok = unimodular;
    rep.add(std::move(row));
  }
  return rep;
}

}  // namespace divint
