#include "divint/universal.hpp"

#include <algorithm>

#include "divint/parallel.hpp"

namespace divint {

namespace {

Divisor tautological(const RingPtr& amb, unsigned d, size_t first_var) {
  std::vector<GradedPoly> cs;
  for (unsigned i = 0; i < d; ++i) cs.push_back(GradedPoly::variable(amb, first_var + i));
  return Divisor(amb, d, cs);
}

RingPtr make_ambient(unsigned d0, unsigned d1, unsigned trunc) {
  std::vector<VarSpec> vars;
  for (unsigned i = 1; i <= d0; ++i) vars.push_back({"u" + std::to_string(i), i});
  for (unsigned j = 1; j <= d1; ++j) vars.push_back({"v" + std::to_string(j), j});
  return make_ring(CoeffField::Z(), vars, trunc);
}

RingPtr make_target(unsigned n, unsigned m, unsigned r, unsigned trunc) {
  std::vector<VarSpec> vars;
  for (unsigned i = 1; i <= n; ++i) vars.push_back({"a" + std::to_string(i), i});
  for (unsigned j = 1; j <= m; ++j) vars.push_back({"b" + std::to_string(j), j});
  for (unsigned k = 1; k <= r; ++k) vars.push_back({"c" + std::to_string(k), k});
  return make_ring(CoeffField::Z(), vars, trunc);
}

}  // namespace

UniversalSetup::UniversalSetup(unsigned d0_, unsigned d1_, unsigned r_, unsigned trunc_)
    : d0(d0_),
      d1(d1_),
      r(r_),
      trunc(trunc_),
      ambient(make_ambient(d0_, d1_, trunc_)),
      target(make_target(d0_ - r_, d1_ - r_, r_, trunc_)),
      taut0(tautological(ambient, d0_, 0)),
      taut1(tautological(ambient, d1_, d0_)) {
  if (r > std::min(d0, d1))
    throw structural_error("UniversalSetup: r must be at most min(d0, d1)");
}

IdealGens int_ideal_universal(const UniversalSetup& s) {
  auto m = sylvester_matrix(s.taut0, s.taut1);
  size_t k = s.d0 + s.d1 - s.r + 1;
  return IdealGens(s.ambient, matrix_minors(m, k));
}

std::vector<Monomial> int_basis_monomials(const UniversalSetup& s) {
  // monomials in u_{d0-r+1}..u_{d0} of weight <= m
  std::vector<Monomial> out;
  std::vector<unsigned> exps(s.ambient->nvars(), 0);
  unsigned bound = s.m();
  // iterate over exponent tuples of the r tail variables with sum <= bound
  std::function<void(unsigned, unsigned)> rec = [&](unsigned idx, unsigned left) {
    if (idx == s.r) {
      out.push_back(Monomial::make(*s.ambient, exps));
      return;
    }
    size_t var = s.uvar(s.d0 - s.r + 1 + idx);
    for (unsigned e = 0; e <= left; ++e) {
      exps[var] = e;
      rec(idx + 1, left - e);
    }
    exps[var] = 0;
  };
  rec(0, bound);
  std::sort(out.begin(), out.end(), [](const Monomial& a, const Monomial& b) {
    return MonoLess{}(a, b);
  });
  return out;
}

size_t int_basis_count(const UniversalSetup& s, unsigned degree) {
  size_t count = 0;
  for (const auto& mono : degree_basis(*s.ambient, degree)) {
    unsigned tail_weight = 0;
    for (unsigned i = s.d0 - s.r + 1; i <= s.d0; ++i) tail_weight += mono.exps[s.uvar(i)];
    if (tail_weight <= s.m()) ++count;
  }
  return count;
}

void VerifyReport::add(DegreeRow row) {
  if (!row.ok) {
    pass = false;
    if (first_failure < 0) first_failure = static_cast<int>(row.degree);
  }
  rows.push_back(std::move(row));
}

VerifyReport verify_int_basis(const UniversalSetup& s, unsigned max_degree,
                              const CoeffField& field, unsigned threads) {
  if (max_degree > s.trunc)
    throw structural_error("verify_int_basis: max degree exceeds truncation");
  IdealGens ideal = int_ideal_universal(s);
  VerifyReport rep;
  rep.check = "int-basis d0=" + std::to_string(s.d0) + " d1=" + std::to_string(s.d1) +
              " r=" + std::to_string(s.r) + " over " + field.name();
  std::vector<DegreeRow> rows(max_degree + 1);
  parallel_for(max_degree + 1, threads, [&](size_t d) {
    auto deg = static_cast<unsigned>(d);
    auto rank = quotient_graded_rank(ideal, nullptr, deg, field);
    DegreeRow row;
    row.degree = deg;
    row.expected = static_cast<long>(int_basis_count(s, deg));
    row.computed = static_cast<long>(rank.free_rank);
    for (const auto& t : rank.torsion) row.torsion.push_back(t.get_str());
    row.ok = row.expected == row.computed && rank.torsion.empty();
    rows[d] = std::move(row);
  });
  for (auto& row : rows) rep.add(std::move(row));
  return rep;
}

std::map<size_t, GradedPoly> pi_star_images(const UniversalSetup& s) {
  const RingPtr& T = s.target;
  auto poly_of_var = [&](size_t v) { return GradedPoly::variable(T, v); };
  std::vector<GradedPoly> fa, gb, hc;
  for (unsigned i = 1; i <= s.n(); ++i) fa.push_back(poly_of_var(s.avar(i)));
  for (unsigned j = 1; j <= s.m(); ++j) gb.push_back(poly_of_var(s.bvar(j)));
  for (unsigned k = 1; k <= s.r; ++k) hc.push_back(poly_of_var(s.cvar(k)));
  UPoly f = UPoly::monic_from_lower(T, s.n(), fa);
  UPoly g = UPoly::monic_from_lower(T, s.m(), gb);
  UPoly h = UPoly::monic_from_lower(T, s.r, hc);
  UPoly fh = f * h, gh = g * h;
  std::map<size_t, GradedPoly> images;
  for (unsigned i = 1; i <= s.d0; ++i) images.emplace(s.uvar(i), fh.coeff(s.d0 - i));
  for (unsigned j = 1; j <= s.d1; ++j) images.emplace(s.vvar(j), gh.coeff(s.d1 - j));
  return images;
}

GradedPoly pi_star(const UniversalSetup& s, const GradedPoly& p) {
  return substitute(p, s.target, pi_star_images(s));
}

VerifyReport verify_pi_split_mono(const UniversalSetup& s, unsigned max_degree,
                                  unsigned threads) {
  if (max_degree > s.trunc)
    throw structural_error("verify_pi_split_mono: max degree exceeds truncation");
  auto images = pi_star_images(s);
  VerifyReport rep;
  rep.check = "pi-split-mono d0=" + std::to_string(s.d0) + " d1=" + std::to_string(s.d1) +
              " r=" + std::to_string(s.r);
  std::vector<DegreeRow> rows(max_degree + 1);
  parallel_for(max_degree + 1, threads, [&](size_t d) {
    auto deg = static_cast<unsigned>(d);
    // product basis of the degree-d component of O_{Int_r}
    std::vector<GradedPoly> imgs;
    for (const auto& mono : degree_basis(*s.ambient, deg)) {
      unsigned tail_weight = 0;
      for (unsigned i = s.d0 - s.r + 1; i <= s.d0; ++i) tail_weight += mono.exps[s.uvar(i)];
      if (tail_weight > s.m()) continue;
      imgs.push_back(substitute(GradedPoly::monomial(s.ambient, mono, 1), s.target, images));
    }
    auto basis = degree_basis(*s.target, deg);
    ZMat rowsmat;
    for (const auto& img : imgs) rowsmat.push_back(coeff_row(img, basis));
    DegreeRow row;
    row.degree = deg;
    row.expected = static_cast<long>(imgs.size());
    row.computed = static_cast<long>(rank_q(rowsmat));
    row.ok = row.expected == row.computed;
    rows[d] = std::move(row);
  });
  for (auto& row : rows) rep.add(std::move(row));
  return rep;
}

SchurLeading schur_leading_term(unsigned n, unsigned r, const std::vector<unsigned>& gamma) {
  if (gamma.empty()) throw structural_error("schur_leading_term: gamma must be nonempty");
  unsigned m = static_cast<unsigned>(gamma.size()) - 1;
  for (size_t i = 0; i < gamma.size(); ++i) {
    if (i + 1 < gamma.size() && gamma[i] >= gamma[i + 1])
      throw structural_error("schur_leading_term: gamma must be strictly increasing");
    if (gamma[i] >= m + r) throw structural_error("schur_leading_term: gamma_i < m + r required");
  }
  std::vector<VarSpec> vars;
  for (unsigned i = 1; i <= n + r; ++i) vars.push_back({"u" + std::to_string(i), i});
  unsigned big = (m + 1) * (n + r);  // generous cutoff: no truncation inside det
  auto R = make_ring(CoeffField::Z(), vars, big);

  auto entry = [&](long k) {
    if (k < 0 || k > static_cast<long>(n + r)) return GradedPoly::zero(R);
    if (k == 0) return GradedPoly::constant(R, 1);  // u_0 = 1
    return GradedPoly::variable(R, static_cast<size_t>(k - 1));
  };
  PolyMatrix M(R, m + 1, m + 1);
  for (unsigned i = 0; i <= m; ++i)
    for (unsigned j = 0; j <= m; ++j)
      M.at(i, j) = entry(static_cast<long>(n + r) + i - gamma[j]);

  SchurLeading out{det(M), GradedPoly::constant(R, 1), GradedPoly::zero(R), false, 0};
  for (unsigned i = 0; i <= m; ++i)
    out.claimed_lowest = out.claimed_lowest * entry(static_cast<long>(n + r) + i - gamma[i]);

  // u_1 << ... << u_{n+r}: at the highest differing index the smaller
  // exponent wins, so a term with a strictly higher variable is higher
  auto lower = [](const Monomial& a, const Monomial& b) {
    for (size_t i = a.exps.size(); i-- > 0;) {
      if (a.exps[i] != b.exps[i]) return a.exps[i] < b.exps[i];
    }
    return false;
  };
  const Monomial* best = nullptr;
  mpq_class best_coef;
  for (const auto& [mono, coef] : out.determinant.terms()) {
    unsigned weight = 0;
    for (unsigned e : mono.exps) weight += e;
    out.max_term_weight = std::max(out.max_term_weight, weight);
    if (!best || lower(mono, *best)) {
      best = &mono;
      best_coef = coef;
    }
  }
  if (best) out.actual_lowest = GradedPoly::monomial(R, *best, best_coef);
  out.lowest_matches = !out.determinant.is_zero() && out.actual_lowest == out.claimed_lowest;
  return out;
}

UcwReport verify_lemma_ucw(const UniversalSetup& s) {
  const RingPtr& T = s.target;
  unsigned n = s.n(), m = s.m(), r = s.r;
  if (n == 0) throw structural_error("verify_lemma_ucw: needs n = d0 - r >= 1");
  auto images = pi_star_images(s);

  // hhat^{-1} as a series in y: inv_0 = 1, inv_i = -sum c_l inv_{i-l}
  unsigned need = std::max({n, m, n + r});
  std::vector<GradedPoly> inv(need + 1, GradedPoly::zero(T));
  inv[0] = GradedPoly::constant(T, 1);
  auto cpoly = [&](unsigned k) {
    return k == 0 ? GradedPoly::constant(T, 1)
                  : (k <= r ? GradedPoly::variable(T, s.cvar(k)) : GradedPoly::zero(T));
  };
  for (unsigned i = 1; i <= need; ++i) {
    GradedPoly acc(T);
    for (unsigned l = 1; l <= std::min(i, r); ++l) acc = acc + cpoly(l) * inv[i - l];
    inv[i] = -acc;
  }

  // the J-ideal in the target: pi* of u_i (i < n) and of all v_j
  std::vector<GradedPoly> jgens;
  for (unsigned i = 1; i < n; ++i) jgens.push_back(images.at(s.uvar(i)));
  for (unsigned j = 1; j <= s.d1; ++j) jgens.push_back(images.at(s.vvar(j)));
  IdealGens J(T, jgens);

  UcwReport rep;
  for (unsigned j = 1; j <= r; ++j) {
    GradedPoly w(T);
    if (m >= n) {
      // w_j = [y^{n+j}] of -(sum_{i=n+1}^m b_i y^i) hhat, with b_i
      // eliminated to the hhat^{-1} coefficients (mod J they agree)
      for (unsigned i = n + 1; i <= m; ++i) {
        unsigned k = n + j >= i ? n + j - i : need + 1;
        if (k <= r) w = w - inv[i] * cpoly(k);
      }
    }
    // w_j must be a polynomial in c_1..c_r only
    bool only_c = true;
    for (const auto& [mono, coef] : w.terms())
      for (unsigned i = 1; i <= n && only_c; ++i)
        if (mono.exps[s.avar(i)]) only_c = false;
    for (const auto& [mono, coef] : w.terms())
      for (unsigned i = 1; i <= m && only_c; ++i)
        if (mono.exps[s.bvar(i)]) only_c = false;

    GradedPoly lhs = images.at(s.uvar(n + j)) - images.at(s.uvar(n)) * cpoly(j) - w;
    bool member = element_in_ideal(lhs, J, nullptr);
    if (!only_c || !member) rep.pass = false;
    rep.w.push_back(std::move(w));
  }
  return rep;
}

PowerSeries ps_free(const std::vector<unsigned>& generator_degrees, unsigned max_degree) {
  PowerSeries s(max_degree + 1, 0);
  s[0] = 1;
  for (unsigned g : generator_degrees) {
    if (g == 0) throw structural_error("ps_free: generator of degree 0");
    for (unsigned i = g; i <= max_degree; ++i) s[i] += s[i - g];
  }
  return s;
}

PowerSeries ps_int(unsigned d0, unsigned d1, unsigned r, unsigned max_degree) {
  if (r > std::min(d0, d1)) throw structural_error("ps_int: r exceeds min(d0, d1)");
  unsigned n = d0 - r, m = d1 - r;
  std::vector<unsigned> free_degrees;
  for (unsigned i = 1; i <= n; ++i) free_degrees.push_back(i);
  for (unsigned j = 1; j <= d1; ++j) free_degrees.push_back(j);
  PowerSeries base = ps_free(free_degrees, max_degree);
  // sum of w^{weighted degree} over monomials in u_{n+1}..u_{d0} of weight <= m
  PowerSeries basis(max_degree + 1, 0);
  std::vector<unsigned> degs;
  for (unsigned i = n + 1; i <= d0; ++i) degs.push_back(i);
  std::function<void(size_t, unsigned, unsigned)> rec = [&](size_t idx, unsigned weight_left,
                                                            unsigned deg_acc) {
    if (deg_acc > max_degree) return;
    if (idx == degs.size()) {
      basis[deg_acc] += 1;
      return;
    }
    for (unsigned e = 0; e <= weight_left; ++e) {
      unsigned d = deg_acc + e * degs[idx];
      if (d > max_degree && e > 0) break;
      rec(idx + 1, weight_left - e, d);
    }
  };
  rec(0, m, 0);
  // note: monomials of degree beyond max_degree are irrelevant to the product
  PowerSeries out(max_degree + 1, 0);
  for (unsigned i = 0; i <= max_degree; ++i)
    for (unsigned j = 0; j + i <= max_degree; ++j) out[i + j] += base[i] * basis[j];
  return out;
}

PowerSeries ps_sub(unsigned d0, unsigned d1, unsigned r, unsigned max_degree) {
  if (r > std::min(d0, d1)) throw structural_error("ps_sub: r exceeds min(d0, d1)");
  std::vector<unsigned> degrees;
  for (unsigned k = 1; k <= r; ++k) degrees.push_back(k);
  for (unsigned i = 1; i <= d0 - r; ++i) degrees.push_back(i);
  for (unsigned j = 1; j <= d1 - r; ++j) degrees.push_back(j);
  return ps_free(degrees, max_degree);
}

PsIdentityReport verify_ps_identity(unsigned d0, unsigned d1, unsigned r, unsigned max_degree) {
  if (r + 1 > std::min(d0, d1))
    throw structural_error("verify_ps_identity: need r + 1 <= min(d0, d1)");
  PsIdentityReport rep;
  PowerSeries a = ps_int(d0, d1, r, max_degree);
  PowerSeries b = ps_int(d0, d1, r + 1, max_degree);
  rep.lhs.assign(max_degree + 1, 0);
  for (unsigned i = 0; i <= max_degree; ++i) rep.lhs[i] = a[i] - b[i];
  PowerSeries sub = ps_sub(d0, d1, r, max_degree);
  unsigned shift = (d0 - r) * (d1 - r);
  rep.rhs.assign(max_degree + 1, 0);
  for (unsigned i = 0; i + shift <= max_degree; ++i) rep.rhs[i + shift] = sub[i];
  for (unsigned i = 0; i <= max_degree; ++i)
    if (rep.lhs[i] != rep.rhs[i]) {
      rep.pass = false;
      rep.first_failure = static_cast<int>(i);
      break;
    }
  return rep;
}

PsIdentityReport verify_ps_anchor(unsigned d0, unsigned d1, unsigned max_degree) {
  unsigned r = std::min(d0, d1);
  PsIdentityReport rep;
  rep.lhs = ps_int(d0, d1, r, max_degree);
  rep.rhs = ps_sub(d0, d1, r, max_degree);
  for (unsigned i = 0; i <= max_degree; ++i)
    if (rep.lhs[i] != rep.rhs[i]) {
      rep.pass = false;
      rep.first_failure = static_cast<int>(i);
      break;
    }
  return rep;
}

}  // namespace divint
