#include "divint/pkd.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

#include "divint/parallel.hpp"

namespace divint {

namespace {

RingPtr extend_with_points(const RingPtr& base, unsigned k) {
  std::vector<VarSpec> vars = base->vars();
  for (unsigned j = 0; j < k; ++j) {
    std::string name = "x" + std::to_string(j);
    if (base->var_index(name))
      throw structural_error("pkd: base ring already uses variable " + name);
    vars.push_back({name, 1});
  }
  return make_ring(base->field(), vars, base->trunc());
}

}  // namespace

QuotientRing PkdContext::odk() const {
  std::vector<std::pair<size_t, GradedPoly>> divisors;
  for (unsigned j = 0; j < k; ++j) divisors.emplace_back(xvars[j], upoly_eval(f, x(j)));
  return QuotientRing(ext, divisors);
}

IdealGens PkdContext::jk_a() const {
  return IdealGens(ext, a[k]);
}

PkdContext division_chain(const Divisor& d, unsigned k) {
  if (k > d.degree) throw structural_error("division_chain: k exceeds the divisor degree");
  PkdContext ctx{d, k, extend_with_points(d.base, k), {}, UPoly(nullptr), {}, {}, {}, {}, {}};
  for (unsigned j = 0; j < k; ++j) ctx.xvars.push_back(d.base->nvars() + j);
  ctx.f = lift_equation(d, ctx.ext);
  UPoly pi = UPoly::constant(ctx.ext, GradedPoly::constant(ctx.ext, 1));  // p_0 = 1
  for (unsigned i = 0; i <= k; ++i) {
    ctx.p.push_back(pi);
    auto [qi, ri] = upoly_divmod_monic(ctx.f, pi);
    ctx.q.push_back(qi);
    ctx.r.push_back(ri);
    std::vector<GradedPoly> ai;
    for (unsigned j = 0; j < i; ++j) ai.push_back(ri.coeff(j));
    ctx.a.push_back(std::move(ai));
    if (i < k) {
      ctx.b.push_back(upoly_eval(qi, ctx.x(i)));
      pi = pi * UPoly::linear(ctx.ext, -ctx.x(i));
    }
  }
  return ctx;
}

GradedPoly exact_divide_binomial(const GradedPoly& p, size_t hi, size_t lo) {
  const RingPtr& R = p.ring();
  // split p by powers of the hi variable
  unsigned top = 0;
  for (const auto& [m, c] : p.terms()) top = std::max(top, m.exps[hi]);
  std::vector<GradedPoly> layer(top + 1, GradedPoly::zero(R));
  for (const auto& [m, c] : p.terms()) {
    Monomial rest = m;
    unsigned e = rest.exps[hi];
    rest.exps[hi] = 0;
    rest.degree -= e * R->grading(hi);
    layer[e].add_term(rest, c);
  }
  // synthetic division by (hi - lo): q_e = layer_{e+1} + lo * q_{e+1}
  GradedPoly lov = GradedPoly::variable(R, lo);
  GradedPoly hiv = GradedPoly::variable(R, hi);
  std::vector<GradedPoly> ql(top + 1, GradedPoly::zero(R));
  for (unsigned e = top; e-- > 0;)
    ql[e] = layer[e + 1] + (e + 1 <= top ? lov * ql[e + 1] : GradedPoly::zero(R));
  GradedPoly remainder = layer[0] + lov * ql[0];
  if (top == 0) remainder = layer[0];
  if (!remainder.is_zero())
    throw std::logic_error("exact_divide_binomial: division is not exact");
  GradedPoly out(R);
  GradedPoly hipow = GradedPoly::constant(R, 1);
  for (unsigned e = 0; e <= top; ++e) {
    out = out + ql[e] * hipow;
    hipow = hipow * hiv;
  }
  return out;
}

GradedPoly vandermonde(const PkdContext& ctx, unsigned j) {
  GradedPoly v = GradedPoly::constant(ctx.ext, 1);
  for (unsigned i = 0; i < j; ++i)
    for (unsigned i2 = i + 1; i2 < j; ++i2) v = v * (ctx.x(i2) - ctx.x(i));
  return v;
}

PolyMatrix b_matrix(const PkdContext& ctx, unsigned j) {
  PolyMatrix m(ctx.ext, j, j);
  for (unsigned i = 0; i < j; ++i) {
    GradedPoly pw = GradedPoly::constant(ctx.ext, 1);
    for (unsigned col = 0; col + 1 < j; ++col) {
      m.at(i, col) = pw;
      pw = pw * ctx.x(i);
    }
    m.at(i, j - 1) = upoly_eval(ctx.f, ctx.x(i));
  }
  return m;
}

std::vector<GradedPoly> pkd_relators_det(const PkdContext& ctx) {
  unsigned d = ctx.divisor.degree, k = ctx.k;
  unsigned need = d + (k >= 2 ? (k - 1) * (k - 2) / 2 : 0);
  if (ctx.ext->trunc() < need)
    throw structural_error("pkd_relators_det: truncation " + std::to_string(ctx.ext->trunc()) +
                           " too small for exact determinants (need " + std::to_string(need) +
                           ")");
  std::vector<GradedPoly> out;
  for (unsigned j = 0; j < k; ++j) {
    GradedPoly det_b = det(b_matrix(ctx, j + 1));
    // divide by v_{j+1} one binomial at a time (univariate synthetic steps)
    for (unsigned i = 0; i <= j; ++i)
      for (unsigned i2 = i + 1; i2 <= j; ++i2)
        det_b = exact_divide_binomial(det_b, ctx.xvars[i2], ctx.xvars[i]);
    out.push_back(det_b);
  }
  return out;
}

std::vector<Monomial> pkd_basis_monomials(const PkdContext& ctx) {
  unsigned d = ctx.divisor.degree, k = ctx.k;
  std::vector<Monomial> out;
  std::vector<unsigned> exps(ctx.ext->nvars(), 0);
  std::function<void(unsigned)> rec = [&](unsigned j) {
    if (j == k) {
      out.push_back(Monomial::make(*ctx.ext, exps));
      return;
    }
    for (unsigned e = 0; e + j + 1 <= d; ++e) {  // alpha_j <= d - 1 - j
      exps[ctx.xvars[j]] = e;
      rec(j + 1);
    }
    exps[ctx.xvars[j]] = 0;
  };
  rec(0);
  std::sort(out.begin(), out.end(), [](const Monomial& a, const Monomial& b) {
    return MonoLess{}(a, b);
  });
  return out;
}

size_t pkd_basis_count(const PkdContext& ctx, unsigned degree) {
  size_t count = 0;
  for (const auto& m : pkd_basis_monomials(ctx)) {
    if (m.degree > degree) continue;
    count += degree_dimension(*ctx.divisor.base, degree - m.degree);
  }
  return count;
}

VerifyReport pkd_basis_report(const PkdContext& ctx, unsigned max_degree, unsigned threads) {
  QuotientRing q = ctx.odk();
  IdealGens jk = ctx.jk_b();
  VerifyReport rep;
  rep.check = "pkd-basis d=" + std::to_string(ctx.divisor.degree) + " k=" + std::to_string(ctx.k);
  std::vector<DegreeRow> rows(max_degree + 1);
  parallel_for(max_degree + 1, threads, [&](size_t deg) {
    auto rank = quotient_graded_rank(jk, &q, static_cast<unsigned>(deg));
    DegreeRow row;
    row.degree = static_cast<unsigned>(deg);
    row.expected = static_cast<long>(pkd_basis_count(ctx, static_cast<unsigned>(deg)));
    row.computed = static_cast<long>(rank.free_rank);
    for (const auto& t : rank.torsion) row.torsion.push_back(t.get_str());
    row.ok = row.expected == row.computed && rank.torsion.empty();
    rows[deg] = std::move(row);
  });
  for (auto& row : rows) rep.add(std::move(row));
  return rep;
}

IdealEqualResult relator_families_agree(const PkdContext& ctx, unsigned up_to_degree) {
  return ideal_equal(ctx.jk_a(), ctx.jk_b(), nullptr, up_to_degree);
}

namespace {

// product basis (base monomial) x (pkd basis monomial) of one degree, as
// monomials of the extension ring
std::vector<Monomial> product_basis(const PkdContext& ctx, unsigned degree) {
  std::vector<Monomial> out;
  for (const auto& m : degree_basis(*ctx.ext, degree)) {
    bool ok = true;
    for (unsigned j = 0; j < ctx.k && ok; ++j)
      if (m.exps[ctx.xvars[j]] > ctx.divisor.degree - 1 - j) ok = false;
    if (ok) out.push_back(m);
  }
  return out;
}

Monomial permute_points(const PkdContext& ctx, const Monomial& m, unsigned t) {
  Monomial out = m;
  std::swap(out.exps[ctx.xvars[t]], out.exps[ctx.xvars[t + 1]]);
  return out;
}

}  // namespace

std::vector<ZMat> sigma_action_matrices(const PkdContext& ctx, unsigned degree) {
  if (ctx.k < 2) return {};
  QuotientRing q = ctx.odk();
  IdealGens jk = ctx.jk_b();
  GradedLattice span = ideal_degree_span(jk, &q, degree);
  std::vector<Monomial> pbasis = product_basis(ctx, degree);
  std::map<Monomial, size_t, MonoLess> ambient_index;
  for (size_t i = 0; i < span.basis.size(); ++i) ambient_index.emplace(span.basis[i], i);
  // unit rows of the product-basis monomials in ambient coordinates
  ZMat basis_rows;
  for (const auto& m : pbasis) {
    ZRow row(span.basis.size(), 0);
    row[ambient_index.at(m)] = 1;
    basis_rows.push_back(std::move(row));
  }
  std::vector<ZMat> mats;
  for (unsigned t = 0; t + 1 < ctx.k; ++t) {
    ZMat mat(pbasis.size(), ZRow(pbasis.size(), 0));
    for (size_t col = 0; col < pbasis.size(); ++col) {
      Monomial img = permute_points(ctx, pbasis[col], t);
      GradedPoly reduced = q.reduce(GradedPoly::monomial(ctx.ext, img, 1));
      ZRow target = coeff_row(reduced, span.basis);
      auto coords = coords_modulo(basis_rows, span.rows, target);
      if (!coords)
        throw std::logic_error("sigma_action_matrices: image not expressible in the basis");
      for (size_t i = 0; i < pbasis.size(); ++i) mat[i][col] = (*coords)[i];
    }
    mats.push_back(std::move(mat));
  }
  // group relations on the generators: each transposition squares to 1
  auto matmul = [](const ZMat& a, const ZMat& b) {
    size_t n = a.size();
    ZMat c(n, ZRow(n, 0));
    for (size_t i = 0; i < n; ++i)
      for (size_t l = 0; l < n; ++l)
        if (a[i][l] != 0)
          for (size_t j = 0; j < n; ++j) c[i][j] += a[i][l] * b[l][j];
    return c;
  };
  auto is_identity = [](const ZMat& m) {
    for (size_t i = 0; i < m.size(); ++i)
      for (size_t j = 0; j < m.size(); ++j)
        if (m[i][j] != (i == j ? 1 : 0)) return false;
    return true;
  };
  for (const auto& m : mats)
    if (!is_identity(matmul(m, m)))
      throw std::logic_error("sigma_action_matrices: transposition does not square to 1");
  // adjacent transpositions braid: (s_t s_{t+1})^3 = 1
  for (size_t t = 0; t + 1 < mats.size(); ++t) {
    ZMat prod = matmul(mats[t], mats[t + 1]);
    if (!is_identity(matmul(prod, matmul(prod, prod))))
      throw std::logic_error("sigma_action_matrices: braid relation fails");
  }
  return mats;
}

size_t sigma_invariant_dim(const PkdContext& ctx, const CoeffField& field, unsigned degree) {
  std::vector<Monomial> pbasis = product_basis(ctx, degree);
  if (ctx.k < 2) return pbasis.size();  // trivial group: everything invariant
  auto mats = sigma_action_matrices(ctx, degree);
  return invariant_subspace_dim(mats, pbasis.size(), field);
}

VerifyReport verify_invariant_kernel(const PkdContext& ctx, unsigned max_degree) {
  unsigned d = ctx.divisor.degree, k = ctx.k;
  QuotientRing q = ctx.odk();
  IdealGens jk = ctx.jk_b();
  VerifyReport rep;
  rep.check = "invariant-kernel d=" + std::to_string(d) + " k=" + std::to_string(k);
  for (unsigned deg = 0; deg <= max_degree; ++deg) {
    std::vector<Monomial> dk_basis = q.basis_of_degree(deg);
    std::map<Monomial, size_t, MonoLess> index;
    for (size_t i = 0; i < dk_basis.size(); ++i) index.emplace(dk_basis[i], i);
    // invariant sublattice of O_{D^k} in this degree (kernel of the stacked
    // permutation action minus identity)
    ZMat stacked;
    for (unsigned t = 0; t + 1 < k; ++t) {
      for (size_t j = 0; j < dk_basis.size(); ++j) {
        // row for the j-th coordinate of (sigma - 1) acting on column vectors:
        // sigma permutes basis monomials, so (sigma v)_i = v_{sigma^{-1}(i)}
        ZRow row(dk_basis.size(), 0);
        Monomial img = permute_points(ctx, dk_basis[j], t);
        row[index.at(img)] += 1;
        row[j] -= 1;
        stacked.push_back(std::move(row));
      }
    }
    // columns of `stacked` act on coefficient vectors; invariant vectors are
    // its right kernel.  Transpose to reuse the left-kernel routine.
    ZMat stackedT(dk_basis.size(), ZRow(stacked.size(), 0));
    for (size_t i = 0; i < stacked.size(); ++i)
      for (size_t j = 0; j < dk_basis.size(); ++j) stackedT[j][i] = stacked[i][j];
    ZMat inv = k >= 2 ? left_kernel(stackedT, dk_basis.size()) : ZMat{};
    if (k < 2) {
      inv.assign(dk_basis.size(), ZRow(dk_basis.size(), 0));
      for (size_t i = 0; i < dk_basis.size(); ++i) inv[i][i] = 1;
    }

    GradedLattice span = ideal_degree_span(jk, &q, deg);
    std::vector<Monomial> pbasis = product_basis(ctx, deg);
    ZMat basis_rows;
    for (const auto& m : pbasis) {
      ZRow row(dk_basis.size(), 0);
      row[index.at(m)] = 1;
      basis_rows.push_back(std::move(row));
    }
    // route (a): kernel of the composite invariants -> O_{P_kD}
    ZMat image_rows;
    for (const auto& v : inv) {
      auto coords = coords_modulo(basis_rows, span.rows, v);
      if (!coords) throw std::logic_error("verify_invariant_kernel: coordinate solve failed");
      image_rows.push_back(*coords);
    }
    ZMat ker_coeffs = left_kernel(image_rows, inv.size());
    ZMat route_a;
    for (const auto& kc : ker_coeffs) {
      ZRow vec(dk_basis.size(), 0);
      for (size_t i = 0; i < inv.size(); ++i)
        if (kc[i] != 0)
          for (size_t j = 0; j < dk_basis.size(); ++j) vec[j] += kc[i] * inv[i][j];
      route_a.push_back(std::move(vec));
    }
    // route (b): invariant sublattice of the J_k span
    ZMat route_b = lattice_intersection(span.rows, inv, dk_basis.size());
    bool kernels_equal = lattice_equal(route_a, route_b);

    // image rank over Q against the O_{Sub_k(D)} count
    size_t image_rank = rank_q(image_rows);
    size_t expected = 0;
    {
      // monomials c^alpha, |alpha| <= d - k, deg c_i = i, times base monomials
      std::vector<unsigned> cdegs(k);
      std::iota(cdegs.begin(), cdegs.end(), 1);
      std::function<void(size_t, unsigned, unsigned)> rec = [&](size_t idx, unsigned left,
                                                                unsigned degacc) {
        if (degacc > deg) return;
        if (idx == cdegs.size()) {
          expected += degree_dimension(*ctx.divisor.base, deg - degacc);
          return;
        }
        for (unsigned e = 0; e <= left; ++e) {
          unsigned nd = degacc + e * cdegs[idx];
          if (nd > deg && e > 0) break;
          rec(idx + 1, left - e, nd);
        }
      };
      rec(0, d - k, 0);
    }
    DegreeRow row;
    row.degree = deg;
    row.expected = static_cast<long>(expected);
    row.computed = static_cast<long>(image_rank);
    row.ok = kernels_equal && image_rank == expected;
    rep.add(std::move(row));
  }
  return rep;
}

}  // namespace divint
