#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "divint/pkd.hpp"

using namespace divint;

namespace {

// D = d[0] over Z: f(t) = t^d
Divisor point_divisor(unsigned d, unsigned trunc) {
  auto R = make_ring(CoeffField::Z(), std::vector<VarSpec>{}, trunc);
  return Divisor(R, d, std::vector<GradedPoly>(d, GradedPoly::zero(R)));
}

}  // namespace

TEST_CASE("division chain identities hold exactly") {
  for (auto [d, k] : std::vector<std::array<unsigned, 2>>{{3, 2}, {4, 3}, {5, 3}}) {
    auto D = universal_divisor(d, d + 4, "c");
    auto ctx = division_chain(D, k);
    for (unsigned i = 0; i <= k; ++i) {
      CHECK(ctx.q[i] * ctx.p[i] + ctx.r[i] == ctx.f);   // f = q_i p_i + r_i
      CHECK(ctx.r[i].deg() < static_cast<int>(i));
    }
    for (unsigned i = 0; i < k; ++i) {
      CHECK(ctx.b[i] == upoly_eval(ctx.q[i], ctx.x(i)));  // b_i = q_i(x_i)
      CHECK(ctx.r[i + 1] == UPoly::constant(ctx.ext, ctx.b[i]) * ctx.p[i] + ctx.r[i]);
    }
  }
  CHECK_THROWS_AS(division_chain(point_divisor(2, 6), 3), structural_error);
}

TEST_CASE("k = 1: b_0 = f(x_0)") {
  auto D = point_divisor(3, 6);
  auto ctx = division_chain(D, 1);
  REQUIRE(ctx.b.size() == 1);
  CHECK(ctx.b[0] == parse_poly(ctx.ext, "x0^3"));
  // the a-family for k = 1 is the same single relator
  auto agree = relator_families_agree(ctx, 5);
  CHECK(agree.equal);
}

TEST_CASE("paper's example: D = 3[0], k = 2 relators") {
  auto D = point_divisor(3, 6);
  auto ctx = division_chain(D, 2);
  CHECK(ctx.b[0] == parse_poly(ctx.ext, "x0^3"));
  CHECK(ctx.b[1] == parse_poly(ctx.ext, "x1^2 + x0*x1 + x0^2"));
}

TEST_CASE("vandermonde determinant formula b_j = det(B_{j+1}) / v_{j+1}") {
  // D = t^3, j = 1 (paper's 2x2 case): (x1^3 - x0^3)/(x1 - x0)
  auto D = point_divisor(3, 8);
  auto ctx = division_chain(D, 2);
  auto B2 = b_matrix(ctx, 2);
  CHECK(det(B2) == parse_poly(ctx.ext, "x1^3 - x0^3"));
  auto rel = pkd_relators_det(ctx);
  REQUIRE(rel.size() == 2);
  CHECK(rel[0] == ctx.b[0]);
  CHECK(rel[1] == ctx.b[1]);

  // exact identity v_{j+1} b_j = det(B_{j+1}) for symbolic divisors
  for (auto [d, k] : std::vector<std::array<unsigned, 2>>{{3, 2}, {4, 3}, {5, 3}}) {
    auto Ds = universal_divisor(d, d + 4, "c");
    auto cs = division_chain(Ds, k);
    auto rels = pkd_relators_det(cs);
    for (unsigned j = 0; j < k; ++j) {
      CHECK(rels[j] == cs.b[j]);
      CHECK(vandermonde(cs, j + 1) * cs.b[j] == det(b_matrix(cs, j + 1)));
    }
  }
}

TEST_CASE("truncation guard for the determinant formula") {
  auto D = universal_divisor(4, 4, "c");  // too tight for k = 3 determinants
  auto ctx = division_chain(D, 3);
  CHECK_THROWS_AS(pkd_relators_det(ctx), structural_error);
}

TEST_CASE("exact_divide_binomial remainder check") {
  auto R = make_ring(CoeffField::Z(), {{"x", 1}, {"y", 1}}, 6);
  auto p = parse_poly(R, "x^3 - y^3");
  auto q = exact_divide_binomial(p, 0, 1);
  CHECK(q == parse_poly(R, "x^2 + x*y + y^2"));
  CHECK_THROWS_AS(exact_divide_binomial(parse_poly(R, "x^2 + y"), 0, 1), std::logic_error);
}

TEST_CASE("pkd basis monomials and counts") {
  auto D = point_divisor(3, 6);
  auto ctx = division_chain(D, 2);
  auto basis = pkd_basis_monomials(ctx);
  REQUIRE(basis.size() == 6);  // 3!/(3-2)! = 6
  // {1, x0, x0^2, x1, x0 x1, x0^2 x1}
  std::vector<std::string> expect{"1", "x0", "x1", "x0^2", "x0*x1", "x0^2*x1"};
  for (size_t i = 0; i < basis.size(); ++i)
    CHECK(GradedPoly::monomial(ctx.ext, basis[i], 1) == parse_poly(ctx.ext, expect[i]));

  auto k0 = division_chain(D, 0);
  CHECK(pkd_basis_monomials(k0).size() == 1);

  auto d4 = division_chain(universal_divisor(4, 8, "c"), 3);
  CHECK(pkd_basis_monomials(d4).size() == 24);  // 4!/1!
}

TEST_CASE("degreewise freeness of O_{P_kD}") {
  // concrete: D = 3[0], k = 2
  auto D = point_divisor(3, 6);
  auto ctx = division_chain(D, 2);
  auto rep = pkd_basis_report(ctx, 6);
  CHECK(rep.pass);

  // symbolic d = 3, k = 2
  auto Ds = universal_divisor(3, 6, "c");
  auto cs = division_chain(Ds, 2);
  auto rep2 = pkd_basis_report(cs, 6);
  CHECK(rep2.pass);
}

TEST_CASE("relator families generate the same ideal") {
  auto D = point_divisor(3, 6);
  auto ctx = division_chain(D, 2);
  CHECK(relator_families_agree(ctx, 6).equal);

  auto Ds = universal_divisor(3, 6, "c");
  auto cs = division_chain(Ds, 2);
  CHECK(relator_families_agree(cs, 6).equal);
}

TEST_CASE("sigma invariants of O_{P_2(3[0])}: 3 over Q, 4 over F2") {
  auto D = point_divisor(3, 6);
  auto ctx = division_chain(D, 2);
  size_t total_q = 0, total_f2 = 0;
  std::vector<size_t> q_by_degree, f2_by_degree;
  for (unsigned deg = 0; deg <= 3; ++deg) {
    q_by_degree.push_back(sigma_invariant_dim(ctx, CoeffField::Q(), deg));
    f2_by_degree.push_back(sigma_invariant_dim(ctx, CoeffField::Fp(2), deg));
    total_q += q_by_degree.back();
    total_f2 += f2_by_degree.back();
  }
  CHECK(total_q == 3);   // {1, x+y, xy}
  CHECK(total_f2 == 4);  // extra class x^2 y
  CHECK(q_by_degree == std::vector<size_t>{1, 1, 1, 0});
  CHECK(f2_by_degree == std::vector<size_t>{1, 1, 1, 1});

  // k = 1: everything is invariant (O_{P_1 D} = O_D has one basis monomial
  // per degree 0..d-1 here)
  auto c1 = division_chain(D, 1);
  for (unsigned deg = 0; deg <= 4; ++deg)
    CHECK(sigma_invariant_dim(c1, CoeffField::Q(), deg) == (deg < 3 ? 1 : 0));
}

TEST_CASE("orbit-sum basis counts match over Q, F2, F3 for O_{D^k}/Sigma_k") {
  // base-change stability of the invariants of the free O_{D^k}
  auto D = point_divisor(3, 5);
  auto ctx = division_chain(D, 2);
  QuotientRing q = ctx.odk();
  for (unsigned deg = 0; deg <= 5; ++deg) {
    auto basis = q.basis_of_degree(deg);
    // permutation action on the monomial basis: invariant dim = orbit count
    std::map<Monomial, size_t, MonoLess> index;
    for (size_t i = 0; i < basis.size(); ++i) index.emplace(basis[i], i);
    size_t orbits = 0;
    for (const auto& m : basis) {
      Monomial sw = m;
      std::swap(sw.exps[ctx.xvars[0]], sw.exps[ctx.xvars[1]]);
      if (!MonoLess{}(sw, m)) ++orbits;  // count one representative per orbit
    }
    ZMat mat(basis.size(), ZRow(basis.size(), 0));
    for (size_t j = 0; j < basis.size(); ++j) {
      Monomial sw = basis[j];
      std::swap(sw.exps[ctx.xvars[0]], sw.exps[ctx.xvars[1]]);
      mat[index.at(sw)][j] = 1;
    }
    for (auto field : {CoeffField::Q(), CoeffField::Fp(2), CoeffField::Fp(3)})
      CHECK(invariant_subspace_dim({mat}, basis.size(), field) == orbits);
  }
}

TEST_CASE("verify_invariant_kernel for (3,2) and the k=1 triviality") {
  auto Ds = universal_divisor(3, 6, "c");
  auto cs = division_chain(Ds, 2);
  auto rep = verify_invariant_kernel(cs, 5);
  CHECK(rep.pass);

  auto c1 = division_chain(point_divisor(3, 5), 1);
  auto rep1 = verify_invariant_kernel(c1, 5);
  CHECK(rep1.pass);
}

TEST_CASE("symbolic remainder regenerates the direct division remainder") {
  auto D = universal_divisor(4, 8, "c");
  auto ctx = division_chain(D, 2);
  // recompute r_2 by dividing f by (t - x0)(t - x1) directly
  UPoly p2 = UPoly::linear(ctx.ext, -ctx.x(0)) * UPoly::linear(ctx.ext, -ctx.x(1));
  auto [q2, r2] = upoly_divmod_monic(ctx.f, p2);
  CHECK(r2 == ctx.r[2]);
  for (unsigned j = 0; j < 2; ++j) CHECK(ctx.a[2][j] == r2.coeff(j));
}

TEST_CASE("paper's non-monomial basis of O_{P_2(3[0])} spans the same module") {
  // {1, x, y, x^2, -x^2-xy, x^2 y}: unimodular against the monomial basis,
  // degree by degree
  auto D = point_divisor(3, 6);
  auto ctx = division_chain(D, 2);
  auto R = ctx.ext;
  std::vector<GradedPoly> paper{parse_poly(R, "1"),           parse_poly(R, "x0"),
                                parse_poly(R, "x1"),          parse_poly(R, "x0^2"),
                                parse_poly(R, "-x0^2-x0*x1"), parse_poly(R, "x0^2*x1")};
  QuotientRing q = ctx.odk();
  IdealGens jk = ctx.jk_b();
  for (unsigned deg = 0; deg <= 3; ++deg) {
    auto span = ideal_degree_span(jk, &q, deg);
    std::vector<Monomial> pbasis;
    for (const auto& m : pkd_basis_monomials(ctx))
      if (m.degree == deg) pbasis.push_back(m);
    ZMat basis_rows;
    for (const auto& m : pbasis)
      basis_rows.push_back(coeff_row(GradedPoly::monomial(R, m, 1), span.basis));
    ZMat paper_rows;
    for (const auto& e : paper) {
      auto red = q.reduce(e);
      if (red.is_zero() || red.min_degree() != deg || !red.is_homogeneous()) continue;
      auto coords = coords_modulo(basis_rows, span.rows, coeff_row(red, span.basis));
      REQUIRE(coords.has_value());
      paper_rows.push_back(*coords);
    }
    REQUIRE(paper_rows.size() == pbasis.size());
    auto inv = snf_invariant_factors(paper_rows);
    CHECK(inv.size() == pbasis.size());
    for (const auto& f : inv) CHECK(f == 1);  // same span over Z
  }
}

TEST_CASE("sigma action matrices satisfy the Sigma_3 relations (d=4, k=3)") {
  auto D = universal_divisor(4, 7, "c");
  auto ctx = division_chain(D, 3);
  for (unsigned deg = 0; deg <= 4; ++deg) CHECK_NOTHROW(sigma_action_matrices(ctx, deg));
}
