#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <nlohmann/json.hpp>
#include <random>

#include "divint/oracle.hpp"

using namespace divint;

namespace {

// Z[a][x]/(x^2 - a), deg a = 2, N = 4
QuotientRing q_x2_minus_a() {
  auto R = make_ring(CoeffField::Z(), {{"a", 2}, {"x", 1}}, 4);
  return QuotientRing(R, {{1, parse_poly(R, "x^2 - a")}});
}

// Z[x,y]/(x^3, x^2 + x*y + y^2), N = 6
QuotientRing q_pkd_example() {
  auto R = make_ring(CoeffField::Z(), {{"x", 1}, {"y", 1}}, 6);
  return QuotientRing(R, {{0, parse_poly(R, "x^3")}, {1, parse_poly(R, "y^2 + x*y + x^2")}});
}

}  // namespace

TEST_CASE("reduce: single division step x^2 -> a") {
  auto q = q_x2_minus_a();
  auto R = q.ring();
  CHECK(q.reduce(parse_poly(R, "x^2")) == parse_poly(R, "a"));
  CHECK(q.reduce(parse_poly(R, "x^3")) == parse_poly(R, "a*x"));
}

TEST_CASE("reduce: paper's P_2(3[0]) basis reduction y^2 -> -x^2 - x*y") {
  auto q = q_pkd_example();
  auto R = q.ring();
  CHECK(q.reduce(parse_poly(R, "y^2")) == parse_poly(R, "-x^2 - x*y"));
  // x^4 dies through x^3
  auto R3 = make_ring(CoeffField::Z(), {{"x", 1}}, 6);
  QuotientRing q3(R3, {{0, parse_poly(R3, "x^3")}});
  CHECK(q3.reduce(parse_poly(R3, "x^4")).is_zero());
}

TEST_CASE("reduce is idempotent and base-linear on samples") {
  auto q = q_pkd_example();
  auto R = q.ring();
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> coef(-2, 2);
  for (int i = 0; i < 10; ++i) {
    GradedPoly p(R);
    for (unsigned d = 0; d <= R->trunc(); ++d)
      for (const auto& m : degree_basis(*R, d))
        if (rng() % 4 == 0) p.add_term(m, coef(rng));
    auto r1 = q.reduce(p);
    CHECK(q.reduce(r1) == r1);
    for (const auto& [m, c] : r1.terms()) CHECK(q.is_basis_monomial(m));
    GradedPoly p2(R);
    for (unsigned d = 0; d <= R->trunc(); ++d)
      for (const auto& m : degree_basis(*R, d))
        if (rng() % 4 == 0) p2.add_term(m, coef(rng));
    CHECK(q.reduce(p + p2) == q.reduce(p) + q.reduce(p2));
    CHECK(q.reduce(p * p2) == q.reduce(q.reduce(p) * q.reduce(p2)));
  }
}

TEST_CASE("ideal_degree_span: (a^2) = 0 and (a) in Z[a]") {
  auto R = make_ring(CoeffField::Z(), {{"a", 2}}, 4);
  // With N = 3 the square would be truncated away entirely; at N = 4 the
  // generator a^2 survives but spans nothing in degree 4 at N = 3.
  auto R3 = make_ring(CoeffField::Z(), {{"a", 2}}, 3);
  IdealGens zero_sq(R3, {parse_poly(R3, "a") * parse_poly(R3, "a")});
  CHECK(zero_sq.is_zero_ideal());

  IdealGens ia(R3, {parse_poly(R3, "a")});
  auto lat = ideal_degree_span(ia, nullptr, 2);
  REQUIRE(lat.rows.size() == 1);
  CHECK(lat.rows[0] == ZRow{1});
}

TEST_CASE("ideal_degree_span: derived 3x4 row reduction has rank 3") {
  auto R = make_ring(CoeffField::Z(), {{"x", 1}, {"y", 1}}, 4);
  IdealGens I(R, {parse_poly(R, "x^2 + x*y + y^2"), parse_poly(R, "x^3")});
  auto lat = ideal_degree_span(I, nullptr, 3);
  CHECK(lat.basis.size() == 4);
  CHECK(lat.rows.size() == 3);
  CHECK(rank_q(lat.rows) == 3);  // frozen from the independent row reduction
  // hence the degree-3 quotient has free rank 1, matching the P_2(3[0]) basis {x^2 y}
  auto gr = quotient_graded_rank(I, nullptr, 3);
  CHECK(gr.free_rank == 1);
  CHECK(gr.torsion.empty());
}

TEST_CASE("quotient_graded_rank basics") {
  auto R = make_ring(CoeffField::Z(), {{"a", 2}}, 3);
  IdealGens ia(R, {parse_poly(R, "a")});
  auto g = quotient_graded_rank(ia, nullptr, 2);
  CHECK(g.free_rank == 0);
  CHECK(g.torsion.empty());

  auto C = make_ring(CoeffField::Z(), {{"c1", 1}, {"c2", 2}}, 4);
  IdealGens zero(C, {});
  auto g2 = quotient_graded_rank(zero, nullptr, 2);
  CHECK(g2.free_rank == 2);  // {c1^2, c2}
  CHECK(g2.torsion.empty());
}

TEST_CASE("quotient_graded_rank with I = 0 equals the free basis size") {
  auto q = q_pkd_example();
  IdealGens zero(q.ring(), {});
  for (unsigned d = 0; d <= 5; ++d) {
    auto g = quotient_graded_rank(zero, &q, d);
    CHECK(g.free_rank == q.basis_dimension(d));
    CHECK(g.torsion.empty());
  }
}

TEST_CASE("torsion detection over Z and field consistency invariant") {
  auto R = make_ring(CoeffField::Z(), {{"x", 1}}, 3);
  IdealGens two_x(R, {parse_poly(R, "2*x")});
  auto g = quotient_graded_rank(two_x, nullptr, 1);
  CHECK(g.free_rank == 0);
  REQUIRE(g.torsion.size() == 1);
  CHECK(g.torsion[0] == 2);
  // over Q the rank drops; over F2 the generator dies
  CHECK(quotient_graded_rank(two_x, nullptr, 1, CoeffField::Q()).free_rank == 0);
  CHECK(quotient_graded_rank(two_x, nullptr, 1, CoeffField::Fp(2)).free_rank == 1);

  // when Z torsion is empty, Q and F_p free ranks agree with Z
  IdealGens ix(R, {parse_poly(R, "x")});
  for (unsigned d = 0; d <= 3; ++d) {
    auto z = quotient_graded_rank(ix, nullptr, d);
    CHECK(z.torsion.empty());
    CHECK(quotient_graded_rank(ix, nullptr, d, CoeffField::Q()).free_rank == z.free_rank);
    CHECK(quotient_graded_rank(ix, nullptr, d, CoeffField::Fp(3)).free_rank == z.free_rank);
  }
}

TEST_CASE("ideal_equal: unit multiples, strict inclusion, invariances") {
  auto R = make_ring(CoeffField::Z(), {{"a", 2}}, 3);
  IdealGens ia(R, {parse_poly(R, "a")});
  IdealGens ina(R, {parse_poly(R, "-a")});
  CHECK(ideal_equal(ia, ina, nullptr, 3).equal);

  IdealGens zero(R, {});
  auto res = ideal_equal(zero, ia, nullptr, 3);
  CHECK_FALSE(res.equal);
  CHECK(res.first_failing_degree == 2);

  // reflexive / symmetric / generator permutation
  auto R2 = make_ring(CoeffField::Z(), {{"x", 1}, {"y", 1}}, 4);
  IdealGens i1(R2, {parse_poly(R2, "x^2 + y^2"), parse_poly(R2, "x*y")});
  IdealGens i2(R2, {parse_poly(R2, "x*y"), parse_poly(R2, "-x^2 - y^2")});
  CHECK(ideal_equal(i1, i1, nullptr, 4).equal);
  CHECK(ideal_equal(i1, i2, nullptr, 4).equal);
  CHECK(ideal_equal(i2, i1, nullptr, 4).equal);
}

TEST_CASE("invariant_subspace_dim: trivial and swap actions") {
  // trivial action on a 3-dim space
  ZMat id3{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  CHECK(invariant_subspace_dim({id3}, 3, CoeffField::Q()) == 3);

  // swap x <-> y on span{x, y}: invariants spanned by x + y
  ZMat swap2{{0, 1}, {1, 0}};
  CHECK(invariant_subspace_dim({swap2}, 2, CoeffField::Q()) == 1);
  CHECK(invariant_subspace_dim({swap2}, 2, CoeffField::Fp(2)) == 1);

  // sign flip: nothing fixed over Q, everything over F2
  ZMat neg{{-1}};
  CHECK(invariant_subspace_dim({neg}, 1, CoeffField::Q()) == 0);
  CHECK(invariant_subspace_dim({neg}, 1, CoeffField::Fp(2)) == 1);

  ZMat sing{{0, 0}, {0, 1}};
  CHECK_THROWS_AS(invariant_subspace_dim({sing}, 2, CoeffField::Q()), structural_error);
}

TEST_CASE("element_in_ideal degreewise membership") {
  auto R = make_ring(CoeffField::Z(), {{"x", 1}, {"y", 1}}, 4);
  IdealGens I(R, {parse_poly(R, "x^2 + x*y + y^2")});
  CHECK(element_in_ideal(parse_poly(R, "x^3 + x^2*y + x*y^2"), I, nullptr));
  int fail = -1;
  CHECK_FALSE(element_in_ideal(parse_poly(R, "x^2"), I, nullptr, &fail));
  CHECK(fail == 2);
}

TEST_CASE("zlin: HNF lattice equality and kernels") {
  ZMat a{{2, 0}, {0, 2}, {1, 1}};
  ZMat b{{1, 1}, {2, 0}};
  CHECK(lattice_equal(a, b));
  CHECK(lattice_contains(a, ZRow{3, 1}));
  CHECK_FALSE(lattice_contains(a, ZRow{1, 0}));

  ZMat c{{1, 2, 3}, {2, 4, 6}, {0, 1, 1}};
  auto ker = left_kernel(c, 3);
  REQUIRE(ker.size() == 1);
  // kernel row k satisfies k * c = 0
  for (size_t j = 0; j < 3; ++j) {
    mpz_class s = 0;
    for (size_t i = 0; i < 3; ++i) s += ker[0][i] * c[i][j];
    CHECK(s == 0);
  }

  auto sol = solve_left(ZMat{{1, 2}, {0, 3}}, ZRow{2, 7});
  REQUIRE(sol.has_value());
  CHECK((*sol)[0] * 1 + (*sol)[1] * 0 == 2);
  CHECK((*sol)[0] * 2 + (*sol)[1] * 3 == 7);
  CHECK_FALSE(solve_left(ZMat{{2, 0}}, ZRow{1, 0}).has_value());

  auto inv = snf_invariant_factors(ZMat{{2, 0}, {0, 4}});
  REQUIRE(inv.size() == 2);
  CHECK(inv[0] == 2);
  CHECK(inv[1] == 4);
  auto inv2 = snf_invariant_factors(ZMat{{2, 0}, {0, 3}});
  REQUIRE(inv2.size() == 2);
  CHECK(inv2[0] == 1);
  CHECK(inv2[1] == 6);
}

TEST_CASE("lattice intersection") {
  ZMat a{{2, 0}, {0, 1}};
  ZMat b{{1, 1}};
  auto inter = lattice_intersection(a, b, 2);
  // (2,2) = 2*(1,1) lies in both; (1,1) does not lie in a
  CHECK(lattice_contains(inter, ZRow{2, 2}));
  CHECK_FALSE(lattice_contains(inter, ZRow{1, 1}));
}

TEST_CASE("quotient ring structural validation") {
  auto R = make_ring(CoeffField::Z(), {{"x", 1}, {"y", 1}}, 4);
  CHECK_THROWS_AS(QuotientRing(R, {{0, parse_poly(R, "2*x^2")}}), structural_error);
  CHECK_THROWS_AS(QuotientRing(R, {{0, parse_poly(R, "x^2 + y^3")}}), structural_error);
  // divisor of x may not use the later distinguished variable y
  CHECK_THROWS_AS(QuotientRing(R, {{0, parse_poly(R, "x^2 + y^2")}, {1, parse_poly(R, "y^2")}}),
                  structural_error);
  // but y's divisor may use x (earlier), as in the P_2 example
  CHECK_NOTHROW(QuotientRing(R, {{0, parse_poly(R, "x^2")}, {1, parse_poly(R, "y^2 + x*y")}}));
}

TEST_CASE("graded lattice dumps to JSON for auditing") {
  auto R = make_ring(CoeffField::Z(), {{"x", 1}, {"y", 1}}, 4);
  IdealGens I(R, {parse_poly(R, "x^2 + x*y + y^2")});
  auto lat = ideal_degree_span(I, nullptr, 2);
  auto j = lat.to_json(*R);
  CHECK(j["degree"] == 2);
  CHECK(j["basis"].size() == 3);
  CHECK(j["rows"].size() == 1);
  CHECK(j["rows"][0] == nlohmann::ordered_json::array({"1", "1", "1"}));
}

TEST_CASE("ideal_equal inside a quotient ring") {
  auto R = make_ring(CoeffField::Z(), {{"a", 2}, {"x", 1}}, 5);
  QuotientRing q(R, {{1, parse_poly(R, "x^2 - a")}});
  IdealGens ix2(R, {parse_poly(R, "x^2")});
  IdealGens ia(R, {parse_poly(R, "a")});
  CHECK(ideal_equal(ix2, ia, &q, 5).equal);  // x^2 = a in the quotient
  IdealGens ix(R, {parse_poly(R, "x")});
  auto res = ideal_equal(ix, ia, &q, 5);
  CHECK_FALSE(res.equal);
  CHECK(res.first_failing_degree == 1);  // x itself is not a multiple of a
}
