#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <nlohmann/json.hpp>
#include <random>

#include "divint/fitting.hpp"

using namespace divint;

namespace {

RingPtr za() { return make_ring(CoeffField::Z(), {{"a", 2}}, 3); }

Presentation diag(const RingPtr& R, const std::vector<GradedPoly>& entries) {
  PolyMatrix m(R, entries.size(), entries.size());
  for (size_t i = 0; i < entries.size(); ++i) m.at(i, i) = entries[i];
  return Presentation{std::move(m), {}, {}};
}

}  // namespace

TEST_CASE("minors: diag(a,a) square minor is a^2 = 0 under truncation") {
  auto R = za();
  auto a = parse_poly(R, "a");
  auto P = diag(R, {a, a});
  auto m2 = matrix_minors(P.matrix, 2);
  REQUIRE(m2.size() == 1);
  CHECK(m2[0].is_zero());  // lambda^2(mu) = a^2 = 0
  auto m0 = matrix_minors(P.matrix, 0);
  REQUIRE(m0.size() == 1);
  CHECK(m0[0] == parse_poly(R, "1"));
  CHECK(matrix_minors(P.matrix, 3).empty());
}

TEST_CASE("fitting ideals of the paper's Z[a]/a^2 example") {
  auto R = za();
  auto P = diag(R, {parse_poly(R, "a"), parse_poly(R, "a")});
  CHECK(fitting_ideal(P, 0).is_zero_ideal());           // I_0 = (a^2) = 0
  auto i1 = fitting_ideal(P, 1);
  REQUIRE_FALSE(i1.is_zero_ideal());                    // I_1 = (a)
  for (const auto& g : i1.gens) CHECK(g == parse_poly(R, "a"));
  auto i2 = fitting_ideal(P, 2);
  REQUIRE(i2.gens.size() == 1);
  CHECK(i2.gens[0] == parse_poly(R, "1"));              // I_2 = (1)
  CHECK(fitting_rank(P) == 1);                          // rank(R/a + R/a) = 1
}

TEST_CASE("free and zero modules") {
  auto R = za();
  // zero 2x1 matrix presents R^2
  Presentation Pfree{PolyMatrix(R, 2, 1), {}, {}};
  CHECK(fitting_ideal(Pfree, 0).is_zero_ideal());
  CHECK(fitting_ideal(Pfree, 1).is_zero_ideal());
  CHECK_FALSE(fitting_ideal(Pfree, 2).is_zero_ideal());
  CHECK(fitting_rank(Pfree) == 2);

  Presentation Pid{PolyMatrix::identity(R, 3), {}, {}};
  for (size_t j = 0; j < 5; ++j) CHECK_FALSE(fitting_ideal(Pid, j).is_zero_ideal());
  CHECK(fitting_rank(Pid) == 0);
}

TEST_CASE("direct sum blocks and rank non-additivity witness") {
  auto R = za();
  auto a = parse_poly(R, "a");
  auto Pa = diag(R, {a});
  auto sum = direct_sum(Pa, Pa);
  CHECK(sum.p0() == 2);
  CHECK(sum.matrix.at(0, 0) == a);
  CHECK(sum.matrix.at(1, 1) == a);
  CHECK(sum.matrix.at(0, 1).is_zero());

  // the paper's counterexample: rank(R/a) = 0 but rank(R/a + R/a) = 1
  CHECK(fitting_rank(Pa) == 0);
  CHECK(fitting_rank(sum) == 1);

  Presentation empty{PolyMatrix(R, 0, 0), {}, {}};
  auto same = direct_sum(Pa, empty);
  CHECK(same.matrix == Pa.matrix);

  Presentation r1{PolyMatrix(R, 1, 0), {}, {}};
  CHECK(fitting_rank(direct_sum(r1, r1)) == 2);
}

TEST_CASE("stabilize: [[a,0],[0,1]] and invariance of Fitting ideals") {
  auto R = za();
  auto a = parse_poly(R, "a");
  auto Pa = diag(R, {a});
  auto st = stabilize(Pa, 1);
  CHECK(st.p0() == 2);
  CHECK(st.matrix.at(0, 0) == a);
  CHECK(st.matrix.at(1, 1) == parse_poly(R, "1"));
  CHECK(st.matrix.at(0, 1).is_zero());
  CHECK(st.matrix.at(1, 0).is_zero());

  for (size_t j = 0; j < 3; ++j) {
    auto lhs = fitting_ideal(Pa, j);
    auto rhs = fitting_ideal(st, j);
    CHECK(ideal_equal(lhs, rhs, nullptr, R->trunc()).equal);
  }

  auto same = stabilize(Pa, 0);
  CHECK(same.matrix == Pa.matrix);

  auto id1 = Presentation{PolyMatrix::identity(R, 1), {}, {}};
  CHECK(fitting_rank(stabilize(id1, 2)) == 0);
}

TEST_CASE("prop-fitting on random graded presentations with random theta") {
  std::mt19937_64 rng(424242);
  auto R = make_ring(CoeffField::Z(), {{"s", 1}, {"t", 1}}, 4);
  std::uniform_int_distribution<int> coef(-2, 2);
  auto rand_homog = [&](unsigned d) {
    GradedPoly p(R);
    if (d > R->trunc()) return p;
    for (const auto& m : degree_basis(*R, d)) p.add_term(m, coef(rng));
    return p;
  };
  for (int trial = 0; trial < 6; ++trial) {
    size_t p0 = 1 + rng() % 3, p1 = 1 + rng() % 3, q0 = 1 + rng() % 2;
    // graded matrix: row degrees 0, column degrees 1..2
    std::vector<unsigned> rdeg(p0), cdeg(p1);
    for (auto& x : rdeg) x = rng() % 2;
    for (auto& x : cdeg) x = 1 + rng() % 2;
    PolyMatrix A(R, p0, p1);
    for (size_t i = 0; i < p0; ++i)
      for (size_t j = 0; j < p1; ++j)
        A.at(i, j) = cdeg[j] >= rdeg[i] ? rand_homog(cdeg[j] - rdeg[i]) : GradedPoly(R);
    Presentation P{A, {}, {}};
    // theta columns get their own degrees
    PolyMatrix theta(R, p0, q0);
    for (size_t i = 0; i < p0; ++i)
      for (size_t j = 0; j < q0; ++j)
        theta.at(i, j) = rand_homog(1 >= rdeg[i] ? 1 - rdeg[i] : 0);
    auto st = stabilize(P, q0, &theta);
    for (size_t j = 0; j <= p0 + q0; ++j) {
      auto lhs = fitting_ideal(P, j);
      auto rhs = fitting_ideal(st, j);
      CHECK(ideal_equal(lhs, rhs, nullptr, R->trunc()).equal);
    }
  }
}

TEST_CASE("lem-rank-omni bounds on random presentations") {
  std::mt19937_64 rng(777);
  auto R = make_ring(CoeffField::Z(), {{"s", 1}}, 3);
  std::uniform_int_distribution<int> coef(-2, 2);
  for (int trial = 0; trial < 10; ++trial) {
    size_t p0 = 1 + rng() % 3, p1 = rng() % 3;
    PolyMatrix A(R, p0, p1);
    for (size_t i = 0; i < p0; ++i)
      for (size_t j = 0; j < p1; ++j) {
        GradedPoly e(R);
        unsigned d = rng() % 3;
        for (const auto& m : degree_basis(*R, d)) e.add_term(m, coef(rng));
        A.at(i, j) = e;
      }
    Presentation P{A, {}, {}};
    size_t r = fitting_rank(P);
    CHECK(r <= p0);
    if (p0 > p1) CHECK(r >= p0 - p1);

    // appending relations (extra columns) can only drop the rank
    size_t extra = 1 + rng() % 2;
    PolyMatrix B(R, p0, p1 + extra);
    for (size_t i = 0; i < p0; ++i) {
      for (size_t j = 0; j < p1; ++j) B.at(i, j) = A.at(i, j);
      for (size_t j = p1; j < p1 + extra; ++j) {
        GradedPoly e(R);
        unsigned d = rng() % 3;
        for (const auto& m : degree_basis(*R, d)) e.add_term(m, coef(rng));
        B.at(i, j) = e;
      }
    }
    CHECK(fitting_rank(Presentation{B, {}, {}}) <= r);
  }
  // zero matrix has fitting rank p0
  Presentation Pzero{PolyMatrix(R, 3, 2), {}, {}};
  CHECK(fitting_rank(Pzero) == 3);
}

TEST_CASE("presentation JSON round trip") {
  auto R = za();
  auto P = diag(R, {parse_poly(R, "a"), parse_poly(R, "1")});
  auto j = P.to_json();
  auto P2 = Presentation::from_json(R, j);
  CHECK(P2.matrix == P.matrix);
}
