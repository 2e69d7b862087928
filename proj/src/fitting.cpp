#include "divint/fitting.hpp"

#include <nlohmann/json.hpp>

namespace divint {

using nlohmann::ordered_json;

IdealGens fitting_ideal(const Presentation& p, size_t j) {
  const RingPtr& ring = p.matrix.ring;
  if (j >= p.p0()) return IdealGens(ring, {GradedPoly::constant(ring, 1)});
  return IdealGens(ring, matrix_minors(p.matrix, p.p0() - j));
}

size_t fitting_rank(const Presentation& p) {
  for (size_t r = 0;; ++r) {
    if (r >= p.p0()) return p.p0();  // I_{p0} is the unit ideal
    // I_r != 0 iff some (p0 - r)-minor is a nonzero polynomial
    if (!fitting_ideal(p, r).is_zero_ideal()) return r;
  }
}

Presentation direct_sum(const Presentation& a, const Presentation& b) {
  if (!same_ring(a.matrix.ring, b.matrix.ring))
    throw structural_error("direct_sum: presentations over different rings");
  PolyMatrix m(a.matrix.ring, a.p0() + b.p0(), a.p1() + b.p1());
  for (size_t i = 0; i < a.p0(); ++i)
    for (size_t j = 0; j < a.p1(); ++j) m.at(i, j) = a.matrix.at(i, j);
  for (size_t i = 0; i < b.p0(); ++i)
    for (size_t j = 0; j < b.p1(); ++j) m.at(a.p0() + i, a.p1() + j) = b.matrix.at(i, j);
  return Presentation{std::move(m), {}, {}};
}

Presentation stabilize(const Presentation& p, size_t q0, const PolyMatrix* theta) {
  const RingPtr& ring = p.matrix.ring;
  if (theta && (theta->rows != p.p0() || theta->cols != q0))
    throw structural_error("stabilize: theta must be p0 x q0");
  PolyMatrix m(ring, p.p0() + q0, p.p1() + q0);
  for (size_t i = 0; i < p.p0(); ++i)
    for (size_t j = 0; j < p.p1(); ++j) m.at(i, j) = p.matrix.at(i, j);
  for (size_t i = 0; i < q0; ++i) m.at(p.p0() + i, p.p1() + i) = GradedPoly::constant(ring, 1);
  if (theta)
    for (size_t i = 0; i < p.p0(); ++i)
      for (size_t j = 0; j < q0; ++j) m.at(i, p.p1() + j) = -theta->at(i, j);
  return Presentation{std::move(m), {}, {}};
}

ordered_json Presentation::to_json() const {
  ordered_json rows = ordered_json::array();
  for (size_t i = 0; i < p0(); ++i) {
    ordered_json row = ordered_json::array();
    for (size_t j = 0; j < p1(); ++j) row.push_back(poly_to_json(matrix.at(i, j)));
    rows.push_back(std::move(row));
  }
  ordered_json j{{"rows", p0()}, {"cols", p1()}, {"entries", std::move(rows)}};
  if (!row_labels.empty()) j["row_labels"] = row_labels;
  if (!col_labels.empty()) j["col_labels"] = col_labels;
  return j;
}

Presentation Presentation::from_json(const RingPtr& ring, const nlohmann::json& j) {
  size_t r = j.at("rows").get<size_t>(), c = j.at("cols").get<size_t>();
  PolyMatrix m(ring, r, c);
  const auto& entries = j.at("entries");
  if (entries.size() != r) throw structural_error("Presentation JSON: row count mismatch");
  for (size_t i = 0; i < r; ++i) {
    if (entries[i].size() != c) throw structural_error("Presentation JSON: column count mismatch");
    for (size_t k = 0; k < c; ++k) m.at(i, k) = poly_from_json(ring, entries[i][k]);
  }
  Presentation p{std::move(m), {}, {}};
  if (j.contains("row_labels")) p.row_labels = j.at("row_labels").get<std::vector<std::string>>();
  if (j.contains("col_labels")) p.col_labels = j.at("col_labels").get<std::vector<std::string>>();
  return p;
}

}  // namespace divint
