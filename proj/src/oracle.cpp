#include "divint/oracle.hpp"

#include <algorithm>
#include <map>

#include <nlohmann/json.hpp>

namespace divint {

using nlohmann::ordered_json;

QuotientRing::QuotientRing(RingPtr ambient,
                           const std::vector<std::pair<size_t, GradedPoly>>& divisors)
    : ring_(std::move(ambient)), cap_(ring_->nvars(), -1) {
  for (const auto& [var, div] : divisors) {
    if (var >= ring_->nvars()) throw structural_error("QuotientRing: bad variable index");
    if (cap_[var] >= 0) throw structural_error("QuotientRing: two divisors for one variable");
    if (!same_ring(div.ring(), ring_))
      throw structural_error("QuotientRing: divisor in wrong ring");
    if (!div.is_homogeneous())
      throw structural_error("QuotientRing: reduction divisor must be homogeneous");
    // monic in var: unique term with maximal var-exponent e, equal to var^e
    unsigned e = 0;
    for (const auto& [m, c] : div.terms()) e = std::max(e, m.exps[var]);
    if (e == 0) throw structural_error("QuotientRing: divisor does not involve its variable");
    GradedPoly tail(ring_);
    bool monic_seen = false;
    for (const auto& [m, c] : div.terms()) {
      if (m.exps[var] == e) {
        bool pure = c == 1;
        for (size_t v = 0; pure && v < m.exps.size(); ++v)
          if (v != var && m.exps[v]) pure = false;
        if (!pure) throw structural_error("QuotientRing: divisor not monic in its variable");
        monic_seen = true;
      } else {
        tail.add_term(m, ring_->field().neg(c));
      }
    }
    if (!monic_seen) throw std::logic_error("unreachable: leading term not found");
    rules_.push_back({var, e, tail});
    cap_[var] = static_cast<int>(e);
  }
  // confluence: the tail of a rule may use base variables and variables of
  // earlier rules only, with exponent below their caps; its own variable
  // strictly below its power
  for (size_t r = 0; r < rules_.size(); ++r) {
    for (const auto& [m, c] : rules_[r].tail.terms()) {
      if (m.exps[rules_[r].var] >= rules_[r].power)
        throw structural_error("QuotientRing: tail not reduced in its own variable");
      for (size_t s = r + 1; s < rules_.size(); ++s)
        if (m.exps[rules_[s].var] != 0)
          throw structural_error("QuotientRing: divisor uses a later distinguished variable");
    }
  }
}

std::optional<unsigned> QuotientRing::cap(size_t var) const {
  if (var < cap_.size() && cap_[var] >= 0) return static_cast<unsigned>(cap_[var]);
  return std::nullopt;
}

GradedPoly QuotientRing::reduce(const GradedPoly& p) const {
  if (!same_ring(p.ring(), ring_)) throw structural_error("reduce: element in wrong ring");
  GradedPoly cur = p;
  for (;;) {
    // find a term violating some cap; rewrite one power chunk
    const Monomial* bad = nullptr;
    const Rule* rule = nullptr;
    mpq_class coef;
    for (const auto& [m, c] : cur.terms()) {
      for (const auto& r : rules_) {
        if (m.exps[r.var] >= r.power) {
          bad = &m;
          rule = &r;
          coef = c;
          break;
        }
      }
      if (bad) break;
    }
    if (!bad) return cur;
    Monomial rest = *bad;
    rest.exps[rule->var] -= rule->power;
    rest.degree -= rule->power * ring_->grading(rule->var);
    GradedPoly replaced = GradedPoly::monomial(ring_, rest, coef) * rule->tail;
    GradedPoly next = cur;
    next.add_term(*bad, ring_->field().neg(coef));
    cur = next + replaced;
  }
}

bool QuotientRing::is_basis_monomial(const Monomial& m) const {
  for (const auto& r : rules_)
    if (m.exps[r.var] >= r.power) return false;
  return true;
}

std::vector<Monomial> QuotientRing::basis_of_degree(unsigned d) const {
  std::vector<Monomial> out;
  for (auto& m : degree_basis(*ring_, d))
    if (is_basis_monomial(m)) out.push_back(std::move(m));
  return out;
}

size_t QuotientRing::basis_dimension(unsigned d) const { return basis_of_degree(d).size(); }

IdealGens::IdealGens(RingPtr r, std::vector<GradedPoly> g) : ring(std::move(r)) {
  for (auto& p : g) {
    if (!same_ring(p.ring(), ring)) throw structural_error("IdealGens: generator in wrong ring");
    if (!p.is_zero()) gens.push_back(std::move(p));
  }
}

ordered_json GradedLattice::to_json(const RingSpec& ring) const {
  ordered_json jb = ordered_json::array();
  for (const auto& m : basis) {
    ordered_json mono = ordered_json::object();
    for (size_t v = 0; v < m.exps.size(); ++v)
      if (m.exps[v]) mono[ring.var_name(v)] = m.exps[v];
    jb.push_back(std::move(mono));
  }
  ordered_json jr = ordered_json::array();
  for (const auto& row : rows) {
    ordered_json r = ordered_json::array();
    for (const auto& x : row) r.push_back(x.get_str());
    jr.push_back(std::move(r));
  }
  return ordered_json{{"degree", degree}, {"basis", std::move(jb)}, {"rows", std::move(jr)}};
}

namespace {

std::vector<Monomial> ambient_basis(const RingPtr& ring, const QuotientRing* q, unsigned d) {
  return q ? q->basis_of_degree(d) : degree_basis(*ring, d);
}

// integer row with denominators cleared (harmless over Q; exact over Z/Fp)
ZRow int_row(const GradedPoly& p, const std::map<Monomial, size_t, MonoLess>& index,
             size_t ncols) {
  ZRow row(ncols, 0);
  mpz_class lcm = 1;
  for (const auto& [m, c] : p.terms()) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), c.get_den().get_mpz_t());
  for (const auto& [m, c] : p.terms()) {
    auto it = index.find(m);
    if (it == index.end()) throw std::logic_error("monomial outside the stated basis");
    row[it->second] = c.get_num() * (lcm / c.get_den());
  }
  return row;
}

}  // namespace

ZRow coeff_row(const GradedPoly& p, const std::vector<Monomial>& basis) {
  std::map<Monomial, size_t, MonoLess> index;
  for (size_t i = 0; i < basis.size(); ++i) index.emplace(basis[i], i);
  return int_row(p, index, basis.size());
}

GradedLattice ideal_degree_span(const IdealGens& ideal, const QuotientRing* q, unsigned d) {
  const RingPtr& ring = ideal.ring;
  if (d > ring->trunc()) throw structural_error("ideal_degree_span: degree exceeds truncation");
  GradedLattice lat;
  lat.degree = d;
  lat.basis = ambient_basis(ring, q, d);
  std::map<Monomial, size_t, MonoLess> index;
  for (size_t i = 0; i < lat.basis.size(); ++i) index.emplace(lat.basis[i], i);
  for (const auto& g : ideal.gens) {
    if (!g.is_homogeneous())
      throw structural_error("ideal_degree_span: inhomogeneous generator (degreewise slices "
                             "are defined for graded ideals only)");
    unsigned dg = g.min_degree();
    if (dg > d) continue;
    for (const auto& m : ambient_basis(ring, q, d - dg)) {
      GradedPoly prod = GradedPoly::monomial(ring, m, 1) * g;
      if (q) prod = q->reduce(prod);
      if (prod.is_zero()) continue;
      lat.rows.push_back(int_row(prod, index, lat.basis.size()));
    }
  }
  return lat;
}

GradedRank quotient_graded_rank(const IdealGens& ideal, const QuotientRing* q, unsigned d,
                                const CoeffField& field) {
  GradedLattice lat = ideal_degree_span(ideal, q, d);
  size_t dim = lat.basis.size();
  GradedRank out;
  switch (field.kind) {
    case CoeffKind::integers: {
      auto factors = snf_invariant_factors(lat.rows);
      out.free_rank = dim - factors.size();
      for (auto& f : factors)
        if (f != 1) out.torsion.push_back(f);
      break;
    }
    case CoeffKind::rationals:
      out.free_rank = dim - rank_q(lat.rows);
      break;
    case CoeffKind::prime_field:
      out.free_rank = dim - rank_mod_p(lat.rows, field.p);
      break;
  }
  return out;
}

GradedRank quotient_graded_rank(const IdealGens& ideal, const QuotientRing* q, unsigned d) {
  return quotient_graded_rank(ideal, q, d, ideal.ring->field());
}

IdealEqualResult ideal_equal(const IdealGens& a, const IdealGens& b, const QuotientRing* q,
                             unsigned up_to_degree) {
  if (!same_ring(a.ring, b.ring)) throw structural_error("ideal_equal: different ambient rings");
  for (unsigned d = 0; d <= up_to_degree; ++d) {
    GradedLattice la = ideal_degree_span(a, q, d);
    GradedLattice lb = ideal_degree_span(b, q, d);
    bool same;
    if (a.ring->field().kind == CoeffKind::integers) {
      same = lattice_equal(la.rows, lb.rows);
    } else if (a.ring->field().kind == CoeffKind::rationals) {
      size_t ra = rank_q(la.rows), rb = rank_q(lb.rows);
      ZMat stacked = la.rows;
      stacked.insert(stacked.end(), lb.rows.begin(), lb.rows.end());
      same = ra == rb && rank_q(stacked) == ra;
    } else {
      unsigned long p = a.ring->field().p;
      size_t ra = rank_mod_p(la.rows, p), rb = rank_mod_p(lb.rows, p);
      ZMat stacked = la.rows;
      stacked.insert(stacked.end(), lb.rows.begin(), lb.rows.end());
      same = ra == rb && rank_mod_p(stacked, p) == ra;
    }
    if (!same) return {false, static_cast<int>(d)};
  }
  return {true, -1};
}

bool element_in_ideal(const GradedPoly& p, const IdealGens& ideal, const QuotientRing* q,
                      int* first_failing_degree) {
  if (p.is_zero()) return true;
  for (unsigned d = p.min_degree(); d <= p.max_degree(); ++d) {
    GradedPoly comp = p.component(d);
    if (comp.is_zero()) continue;
    GradedLattice lat = ideal_degree_span(ideal, q, d);
    ZRow target = coeff_row(q ? q->reduce(comp) : comp, lat.basis);
    bool inside;
    if (ideal.ring->field().kind == CoeffKind::integers) {
      inside = lattice_contains(lat.rows, target);
    } else if (ideal.ring->field().kind == CoeffKind::rationals) {
      ZMat stacked = lat.rows;
      stacked.push_back(target);
      inside = rank_q(stacked) == rank_q(lat.rows);
    } else {
      unsigned long pp = ideal.ring->field().p;
      ZMat stacked = lat.rows;
      stacked.push_back(target);
      inside = rank_mod_p(stacked, pp) == rank_mod_p(lat.rows, pp);
    }
    if (!inside) {
      if (first_failing_degree) *first_failing_degree = static_cast<int>(d);
      return false;
    }
  }
  return true;
}

size_t invariant_subspace_dim(const std::vector<ZMat>& action, size_t dim,
                              const CoeffField& field) {
  unsigned long p = field.kind == CoeffKind::prime_field ? field.p : 0;
  ZMat stacked;
  for (const auto& m : action) {
    if (m.size() != dim) throw structural_error("invariant_subspace_dim: matrix size mismatch");
    for (size_t i = 0; i < dim; ++i) {
      if (m[i].size() != dim) throw structural_error("invariant_subspace_dim: matrix not square");
      ZRow row = m[i];
      row[i] -= 1;  // sigma - 1
      stacked.push_back(std::move(row));
    }
    // a group element must act invertibly over the field
    if ((p == 0 ? rank_q(m) : rank_mod_p(m, p)) != dim)
      throw structural_error("invariant_subspace_dim: action matrix not invertible over " +
                             field.name());
  }
  return right_kernel_dim(stacked, dim, p);
}

std::optional<ZRow> coords_modulo(const ZMat& basis_rows, const ZMat& ideal_rows,
                                  const ZRow& target) {
  ZMat stacked = basis_rows;
  stacked.insert(stacked.end(), ideal_rows.begin(), ideal_rows.end());
  auto sol = solve_left(stacked, target);
  if (!sol) return std::nullopt;
  return ZRow(sol->begin(), sol->begin() + basis_rows.size());
}

}  // namespace divint
