#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "divint/scalar.hpp"

namespace divint {

struct VarSpec {
  std::string name;
  unsigned grading = 1;
  bool operator==(const VarSpec&) const = default;
};

/// Truncated graded polynomial ring K[z_1..z_m]/(monomials of weighted
/// degree > trunc), K in {Z, Q, F_p}.  Immutable; share via RingPtr.
class RingSpec {
 public:
  RingSpec(CoeffField field, std::vector<VarSpec> vars, unsigned trunc);

  const CoeffField& field() const { return field_; }
  const std::vector<VarSpec>& vars() const { return vars_; }
  size_t nvars() const { return vars_.size(); }
  unsigned trunc() const { return trunc_; }
  unsigned grading(size_t i) const { return vars_[i].grading; }
  const std::string& var_name(size_t i) const { return vars_[i].name; }
  std::optional<size_t> var_index(std::string_view name) const;

  bool operator==(const RingSpec& o) const {
    return field_ == o.field_ && vars_ == o.vars_ && trunc_ == o.trunc_;
  }

  nlohmann::ordered_json to_json() const;
  static std::shared_ptr<const RingSpec> from_json(const nlohmann::json&);

 private:
  CoeffField field_;
  std::vector<VarSpec> vars_;
  unsigned trunc_;
};

using RingPtr = std::shared_ptr<const RingSpec>;

RingPtr make_ring(CoeffField field, std::vector<VarSpec> vars, unsigned trunc);

/// Exponent vector with its weighted degree cached.  A stored monomial of a
/// GradedPoly always has degree <= trunc of its ring.
struct Monomial {
  std::vector<unsigned> exps;
  unsigned degree = 0;

  static Monomial one(size_t nvars) { return Monomial{std::vector<unsigned>(nvars, 0), 0}; }
  static Monomial make(const RingSpec& ring, std::vector<unsigned> exps);

  bool is_one() const {
    for (unsigned e : exps)
      if (e) return false;
    return true;
  }
  bool operator==(const Monomial& o) const { return exps == o.exps; }
};

/// Deterministic order: by weighted degree, then descending-lexicographic on
/// the exponent vector in declared variable order (so u^2 precedes v when
/// deg u = 1, deg v = 2).
struct MonoLess {
  bool operator()(const Monomial& a, const Monomial& b) const {
    if (a.degree != b.degree) return a.degree < b.degree;
    return a.exps > b.exps;
  }
};

/// Element of a RingSpec: sparse monomial -> coefficient map, no zero
/// coefficients, everything within truncation.
class GradedPoly {
 public:
  using TermMap = std::map<Monomial, mpq_class, MonoLess>;

  explicit GradedPoly(RingPtr ring) : ring_(std::move(ring)) {}
  static GradedPoly zero(RingPtr ring) { return GradedPoly(std::move(ring)); }
  static GradedPoly constant(RingPtr ring, const mpq_class& c);
  static GradedPoly variable(RingPtr ring, size_t var, unsigned exp = 1);
  static GradedPoly monomial(RingPtr ring, Monomial m, const mpq_class& c);

  const RingPtr& ring() const { return ring_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  mpq_class constant_value() const;  // coefficient of 1
  size_t term_count() const { return terms_.size(); }

  /// Weighted degree of the lowest nonzero term; trunc()+1 for the zero poly.
  unsigned min_degree() const;
  unsigned max_degree() const;  // 0 for the zero poly
  bool is_homogeneous() const;
  GradedPoly component(unsigned degree) const;

  GradedPoly operator-() const;
  GradedPoly operator+(const GradedPoly&) const;
  GradedPoly operator-(const GradedPoly&) const;
  GradedPoly operator*(const GradedPoly&) const;
  GradedPoly scaled(const mpq_class&) const;
  bool operator==(const GradedPoly&) const;
  bool operator!=(const GradedPoly& o) const { return !(*this == o); }

  /// Adds c * m, dropping the term if it cancels or falls beyond truncation.
  void add_term(const Monomial& m, const mpq_class& c);

 private:
  RingPtr ring_;
  TermMap terms_;
};

bool same_ring(const RingPtr& a, const RingPtr& b);
void require_same_ring(const GradedPoly& a, const GradedPoly& b, const char* op);

/// Ring homomorphism by variable substitution.  Every variable actually used
/// in p must have an image in the target ring; images may be inhomogeneous.
GradedPoly substitute(const GradedPoly& p, const RingPtr& target,
                      const std::map<size_t, GradedPoly>& images);

/// All monomials of weighted degree exactly d, in the deterministic order.
/// d > trunc is a structural error, not an empty list.
std::vector<Monomial> degree_basis(const RingSpec& ring, unsigned d);

/// Number of monomials of weighted degree exactly d (without materializing).
size_t degree_dimension(const RingSpec& ring, unsigned d);

/// Reinterpret p in a ring with the same field/vars but different truncation.
GradedPoly truncate_to(const GradedPoly& p, const RingPtr& target);

/// Same vars/trunc, different coefficient field (e.g. Z -> F_p reduction).
GradedPoly convert_coeffs(const GradedPoly& p, const RingPtr& target);

std::string to_string(const GradedPoly&);
nlohmann::ordered_json poly_to_json(const GradedPoly&);
GradedPoly poly_from_json(const RingPtr&, const nlohmann::json&);

/// Parses "x^2 - 3*a*x + 1/2" style expressions against the ring's variable
/// names.  Used by tests, TOML configs and the CLI.
GradedPoly parse_poly(const RingPtr&, std::string_view);

}  // namespace divint
