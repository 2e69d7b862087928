#pragma once

#include <optional>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "divint/ring.hpp"
#include "divint/upoly.hpp"
#include "divint/zlin.hpp"

namespace divint {

/// Quotient of a RingSpec by monic reduction divisors, one per distinguished
/// variable: divisor for v is monic of degree e in v with lower-order
/// coefficients from base variables and earlier distinguished variables only
/// (this makes the rewrite system confluent).  The free monomial basis over
/// the base consists of monomials with each distinguished exponent below its
/// divisor degree.
class QuotientRing {
 public:
  struct Rule {
    size_t var;        // distinguished variable index in the ambient ring
    unsigned power;    // v^power rewrites to tail
    GradedPoly tail;   // = v^power - divisor
  };

  /// divisors: (variable index, monic polynomial in that variable).
  QuotientRing(RingPtr ambient, const std::vector<std::pair<size_t, GradedPoly>>& divisors);

  const RingPtr& ring() const { return ring_; }
  const std::vector<Rule>& rules() const { return rules_; }
  std::optional<unsigned> cap(size_t var) const;  // divisor degree for distinguished vars

  /// Canonical representative supported on the free monomial basis.
  /// Idempotent and linear over the base.
  GradedPoly reduce(const GradedPoly& p) const;

  bool is_basis_monomial(const Monomial& m) const;
  std::vector<Monomial> basis_of_degree(unsigned d) const;
  size_t basis_dimension(unsigned d) const;

 private:
  RingPtr ring_;
  std::vector<Rule> rules_;
  std::vector<int> cap_;  // -1 for base variables
};

/// Finite generator list; zero generators are normalized away.
struct IdealGens {
  RingPtr ring;
  std::vector<GradedPoly> gens;

  IdealGens(RingPtr r, std::vector<GradedPoly> g);
  bool is_zero_ideal() const { return gens.empty(); }
};

/// Degree-d slice of an ideal: the ambient monomial basis in that degree and
/// integer rows spanning the submodule (denominators cleared over Q, lifts
/// over F_p).
struct GradedLattice {
  unsigned degree = 0;
  std::vector<Monomial> basis;
  ZMat rows;

  nlohmann::ordered_json to_json(const RingSpec& ring) const;
};

/// Rows = reduce(m * g) over free-basis monomials m with deg(m g) = d.
/// Generators must be homogeneous (all paper ideals are); q may be null for
/// the free ring.
GradedLattice ideal_degree_span(const IdealGens& ideal, const QuotientRing* q, unsigned d);

struct GradedRank {
  size_t free_rank = 0;
  std::vector<mpz_class> torsion;  // invariant factors > 1 (Z only)
  bool operator==(const GradedRank&) const = default;
};

/// Smith-normal-form rank data of the degree-d quotient.  `field` may differ
/// from the ideal's coefficient ring only in the Z -> Q / Z -> F_p direction.
GradedRank quotient_graded_rank(const IdealGens& ideal, const QuotientRing* q, unsigned d,
                                const CoeffField& field);
GradedRank quotient_graded_rank(const IdealGens& ideal, const QuotientRing* q, unsigned d);

struct IdealEqualResult {
  bool equal = true;
  int first_failing_degree = -1;
};

/// Degreewise lattice equality (HNF over Z, row-space over fields) for all
/// d <= up_to_degree.
IdealEqualResult ideal_equal(const IdealGens& a, const IdealGens& b, const QuotientRing* q,
                             unsigned up_to_degree);

/// Degreewise membership of every homogeneous component of p.
bool element_in_ideal(const GradedPoly& p, const IdealGens& ideal, const QuotientRing* q,
                      int* first_failing_degree = nullptr);

/// Dimension over the field of the simultaneous fixed subspace of the given
/// integer action matrices (right action on coordinate columns).  Matrices
/// must be square of equal size and invertible over the field.
size_t invariant_subspace_dim(const std::vector<ZMat>& action, size_t dim,
                              const CoeffField& field);

/// Integer coordinate row of `target` in terms of `basis_rows` modulo
/// rowspan(ideal_rows); nullopt when no integer solution exists.
std::optional<ZRow> coords_modulo(const ZMat& basis_rows, const ZMat& ideal_rows,
                                  const ZRow& target);

/// Integer coefficient vector of a homogeneous polynomial against the
/// degree-d monomial list (free basis when q is given).
ZRow coeff_row(const GradedPoly& p, const std::vector<Monomial>& basis);

}  // namespace divint
