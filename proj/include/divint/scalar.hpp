#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace divint {

/// Contract violation in the caller's data: mismatched rings, bad schema,
/// out-of-range degrees.  The CLI maps these to exit code 2.
struct structural_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class CoeffKind { integers, rationals, prime_field };

/// Coefficient ring of a RingSpec: Z, Q, or F_p.  All scalar values are
/// carried as mpq_class in a field-specific canonical form (denominator 1
/// over Z and F_p, value in [0,p) over F_p).
struct CoeffField {
  CoeffKind kind = CoeffKind::integers;
  unsigned long p = 0;

  bool operator==(const CoeffField&) const = default;

  static CoeffField Z() { return {CoeffKind::integers, 0}; }
  static CoeffField Q() { return {CoeffKind::rationals, 0}; }
  static CoeffField Fp(unsigned long p);

  bool is_field() const { return kind != CoeffKind::integers; }

  /// Canonicalize a raw rational into this field.  Throws structural_error
  /// if the value does not live here (non-integer over Z, denominator
  /// divisible by p over F_p).
  mpq_class normalize(const mpq_class& c) const;

  /// Base-change a canonical value of `from` into this field.
  mpq_class convert(const mpq_class& c, const CoeffField& from) const;

  mpq_class neg(const mpq_class& c) const { return normalize(-c); }
  mpq_class add(const mpq_class& a, const mpq_class& b) const { return normalize(a + b); }
  mpq_class mul(const mpq_class& a, const mpq_class& b) const { return normalize(a * b); }
  mpq_class inverse(const mpq_class& c) const;

  std::string name() const;                     // "Z" | "Q" | "Fp(p)"
  static CoeffField parse(const std::string&);  // accepts Z, Q, F2, F3, Fp(7), Fp:7

  std::string coeff_to_string(const mpq_class& c) const;
  mpq_class coeff_from_string(const std::string&) const;
};

}  // namespace divint
