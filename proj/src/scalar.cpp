#include "divint/scalar.hpp"

namespace divint {

CoeffField CoeffField::Fp(unsigned long p) {
  if (p < 2 || mpz_probab_prime_p(mpz_class(p).get_mpz_t(), 30) == 0)
    throw structural_error("Fp modulus must be prime, got " + std::to_string(p));
  return {CoeffKind::prime_field, p};
}

mpq_class CoeffField::normalize(const mpq_class& c) const {
  mpq_class v = c;
  v.canonicalize();
  switch (kind) {
    case CoeffKind::rationals:
      return v;
    case CoeffKind::integers:
      if (v.get_den() != 1)
        throw structural_error("non-integer coefficient over Z: " + v.get_str());
      return v;
    case CoeffKind::prime_field: {
      mpz_class num = v.get_num(), den = v.get_den(), pz(p);
      if (den != 1) {
        mpz_class deninv;
        if (mpz_invert(deninv.get_mpz_t(), den.get_mpz_t(), pz.get_mpz_t()) == 0)
          throw structural_error("denominator not invertible mod " + std::to_string(p));
        num *= deninv;
      }
      mpz_class r;
      mpz_mod(r.get_mpz_t(), num.get_mpz_t(), pz.get_mpz_t());
      return mpq_class(r);
    }
  }
  throw std::logic_error("unreachable");
}

mpq_class CoeffField::convert(const mpq_class& c, const CoeffField& from) const {
  if (*this == from) return c;
  // Z embeds anywhere; Q maps to Fp when the denominator is invertible.
  if (from.kind == CoeffKind::rationals && kind == CoeffKind::integers)
    return normalize(c);  // throws unless integral
  if (from.kind == CoeffKind::prime_field && kind != CoeffKind::prime_field)
    throw structural_error("cannot map " + from.name() + " into " + name());
  if (from.kind == CoeffKind::prime_field && p != from.p)
    throw structural_error("cannot map " + from.name() + " into " + name());
  return normalize(c);
}

mpq_class CoeffField::inverse(const mpq_class& c) const {
  if (c == 0) throw structural_error("division by zero");
  switch (kind) {
    case CoeffKind::rationals:
      return mpq_class(1) / c;
    case CoeffKind::integers:
      if (c == 1 || c == -1) return c;
      throw structural_error("non-unit over Z: " + c.get_str());
    case CoeffKind::prime_field: {
      mpz_class inv, pz(p);
      mpz_class num = c.get_num();
      if (mpz_invert(inv.get_mpz_t(), num.get_mpz_t(), pz.get_mpz_t()) == 0)
        throw structural_error("not invertible mod " + std::to_string(p));
      return mpq_class(inv);
    }
  }
  throw std::logic_error("unreachable");
}

std::string CoeffField::name() const {
  switch (kind) {
    case CoeffKind::integers: return "Z";
    case CoeffKind::rationals: return "Q";
    case CoeffKind::prime_field: return "Fp(" + std::to_string(p) + ")";
  }
  throw std::logic_error("unreachable");
}

CoeffField CoeffField::parse(const std::string& s) {
  if (s == "Z") return Z();
  if (s == "Q") return Q();
  if (s.size() > 1 && (s[0] == 'F' || s[0] == 'f')) {
    std::string rest = s.substr(1);
    if (rest.rfind("p(", 0) == 0 && rest.back() == ')')
      rest = rest.substr(2, rest.size() - 3);
    else if (rest.rfind("p:", 0) == 0)
      rest = rest.substr(2);
    try {
      return Fp(std::stoul(rest));
    } catch (const std::invalid_argument&) {
    } catch (const std::out_of_range&) {
    }
  }
  throw structural_error("unknown coefficient ring: " + s);
}

std::string CoeffField::coeff_to_string(const mpq_class& c) const {
  return c.get_str();  // "n" or "n/d", sign on the numerator
}

mpq_class CoeffField::coeff_from_string(const std::string& s) const {
  mpq_class v;
  if (v.set_str(s, 10) != 0) throw structural_error("bad coefficient literal: " + s);
  return normalize(v);
}

}  // namespace divint
