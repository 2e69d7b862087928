#include "divint/ring.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include <nlohmann/json.hpp>

namespace divint {

using nlohmann::json;
using nlohmann::ordered_json;

RingSpec::RingSpec(CoeffField field, std::vector<VarSpec> vars, unsigned trunc)
    : field_(field), vars_(std::move(vars)), trunc_(trunc) {
  for (const auto& v : vars_) {
    if (v.grading < 1) throw structural_error("variable grading must be >= 1: " + v.name);
    if (v.name.empty()) throw structural_error("empty variable name");
  }
  for (size_t i = 0; i < vars_.size(); ++i)
    for (size_t j = i + 1; j < vars_.size(); ++j)
      if (vars_[i].name == vars_[j].name)
        throw structural_error("duplicate variable name: " + vars_[i].name);
}

std::optional<size_t> RingSpec::var_index(std::string_view name) const {
  for (size_t i = 0; i < vars_.size(); ++i)
    if (vars_[i].name == name) return i;
  return std::nullopt;
}

RingPtr make_ring(CoeffField field, std::vector<VarSpec> vars, unsigned trunc) {
  return std::make_shared<const RingSpec>(field, std::move(vars), trunc);
}

Monomial Monomial::make(const RingSpec& ring, std::vector<unsigned> exps) {
  if (exps.size() != ring.nvars()) throw structural_error("exponent vector length mismatch");
  unsigned deg = 0;
  for (size_t i = 0; i < exps.size(); ++i) deg += exps[i] * ring.grading(i);
  return Monomial{std::move(exps), deg};
}

GradedPoly GradedPoly::constant(RingPtr ring, const mpq_class& c) {
  GradedPoly p(ring);
  p.add_term(Monomial::one(ring->nvars()), ring->field().normalize(c));
  return p;
}

GradedPoly GradedPoly::variable(RingPtr ring, size_t var, unsigned exp) {
  if (var >= ring->nvars()) throw structural_error("variable index out of range");
  std::vector<unsigned> e(ring->nvars(), 0);
  e[var] = exp;
  GradedPoly p(ring);
  p.add_term(Monomial::make(*ring, std::move(e)), 1);
  return p;
}

GradedPoly GradedPoly::monomial(RingPtr ring, Monomial m, const mpq_class& c) {
  GradedPoly p(ring);
  p.add_term(m, ring->field().normalize(c));
  return p;
}

bool GradedPoly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
}

mpq_class GradedPoly::constant_value() const {
  auto it = terms_.find(Monomial::one(ring_->nvars()));
  return it == terms_.end() ? mpq_class(0) : it->second;
}

unsigned GradedPoly::min_degree() const {
  if (terms_.empty()) return ring_->trunc() + 1;
  return terms_.begin()->first.degree;  // map is degree-sorted
}

unsigned GradedPoly::max_degree() const {
  if (terms_.empty()) return 0;
  return terms_.rbegin()->first.degree;
}

bool GradedPoly::is_homogeneous() const {
  return terms_.empty() || terms_.begin()->first.degree == terms_.rbegin()->first.degree;
}

GradedPoly GradedPoly::component(unsigned degree) const {
  GradedPoly out(ring_);
  for (const auto& [m, c] : terms_)
    if (m.degree == degree) out.terms_.emplace(m, c);
  return out;
}

void GradedPoly::add_term(const Monomial& m, const mpq_class& c) {
  if (m.degree > ring_->trunc() || c == 0) return;
  auto [it, inserted] = terms_.emplace(m, c);
  if (!inserted) {
    it->second = ring_->field().add(it->second, c);
    if (it->second == 0) terms_.erase(it);
  }
}

GradedPoly GradedPoly::operator-() const {
  GradedPoly out(ring_);
  for (const auto& [m, c] : terms_) out.terms_.emplace(m, ring_->field().neg(c));
  return out;
}

GradedPoly GradedPoly::operator+(const GradedPoly& o) const {
  require_same_ring(*this, o, "ring_add");
  GradedPoly out = *this;
  for (const auto& [m, c] : o.terms_) out.add_term(m, c);
  return out;
}

GradedPoly GradedPoly::operator-(const GradedPoly& o) const {
  require_same_ring(*this, o, "ring_sub");
  GradedPoly out = *this;
  for (const auto& [m, c] : o.terms_) out.add_term(m, ring_->field().neg(c));
  return out;
}

GradedPoly GradedPoly::operator*(const GradedPoly& o) const {
  require_same_ring(*this, o, "ring_mul");
  const RingSpec& R = *ring_;
  GradedPoly out(ring_);
  const size_t n = R.nvars();
  for (const auto& [ma, ca] : terms_) {
    for (const auto& [mb, cb] : o.terms_) {
      unsigned deg = ma.degree + mb.degree;
      if (deg > R.trunc()) continue;  // truncation kills the product
      Monomial m;
      m.exps.resize(n);
      for (size_t i = 0; i < n; ++i) m.exps[i] = ma.exps[i] + mb.exps[i];
      m.degree = deg;
      out.add_term(m, R.field().mul(ca, cb));
    }
  }
  return out;
}

GradedPoly GradedPoly::scaled(const mpq_class& s) const {
  GradedPoly out(ring_);
  mpq_class sn = ring_->field().normalize(s);
  if (sn == 0) return out;
  for (const auto& [m, c] : terms_) out.add_term(m, ring_->field().mul(c, sn));
  return out;
}

bool GradedPoly::operator==(const GradedPoly& o) const {
  if (!same_ring(ring_, o.ring_)) return false;
  return terms_ == o.terms_;
}

bool same_ring(const RingPtr& a, const RingPtr& b) {
  return a == b || (a && b && *a == *b);
}

void require_same_ring(const GradedPoly& a, const GradedPoly& b, const char* op) {
  if (!same_ring(a.ring(), b.ring()))
    throw structural_error(std::string(op) + ": operands live in different rings");
}

GradedPoly substitute(const GradedPoly& p, const RingPtr& target,
                      const std::map<size_t, GradedPoly>& images) {
  for (const auto& [v, img] : images)
    if (!same_ring(img.ring(), target))
      throw structural_error("substitute: image of variable " + p.ring()->var_name(v) +
                             " not in the target ring");
  // Cache powers of each image as needed.
  std::map<size_t, std::vector<GradedPoly>> powers;
  auto power = [&](size_t var, unsigned e) -> const GradedPoly& {
    auto& tab = powers[var];
    if (tab.empty()) {
      tab.push_back(GradedPoly::constant(target, 1));
      tab.push_back(images.at(var));
    }
    while (tab.size() <= e) tab.push_back(tab.back() * tab[1]);
    return tab[e];
  };
  GradedPoly out(target);
  for (const auto& [m, c] : p.terms()) {
    GradedPoly term = GradedPoly::constant(target, target->field().convert(c, p.ring()->field()));
    for (size_t v = 0; v < m.exps.size(); ++v) {
      if (m.exps[v] == 0) continue;
      if (!images.count(v))
        throw structural_error("substitute: missing image for variable " +
                               p.ring()->var_name(v));
      term = term * power(v, m.exps[v]);
      if (term.is_zero()) break;
    }
    out = out + term;
  }
  return out;
}

namespace {

void enumerate_degree(const RingSpec& ring, unsigned d, size_t var, std::vector<unsigned>& exps,
                      std::vector<Monomial>* out, size_t* count) {
  if (var == ring.nvars()) {
    if (d == 0) {
      if (out) out->push_back(Monomial::make(ring, exps));
      if (count) ++*count;
    }
    return;
  }
  if (var + 1 == ring.nvars()) {
    // last variable: exponent forced
    unsigned g = ring.grading(var);
    if (d % g == 0) {
      exps[var] = d / g;
      enumerate_degree(ring, 0, var + 1, exps, out, count);
      exps[var] = 0;
    }
    return;
  }
  unsigned g = ring.grading(var);
  for (unsigned e = d / g + 1; e-- > 0;) {  // descending: canonical order
    exps[var] = e;
    enumerate_degree(ring, d - e * g, var + 1, exps, out, count);
  }
  exps[var] = 0;
}

}  // namespace

std::vector<Monomial> degree_basis(const RingSpec& ring, unsigned d) {
  if (d > ring.trunc())
    throw structural_error("degree_basis: degree " + std::to_string(d) + " exceeds truncation " +
                           std::to_string(ring.trunc()));
  std::vector<Monomial> out;
  std::vector<unsigned> exps(ring.nvars(), 0);
  if (ring.nvars() == 0) {
    if (d == 0) out.push_back(Monomial::one(0));
    return out;
  }
  enumerate_degree(ring, d, 0, exps, &out, nullptr);
  return out;
}

size_t degree_dimension(const RingSpec& ring, unsigned d) {
  if (d > ring.trunc()) throw structural_error("degree_dimension: degree exceeds truncation");
  if (ring.nvars() == 0) return d == 0 ? 1 : 0;
  size_t count = 0;
  std::vector<unsigned> exps(ring.nvars(), 0);
  enumerate_degree(ring, d, 0, exps, nullptr, &count);
  return count;
}

GradedPoly truncate_to(const GradedPoly& p, const RingPtr& target) {
  if (p.ring()->vars() != target->vars() || !(p.ring()->field() == target->field()))
    throw structural_error("truncate_to: rings differ beyond truncation");
  GradedPoly out(target);
  for (const auto& [m, c] : p.terms()) out.add_term(m, c);
  return out;
}

GradedPoly convert_coeffs(const GradedPoly& p, const RingPtr& target) {
  if (p.ring()->vars() != target->vars() || p.ring()->trunc() != target->trunc())
    throw structural_error("convert_coeffs: rings differ beyond coefficients");
  GradedPoly out(target);
  for (const auto& [m, c] : p.terms())
    out.add_term(m, target->field().convert(c, p.ring()->field()));
  return out;
}

std::string to_string(const GradedPoly& p) {
  if (p.is_zero()) return "0";
  const RingSpec& R = *p.ring();
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : p.terms()) {
    mpq_class a = c;
    if (first) {
      if (a < 0) {
        os << "-";
        a = -a;
      }
    } else {
      os << (a < 0 ? " - " : " + ");
      if (a < 0) a = -a;
    }
    first = false;
    bool wrote = false;
    if (a != 1 || m.is_one()) {
      os << a.get_str();
      wrote = true;
    }
    for (size_t v = 0; v < m.exps.size(); ++v) {
      if (m.exps[v] == 0) continue;
      if (wrote) os << "*";
      os << R.var_name(v);
      if (m.exps[v] > 1) os << "^" << m.exps[v];
      wrote = true;
    }
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// JSON forms.  Canonical and bit-exact round trip: term order follows the
// monomial order, "mono" keys follow declared variable order.

ordered_json RingSpec::to_json() const {
  ordered_json j;
  j["coeffs"] = field_.name();
  ordered_json vs = ordered_json::array();
  for (const auto& v : vars_) vs.push_back({{"name", v.name}, {"deg", v.grading}});
  j["vars"] = std::move(vs);
  j["trunc"] = trunc_;
  return j;
}

RingPtr RingSpec::from_json(const json& j) {
  if (!j.is_object() || !j.contains("coeffs") || !j.contains("vars") || !j.contains("trunc"))
    throw structural_error("RingSpec JSON needs coeffs/vars/trunc");
  CoeffField f = CoeffField::parse(j.at("coeffs").get<std::string>());
  std::vector<VarSpec> vars;
  for (const auto& v : j.at("vars"))
    vars.push_back({v.at("name").get<std::string>(), v.at("deg").get<unsigned>()});
  return make_ring(f, std::move(vars), j.at("trunc").get<unsigned>());
}

ordered_json poly_to_json(const GradedPoly& p) {
  const RingSpec& R = *p.ring();
  ordered_json terms = ordered_json::array();
  for (const auto& [m, c] : p.terms()) {
    ordered_json mono = ordered_json::object();
    for (size_t v = 0; v < m.exps.size(); ++v)
      if (m.exps[v]) mono[R.var_name(v)] = m.exps[v];
    terms.push_back({{"mono", std::move(mono)}, {"coef", R.field().coeff_to_string(c)}});
  }
  return ordered_json{{"terms", std::move(terms)}};
}

GradedPoly poly_from_json(const RingPtr& ring, const json& j) {
  if (!j.is_object() || !j.contains("terms"))
    throw structural_error("GradedPoly JSON needs a terms array");
  GradedPoly p(ring);
  for (const auto& t : j.at("terms")) {
    std::vector<unsigned> exps(ring->nvars(), 0);
    for (const auto& [name, e] : t.at("mono").items()) {
      auto idx = ring->var_index(name);
      if (!idx) throw structural_error("unknown variable in monomial: " + name);
      exps[*idx] = e.get<unsigned>();
    }
    mpq_class c = ring->field().coeff_from_string(t.at("coef").get<std::string>());
    p.add_term(Monomial::make(*ring, std::move(exps)), c);
  }
  return p;
}

// ---------------------------------------------------------------------------
// Expression parser:  expr := ['-'] term (('+'|'-') term)* ;
// term := factor ('*' factor)* ; factor := atom ['^' uint] ;
// atom := rational | variable | '(' expr ')'.

namespace {

struct Parser {
  const RingPtr& ring;
  std::string_view s;
  size_t pos = 0;

  void skip() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }
  bool eat(char c) {
    skip();
    if (pos < s.size() && s[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }
  [[noreturn]] void fail(const std::string& what) {
    throw structural_error("parse error at offset " + std::to_string(pos) + ": " + what);
  }

  GradedPoly expr() {
    skip();
    bool neg = eat('-');
    GradedPoly acc = term();
    if (neg) acc = -acc;
    for (;;) {
      skip();
      if (eat('+'))
        acc = acc + term();
      else if (eat('-'))
        acc = acc - term();
      else
        break;
    }
    return acc;
  }

  GradedPoly term() {
    GradedPoly acc = factor();
    for (;;) {
      skip();
      if (eat('*'))
        acc = acc * factor();
      else if (pos < s.size() &&
               (std::isalpha(static_cast<unsigned char>(s[pos])) || s[pos] == '('))
        acc = acc * factor();  // implicit product: "2a", "x(x+1)"
      else
        break;
    }
    return acc;
  }

  GradedPoly factor() {
    GradedPoly base = atom();
    skip();
    if (eat('^')) {
      skip();
      size_t start = pos;
      while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
      if (pos == start) fail("expected exponent");
      unsigned e = std::stoul(std::string(s.substr(start, pos - start)));
      GradedPoly out = GradedPoly::constant(ring, 1);
      for (unsigned i = 0; i < e; ++i) out = out * base;
      return out;
    }
    return base;
  }

  GradedPoly atom() {
    skip();
    if (pos >= s.size()) fail("unexpected end of input");
    if (eat('(')) {
      GradedPoly inner = expr();
      if (!eat(')')) fail("expected ')'");
      return inner;
    }
    char c = s[pos];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t start = pos;
      while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
      std::string num(s.substr(start, pos - start));
      if (eat('/')) {
        skip();
        size_t dstart = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (pos == dstart) fail("expected denominator");
        num += "/" + std::string(s.substr(dstart, pos - dstart));
      }
      return GradedPoly::constant(ring, ring->field().coeff_from_string(num));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      // longest variable-name match
      size_t best = 0;
      std::optional<size_t> var;
      for (size_t i = 0; i < ring->nvars(); ++i) {
        const std::string& n = ring->var_name(i);
        if (n.size() > best && s.substr(pos, n.size()) == n) {
          best = n.size();
          var = i;
        }
      }
      if (!var) fail("unknown variable starting at '" + std::string(1, c) + "'");
      pos += best;
      return GradedPoly::variable(ring, *var);
    }
    fail(std::string("unexpected character '") + c + "'");
  }
};

}  // namespace

GradedPoly parse_poly(const RingPtr& ring, std::string_view text) {
  Parser p{ring, text};
  GradedPoly out = p.expr();
  p.skip();
  if (p.pos != text.size()) p.fail("trailing input");
  return out;
}

}  // namespace divint
