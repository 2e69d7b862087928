#include "divint/jobs.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "divint/exterior.hpp"
#include "divint/pkd.hpp"
#include "divint/toml_lite.hpp"
#include "divint/universal.hpp"

namespace divint {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

void validate_keys(const json& obj, const std::string& path,
                   const std::set<std::string>& required,
                   const std::set<std::string>& optional) {
  if (!obj.is_object()) throw structural_error(path + ": expected an object");
  for (const auto& [key, value] : obj.items()) {
    if (!required.count(key) && !optional.count(key))
      throw structural_error("unknown field '" + path + "." + key + "'");
  }
  for (const auto& key : required)
    if (!obj.contains(key)) throw structural_error("missing field '" + path + "." + key + "'");
}

Divisor divisor_from_field(const json& job, const char* field) {
  const json& doc = job.at(field);
  validate_keys(doc, field, {"base", "divisor"}, {});
  validate_keys(doc.at("base"), std::string(field) + ".base", {"coeffs", "vars", "trunc"}, {});
  validate_keys(doc.at("divisor"), std::string(field) + ".divisor", {"degree", "coeffs"}, {});
  return Divisor::from_json(doc);
}

Divisor divisor_input(const json& job, const char* field, unsigned default_trunc,
                      const std::string& prefix) {
  if (job.contains(field)) return divisor_from_field(job, field);
  if (job.contains("symbolic_degree")) {
    unsigned d = job.at("symbolic_degree").get<unsigned>();
    unsigned trunc = job.value("trunc", default_trunc);
    return universal_divisor(d, trunc, prefix);
  }
  throw structural_error(std::string("missing field '") + field +
                         "' (or 'symbolic_degree' for the universal divisor)");
}

std::vector<std::string> ideal_strings(const IdealGens& ideal) {
  std::vector<std::string> out;
  std::set<std::string> seen;
  for (const auto& g : ideal.gens) {
    std::string s = to_string(g), neg = to_string(-g);
    if (seen.count(s) || seen.count(neg)) continue;
    seen.insert(s);
    out.push_back(s);
  }
  return out;
}

ordered_json rows_json(const VerifyReport& rep) {
  ordered_json rows = ordered_json::array();
  for (const auto& r : rep.rows) {
    ordered_json row{{"degree", r.degree}, {"expected", r.expected}, {"computed", r.computed}};
    if (!r.torsion.empty()) row["torsion"] = r.torsion;
    row["ok"] = r.ok;
    rows.push_back(std::move(row));
  }
  return rows;
}

ordered_json series_json(const PowerSeries& s) {
  ordered_json out = ordered_json::array();
  for (const auto& x : s) out.push_back(x.get_str());
  return out;
}

unsigned uint_field(const json& job, const char* name) {
  if (!job.contains(name)) throw structural_error(std::string("missing field '") + name + "'");
  const json& v = job.at(name);
  if (!v.is_number_integer() || v.get<long long>() < 0)
    throw structural_error(std::string("field '") + name + "' must be a nonnegative integer");
  return static_cast<unsigned>(v.get<long long>());
}

CoeffField coeffs_field(const json& job, const char* def = "Z") {
  return CoeffField::parse(job.value("coeffs", def));
}

// ---- command handlers ---------------------------------------------------

ordered_json cmd_divisor_intersect(const json& job, int& code) {
  validate_keys(job, "job", {"command", "divisor0", "divisor1"}, {"output"});
  Divisor d0 = divisor_from_field(job, "divisor0");
  Divisor d1 = divisor_from_field(job, "divisor1");
  ordered_json rep;
  rep["intersection_rank"] = intersection_rank(d0, d1);
  for (size_t r = 1; r <= std::min(d0.degree, d1.degree); ++r)
    rep["obstruction_ideal_r" + std::to_string(r)] =
        ideal_strings(int_obstruction_ideal(d0, d1, r));
  code = 0;
  return rep;
}

ordered_json cmd_divisor_resultant(const json& job, int& code) {
  validate_keys(job, "job", {"command", "divisor0", "divisor1"}, {"output"});
  Divisor d0 = divisor_from_field(job, "divisor0");
  Divisor d1 = divisor_from_field(job, "divisor1");
  GradedPoly res = resultant(d0, d1);
  ordered_json rep;
  rep["resultant"] = to_string(res);
  rep["resultant_terms"] = poly_to_json(res);
  code = 0;
  return rep;
}

ordered_json cmd_divisor_porteous(const json& job, int& code) {
  validate_keys(job, "job", {"command", "divisor0", "divisor1", "r"}, {"output"});
  Divisor d0 = divisor_from_field(job, "divisor0");
  Divisor d1 = divisor_from_field(job, "divisor1");
  size_t r = uint_field(job, "r");
  GradedPoly minor = thom_porteous_minor(d0, d1, r);
  auto ideal = fitting_ideal(presentation_mu(d0, d1, d0.degree > d1.degree), r);
  int fail_deg = -1;
  bool member = element_in_ideal(minor, ideal, nullptr, &fail_deg);
  ordered_json rep;
  rep["minor"] = to_string(minor);
  rep["in_obstruction_ideal"] = member;
  if (!member) rep["first_failing_degree"] = fail_deg;
  code = member ? 0 : 1;
  return rep;
}

ordered_json cmd_divisor_presentations(const json& job, int& code) {
  validate_keys(job, "job", {"command", "divisor0", "divisor1"}, {"output", "max_degree"});
  Divisor d0 = divisor_from_field(job, "divisor0");
  Divisor d1 = divisor_from_field(job, "divisor1");
  unsigned up_to = job.value("max_degree", d0.base->trunc());
  auto pushout = presentation_pushout(d0, d1);
  auto sylv = presentation_sylvester(d0, d1);
  auto mu = presentation_mu(d0, d1);
  auto mu_m = presentation_mu(d0, d1, true);
  auto laurent = presentation_laurent(d0, d1);
  bool agree = true;
  for (size_t j = 0; j <= std::min(d0.degree, d1.degree) + 1 && agree; ++j) {
    auto ref = fitting_ideal(pushout, j);
    for (const Presentation* p : {&sylv, &mu, &mu_m, &laurent})
      if (!ideal_equal(ref, fitting_ideal(*p, j), nullptr, up_to).equal) agree = false;
  }
  ordered_json rep;
  rep["pushout"] = pushout.to_json();
  rep["sylvester"] = sylv.to_json();
  rep["mu"] = mu.to_json();
  rep["mu_mirrored"] = mu_m.to_json();
  rep["laurent"] = laurent.to_json();
  rep["fitting_ideals_agree"] = agree;
  code = agree ? 0 : 1;
  return rep;
}

ordered_json cmd_fitting_rank(const json& job, int& code) {
  validate_keys(job, "job", {"command", "ring", "presentation"}, {"output"});
  auto ring = RingSpec::from_json(job.at("ring"));
  auto p = Presentation::from_json(ring, job.at("presentation"));
  ordered_json rep;
  rep["p0"] = p.p0();
  rep["p1"] = p.p1();
  rep["fitting_rank"] = fitting_rank(p);
  code = 0;
  return rep;
}

ordered_json cmd_fitting_ideals(const json& job, int& code) {
  validate_keys(job, "job", {"command", "ring", "presentation", "j"}, {"output"});
  auto ring = RingSpec::from_json(job.at("ring"));
  auto p = Presentation::from_json(ring, job.at("presentation"));
  ordered_json rep;
  rep["j"] = uint_field(job, "j");
  rep["generators"] = ideal_strings(fitting_ideal(p, uint_field(job, "j")));
  code = 0;
  return rep;
}

ordered_json cmd_universal_verify_basis(const json& job, int& code) {
  validate_keys(job, "job", {"command", "d0", "d1", "r", "max_degree"},
                {"output", "coeffs", "trunc", "threads"});
  unsigned max_degree = uint_field(job, "max_degree");
  UniversalSetup s(uint_field(job, "d0"), uint_field(job, "d1"), uint_field(job, "r"),
                   job.value("trunc", max_degree));
  auto rep = verify_int_basis(s, max_degree, coeffs_field(job), job.value("threads", 1u));
  ordered_json out;
  out["check"] = rep.check;
  out["rows"] = rows_json(rep);
  out["pass"] = rep.pass;
  if (!rep.pass) out["first_failure"] = rep.first_failure;
  code = rep.pass ? 0 : 1;
  return out;
}

ordered_json cmd_universal_pi_star(const json& job, int& code) {
  validate_keys(job, "job", {"command", "d0", "d1", "r"},
                {"output", "trunc", "max_degree", "threads"});
  unsigned max_degree = job.value("max_degree", 6u);
  UniversalSetup s(uint_field(job, "d0"), uint_field(job, "d1"), uint_field(job, "r"),
                   job.value("trunc", max_degree));
  auto images = pi_star_images(s);
  ordered_json imgs = ordered_json::object();
  for (const auto& [var, img] : images) imgs[s.ambient->var_name(var)] = to_string(img);
  bool kills = true;
  for (const auto& g : int_ideal_universal(s).gens)
    if (!pi_star(s, g).is_zero()) kills = false;
  auto mono = verify_pi_split_mono(s, max_degree, job.value("threads", 1u));
  ordered_json out;
  out["images"] = std::move(imgs);
  out["kills_minors_ideal"] = kills;
  out["split_mono_rows"] = rows_json(mono);
  out["pass"] = kills && mono.pass;
  code = (kills && mono.pass) ? 0 : 1;
  return out;
}

ordered_json cmd_universal_ps_identity(const json& job, int& code) {
  validate_keys(job, "job", {"command", "d0", "d1", "r", "max_degree"}, {"output"});
  unsigned d0 = uint_field(job, "d0"), d1 = uint_field(job, "d1"), r = uint_field(job, "r");
  unsigned max_degree = uint_field(job, "max_degree");
  PsIdentityReport rep = r == std::min(d0, d1) ? verify_ps_anchor(d0, d1, max_degree)
                                               : verify_ps_identity(d0, d1, r, max_degree);
  ordered_json out;
  out["identity"] = r == std::min(d0, d1)
                        ? "PS(Int_min) = PS(Sub_min)"
                        : "PS(Int_r) - PS(Int_{r+1}) = w^{(d0-r)(d1-r)} PS(Sub_r)";
  out["lhs"] = series_json(rep.lhs);
  out["rhs"] = series_json(rep.rhs);
  out["pass"] = rep.pass;
  if (!rep.pass) out["first_failure"] = rep.first_failure;
  code = rep.pass ? 0 : 1;
  return out;
}

ordered_json cmd_universal_schur_leading(const json& job, int& code) {
  validate_keys(job, "job", {"command", "n", "r", "gamma"}, {"output"});
  std::vector<unsigned> gamma;
  for (const auto& g : job.at("gamma")) gamma.push_back(g.get<unsigned>());
  auto res = schur_leading_term(uint_field(job, "n"), uint_field(job, "r"), gamma);
  ordered_json out;
  out["determinant"] = to_string(res.determinant);
  out["claimed_lowest"] = to_string(res.claimed_lowest);
  out["actual_lowest"] = to_string(res.actual_lowest);
  out["max_term_weight"] = res.max_term_weight;
  out["pass"] = res.lowest_matches;
  code = res.lowest_matches ? 0 : 1;
  return out;
}

ordered_json cmd_pkd_relators(const json& job, int& code) {
  validate_keys(job, "job", {"command", "k"},
                {"output", "divisor", "symbolic_degree", "trunc", "max_degree"});
  unsigned k = uint_field(job, "k");
  Divisor d = divisor_input(job, "divisor", 2 * k + 8, "c");
  auto ctx = division_chain(d, k);
  auto dets = pkd_relators_det(ctx);
  bool det_match = dets == ctx.b;
  unsigned up_to = job.value("max_degree", std::min(d.base->trunc(), d.degree + 2));
  auto families = relator_families_agree(ctx, up_to);
  ordered_json out;
  ordered_json a = ordered_json::array(), b = ordered_json::array(), dd = ordered_json::array();
  for (const auto& g : ctx.a[k]) a.push_back(to_string(g));
  for (const auto& g : ctx.b) b.push_back(to_string(g));
  for (const auto& g : dets) dd.push_back(to_string(g));
  out["a_family"] = std::move(a);
  out["b_family"] = std::move(b);
  out["b_by_determinant"] = std::move(dd);
  out["determinant_formula_matches"] = det_match;
  out["families_generate_same_ideal"] = families.equal;
  if (!families.equal) out["first_failing_degree"] = families.first_failing_degree;
  out["pass"] = det_match && families.equal;
  code = (det_match && families.equal) ? 0 : 1;
  return out;
}

ordered_json cmd_pkd_basis(const json& job, int& code) {
  validate_keys(job, "job", {"command", "k", "max_degree"},
                {"output", "divisor", "symbolic_degree", "trunc", "threads"});
  unsigned k = uint_field(job, "k");
  unsigned max_degree = uint_field(job, "max_degree");
  Divisor d = divisor_input(job, "divisor", max_degree, "c");
  auto ctx = division_chain(d, k);
  auto basis = pkd_basis_monomials(ctx);
  auto rep = pkd_basis_report(ctx, max_degree, job.value("threads", 1u));
  ordered_json monos = ordered_json::array();
  for (const auto& m : basis) monos.push_back(to_string(GradedPoly::monomial(ctx.ext, m, 1)));
  ordered_json out;
  out["basis"] = std::move(monos);
  out["count"] = basis.size();
  out["rows"] = rows_json(rep);
  out["pass"] = rep.pass;
  code = rep.pass ? 0 : 1;
  return out;
}

ordered_json cmd_pkd_invariants(const json& job, int& code) {
  validate_keys(job, "job", {"command", "k", "max_degree"},
                {"output", "divisor", "symbolic_degree", "trunc", "coeffs"});
  unsigned k = uint_field(job, "k");
  unsigned max_degree = uint_field(job, "max_degree");
  Divisor d = divisor_input(job, "divisor", max_degree, "c");
  auto ctx = division_chain(d, k);
  CoeffField field = coeffs_field(job, "Q");
  ordered_json rows = ordered_json::array();
  size_t total_k = 0, total_q = 0;
  for (unsigned deg = 0; deg <= max_degree; ++deg) {
    size_t dim_k = sigma_invariant_dim(ctx, field, deg);
    size_t dim_q = sigma_invariant_dim(ctx, CoeffField::Q(), deg);
    total_k += dim_k;
    total_q += dim_q;
    rows.push_back(ordered_json{{"degree", deg},
                                {"dim", dim_k},
                                {"dim_over_Q", dim_q},
                                {"extra_over_Q", dim_k >= dim_q ? dim_k - dim_q : 0}});
  }
  ordered_json out;
  out["coeffs"] = field.name();
  out["rows"] = std::move(rows);
  out["total"] = total_k;
  out["total_over_Q"] = total_q;
  code = 0;
  return out;
}

ordered_json cmd_pkd_kernel(const json& job, int& code) {
  validate_keys(job, "job", {"command", "k", "max_degree"},
                {"output", "divisor", "symbolic_degree", "trunc"});
  unsigned k = uint_field(job, "k");
  unsigned max_degree = uint_field(job, "max_degree");
  Divisor d = divisor_input(job, "divisor", max_degree, "c");
  auto ctx = division_chain(d, k);
  auto rep = verify_invariant_kernel(ctx, max_degree);
  ordered_json out;
  out["check"] = rep.check;
  out["rows"] = rows_json(rep);
  out["pass"] = rep.pass;
  code = rep.pass ? 0 : 1;
  return out;
}

ordered_json cmd_exterior_check_cross(const json& job, int& code) {
  validate_keys(job, "job", {"command", "d", "k"}, {"output"});
  unsigned d = uint_field(job, "d"), k = uint_field(job, "k");
  auto R = make_ring(CoeffField::Z(), std::vector<VarSpec>{}, 4);
  bool cross = true, triangular = true;
  std::vector<unsigned> alpha(k, 0);
  std::function<void(unsigned)> rec = [&](unsigned i) {
    if (i == k) {
      auto t = TensorElement::pure(R, d, alpha);
      if (!(psi_k(mu_k(t)) == alt_k(t))) cross = false;
      bool decreasing = true;
      for (size_t p = 0; p + 1 < alpha.size(); ++p)
        if (alpha[p] <= alpha[p + 1]) decreasing = false;
      if (decreasing) {
        auto at = alt_k(t);
        auto it = at.terms.find(alpha);
        if (it == at.terms.end() || !(it->second == GradedPoly::constant(R, 1)))
          triangular = false;
        for (const auto& [beta, c] : at.terms) {
          bool in_a0 = true;
          for (size_t p = 0; p + 1 < beta.size(); ++p)
            if (beta[p] <= beta[p + 1]) in_a0 = false;
          if (in_a0 && beta != alpha) triangular = false;
        }
      }
      return;
    }
    for (unsigned e = 0; e < d; ++e) {
      alpha[i] = e;
      rec(i + 1);
    }
  };
  rec(0);
  ordered_json out;
  out["psi_mu_equals_alt"] = cross;
  out["psi_triangular_on_A0"] = triangular;
  out["pass"] = cross && triangular;
  code = (cross && triangular) ? 0 : 1;
  return out;
}

ordered_json cmd_exterior_phi(const json& job, int& code) {
  validate_keys(job, "job", {"command", "k", "beta"},
                {"output", "divisor", "symbolic_degree", "trunc"});
  unsigned k = uint_field(job, "k");
  std::vector<unsigned> beta;
  for (const auto& b : job.at("beta")) beta.push_back(b.get<unsigned>());
  Divisor d = divisor_input(job, "divisor", 12, "s");
  GradedPoly pm = phi_map(d, k, beta);
  GradedPoly pd = phi_determinant(d, k, beta);
  ordered_json out;
  out["phi_map"] = to_string(pm);
  out["phi_determinant"] = to_string(pd);
  out["agree"] = pm == pd;
  code = pm == pd ? 0 : 1;
  return out;
}

ordered_json cmd_exterior_verify_iso(const json& job, int& code) {
  validate_keys(job, "job", {"command", "k", "max_degree"},
                {"output", "divisor", "symbolic_degree", "trunc"});
  unsigned k = uint_field(job, "k");
  unsigned max_degree = uint_field(job, "max_degree");
  Divisor d = divisor_input(job, "divisor", max_degree, "s");
  auto rep = verify_phi_iso(d, k, max_degree);
  ordered_json out;
  out["check"] = rep.check;
  out["rows"] = rows_json(rep);
  out["pass"] = rep.pass;
  code = rep.pass ? 0 : 1;
  return out;
}

}  // namespace

JobResult run_job(const json& job) {
  JobResult result;
  try {
    if (!job.is_object() || !job.contains("command"))
      throw structural_error("job document needs a 'command' field");
    std::string cmd = job.at("command").get<std::string>();
    int code = 0;
    ordered_json rep;
    if (cmd == "divisor.intersect") rep = cmd_divisor_intersect(job, code);
    else if (cmd == "divisor.resultant") rep = cmd_divisor_resultant(job, code);
    else if (cmd == "divisor.porteous") rep = cmd_divisor_porteous(job, code);
    else if (cmd == "divisor.presentations") rep = cmd_divisor_presentations(job, code);
    else if (cmd == "fitting.rank") rep = cmd_fitting_rank(job, code);
    else if (cmd == "fitting.ideals") rep = cmd_fitting_ideals(job, code);
    else if (cmd == "universal.verify-basis") rep = cmd_universal_verify_basis(job, code);
    else if (cmd == "universal.pi-star") rep = cmd_universal_pi_star(job, code);
    else if (cmd == "universal.ps-identity") rep = cmd_universal_ps_identity(job, code);
    else if (cmd == "universal.schur-leading") rep = cmd_universal_schur_leading(job, code);
    else if (cmd == "pkd.relators") rep = cmd_pkd_relators(job, code);
    else if (cmd == "pkd.basis") rep = cmd_pkd_basis(job, code);
    else if (cmd == "pkd.invariants") rep = cmd_pkd_invariants(job, code);
    else if (cmd == "pkd.kernel") rep = cmd_pkd_kernel(job, code);
    else if (cmd == "exterior.check-cross") rep = cmd_exterior_check_cross(job, code);
    else if (cmd == "exterior.phi") rep = cmd_exterior_phi(job, code);
    else if (cmd == "exterior.verify-iso") rep = cmd_exterior_verify_iso(job, code);
    else throw structural_error("unknown command: " + cmd);
    result.exit_code = code;
    ordered_json inputs = ordered_json::object();
    for (const auto& [key, value] : job.items())
      if (key != "command" && key != "output") inputs[key] = value;
    result.report = ordered_json{{"command", cmd}, {"inputs", std::move(inputs)},
                                 {"report", std::move(rep)}};
  } catch (const structural_error& e) {
    result.exit_code = 2;
    result.report = ordered_json{{"error", e.what()}};
  }
  return result;
}

json load_document(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw structural_error("cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  std::string text = buf.str();
  auto ends_with = [&](const char* suffix) {
    std::string s(suffix);
    return path.size() >= s.size() && path.compare(path.size() - s.size(), s.size(), s) == 0;
  };
  if (ends_with(".toml")) return toml_lite_parse(text);
  if (ends_with(".json")) {
    try {
      return json::parse(text);
    } catch (const json::parse_error& e) {
      throw structural_error(path + ": " + e.what());
    }
  }
  try {
    return json::parse(text);
  } catch (const json::parse_error&) {
    return toml_lite_parse(text);
  }
}

}  // namespace divint
