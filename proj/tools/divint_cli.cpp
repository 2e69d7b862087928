// divint: exact divisor-intersection calculus on truncated graded rings.
// Every subcommand validates its inputs, runs one job and prints a
// deterministic JSON report.  Exit codes: 0 pass, 1 verified-false, 2 usage.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "divint/jobs.hpp"
#include "divint/scalar.hpp"

using nlohmann::json;

namespace {

struct CommonOpts {
  std::string output;
  std::string coeffs;
  unsigned trunc = 0;
  unsigned max_degree = 0;
  unsigned threads = 1;
  bool has_trunc = false, has_max_degree = false, has_coeffs = false;
};

int emit(const divint::JobResult& result, const std::string& output) {
  std::string text = result.report.dump(2);
  if (output.empty() || output == "-") {
    std::cout << text << "\n";
  } else {
    std::ofstream out(output);
    if (!out) {
      std::cerr << "cannot write " << output << "\n";
      return 2;
    }
    out << text << "\n";
  }
  return result.exit_code;
}

int run(json job, const std::string& output) { return emit(divint::run_job(job), output); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact calculus of divisor intersections over truncated graded rings"};
  app.require_subcommand(1);

  std::string output;
  app.add_option("--output", output, "write the JSON report to a file instead of stdout");

  // run a whole job document
  std::string job_path;
  auto* run_cmd = app.add_subcommand("run", "run a JobSpec document (TOML or JSON)");
  run_cmd->add_option("job", job_path, "job file")->required();

  // ---- divisor ----
  auto* divisor = app.add_subcommand("divisor", "two-divisor computations");
  divisor->require_subcommand(1);
  std::string div0_path, div1_path;
  unsigned porteous_r = 0;
  auto add_pair = [&](CLI::App* cmd) {
    cmd->add_option("--divisor0", div0_path, "divisor file (JSON or TOML)")->required();
    cmd->add_option("--divisor1", div1_path, "divisor file (JSON or TOML)")->required();
  };
  auto* d_intersect = divisor->add_subcommand("intersect", "intersection rank and obstructions");
  add_pair(d_intersect);
  auto* d_resultant = divisor->add_subcommand("resultant", "determinant of the Sylvester matrix");
  add_pair(d_resultant);
  auto* d_porteous = divisor->add_subcommand("porteous", "Thom-Porteous minor and membership");
  add_pair(d_porteous);
  d_porteous->add_option("--r", porteous_r, "rank level")->required();
  auto* d_pres = divisor->add_subcommand("presentations", "all four presentations + agreement");
  add_pair(d_pres);

  // ---- fitting ----
  auto* fitting = app.add_subcommand("fitting", "Fitting ideals of a presentation");
  fitting->require_subcommand(1);
  std::string matrix_path;
  unsigned fitting_j = 0;
  auto* f_rank = fitting->add_subcommand("rank", "Fitting rank of a presented module");
  f_rank->add_option("--matrix", matrix_path, "file with {ring, presentation}")->required();
  auto* f_ideals = fitting->add_subcommand("ideals", "generators of I_j");
  f_ideals->add_option("--matrix", matrix_path, "file with {ring, presentation}")->required();
  f_ideals->add_option("--j", fitting_j, "Fitting index")->required();

  // ---- universal ----
  auto* universal = app.add_subcommand("universal", "universal rings Int_r / Sub_r");
  universal->require_subcommand(1);
  unsigned u_d0 = 0, u_d1 = 0, u_r = 0, u_n = 0;
  unsigned max_degree = 6, trunc = 0, threads = 1;
  std::string coeffs = "Z";
  std::vector<unsigned> gamma;
  auto add_setup = [&](CLI::App* cmd) {
    cmd->add_option("--d0", u_d0)->required();
    cmd->add_option("--d1", u_d1)->required();
    cmd->add_option("--r", u_r)->required();
    cmd->add_option("--trunc", trunc, "truncation degree (defaults to max-degree)");
    cmd->add_option("--threads", threads, "per-degree parallelism (default 1)");
  };
  auto* u_basis = universal->add_subcommand("verify-basis", "thm-int-dec basis ranks");
  add_setup(u_basis);
  u_basis->add_option("--max-degree", max_degree)->required();
  u_basis->add_option("--coeffs", coeffs, "Z|Q|F2|F3|Fp:<p>");
  auto* u_pi = universal->add_subcommand("pi-star", "pi* images, ideal kill, split mono");
  add_setup(u_pi);
  u_pi->add_option("--max-degree", max_degree);
  auto* u_ps = universal->add_subcommand("ps-identity", "Poincare-series identity");
  u_ps->add_option("--d0", u_d0)->required();
  u_ps->add_option("--d1", u_d1)->required();
  u_ps->add_option("--r", u_r)->required();
  u_ps->add_option("--max-degree", max_degree)->required();
  auto* u_schur = universal->add_subcommand("schur-leading", "lem-leading lowest term");
  u_schur->add_option("--n", u_n)->required();
  u_schur->add_option("--r", u_r)->required();
  u_schur->add_option("--gamma", gamma, "strictly increasing indices")->required()->delimiter(',');

  // ---- pkd ----
  auto* pkd = app.add_subcommand("pkd", "the schemes P_kD");
  pkd->require_subcommand(1);
  std::string div_path;
  unsigned pkd_k = 0, symbolic_degree = 0;
  auto add_divisor = [&](CLI::App* cmd) {
    cmd->add_option("--divisor", div_path, "divisor file (JSON or TOML)");
    cmd->add_option("--symbolic", symbolic_degree, "use the universal divisor of this degree");
    cmd->add_option("--trunc", trunc, "truncation for the symbolic divisor");
    cmd->add_option("--k", pkd_k)->required();
  };
  auto* p_rel = pkd->add_subcommand("relators", "division chain and determinant formula");
  add_divisor(p_rel);
  p_rel->add_option("--max-degree", max_degree, "degree bound for the ideal-equality check");
  auto* p_basis = pkd->add_subcommand("basis", "monomial basis and degreewise freeness");
  add_divisor(p_basis);
  p_basis->add_option("--max-degree", max_degree)->required();
  p_basis->add_option("--threads", threads);
  auto* p_inv = pkd->add_subcommand("invariants", "Sigma_k-invariant dimensions");
  add_divisor(p_inv);
  p_inv->add_option("--max-degree", max_degree)->required();
  p_inv->add_option("--coeffs", coeffs, "Z|Q|F2|F3|Fp:<p>");
  auto* p_ker = pkd->add_subcommand("kernel", "prop-invariant kernel identification");
  add_divisor(p_ker);
  p_ker->add_option("--max-degree", max_degree)->required();

  // ---- exterior ----
  auto* exterior = app.add_subcommand("exterior", "exterior powers of O_D");
  exterior->require_subcommand(1);
  unsigned e_d = 0, e_k = 0;
  std::vector<unsigned> beta;
  auto* e_cross = exterior->add_subcommand("check-cross", "psi mu = alt and triangularity");
  e_cross->add_option("--d", e_d)->required();
  e_cross->add_option("--k", e_k)->required();
  auto* e_phi = exterior->add_subcommand("phi", "phi of a wedge and the determinant formula");
  e_phi->add_option("--divisor", div_path, "divisor file (JSON or TOML)");
  e_phi->add_option("--symbolic", symbolic_degree, "use the universal divisor of this degree");
  e_phi->add_option("--trunc", trunc, "truncation for the symbolic divisor");
  e_phi->add_option("--k", e_k)->required();
  e_phi->add_option("--beta", beta, "decreasing wedge indices, e.g. 3,1")->required()->delimiter(',');
  auto* e_iso = exterior->add_subcommand("verify-iso", "prop-phi-iso unimodularity");
  e_iso->add_option("--divisor", div_path, "divisor file (JSON or TOML)");
  e_iso->add_option("--symbolic", symbolic_degree, "use the universal divisor of this degree");
  e_iso->add_option("--trunc", trunc, "truncation for the symbolic divisor");
  e_iso->add_option("--k", e_k)->required();
  e_iso->add_option("--max-degree", max_degree)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;  // usage and schema problems exit with 2
  }

  try {
    json job;
    auto put_divisor_pair = [&](json& j) {
      j["divisor0"] = divint::load_document(div0_path);
      j["divisor1"] = divint::load_document(div1_path);
    };
    auto put_divisor = [&](json& j) {
      if (!div_path.empty())
        j["divisor"] = divint::load_document(div_path);
      else if (symbolic_degree > 0)
        j["symbolic_degree"] = symbolic_degree;
      if (trunc > 0) j["trunc"] = trunc;
    };

    if (run_cmd->parsed()) {
      job = divint::load_document(job_path);
      return run(job, output);
    }
    if (d_intersect->parsed()) {
      job["command"] = "divisor.intersect";
      put_divisor_pair(job);
    } else if (d_resultant->parsed()) {
      job["command"] = "divisor.resultant";
      put_divisor_pair(job);
    } else if (d_porteous->parsed()) {
      job["command"] = "divisor.porteous";
      put_divisor_pair(job);
      job["r"] = porteous_r;
    } else if (d_pres->parsed()) {
      job["command"] = "divisor.presentations";
      put_divisor_pair(job);
    } else if (f_rank->parsed() || f_ideals->parsed()) {
      json doc = divint::load_document(matrix_path);
      job["command"] = f_rank->parsed() ? "fitting.rank" : "fitting.ideals";
      if (!doc.contains("ring") || !doc.contains("presentation"))
        throw divint::structural_error("matrix file needs {ring, presentation}");
      job["ring"] = doc["ring"];
      job["presentation"] = doc["presentation"];
      if (f_ideals->parsed()) job["j"] = fitting_j;
    } else if (u_basis->parsed()) {
      job = {{"command", "universal.verify-basis"}, {"d0", u_d0}, {"d1", u_d1}, {"r", u_r},
             {"max_degree", max_degree}, {"coeffs", coeffs}, {"threads", threads}};
      if (trunc > 0) job["trunc"] = trunc;
    } else if (u_pi->parsed()) {
      job = {{"command", "universal.pi-star"}, {"d0", u_d0}, {"d1", u_d1}, {"r", u_r},
             {"max_degree", max_degree}, {"threads", threads}};
      if (trunc > 0) job["trunc"] = trunc;
    } else if (u_ps->parsed()) {
      job = {{"command", "universal.ps-identity"}, {"d0", u_d0}, {"d1", u_d1}, {"r", u_r},
             {"max_degree", max_degree}};
    } else if (u_schur->parsed()) {
      job = {{"command", "universal.schur-leading"}, {"n", u_n}, {"r", u_r}, {"gamma", gamma}};
    } else if (p_rel->parsed()) {
      job["command"] = "pkd.relators";
      put_divisor(job);
      job["k"] = pkd_k;
      if (p_rel->count("--max-degree")) job["max_degree"] = max_degree;
    } else if (p_basis->parsed()) {
      job["command"] = "pkd.basis";
      put_divisor(job);
      job["k"] = pkd_k;
      job["max_degree"] = max_degree;
      job["threads"] = threads;
    } else if (p_inv->parsed()) {
      job["command"] = "pkd.invariants";
      put_divisor(job);
      job["k"] = pkd_k;
      job["max_degree"] = max_degree;
      job["coeffs"] = coeffs;
    } else if (p_ker->parsed()) {
      job["command"] = "pkd.kernel";
      put_divisor(job);
      job["k"] = pkd_k;
      job["max_degree"] = max_degree;
    } else if (e_cross->parsed()) {
      job = {{"command", "exterior.check-cross"}, {"d", e_d}, {"k", e_k}};
    } else if (e_phi->parsed()) {
      job["command"] = "exterior.phi";
      put_divisor(job);
      job["k"] = e_k;
      job["beta"] = beta;
    } else if (e_iso->parsed()) {
      job["command"] = "exterior.verify-iso";
      put_divisor(job);
      job["k"] = e_k;
      job["max_degree"] = max_degree;
    } else {
      std::cerr << app.help() << "\n";
      return 2;
    }
    return run(job, output);
  } catch (const divint::structural_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
}
