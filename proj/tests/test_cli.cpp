#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "divint/jobs.hpp"
#include "divint/scalar.hpp"
#include "divint/toml_lite.hpp"

using namespace divint;
using nlohmann::json;

namespace {

json worked_divisor(const char* c2) {
  return json{{"base", {{"coeffs", "Z"}, {"vars", {{{"name", "a"}, {"deg", 2}}}}, {"trunc", 3}}},
              {"divisor", {{"degree", 2}, {"coeffs", {"0", c2}}}}};
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("divisor.intersect reproduces the worked example") {
  json job{{"command", "divisor.intersect"},
           {"divisor0", worked_divisor("-a")},
           {"divisor1", worked_divisor("0")}};
  auto res = run_job(job);
  CHECK(res.exit_code == 0);
  CHECK(res.report["report"]["intersection_rank"] == 1);
  CHECK(res.report["report"]["obstruction_ideal_r1"] == json::array());
  CHECK(res.report["report"]["obstruction_ideal_r2"] == json::array({"a"}));
}

TEST_CASE("reports are byte-identical across runs") {
  json job{{"command", "universal.ps-identity"}, {"d0", 2}, {"d1", 2}, {"r", 1},
           {"max_degree", 10}};
  auto a = run_job(job), b = run_job(job);
  CHECK(a.exit_code == 0);
  CHECK(a.report.dump() == b.report.dump());

  json job2{{"command", "divisor.presentations"},
            {"divisor0", worked_divisor("-a")},
            {"divisor1", worked_divisor("0")}};
  auto c = run_job(job2), d = run_job(job2);
  CHECK(c.exit_code == 0);
  CHECK(c.report.dump() == d.report.dump());
  CHECK(c.report["report"]["fitting_ideals_agree"] == true);
}

TEST_CASE("schema violations exit 2 and point at the field") {
  json job{{"command", "universal.ps-identity"}, {"d0", 2}, {"d1", 2}, {"r", 1},
           {"max_degree", 10}, {"surprise", true}};
  auto res = run_job(job);
  CHECK(res.exit_code == 2);
  std::string err = res.report["error"].get<std::string>();
  CHECK(err.find("surprise") != std::string::npos);

  auto missing = run_job(json{{"command", "universal.ps-identity"}, {"d0", 2}});
  CHECK(missing.exit_code == 2);

  auto unknown = run_job(json{{"command", "nope.nope"}});
  CHECK(unknown.exit_code == 2);
}

TEST_CASE("porteous membership and exterior phi commands") {
  json job{{"command", "divisor.porteous"},
           {"divisor0", worked_divisor("-a")},
           {"divisor1", worked_divisor("0")},
           {"r", 1}};
  auto res = run_job(job);
  CHECK(res.exit_code == 0);
  CHECK(res.report["report"]["in_obstruction_ideal"] == true);

  json phi{{"command", "exterior.phi"}, {"symbolic_degree", 3}, {"k", 2},
           {"beta", json::array({2, 0})}};
  auto pres = run_job(phi);
  CHECK(pres.exit_code == 0);
  CHECK(pres.report["report"]["agree"] == true);
  CHECK(pres.report["report"]["phi_map"] == "-c1");
}

TEST_CASE("pkd.invariants reports the extra F2 class in degree 3") {
  json div{{"base", {{"coeffs", "Z"}, {"vars", json::array()}, {"trunc", 6}}},
           {"divisor", {{"degree", 3}, {"coeffs", {"0", "0", "0"}}}}};
  json job{{"command", "pkd.invariants"}, {"divisor", div}, {"k", 2}, {"max_degree", 3},
           {"coeffs", "F2"}};
  auto res = run_job(job);
  CHECK(res.exit_code == 0);
  CHECK(res.report["report"]["total"] == 4);
  CHECK(res.report["report"]["total_over_Q"] == 3);
  auto rows = res.report["report"]["rows"];
  CHECK(rows[3]["extra_over_Q"] == 1);  // x^2 y in degree 3
}

TEST_CASE("toml subset parses job documents") {
  auto doc = toml_lite_parse(R"(
# comment
command = "universal.verify-basis"
d0 = 2
d1 = 2
r = 1
max_degree = 4
coeffs = "Z"

[unusedtable]
nested = { a = 1, b = [1, 2, 3] }
flag = true
)");
  CHECK(doc["command"] == "universal.verify-basis");
  CHECK(doc["d0"] == 2);
  CHECK(doc["unusedtable"]["nested"]["b"][2] == 3);
  CHECK(doc["unusedtable"]["flag"] == true);
  CHECK_THROWS_AS(toml_lite_parse("x = 1.5"), structural_error);  // floats outside the subset
  CHECK_THROWS_AS(toml_lite_parse("x = 1\nx = 2"), structural_error);
}

TEST_CASE("toml divisor document loads equivalently to JSON") {
  std::string dir = std::getenv("TMPDIR") ? std::getenv("TMPDIR") : "/tmp";
  std::string path = dir + "/divint_test_divisor.toml";
  {
    std::ofstream out(path);
    out << "[base]\n"
           "coeffs = \"Z\"\n"
           "trunc = 3\n"
           "vars = [{ name = \"a\", deg = 2 }]\n"
           "[divisor]\n"
           "degree = 2\n"
           "coeffs = [\"0\", \"-a\"]\n";
  }
  json doc = load_document(path);
  json job{{"command", "divisor.intersect"}, {"divisor0", doc}, {"divisor1", worked_divisor("0")}};
  auto res = run_job(job);
  CHECK(res.exit_code == 0);
  CHECK(res.report["report"]["intersection_rank"] == 1);
  std::remove(path.c_str());
}

#ifdef DIVINT_CLI_PATH
TEST_CASE("the binary is deterministic and uses the documented exit codes") {
  std::string dir = std::getenv("TMPDIR") ? std::getenv("TMPDIR") : "/tmp";
  std::string out1 = dir + "/divint_cli_out1.json", out2 = dir + "/divint_cli_out2.json";
  std::string cmd = std::string(DIVINT_CLI_PATH) +
                    " universal ps-identity --d0 3 --d1 3 --r 2 --max-degree 10";
  int rc1 = std::system((cmd + " > " + out1).c_str());
  int rc2 = std::system((cmd + " > " + out2).c_str());
  CHECK(WEXITSTATUS(rc1) == 0);
  CHECK(WEXITSTATUS(rc2) == 0);
  CHECK(slurp(out1) == slurp(out2));
  CHECK_FALSE(slurp(out1).empty());

  int rc3 = std::system((std::string(DIVINT_CLI_PATH) + " universal ps-identity --d0 2 >/dev/null 2>&1").c_str());
  CHECK(WEXITSTATUS(rc3) == 2);
  std::remove(out1.c_str());
  std::remove(out2.c_str());
}
#endif
