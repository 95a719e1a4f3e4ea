#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "json.hpp"

namespace {

using json = nlohmann::ordered_json;

struct CmdResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

CmdResult run_cli(const std::string& args) {
  static int counter = 0;
  const std::string base = "/tmp/bvalue_cli_test_" + std::to_string(counter++);
  const std::string out_path = base + ".out";
  const std::string err_path = base + ".err";
  const std::string cmd = std::string(BVALUE_CLI_EXE) + " " + args + " > " +
                          out_path + " 2> " + err_path;
  const int rc = std::system(cmd.c_str());
  CmdResult r;
  r.exit_code = WEXITSTATUS(rc);
  r.out = slurp(out_path);
  r.err = slurp(err_path);
  std::remove(out_path.c_str());
  std::remove(err_path.c_str());
  return r;
}

const std::string kFixture = std::string(BVALUE_DATA_DIR) + "/plant_growth.csv";

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  out << content;
}

}  // namespace

TEST_CASE("ttest reproduces the published table, json format") {
  const CmdResult r =
      run_cli("ttest " + kFixture + " trt1 ctrl --alpha 0.05 --format json");
  REQUIRE(r.exit_code == 0);
  const json j = json::parse(r.out);
  CHECK(j["schema_version"] == 1);
  CHECK(j["tool"]["name"] == "bvalue");
  const json& t = j["ttest"];
  CHECK(std::fabs(t["delta_hat"].get<double>() - (-0.371)) < 0.002);
  CHECK(std::fabs(t["se"].get<double>() - 0.311) < 0.002);
  CHECK(std::fabs(t["t_stat"].get<double>() - (-1.191)) < 0.005);
  CHECK(std::fabs(t["p_value"].get<double>() - 0.249) < 0.002);
  CHECK(std::fabs(t["ci_test"]["lo"].get<double>() - (-1.025)) < 0.002);
  CHECK(std::fabs(t["ci_test"]["hi"].get<double>() - 0.283) < 0.002);
  CHECK(std::fabs(t["ci_equiv"]["lo"].get<double>() - (-0.911)) < 0.002);
  CHECK(std::fabs(t["ci_equiv"]["hi"].get<double>() - 0.169) < 0.002);
  CHECK(j["stage1"] == "Accept");

  const CmdResult r2 =
      run_cli("ttest " + kFixture + " trt2 ctrl --format json");
  REQUIRE(r2.exit_code == 0);
  const json j2 = json::parse(r2.out);
  const json& t2 = j2["ttest"];
  CHECK(std::fabs(t2["delta_hat"].get<double>() - 0.494) < 0.002);
  CHECK(std::fabs(t2["se"].get<double>() - 0.231) < 0.002);
  CHECK(std::fabs(t2["t_stat"].get<double>() - 2.134) < 0.005);
  CHECK(std::fabs(t2["p_value"].get<double>() - 0.047) < 0.002);
  CHECK(std::fabs(t2["ci_equiv"]["hi"].get<double>() - 0.895) < 0.002);
  CHECK(j2["stage1"] == "Reject");
}

TEST_CASE("ttest text and csv formats") {
  const CmdResult text = run_cli("ttest " + kFixture + " trt1 ctrl");
  REQUIRE(text.exit_code == 0);
  CHECK(text.out.find("B-value") != std::string::npos);
  CHECK(text.out.find("-0.371000") != std::string::npos);
  CHECK(text.out.find("Accept") != std::string::npos);

  const CmdResult csv =
      run_cli("ttest " + kFixture + " trt1 ctrl --format csv");
  REQUIRE(csv.exit_code == 0);
  CHECK(csv.out.rfind("group1,group2,n1,n2,delta_hat", 0) == 0);
  CHECK(csv.out.find("trt1,ctrl,10,10,-0.371") != std::string::npos);
}

TEST_CASE("ttest of a group against itself") {
  const CmdResult r =
      run_cli("ttest " + kFixture + " ctrl ctrl --format json");
  REQUIRE(r.exit_code == 0);
  const json j = json::parse(r.out);
  CHECK(j["ttest"]["delta_hat"].get<double>() == 0.0);
  CHECK(j["ttest"]["p_value"].get<double>() == 1.0);
}

TEST_CASE("z-test mode swaps in normal quantiles") {
  const CmdResult r =
      run_cli("ttest " + kFixture + " trt1 ctrl --test z --format json");
  REQUIRE(r.exit_code == 0);
  const json j = json::parse(r.out);
  CHECK(j["ttest"]["dist"] == "normal");
  CHECK(j["ttest"]["dof"].get<double>() == 18.0);
  // normal quantiles are tighter than t(18) ones
  const CmdResult rt = run_cli("ttest " + kFixture + " trt1 ctrl --format json");
  const json jt = json::parse(rt.out);
  CHECK(j["ttest"]["ci_test"]["hi"].get<double>() <
        jt["ttest"]["ci_test"]["hi"].get<double>());

  const CmdResult re = run_cli(
      "eeb --n1 10 --mean1 0.0 --sd1 1 --n2 10 --mean2 0.1 --sd2 1 "
      "--beta 0.8 --condition marginal --test z --format json");
  REQUIRE(re.exit_code == 0);
  CHECK(json::parse(re.out)["eeb"]["bound"].get<double>() > 0.0);
}

TEST_CASE("user errors exit with code 2") {
  CHECK(run_cli("ttest " + kFixture + " trt1 nosuchgroup").exit_code == 2);
  CHECK(run_cli("ttest /nonexistent.csv trt1 ctrl").exit_code == 2);
  CHECK(run_cli("ttest " + kFixture + " trt1 ctrl --alpha 0.7").exit_code == 2);
  CHECK(run_cli("eeb " + kFixture + " trt1 ctrl --beta 1.5").exit_code == 2);
  CHECK(run_cli("eeb " + kFixture + " trt1 ctrl").exit_code == 2);  // no beta
  CHECK(run_cli("ttest " + kFixture + " trt1 ctrl --bogus").exit_code == 2);
  CHECK(run_cli("").exit_code == 2);

  const std::string bad_csv = "/tmp/bvalue_bad.csv";
  write_file(bad_csv, "group,value\na,1\nb,not_a_number\n");
  const CmdResult r = run_cli("ttest " + bad_csv + " a b");
  CHECK(r.exit_code == 2);
  CHECK(r.err.find("error") != std::string::npos);
  CHECK(r.out.empty());
  std::remove(bad_csv.c_str());
}

TEST_CASE("eeb from data with the realized condition") {
  const CmdResult r = run_cli("eeb " + kFixture +
                              " trt1 ctrl --beta 0.85 --format json");
  REQUIRE(r.exit_code == 0);
  const json j = json::parse(r.out);
  CHECK(j["stage1"] == "Accept");
  CHECK(j["condition_used"] == "accept");
  const double bound = j["eeb"]["bound"].get<double>();
  CHECK(std::fabs(bound - 0.959) < 0.005);
  CHECK(std::fabs(bound - 0.961723813) < 1e-6);
  CHECK(j["eeb"]["solver_used"] == "closed_form");

  const CmdResult r2 = run_cli("eeb " + kFixture +
                               " trt2 ctrl --beta 0.5 --format json");
  REQUIRE(r2.exit_code == 0);
  const json j2 = json::parse(r2.out);
  CHECK(j2["stage1"] == "Reject");
  CHECK(std::fabs(j2["eeb"]["bound"].get<double>() - 0.967) < 0.005);
}

TEST_CASE("eeb from summary statistics") {
  // trt1 vs ctrl summaries, explicit marginal condition
  const CmdResult r = run_cli(
      "eeb --n1 10 --mean1 4.661 --sd1 0.793675696 "
      "--n2 10 --mean2 5.032 --sd2 0.583091378 "
      "--beta 0.752 --condition marginal --format json");
  REQUIRE(r.exit_code == 0);
  const json j = json::parse(r.out);
  CHECK(std::fabs(j["eeb"]["bound"].get<double>() - 0.911881845) < 1e-6);
  CHECK(j["condition_used"] == "marginal");

  // mixing file and summaries is rejected
  CHECK(run_cli("eeb " + kFixture + " trt1 ctrl --n1 10 --mean1 0 --sd1 1 "
                "--n2 10 --mean2 0 --sd2 1 --beta 0.5")
            .exit_code == 2);
  // incomplete summaries are rejected
  CHECK(run_cli("eeb --n1 10 --mean1 0 --sd1 1 --beta 0.5").exit_code == 2);
}

TEST_CASE("eeb curve emits a nondecreasing beta,eeb csv") {
  const CmdResult r =
      run_cli("eeb " + kFixture + " trt1 ctrl --curve 0.05:0.99:0.01");
  REQUIRE(r.exit_code == 0);
  std::istringstream in(r.out);
  std::string line;
  REQUIRE(std::getline(in, line));
  CHECK(line == "beta,eeb");
  double prev_beta = 0.0;
  double prev_bound = 0.0;
  int rows = 0;
  while (std::getline(in, line)) {
    double beta = 0.0, bound = 0.0;
    REQUIRE(std::sscanf(line.c_str(), "%lf,%lf", &beta, &bound) == 2);
    CHECK(beta > prev_beta);
    CHECK(bound >= prev_bound);
    prev_beta = beta;
    prev_bound = bound;
    ++rows;
  }
  CHECK(rows == 95);
}

TEST_CASE("procedure verdicts") {
  const CmdResult r =
      run_cli("procedure " + kFixture + " trt1 ctrl --beta 0.85");
  REQUIRE(r.exit_code == 0);
  CHECK(r.out.find("verdict:  Equivalence") != std::string::npos);

  const CmdResult r2 =
      run_cli("procedure " + kFixture + " trt2 ctrl --beta 0.5 --format json");
  REQUIRE(r2.exit_code == 0);
  const json j2 = json::parse(r2.out);
  CHECK(j2["procedure"]["stage1"] == "Reject");
  CHECK(j2["procedure"]["stage2"] == "FalsePositiveCorrected");
  CHECK(j2["procedure"]["eeb"]["bound"].get<double>() ==
        doctest::Approx(0.967404128).epsilon(1e-6));

  const CmdResult r3 = run_cli("procedure " + kFixture +
                               " trt2 ctrl --beta 0.5 --delta 0.05 --format json");
  REQUIRE(r3.exit_code == 0);
  const json j3 = json::parse(r3.out);
  CHECK(j3["procedure"]["stage2"] == "DifferenceConfirmed");
  CHECK(j3["procedure"]["fixed_delta"].get<double>() == 0.05);
}

TEST_CASE("simulate: determinism, csv output, seed override") {
  const std::string scenario = "/tmp/bvalue_scenario_test.cfg";
  write_file(scenario,
             "n1=10\nn2=10\nmu1=0\nmu2=0\nsigma=1\nalpha=0.05\nbeta=0.8\n"
             "reps=2000\nseed=5\nmode=summary\n");

  const CmdResult a = run_cli("simulate " + scenario);
  const CmdResult b = run_cli("simulate " + scenario);
  REQUIRE(a.exit_code == 0);
  CHECK(a.out == b.out);  // byte-identical reports

  const json j = json::parse(a.out);
  const auto& counts = j["report"]["condition_counts"];
  const int accepted = counts["accept"].get<int>();
  CHECK(accepted + counts["reject"].get<int>() == 2000);
  CHECK(accepted / 2000.0 > 0.92);
  CHECK(accepted / 2000.0 < 0.98);
  CHECK(j["report"]["ks_distance"]["marginal"].is_number());

  const CmdResult c = run_cli("simulate " + scenario + " --seed 6");
  REQUIRE(c.exit_code == 0);
  CHECK(c.out != a.out);

  const std::string csv_path = "/tmp/bvalue_sim_points.csv";
  const CmdResult d =
      run_cli("simulate " + scenario + " --csv " + csv_path + " --format text");
  REQUIRE(d.exit_code == 0);
  CHECK(d.out.find("simulation:") != std::string::npos);
  const std::string csv = slurp(csv_path);
  CHECK(csv.rfind("b,fraction", 0) == 0);
  std::remove(csv_path.c_str());

  CHECK(run_cli("simulate /nonexistent.cfg").exit_code == 2);
  write_file(scenario, "n1=10\nwhat=1\n");
  CHECK(run_cli("simulate " + scenario).exit_code == 2);
  std::remove(scenario.c_str());
}

TEST_CASE("json reports round-trip idempotently") {
  for (const std::string& cmd :
       {std::string("ttest ") + kFixture + " trt1 ctrl --format json",
        std::string("procedure ") + kFixture + " trt2 ctrl --beta 0.5 --format json"}) {
    const CmdResult r = run_cli(cmd);
    REQUIRE(r.exit_code == 0);
    const std::string once = json::parse(r.out).dump(2) + "\n";
    CHECK(once == r.out);
    const std::string twice = json::parse(once).dump(2) + "\n";
    CHECK(twice == once);
  }
}

TEST_CASE("version flag") {
  const CmdResult r = run_cli("--version");
  CHECK(r.exit_code == 0);
  CHECK(r.out == "0.1.0\n");
}
