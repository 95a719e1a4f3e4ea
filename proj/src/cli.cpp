#include "bvalue/cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "bvalue/dataset.hpp"
#include "bvalue/eeb.hpp"
#include "bvalue/montecarlo.hpp"
#include "bvalue/procedure.hpp"
#include "bvalue/report.hpp"
#include "bvalue/scenario_file.hpp"
#include "bvalue/two_sample.hpp"
#include "bvalue/version.hpp"

namespace bvalue {

namespace {

using report::json;

std::string fmt6(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", x);
  return buf;
}

std::string fmt_sig(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

std::string fmt_interval(const Interval& iv) {
  return "[" + fmt6(iv.lo) + ", " + fmt6(iv.hi) + "]";
}

std::string percent_label(double coverage) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g%%", 100.0 * coverage);
  return buf;
}

void emit_json(std::ostream& out, const json& j) { out << j.dump(2) << "\n"; }

DistMode parse_dist_mode(const std::string& s) {
  if (s == "t") return DistMode::T;
  if (s == "z") return DistMode::Z;
  throw std::domain_error("--test must be 't' or 'z'");
}

Condition parse_condition(const std::string& s, bool& is_auto) {
  is_auto = false;
  if (s == "auto") {
    is_auto = true;
    return Condition::Marginal;  // placeholder; realized verdict decides
  }
  if (s == "marginal") return Condition::Marginal;
  if (s == "accept") return Condition::Accept;
  if (s == "reject") return Condition::Reject;
  throw std::domain_error("--condition must be auto, marginal, accept or reject");
}

std::vector<double> parse_curve_grid(const std::string& grid) {
  double lo = 0.0, hi = 0.0, step = 0.0;
  char extra = 0;
  if (std::sscanf(grid.c_str(), "%lf:%lf:%lf%c", &lo, &hi, &step, &extra) != 3)
    throw std::domain_error("--curve expects 'lo:hi:step', e.g. 0.05:0.99:0.01");
  if (!(step > 0.0) || !(lo <= hi) || !(lo > 0.0) || !(hi < 1.0))
    throw std::domain_error("--curve grid must satisfy 0 < lo <= hi < 1 and step > 0");
  std::vector<double> betas;
  for (double b = lo; b <= hi + 1e-12; b += step) betas.push_back(b);
  return betas;
}

std::string ttest_text(const TwoSampleResult& r, const std::string& g1,
                       const std::string& g2, std::size_t n1, std::size_t n2) {
  std::ostringstream os;
  const char* kind = r.dist.kind == RefDist::Kind::StudentT ? "t" : "z";
  os << "two-sample " << kind << "-test: " << g1 << " - " << g2 << "\n"
     << "  n:           " << n1 << " vs " << n2 << "\n"
     << "  estimate:    " << fmt6(r.delta_hat) << "  (se " << fmt6(r.se) << ")\n"
     << "  dof:         " << r.dof << "\n"
     << "  " << kind << "-statistic: " << fmt6(r.t_stat) << "\n"
     << "  p-value:     " << fmt6(r.p_value) << "\n"
     << "  " << percent_label(1.0 - r.alpha) << " CI:      " << fmt_interval(r.ci_test)
     << "\n"
     << "  " << percent_label(1.0 - 2.0 * r.alpha) << " CI:      "
     << fmt_interval(r.ci_equiv) << "\n"
     << "  B-value:     " << fmt6(r.b_value) << "\n"
     << "  stage 1:     " << report::to_string(stage1_verdict(r)) << " (0 "
     << (stage1_verdict(r) == Stage1Verdict::Accept ? "in" : "not in") << " the "
     << percent_label(1.0 - r.alpha) << " CI)\n";
  return os.str();
}

std::string ttest_csv(const TwoSampleResult& r, const std::string& g1,
                      const std::string& g2, std::size_t n1, std::size_t n2) {
  std::ostringstream os;
  os << "group1,group2,n1,n2,delta_hat,se,dof,t_stat,p_value,"
        "ci_test_lo,ci_test_hi,ci_equiv_lo,ci_equiv_hi,b_value,stage1\n"
     << g1 << ',' << g2 << ',' << n1 << ',' << n2 << ',' << fmt_sig(r.delta_hat)
     << ',' << fmt_sig(r.se) << ',' << fmt_sig(r.dof) << ',' << fmt_sig(r.t_stat)
     << ',' << fmt_sig(r.p_value) << ',' << fmt_sig(r.ci_test.lo) << ','
     << fmt_sig(r.ci_test.hi) << ',' << fmt_sig(r.ci_equiv.lo) << ','
     << fmt_sig(r.ci_equiv.hi) << ',' << fmt_sig(r.b_value) << ','
     << report::to_string(stage1_verdict(r)) << "\n";
  return os.str();
}

struct CliState {
  std::vector<std::string> argv;
  std::ostream& out;
  std::ostream& err;
};

// ---------------------------------------------------------------- ttest ----

struct TtestOpts {
  std::string file, group1, group2;
  double alpha = 0.05;
  std::string test = "t";
  std::string format = "text";
};

int run_ttest(const TtestOpts& o, CliState& st) {
  const Dataset ds = Dataset::from_csv_file(o.file);
  const SampleSummary s1 = summarize(ds.group(o.group1));
  const SampleSummary s2 = summarize(ds.group(o.group2));
  const TwoSampleResult r = analyze(s1, s2, o.alpha, parse_dist_mode(o.test));

  if (o.format == "json") {
    json j = report::envelope("ttest", st.argv);
    j["config"] = json{{"file", o.file},
                       {"group1", o.group1},
                       {"group2", o.group2},
                       {"alpha", o.alpha},
                       {"test", o.test}};
    j["ttest"] = report::to_json(r);
    j["stage1"] = report::to_string(stage1_verdict(r));
    emit_json(st.out, j);
  } else if (o.format == "csv") {
    st.out << ttest_csv(r, o.group1, o.group2, s1.n, s2.n);
  } else {
    st.out << ttest_text(r, o.group1, o.group2, s1.n, s2.n);
  }
  return 0;
}

// ------------------------------------------------------------------ eeb ----

struct EebOpts {
  std::string file, group1, group2;
  double alpha = 0.05;
  std::optional<double> beta;
  std::string condition = "auto";
  std::string curve;
  std::string test = "t";
  std::string format = "text";
  // summary-statistics alternative to a dataset
  std::optional<double> n1, mean1, sd1, n2, mean2, sd2;
};

int run_eeb(const EebOpts& o, CliState& st) {
  const bool have_file = !o.file.empty();
  const bool have_summaries = o.n1 || o.mean1 || o.sd1 || o.n2 || o.mean2 || o.sd2;
  if (have_file == have_summaries)
    throw std::domain_error(
        "eeb: provide either a dataset (FILE GROUP1 GROUP2) or the six "
        "summary options (--n1 --mean1 --sd1 --n2 --mean2 --sd2)");
  if (have_summaries &&
      !(o.n1 && o.mean1 && o.sd1 && o.n2 && o.mean2 && o.sd2))
    throw std::domain_error("eeb: all six summary options are required together");
  if (!o.beta && o.curve.empty())
    throw std::domain_error("eeb: either --beta or --curve is required");

  SampleSummary s1, s2;
  if (have_file) {
    if (o.group1.empty() || o.group2.empty())
      throw std::domain_error("eeb: GROUP1 and GROUP2 are required with a dataset");
    const Dataset ds = Dataset::from_csv_file(o.file);
    s1 = summarize(ds.group(o.group1));
    s2 = summarize(ds.group(o.group2));
  } else {
    if (*o.n1 < 2.0 || *o.n2 < 2.0 || *o.n1 != std::floor(*o.n1) ||
        *o.n2 != std::floor(*o.n2))
      throw std::domain_error("eeb: --n1/--n2 must be integers >= 2");
    s1 = SampleSummary{static_cast<std::size_t>(*o.n1), *o.mean1, *o.sd1};
    s2 = SampleSummary{static_cast<std::size_t>(*o.n2), *o.mean2, *o.sd2};
  }

  const DistMode mode = parse_dist_mode(o.test);
  const TwoSampleResult r = analyze(s1, s2, o.alpha, mode);

  bool is_auto = false;
  Condition cond = parse_condition(o.condition, is_auto);
  if (is_auto)
    cond = stage1_verdict(r) == Stage1Verdict::Accept ? Condition::Accept
                                                      : Condition::Reject;
  const BDistParams params =
      mode == DistMode::Z
          ? BDistParams::normal(0.0, r.se, o.alpha, cond)
          : BDistParams::student_t(0.0, r.se, r.dof, o.alpha, cond);

  if (!o.curve.empty()) {
    const std::vector<double> betas = parse_curve_grid(o.curve);
    const auto curve = eeb_curve(params, betas);
    st.out << "beta,eeb\n";
    for (const auto& [beta, bound] : curve)
      st.out << fmt_sig(beta) << ',' << fmt_sig(bound) << "\n";
    return 0;
  }

  const EebResult res = eeb(EebQuery{params, *o.beta, EebSolver::Auto});

  if (o.format == "json") {
    json j = report::envelope("eeb", st.argv);
    j["config"] = json{{"alpha", o.alpha},
                       {"beta", *o.beta},
                       {"condition", o.condition},
                       {"test", o.test}};
    j["inputs"] = json{{"se", r.se}, {"dof", r.dof}};
    if (is_auto) j["stage1"] = report::to_string(stage1_verdict(r));
    j["condition_used"] = report::to_string(cond);
    j["eeb"] = report::to_json(res);
    emit_json(st.out, j);
  } else if (o.format == "csv") {
    st.out << "alpha,beta,condition,se,dof,bound,achieved_cdf,solver,iterations\n"
           << fmt_sig(o.alpha) << ',' << fmt_sig(*o.beta) << ','
           << report::to_string(cond) << ',' << fmt_sig(r.se) << ','
           << fmt_sig(r.dof) << ',' << fmt_sig(res.bound) << ','
           << fmt_sig(res.achieved_cdf) << ','
           << report::to_string(res.solver_used) << ',' << res.iterations << "\n";
  } else {
    st.out << "EEB (alpha=" << fmt_sig(o.alpha) << ", beta=" << fmt_sig(*o.beta)
           << ", condition=" << report::to_string(cond) << ")\n"
           << "  se:           " << fmt6(r.se) << "  (dof " << r.dof << ")\n"
           << "  bound:        " << fmt6(res.bound) << "\n"
           << "  interval:     " << fmt_interval(res.interval) << "\n"
           << "  achieved cdf: " << fmt6(res.achieved_cdf) << "\n"
           << "  solver:       " << report::to_string(res.solver_used) << "\n";
  }
  return 0;
}

// ------------------------------------------------------------ procedure ----

struct ProcedureOpts {
  std::string file, group1, group2;
  double alpha = 0.05;
  double beta = 0.8;
  std::optional<double> fixed_delta;
  std::string test = "t";
  std::string format = "text";
};

int run_procedure(const ProcedureOpts& o, CliState& st) {
  const Dataset ds = Dataset::from_csv_file(o.file);
  const SampleSummary s1 = summarize(ds.group(o.group1));
  const SampleSummary s2 = summarize(ds.group(o.group2));
  const ProcedureConfig cfg{o.alpha, o.beta, parse_dist_mode(o.test),
                            o.fixed_delta};
  const ProcedureOutcome res = run_two_stage(s1, s2, cfg);

  if (o.format == "json") {
    json j = report::envelope("procedure", st.argv);
    j["config"] = json{{"file", o.file},
                       {"group1", o.group1},
                       {"group2", o.group2},
                       {"alpha", o.alpha},
                       {"beta", o.beta},
                       {"test", o.test}};
    if (o.fixed_delta) j["config"]["fixed_delta"] = *o.fixed_delta;
    j["procedure"] = report::to_json(res);
    emit_json(st.out, j);
  } else if (o.format == "csv") {
    st.out << "group1,group2,stage1,equiv_bound,stage2,delta_hat,se,"
              "ci_equiv_lo,ci_equiv_hi,b_value\n"
           << o.group1 << ',' << o.group2 << ','
           << report::to_string(res.stage1) << ',' << fmt_sig(res.equiv_bound)
           << ',' << report::to_string(res.stage2) << ','
           << fmt_sig(res.result.delta_hat) << ',' << fmt_sig(res.result.se)
           << ',' << fmt_sig(res.result.ci_equiv.lo) << ','
           << fmt_sig(res.result.ci_equiv.hi) << ','
           << fmt_sig(res.result.b_value) << "\n";
  } else {
    const TwoSampleResult& r = res.result;
    st.out << "two-stage procedure: " << o.group1 << " - " << o.group2 << "\n"
           << "  stage 1:  " << report::to_string(res.stage1)
           << " (p = " << fmt6(r.p_value) << ", "
           << percent_label(1.0 - r.alpha) << " CI " << fmt_interval(r.ci_test)
           << ")\n";
    if (res.eeb_used) {
      st.out << "  bound:    EEB(beta=" << fmt_sig(o.beta) << " | "
             << (res.stage1 == Stage1Verdict::Accept ? "accept" : "reject")
             << ") = " << fmt6(res.equiv_bound) << "\n";
    } else {
      st.out << "  bound:    fixed delta = " << fmt6(res.equiv_bound) << "\n";
    }
    st.out << "  stage 2:  " << percent_label(1.0 - 2.0 * r.alpha) << " CI "
           << fmt_interval(r.ci_equiv) << " vs "
           << fmt_interval(Interval{-res.equiv_bound, res.equiv_bound}) << "\n"
           << "  B-value:  " << fmt6(r.b_value) << "\n"
           << "  verdict:  " << report::to_string(res.stage2) << "\n";
  }
  return 0;
}

// ------------------------------------------------------------- simulate ----

struct SimulateOpts {
  std::string scenario_file;
  std::optional<std::uint64_t> seed;
  std::string output;
  std::string csv;
  std::string format = "json";
};

int run_simulate(const SimulateOpts& o, CliState& st) {
  SimScenario scenario = parse_scenario_file(o.scenario_file);
  if (o.seed) scenario.seed = *o.seed;
  const SimReport rep = simulate(scenario);

  if (!o.csv.empty()) {
    std::ofstream csv_out(o.csv);
    if (!csv_out)
      throw std::invalid_argument("simulate: cannot write '" + o.csv + "'");
    csv_out << "b,fraction\n";
    for (const CdfPoint& p : rep.empirical_cdf)
      csv_out << fmt_sig(p.b) << ',' << fmt_sig(p.fraction) << "\n";
  }

  json j = report::envelope("simulate", st.argv);
  j["report"] = report::to_json(rep);

  std::ostringstream text;
  const double reps = static_cast<double>(scenario.reps);
  text << "simulation: reps=" << scenario.reps << " seed=" << scenario.seed
       << " mode=" << report::to_string(scenario.mode) << "\n"
       << "  accept: " << rep.accept_count << " ("
       << fmt6(static_cast<double>(rep.accept_count) / reps) << ")  reject: "
       << rep.reject_count << "\n"
       << "  outcomes: equivalence=" << rep.equivalence_count
       << " inconclusive=" << rep.inconclusive_count
       << " difference_confirmed=" << rep.difference_confirmed_count
       << " false_positive_corrected=" << rep.false_positive_corrected_count
       << "\n"
       << "  ks: marginal=" << fmt6(rep.ks_marginal)
       << " accept=" << fmt6(rep.ks_accept) << " reject=" << fmt6(rep.ks_reject)
       << "\n"
       << "  calibration: marginal=" << fmt6(rep.calibration_marginal)
       << " accept=" << fmt6(rep.calibration_accept)
       << " reject=" << fmt6(rep.calibration_reject) << "\n";

  if (!o.output.empty()) {
    std::ofstream file_out(o.output);
    if (!file_out)
      throw std::invalid_argument("simulate: cannot write '" + o.output + "'");
    emit_json(file_out, j);
    if (o.format == "text") st.out << text.str();
  } else if (o.format == "json") {
    emit_json(st.out, j);
  } else {
    st.out << text.str();
  }
  return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err) {
  CliState st{std::vector<std::string>(argv, argv + argc), out, err};

  CLI::App app{"B-value and Empirical Equivalence Bound toolkit"};
  app.set_version_flag("--version", kVersion);
  app.set_help_all_flag("--help-all", "Print help for every subcommand");
  app.require_subcommand(1);

  const auto add_format = [](CLI::App* cmd, std::string& target) {
    cmd->add_option("--format", target, "Output format: text, json or csv")
        ->check(CLI::IsMember({"text", "json", "csv"}));
  };

  TtestOpts ttest;
  CLI::App* ttest_cmd = app.add_subcommand(
      "ttest", "Two-sample test with confidence intervals and the B-value");
  ttest_cmd->add_option("file", ttest.file, "CSV dataset (group,value)")
      ->required();
  ttest_cmd->add_option("group1", ttest.group1, "First group label")->required();
  ttest_cmd->add_option("group2", ttest.group2, "Second group label")->required();
  ttest_cmd->add_option("--alpha", ttest.alpha, "Stage-1 significance level");
  ttest_cmd->add_option("--test", ttest.test, "Reference distribution: t or z")
      ->check(CLI::IsMember({"t", "z"}));
  add_format(ttest_cmd, ttest.format);

  EebOpts eeb_o;
  CLI::App* eeb_cmd = app.add_subcommand(
      "eeb", "Empirical Equivalence Bound from data or summary statistics");
  eeb_cmd->add_option("file", eeb_o.file, "CSV dataset (group,value)");
  eeb_cmd->add_option("group1", eeb_o.group1, "First group label");
  eeb_cmd->add_option("group2", eeb_o.group2, "Second group label");
  eeb_cmd->add_option("--alpha", eeb_o.alpha, "Stage-1 significance level");
  eeb_cmd->add_option("--beta", eeb_o.beta, "EEB level in (0,1)");
  eeb_cmd->add_option("--condition", eeb_o.condition,
                      "Conditioning: auto, marginal, accept or reject")
      ->check(CLI::IsMember({"auto", "marginal", "accept", "reject"}));
  eeb_cmd->add_option("--curve", eeb_o.curve,
                      "Emit a beta,eeb CSV over the grid lo:hi:step "
                      "(takes precedence over --beta)");
  eeb_cmd->add_option("--test", eeb_o.test, "Reference distribution: t or z")
      ->check(CLI::IsMember({"t", "z"}));
  eeb_cmd->add_option("--n1", eeb_o.n1, "Group 1 size (summary input)");
  eeb_cmd->add_option("--mean1", eeb_o.mean1, "Group 1 mean (summary input)");
  eeb_cmd->add_option("--sd1", eeb_o.sd1, "Group 1 sd (summary input)");
  eeb_cmd->add_option("--n2", eeb_o.n2, "Group 2 size (summary input)");
  eeb_cmd->add_option("--mean2", eeb_o.mean2, "Group 2 mean (summary input)");
  eeb_cmd->add_option("--sd2", eeb_o.sd2, "Group 2 sd (summary input)");
  add_format(eeb_cmd, eeb_o.format);

  ProcedureOpts proc;
  CLI::App* proc_cmd = app.add_subcommand(
      "procedure", "Two-stage test: t/z test then EEB equivalence test");
  proc_cmd->add_option("file", proc.file, "CSV dataset (group,value)")->required();
  proc_cmd->add_option("group1", proc.group1, "First group label")->required();
  proc_cmd->add_option("group2", proc.group2, "Second group label")->required();
  proc_cmd->add_option("--alpha", proc.alpha, "Stage-1 significance level");
  proc_cmd->add_option("--beta", proc.beta, "EEB level in (0,1)");
  proc_cmd->add_option("--delta", proc.fixed_delta,
                       "Fixed equivalence bound (bypasses the EEB)");
  proc_cmd->add_option("--test", proc.test, "Reference distribution: t or z")
      ->check(CLI::IsMember({"t", "z"}));
  add_format(proc_cmd, proc.format);

  SimulateOpts sim;
  CLI::App* sim_cmd = app.add_subcommand(
      "simulate", "Monte Carlo validation run from a scenario file");
  sim_cmd->add_option("scenario", sim.scenario_file, "key=value scenario file")
      ->required();
  sim_cmd->add_option("--seed", sim.seed, "Override the scenario seed");
  sim_cmd->add_option("--output", sim.output, "Write the JSON report here");
  sim_cmd->add_option("--csv", sim.csv, "Write empirical cdf points here");
  sim_cmd->add_option("--format", sim.format, "Output format: json or text")
      ->check(CLI::IsMember({"json", "text"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::CallForVersion& e) {
    out << kVersion << "\n";
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (ttest_cmd->parsed()) return run_ttest(ttest, st);
    if (eeb_cmd->parsed()) return run_eeb(eeb_o, st);
    if (proc_cmd->parsed()) return run_procedure(proc, st);
    if (sim_cmd->parsed()) return run_simulate(sim, st);
    err << "error: no command given\n";
    return 2;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace bvalue
