#include "bvalue/report.hpp"

#include <cmath>

#include "bvalue/version.hpp"

namespace bvalue::report {

const char* to_string(Stage1Verdict v) {
  return v == Stage1Verdict::Accept ? "Accept" : "Reject";
}

const char* to_string(Stage2Outcome o) {
  switch (o) {
    case Stage2Outcome::Equivalence: return "Equivalence";
    case Stage2Outcome::Inconclusive: return "Inconclusive";
    case Stage2Outcome::DifferenceConfirmed: return "DifferenceConfirmed";
    case Stage2Outcome::FalsePositiveCorrected: return "FalsePositiveCorrected";
  }
  return "Inconclusive";
}

const char* to_string(EquivalenceVerdict v) {
  return v == EquivalenceVerdict::Equivalence ? "Equivalence" : "NotEstablished";
}

const char* to_string(Condition c) {
  switch (c) {
    case Condition::Marginal: return "marginal";
    case Condition::Accept: return "accept";
    case Condition::Reject: return "reject";
  }
  return "marginal";
}

const char* to_string(EebSolver s) {
  switch (s) {
    case EebSolver::ClosedForm: return "closed_form";
    case EebSolver::Bisection: return "bisection";
    case EebSolver::Auto: return "auto";
  }
  return "auto";
}

const char* to_string(DistMode m) { return m == DistMode::T ? "t" : "z"; }

const char* to_string(SimScenario::Mode m) {
  return m == SimScenario::Mode::Raw ? "raw" : "summary";
}

namespace {

// NaN is not representable in JSON; emit null instead.
json number_or_null(double x) {
  if (std::isnan(x)) return nullptr;
  return x;
}

}  // namespace

json to_json(const Interval& iv) { return json{{"lo", iv.lo}, {"hi", iv.hi}}; }

json to_json(const TwoSampleResult& r) {
  return json{
      {"delta_hat", r.delta_hat},
      {"se", r.se},
      {"dof", r.dof},
      {"alpha", r.alpha},
      {"t_stat", r.t_stat},
      {"p_value", r.p_value},
      {"ci_test", to_json(r.ci_test)},
      {"ci_equiv", to_json(r.ci_equiv)},
      {"b_value", r.b_value},
      {"dist", r.dist.kind == RefDist::Kind::StudentT ? "student_t" : "normal"},
  };
}

json to_json(const EebResult& r) {
  return json{
      {"bound", r.bound},
      {"interval", to_json(r.interval)},
      {"achieved_cdf", r.achieved_cdf},
      {"solver_used", to_string(r.solver_used)},
      {"iterations", r.iterations},
  };
}

json to_json(const ProcedureOutcome& o) {
  json j{
      {"stage1", to_string(o.stage1)},
      {"equiv_bound", o.equiv_bound},
      {"stage2", to_string(o.stage2)},
      {"ttest", to_json(o.result)},
  };
  if (o.eeb_used) {
    j["eeb"] = to_json(*o.eeb_used);
  } else {
    j["fixed_delta"] = o.equiv_bound;
  }
  return j;
}

json to_json(const SimScenario& s) {
  return json{
      {"n1", s.n1},       {"n2", s.n2},     {"mu1", s.mu1},
      {"mu2", s.mu2},     {"sigma", s.sigma}, {"alpha", s.alpha},
      {"beta", s.beta},   {"reps", s.reps}, {"seed", s.seed},
      {"mode", to_string(s.mode)},
  };
}

json to_json(const SimReport& r) {
  const auto points_json = [](const std::vector<CdfPoint>& points) {
    json out = json::array();
    for (const CdfPoint& p : points)
      out.push_back(json{{"b", p.b}, {"fraction", p.fraction}});
    return out;
  };
  return json{
      {"scenario", to_json(r.scenario)},
      {"se_ref", r.se_ref},
      {"condition_counts",
       {{"accept", r.accept_count}, {"reject", r.reject_count}}},
      {"outcome_counts",
       {{"equivalence", r.equivalence_count},
        {"inconclusive", r.inconclusive_count},
        {"difference_confirmed", r.difference_confirmed_count},
        {"false_positive_corrected", r.false_positive_corrected_count}}},
      {"ks_distance",
       {{"marginal", number_or_null(r.ks_marginal)},
        {"accept", number_or_null(r.ks_accept)},
        {"reject", number_or_null(r.ks_reject)}}},
      {"calibration",
       {{"marginal", number_or_null(r.calibration_marginal)},
        {"accept", number_or_null(r.calibration_accept)},
        {"reject", number_or_null(r.calibration_reject)}}},
      {"empirical_cdf", points_json(r.empirical_cdf)},
      {"empirical_cdf_accept", points_json(r.empirical_cdf_accept)},
      {"empirical_cdf_reject", points_json(r.empirical_cdf_reject)},
  };
}

json envelope(const std::string& command, const std::vector<std::string>& argv) {
  return json{
      {"schema_version", kReportSchemaVersion},
      {"tool", {{"name", "bvalue"}, {"version", kVersion}}},
      {"command", command},
      {"argv", argv},
  };
}

}  // namespace bvalue::report
