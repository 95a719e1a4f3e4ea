#include "bvalue/procedure.hpp"

#include <cmath>
#include <stdexcept>

namespace bvalue {

GeometryClass classify_geometry(const Interval& ci, const Interval& equiv) {
  if (equiv.contains(ci)) return GeometryClass::Contained;
  if (ci.disjoint_from(equiv)) return GeometryClass::Disjoint;
  return GeometryClass::Overlapping;
}

ProcedureOutcome run_two_stage(const SampleSummary& g1, const SampleSummary& g2,
                               const ProcedureConfig& cfg) {
  if (!(cfg.beta > 0.0 && cfg.beta < 1.0))
    throw std::domain_error("run_two_stage: beta must lie in (0, 1)");
  if (cfg.fixed_delta && !(*cfg.fixed_delta > 0.0))
    throw std::domain_error("run_two_stage: fixed delta must be positive");

  ProcedureOutcome out;
  out.result = analyze(g1, g2, cfg.alpha, cfg.dist_mode);
  out.stage1 = stage1_verdict(out.result);

  if (cfg.fixed_delta) {
    out.equiv_bound = *cfg.fixed_delta;
  } else {
    const Condition cond = out.stage1 == Stage1Verdict::Accept
                               ? Condition::Accept
                               : Condition::Reject;
    const BDistParams params =
        cfg.dist_mode == DistMode::Z
            ? BDistParams::normal(0.0, out.result.se, cfg.alpha, cond)
            : BDistParams::student_t(0.0, out.result.se, out.result.dof,
                                     cfg.alpha, cond);
    out.eeb_used = eeb(EebQuery{params, cfg.beta, EebSolver::Auto});
    out.equiv_bound = out.eeb_used->bound;
  }

  const Interval equiv{-out.equiv_bound, out.equiv_bound};
  switch (classify_geometry(out.result.ci_equiv, equiv)) {
    case GeometryClass::Contained:
      out.stage2 = out.stage1 == Stage1Verdict::Accept
                       ? Stage2Outcome::Equivalence
                       : Stage2Outcome::FalsePositiveCorrected;
      break;
    case GeometryClass::Disjoint:
      // Confirmation of a difference only makes sense after a rejection.
      out.stage2 = out.stage1 == Stage1Verdict::Reject
                       ? Stage2Outcome::DifferenceConfirmed
                       : Stage2Outcome::Inconclusive;
      break;
    case GeometryClass::Overlapping:
      out.stage2 = Stage2Outcome::Inconclusive;
      break;
  }
  return out;
}

ProcedureOutcome run_two_stage(std::span<const double> g1,
                               std::span<const double> g2,
                               const ProcedureConfig& cfg) {
  return run_two_stage(summarize(g1), summarize(g2), cfg);
}

EquivalenceVerdict run_classic_equivalence(const SampleSummary& g1,
                                           const SampleSummary& g2,
                                           double alpha, double delta) {
  if (!(delta > 0.0) || !std::isfinite(delta))
    throw std::domain_error("run_classic_equivalence: delta must be positive");
  const TwoSampleResult r = analyze(g1, g2, alpha);
  return Interval{-delta, delta}.contains(r.ci_equiv)
             ? EquivalenceVerdict::Equivalence
             : EquivalenceVerdict::NotEstablished;
}

}  // namespace bvalue
