#pragma once

#include <optional>
#include <span>

#include "bvalue/eeb.hpp"
#include "bvalue/two_sample.hpp"

namespace bvalue {

struct ProcedureConfig {
  double alpha = 0.05;
  double beta = 0.8;
  DistMode dist_mode = DistMode::T;
  std::optional<double> fixed_delta;  // user bound; bypasses the EEB when set
};

enum class Stage2Outcome {
  Equivalence,
  Inconclusive,
  DifferenceConfirmed,
  FalsePositiveCorrected,
};

enum class GeometryClass { Contained, Overlapping, Disjoint };

enum class EquivalenceVerdict { Equivalence, NotEstablished };

struct ProcedureOutcome {
  Stage1Verdict stage1 = Stage1Verdict::Accept;
  double equiv_bound = 0.0;            // the bound actually compared against
  std::optional<EebResult> eeb_used;   // empty when fixed_delta was supplied
  Stage2Outcome stage2 = Stage2Outcome::Inconclusive;
  TwoSampleResult result;
};

// Position of the confidence interval relative to the equivalence interval,
// with closed-endpoint semantics.
GeometryClass classify_geometry(const Interval& ci, const Interval& equiv);

// Two-stage test: a conventional t/z test, then an equivalence test against
// the EEB conditioned on the realized stage-1 verdict (or a fixed bound).
// Stage-2 classification is purely geometric:
//   contained -> Equivalence (Accept) / FalsePositiveCorrected (Reject)
//   disjoint  -> DifferenceConfirmed (Reject only)
//   otherwise -> Inconclusive
ProcedureOutcome run_two_stage(const SampleSummary& g1, const SampleSummary& g2,
                               const ProcedureConfig& cfg);
ProcedureOutcome run_two_stage(std::span<const double> g1,
                               std::span<const double> g2,
                               const ProcedureConfig& cfg);

// Classic fixed-bound equivalence test: Equivalence iff the 100(1-2*alpha)%
// interval lies inside [-delta, delta].
EquivalenceVerdict run_classic_equivalence(const SampleSummary& g1,
                                           const SampleSummary& g2,
                                           double alpha, double delta);

}  // namespace bvalue
