#pragma once

#include <cstddef>
#include <span>

#include "bvalue/interval.hpp"
#include "bvalue/ref_dist.hpp"

namespace bvalue {

// Sufficient statistics of one group. sd is the sample standard deviation
// with the n-1 divisor.
struct SampleSummary {
  std::size_t n = 0;
  double mean = 0.0;
  double sd = 0.0;
};

// Reduce raw observations to a SampleSummary. Requires n >= 2 and finite
// values.
SampleSummary summarize(std::span<const double> values);

// Which reference distribution supplies quantiles: Student's t (pooled
// two-sample test) or the standard normal (z-test generalization).
enum class DistMode { T, Z };

enum class Stage1Verdict { Accept, Reject };

struct TwoSampleResult {
  double delta_hat = 0.0;  // mean difference, group1 - group2
  double se = 0.0;         // pooled standard error of the difference
  double dof = 0.0;        // n1 + n2 - 2
  double alpha = 0.0;
  double t_stat = 0.0;
  double p_value = 0.0;    // two-sided
  Interval ci_test;        // 100(1-alpha)% interval; drives the stage-1 verdict
  Interval ci_equiv;       // 100(1-2*alpha)% interval; drives equivalence checks
  double b_value = 0.0;    // max(|ci_equiv.lo|, |ci_equiv.hi|)
  RefDist dist;            // quantile source actually used
};

// Equal-variance pooled standard error of the mean difference:
//   sqrt(1/n1 + 1/n2) * sqrt(((n1-1)*sd1^2 + (n2-1)*sd2^2) / (n1+n2-2)).
// Throws std::domain_error when either n < 2 or both sds are zero.
double pooled_se(const SampleSummary& g1, const SampleSummary& g2);

// Full two-sample analysis at level alpha in (0, 0.5). In DistMode::Z the
// intervals and p-value use standard-normal quantiles; dof is still reported.
TwoSampleResult analyze(const SampleSummary& g1, const SampleSummary& g2,
                        double alpha, DistMode mode = DistMode::T);
TwoSampleResult analyze(std::span<const double> g1, std::span<const double> g2,
                        double alpha, DistMode mode = DistMode::T);

// max(|L|, |U|) over the 100(1-2*alpha)% interval [L, U]; the smallest
// symmetric equivalence bound that would lead to an equivalence conclusion.
double b_value(const TwoSampleResult& r);

// Accept iff 0 lies in the closed 100(1-alpha)% interval.
Stage1Verdict stage1_verdict(const TwoSampleResult& r);

}  // namespace bvalue
