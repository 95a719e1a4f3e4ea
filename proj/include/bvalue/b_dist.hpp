#pragma once

#include "bvalue/ref_dist.hpp"

namespace bvalue {

// Conditioning event for the law of the B-value: the whole sample space, or
// the stage-1 verdict (0 inside / outside the 100(1-alpha)% interval).
enum class Condition { Marginal, Accept, Reject };

// Parameters of the distribution of B = max(|L|, |U|) when the standardized
// estimate (delta_hat - delta)/se follows `dist`.
struct BDistParams {
  double delta = 0.0;  // true mean difference
  double se = 1.0;
  double dof = 1.0;    // ignored when dist is Normal
  double alpha = 0.05;
  Condition condition = Condition::Marginal;
  RefDist dist = RefDist::normal();

  static BDistParams student_t(double delta, double se, double dof,
                               double alpha, Condition c);
  static BDistParams normal(double delta, double se, double alpha, Condition c);

  BDistParams with_condition(Condition c) const;
};

// Lowest point of the support: se*q(1-alpha) for Marginal/Accept,
// se*(q(1-alpha) + q(1-alpha/2)) for Reject.
double support_lower(const BDistParams& p);

// Cumulative distribution of B at b. Returns 0 below the support and is
// right-continuous. When delta == 0 the simplified piecewise forms are used
// (debug builds assert that the general-delta expressions agree).
double cdf_b(const BDistParams& p, double b);

// Density of the marginal law of B. Conditional variants have no closed
// density; requesting one throws std::domain_error.
double pdf_b_marginal(const BDistParams& p, double b);

// Probability of the conditioning event itself (1 for Marginal).
double stage1_probability(const BDistParams& p);

// cdf_b with the reference quantiles and normalization hoisted out, for
// evaluation on many b values with fixed parameters.
class BDistCdf {
 public:
  explicit BDistCdf(const BDistParams& p);
  double operator()(double b) const;
  const BDistParams& params() const { return params_; }

 private:
  BDistParams params_;
  double q_alpha_ = 0.0;       // q(1-alpha)
  double q_half_alpha_ = 0.0;  // q(1-alpha/2)
  double cond_prob_ = 1.0;     // probability of the conditioning event
};

}  // namespace bvalue
