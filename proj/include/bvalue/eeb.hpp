#pragma once

#include <span>
#include <utility>
#include <vector>

#include "bvalue/b_dist.hpp"
#include "bvalue/interval.hpp"

namespace bvalue {

enum class EebSolver { ClosedForm, Bisection, Auto };

struct EebQuery {
  BDistParams params;  // delta must be 0 for the closed forms
  double beta = 0.5;   // in (0, 1)
  EebSolver solver = EebSolver::Auto;
};

struct EebResult {
  double bound = 0.0;
  Interval interval;          // [-bound, bound], the equivalence interval
  double achieved_cdf = 0.0;  // cdf_b at the bound
  EebSolver solver_used = EebSolver::ClosedForm;
  int iterations = 0;         // 0 for closed forms
};

// Closed-form bound under delta = 0:
//   Accept:   se * (q((beta*(1-alpha)+1)/2) + q(1-alpha))
//   Reject:   se * (q(1 - alpha*(1-beta)/2) + q(1-alpha))
//   Marginal: se * (q((1+beta)/2) + q(1-alpha))
// The marginal form is an inversion of the marginal cdf and is cross-checked
// against bisection in the tests.
EebResult eeb_closed(const EebQuery& q);

// Smallest b with cdf_b(b) >= beta, found by bisection on the nondecreasing
// cdf. Works for any parameters, including nonzero delta (exploratory use;
// the bound is defined under delta = 0). Throws std::runtime_error if the
// upper bracket exceeds 1e6 * se.
EebResult eeb_bisect(const EebQuery& q);

// Auto dispatch: closed form when delta == 0, bisection otherwise.
EebResult eeb(const EebQuery& q);

// Pointwise bounds over a beta grid, clamped into [1e-6, 1-1e-6] and sorted
// by beta.
std::vector<std::pair<double, double>> eeb_curve(const BDistParams& params,
                                                 std::span<const double> betas);

}  // namespace bvalue
