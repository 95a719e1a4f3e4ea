#include "bvalue/eeb.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bvalue {

namespace {

constexpr double kBisectTol = 1e-9;
constexpr double kBracketLimitFactor = 1e6;

void validate_beta(double beta) {
  if (!(beta > 0.0 && beta < 1.0))
    throw std::domain_error("eeb: beta must lie in (0, 1)");
}

EebResult make_result(const BDistCdf& cdf_fn, double bound, EebSolver used,
                      int iterations) {
  EebResult r;
  r.bound = bound;
  r.interval = Interval{-bound, bound};
  r.achieved_cdf = cdf_fn(bound);
  r.solver_used = used;
  r.iterations = iterations;
  return r;
}

}  // namespace

EebResult eeb_closed(const EebQuery& q) {
  validate_beta(q.beta);
  const BDistParams& p = q.params;
  if (p.delta != 0.0)
    throw std::domain_error("eeb_closed: closed forms hold only for delta = 0");
  const BDistCdf cdf_fn(p);  // validates params
  const double q1 = quantile(p.dist, 1.0 - p.alpha);
  double prob = 0.0;
  switch (p.condition) {
    case Condition::Marginal:
      prob = 0.5 * (1.0 + q.beta);
      break;
    case Condition::Accept:
      prob = 0.5 * (q.beta * (1.0 - p.alpha) + 1.0);
      break;
    case Condition::Reject:
      prob = 1.0 - 0.5 * p.alpha * (1.0 - q.beta);
      break;
  }
  const double bound = p.se * (quantile(p.dist, prob) + q1);
  return make_result(cdf_fn, bound, EebSolver::ClosedForm, 0);
}

EebResult eeb_bisect(const EebQuery& q) {
  validate_beta(q.beta);
  const BDistParams& p = q.params;
  const BDistCdf cdf_fn(p);

  const double support = support_lower(p);  // cdf is 0 here
  double lo = support;
  double hi = support + p.se;
  int iterations = 0;
  while (cdf_fn(hi) < q.beta) {
    lo = hi;
    hi += 2.0 * (hi - support) + p.se;
    ++iterations;
    if (hi - support > kBracketLimitFactor * p.se)
      throw std::runtime_error(
          "eeb_bisect: bracket expansion exceeded 1e6 * se; "
          "parameters are likely malformed");
  }
  while (hi - lo > kBisectTol && iterations < 200) {
    const double mid = 0.5 * (lo + hi);
    if (cdf_fn(mid) >= q.beta) {
      hi = mid;
    } else {
      lo = mid;
    }
    ++iterations;
  }
  return make_result(cdf_fn, hi, EebSolver::Bisection, iterations);
}

EebResult eeb(const EebQuery& q) {
  if (q.solver == EebSolver::ClosedForm) return eeb_closed(q);
  if (q.solver == EebSolver::Bisection) return eeb_bisect(q);
  return q.params.delta == 0.0 ? eeb_closed(q) : eeb_bisect(q);
}

std::vector<std::pair<double, double>> eeb_curve(const BDistParams& params,
                                                 std::span<const double> betas) {
  std::vector<double> grid(betas.begin(), betas.end());
  for (double& b : grid) b = std::clamp(b, 1e-6, 1.0 - 1e-6);
  std::sort(grid.begin(), grid.end());

  std::vector<std::pair<double, double>> out;
  out.reserve(grid.size());
  for (double beta : grid) {
    const EebResult r = eeb(EebQuery{params, beta, EebSolver::Auto});
    out.emplace_back(beta, r.bound);
  }
  return out;
}

}  // namespace bvalue
