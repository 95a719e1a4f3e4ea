#include "bvalue/two_sample.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace bvalue {

namespace {

void validate_summary(const SampleSummary& g, const char* which) {
  if (g.n < 2)
    throw std::domain_error(std::string("two_sample: ") + which +
                            " needs at least 2 observations");
  if (!std::isfinite(g.mean) || !std::isfinite(g.sd) || g.sd < 0.0)
    throw std::domain_error(std::string("two_sample: ") + which +
                            " has a non-finite mean or invalid sd");
}

}  // namespace

SampleSummary summarize(std::span<const double> values) {
  if (values.size() < 2)
    throw std::domain_error("summarize: need at least 2 observations");
  double sum = 0.0;
  for (double v : values) {
    if (!std::isfinite(v))
      throw std::domain_error("summarize: values must be finite");
    sum += v;
  }
  const double mean = sum / static_cast<double>(values.size());
  double ss = 0.0;
  for (double v : values) {
    const double d = v - mean;
    ss += d * d;
  }
  const double var = ss / static_cast<double>(values.size() - 1);
  return SampleSummary{values.size(), mean, std::sqrt(var)};
}

double pooled_se(const SampleSummary& g1, const SampleSummary& g2) {
  validate_summary(g1, "group 1");
  validate_summary(g2, "group 2");
  if (g1.sd == 0.0 && g2.sd == 0.0)
    throw std::domain_error("pooled_se: degenerate data, both sample variances are zero");
  const double n1 = static_cast<double>(g1.n);
  const double n2 = static_cast<double>(g2.n);
  const double pooled_var =
      ((n1 - 1.0) * g1.sd * g1.sd + (n2 - 1.0) * g2.sd * g2.sd) / (n1 + n2 - 2.0);
  return std::sqrt(1.0 / n1 + 1.0 / n2) * std::sqrt(pooled_var);
}

TwoSampleResult analyze(const SampleSummary& g1, const SampleSummary& g2,
                        double alpha, DistMode mode) {
  if (!(alpha > 0.0 && alpha < 0.5))
    throw std::domain_error("analyze: alpha must lie in (0, 0.5)");
  const double se = pooled_se(g1, g2);
  const double dof = static_cast<double>(g1.n + g2.n) - 2.0;
  const RefDist dist =
      mode == DistMode::Z ? RefDist::normal() : RefDist::student_t(dof);

  TwoSampleResult r;
  r.delta_hat = g1.mean - g2.mean;
  r.se = se;
  r.dof = dof;
  r.alpha = alpha;
  r.t_stat = r.delta_hat / se;
  r.p_value = 2.0 * (1.0 - cdf(dist, std::fabs(r.t_stat)));
  const double q_test = quantile(dist, 1.0 - 0.5 * alpha);
  const double q_equiv = quantile(dist, 1.0 - alpha);
  r.ci_test = Interval{r.delta_hat - q_test * se, r.delta_hat + q_test * se};
  r.ci_equiv = Interval{r.delta_hat - q_equiv * se, r.delta_hat + q_equiv * se};
  r.b_value = std::fmax(std::fabs(r.ci_equiv.lo), std::fabs(r.ci_equiv.hi));
  r.dist = dist;
  return r;
}

TwoSampleResult analyze(std::span<const double> g1, std::span<const double> g2,
                        double alpha, DistMode mode) {
  return analyze(summarize(g1), summarize(g2), alpha, mode);
}

double b_value(const TwoSampleResult& r) {
  return std::fmax(std::fabs(r.ci_equiv.lo), std::fabs(r.ci_equiv.hi));
}

Stage1Verdict stage1_verdict(const TwoSampleResult& r) {
  return r.ci_test.contains(0.0) ? Stage1Verdict::Accept : Stage1Verdict::Reject;
}

}  // namespace bvalue
