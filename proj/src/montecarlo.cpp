#include "bvalue/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <exception>
#include <limits>
#include <stdexcept>
#include <thread>
#include <vector>

namespace bvalue {

namespace {

// SplitMix64 finalizer evaluated at an arbitrary position of the stream.
// Draw j of replicate r reads position r*stride + j, so the value stream is
// a pure function of (seed, replicate, draw) and scheduling cannot matter.
std::uint64_t mix64(std::uint64_t state) {
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

// Uniform draw strictly inside (0, 1).
double uniform01(std::uint64_t seed, std::uint64_t index) {
  const std::uint64_t raw = mix64(seed + (index + 1) * 0x9E3779B97F4A7C15ull);
  return (static_cast<double>(raw >> 11) + 0.5) * 0x1.0p-53;
}

struct RepRecord {
  double pivot = 0.0;  // B / S, i.e. |t| + q(1-alpha)
  std::uint8_t accepted = 0;
  std::uint8_t outcome = 0;  // Stage2Outcome
};

struct RepContext {
  const SimScenario& s;
  ProcedureConfig cfg;
  RefDist normal = RefDist::normal();
  RefDist student;
  double se_ref;
  double sd_synthetic;  // sd that reproduces se_ref through pooled_se
  double q_alpha;       // q(1-alpha) of the t reference
  std::uint64_t stride;
};

void run_rep(const RepContext& ctx, std::size_t rep, std::vector<double>& x1,
             std::vector<double>& x2, RepRecord& out) {
  const SimScenario& s = ctx.s;
  const std::uint64_t base = static_cast<std::uint64_t>(rep) * ctx.stride;

  ProcedureOutcome res;
  if (s.mode == SimScenario::Mode::Raw) {
    for (std::size_t i = 0; i < s.n1; ++i)
      x1[i] = s.mu1 + s.sigma * quantile(ctx.normal, uniform01(s.seed, base + i));
    for (std::size_t i = 0; i < s.n2; ++i)
      x2[i] = s.mu2 +
              s.sigma * quantile(ctx.normal, uniform01(s.seed, base + s.n1 + i));
    res = run_two_stage(summarize(x1), summarize(x2), ctx.cfg);
  } else {
    // Fixed standard error: draw the standardized estimate from the t law
    // and feed synthetic summaries that reproduce (delta_hat, se_ref).
    const double t_draw = quantile(ctx.student, uniform01(s.seed, base));
    const double delta_hat = (s.mu1 - s.mu2) + ctx.se_ref * t_draw;
    const SampleSummary g1{s.n1, delta_hat, ctx.sd_synthetic};
    const SampleSummary g2{s.n2, 0.0, ctx.sd_synthetic};
    res = run_two_stage(g1, g2, ctx.cfg);
  }

  out.pivot = std::fabs(res.result.t_stat) + ctx.q_alpha;
  out.accepted = res.stage1 == Stage1Verdict::Accept ? 1 : 0;
  out.outcome = static_cast<std::uint8_t>(res.stage2);
}

// Exact KS distance between the sorted sample (on the pivot scale) and the
// analytic cdf.
double ks_distance(const std::vector<double>& sorted_pivots, const BDistCdf& cdf_fn,
                   double se_ref) {
  const std::size_t n = sorted_pivots.size();
  if (n == 0) return std::numeric_limits<double>::quiet_NaN();
  double d = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double f = cdf_fn(se_ref * sorted_pivots[i]);
    const double lo = static_cast<double>(i) / static_cast<double>(n);
    const double hi = static_cast<double>(i + 1) / static_cast<double>(n);
    d = std::fmax(d, std::fmax(f - lo, hi - f));
  }
  return d;
}

double fraction_below(const std::vector<double>& values, double threshold) {
  if (values.empty()) return std::numeric_limits<double>::quiet_NaN();
  std::size_t count = 0;
  for (double v : values)
    if (v <= threshold) ++count;
  return static_cast<double>(count) / static_cast<double>(values.size());
}

}  // namespace

SimReport simulate(const SimScenario& s, unsigned max_workers) {
  if (s.reps < 1) throw std::domain_error("simulate: reps must be >= 1");
  if (!(s.sigma > 0.0)) throw std::domain_error("simulate: sigma must be positive");
  if (s.n1 < 2 || s.n2 < 2)
    throw std::domain_error("simulate: group sizes must be >= 2");
  if (!(s.alpha > 0.0 && s.alpha < 0.5))
    throw std::domain_error("simulate: alpha must lie in (0, 0.5)");
  if (!(s.beta > 0.0 && s.beta < 1.0))
    throw std::domain_error("simulate: beta must lie in (0, 1)");

  const double n1 = static_cast<double>(s.n1);
  const double n2 = static_cast<double>(s.n2);
  const double dof = n1 + n2 - 2.0;

  RepContext ctx{.s = s,
                 .cfg = ProcedureConfig{s.alpha, s.beta, DistMode::T, {}},
                 .student = RefDist::student_t(dof),
                 .se_ref = s.sigma * std::sqrt(1.0 / n1 + 1.0 / n2),
                 .sd_synthetic = 0.0,
                 .q_alpha = 0.0,
                 .stride = s.mode == SimScenario::Mode::Raw
                               ? static_cast<std::uint64_t>(s.n1 + s.n2)
                               : 1};
  ctx.sd_synthetic = ctx.se_ref / std::sqrt(1.0 / n1 + 1.0 / n2);
  ctx.q_alpha = quantile(ctx.student, 1.0 - s.alpha);

  std::vector<RepRecord> records(s.reps);

  // Each worker owns a disjoint replicate range and writes only its own
  // slots, so the merged result is identical for any worker count.
  const unsigned hw = max_workers > 0
                          ? max_workers
                          : std::max(1u, std::thread::hardware_concurrency());
  const std::size_t workers =
      std::min<std::size_t>(std::min<std::size_t>(hw, 8), s.reps);
  auto run_range = [&](std::size_t begin, std::size_t end,
                       std::exception_ptr& error) noexcept {
    try {
      std::vector<double> x1(s.n1), x2(s.n2);
      for (std::size_t rep = begin; rep < end; ++rep)
        run_rep(ctx, rep, x1, x2, records[rep]);
    } catch (...) {
      error = std::current_exception();
    }
  };

  std::vector<std::exception_ptr> errors(workers);
  if (workers <= 1) {
    run_range(0, s.reps, errors[0]);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    const std::size_t chunk = (s.reps + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
      const std::size_t begin = w * chunk;
      const std::size_t end = std::min(s.reps, begin + chunk);
      pool.emplace_back(run_range, begin, end, std::ref(errors[w]));
    }
    for (auto& t : pool) t.join();
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);

  SimReport report;
  report.scenario = s;
  report.se_ref = ctx.se_ref;

  std::vector<double> pivots_all;
  std::vector<double> pivots_accept;
  std::vector<double> pivots_reject;
  pivots_all.reserve(s.reps);
  for (const RepRecord& r : records) {
    pivots_all.push_back(r.pivot);
    if (r.accepted) {
      ++report.accept_count;
      pivots_accept.push_back(r.pivot);
    } else {
      ++report.reject_count;
      pivots_reject.push_back(r.pivot);
    }
    switch (static_cast<Stage2Outcome>(r.outcome)) {
      case Stage2Outcome::Equivalence: ++report.equivalence_count; break;
      case Stage2Outcome::Inconclusive: ++report.inconclusive_count; break;
      case Stage2Outcome::DifferenceConfirmed:
        ++report.difference_confirmed_count;
        break;
      case Stage2Outcome::FalsePositiveCorrected:
        ++report.false_positive_corrected_count;
        break;
    }
  }

  std::sort(pivots_all.begin(), pivots_all.end());
  std::sort(pivots_accept.begin(), pivots_accept.end());
  std::sort(pivots_reject.begin(), pivots_reject.end());

  const double delta_true = s.mu1 - s.mu2;
  const auto params_for = [&](Condition c) {
    return BDistParams::student_t(delta_true, ctx.se_ref, dof, s.alpha, c);
  };
  report.ks_marginal =
      ks_distance(pivots_all, BDistCdf(params_for(Condition::Marginal)), ctx.se_ref);
  report.ks_accept =
      ks_distance(pivots_accept, BDistCdf(params_for(Condition::Accept)), ctx.se_ref);
  report.ks_reject =
      ks_distance(pivots_reject, BDistCdf(params_for(Condition::Reject)), ctx.se_ref);

  // EEB calibration on the pivot scale: EEB(beta|C)/S is a pure quantile
  // expression, shared by every replicate.
  const double thr_marginal =
      quantile(ctx.student, 0.5 * (1.0 + s.beta)) + ctx.q_alpha;
  const double thr_accept =
      quantile(ctx.student, 0.5 * (s.beta * (1.0 - s.alpha) + 1.0)) + ctx.q_alpha;
  const double thr_reject =
      quantile(ctx.student, 1.0 - 0.5 * s.alpha * (1.0 - s.beta)) + ctx.q_alpha;
  report.calibration_marginal = fraction_below(pivots_all, thr_marginal);
  report.calibration_accept = fraction_below(pivots_accept, thr_accept);
  report.calibration_reject = fraction_below(pivots_reject, thr_reject);

  const auto downsample = [&](const std::vector<double>& sorted) {
    std::vector<CdfPoint> points;
    const std::size_t n = sorted.size();
    const std::size_t count = std::min<std::size_t>(256, n);
    points.reserve(count);
    std::size_t last_index = std::numeric_limits<std::size_t>::max();
    for (std::size_t j = 0; j < count; ++j) {
      const std::size_t k = (j + 1) * n / count - 1;
      if (k == last_index) continue;
      last_index = k;
      points.push_back(CdfPoint{ctx.se_ref * sorted[k],
                                static_cast<double>(k + 1) /
                                    static_cast<double>(n)});
    }
    return points;
  };
  report.empirical_cdf = downsample(pivots_all);
  report.empirical_cdf_accept = downsample(pivots_accept);
  report.empirical_cdf_reject = downsample(pivots_reject);
  return report;
}

std::vector<SimReport> sweep(std::span<const SimScenario> scenarios) {
  if (scenarios.empty())
    throw std::invalid_argument("sweep: scenario list must not be empty");
  std::vector<SimReport> out;
  out.reserve(scenarios.size());
  for (const SimScenario& s : scenarios) out.push_back(simulate(s));
  return out;
}

}  // namespace bvalue
