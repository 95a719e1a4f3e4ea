#pragma once

namespace bvalue {

// Reference distribution of a standardized test statistic: Student's t with a
// real-valued dof > 0, or the standard normal for the z path.
struct RefDist {
  enum class Kind { StudentT, Normal };

  Kind kind = Kind::Normal;
  double dof = 0.0;  // meaningful for StudentT only

  static RefDist student_t(double dof);
  static RefDist normal();
};

// P(X <= x). Throws std::domain_error for non-finite x.
// Absolute accuracy is ~1e-14 for |x| <= 50.
double cdf(const RefDist& d, double x);

// Inverse cdf. Requires p in (0,1); solves cdf(x) = p to ~1e-13 on the p
// scale via a bracketed Newton iteration, so it is monotone for any grid
// coarser than that.
double quantile(const RefDist& d, double p);

// Density at x.
double pdf(const RefDist& d, double x);

}  // namespace bvalue
