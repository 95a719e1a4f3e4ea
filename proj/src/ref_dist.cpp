// Student-t and standard-normal cdf/quantile/pdf kernels. The t cdf goes
// through the regularized incomplete beta function evaluated by a modified
// Lentz continued fraction; quantiles invert the cdf with a bracketed Newton
// iteration. Everything here is a pure function of its arguments.

#include "bvalue/ref_dist.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace bvalue {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kInvSqrt2 = 0.70710678118654752440;
constexpr double kInvSqrt2Pi = 0.39894228040143267794;

// ln Gamma(x) for x > 0, Lanczos approximation (~1e-15 relative).
double gamma_ln(double x) {
  static const double cof[6] = {76.18009172947146,     -86.50532032941677,
                                24.01409824083091,     -1.231739572450155,
                                0.1208650973866179e-2, -0.5395239384953e-5};
  double y = x;
  double tmp = x + 5.5;
  tmp -= (x + 0.5) * std::log(tmp);
  double ser = 1.000000000190015;
  for (double c : cof) ser += c / ++y;
  return -tmp + std::log(2.5066282746310005 * ser / x);
}

// Continued fraction for the incomplete beta function (modified Lentz).
double beta_cf(double a, double b, double x) {
  const int max_iter = 3000;
  const double eps = 3.0e-16;
  const double fpmin = std::numeric_limits<double>::min() / eps;

  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < fpmin) d = fpmin;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= max_iter; ++m) {
    const int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < fpmin) d = fpmin;
    c = 1.0 + aa / c;
    if (std::fabs(c) < fpmin) c = fpmin;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < fpmin) d = fpmin;
    c = 1.0 + aa / c;
    if (std::fabs(c) < fpmin) c = fpmin;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) <= eps) return h;
  }
  throw std::runtime_error("incomplete beta: continued fraction did not converge");
}

// Regularized incomplete beta I_x(a, b).
double inc_beta(double a, double b, double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double ln_bt = gamma_ln(a + b) - gamma_ln(a) - gamma_ln(b) +
                       a * std::log(x) + b * std::log1p(-x);
  const double bt = std::exp(ln_bt);
  if (x < (a + 1.0) / (a + b + 2.0)) return bt * beta_cf(a, b, x) / a;
  return 1.0 - bt * beta_cf(b, a, 1.0 - x) / b;
}

double student_cdf(double x, double nu) {
  if (x == 0.0) return 0.5;
  const double x2 = x * x;
  if (x2 <= nu) {
    // Central form keeps small-|x| information that nu/(nu+x^2) would round
    // away.
    const double half = 0.5 * inc_beta(0.5, 0.5 * nu, x2 / (nu + x2));
    return x > 0.0 ? 0.5 + half : 0.5 - half;
  }
  const double tail = 0.5 * inc_beta(0.5 * nu, 0.5, nu / (nu + x2));
  return x > 0.0 ? 1.0 - tail : tail;
}

double student_pdf(double x, double nu) {
  const double ln_c =
      gamma_ln(0.5 * (nu + 1.0)) - gamma_ln(0.5 * nu) - 0.5 * std::log(nu * kPi);
  const double ln_kernel = std::fabs(x) < 1e150
                               ? std::log1p(x * x / nu)
                               : 2.0 * std::log(std::fabs(x)) - std::log(nu);
  return std::exp(ln_c - 0.5 * (nu + 1.0) * ln_kernel);
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x * kInvSqrt2); }

double normal_pdf(double x) { return kInvSqrt2Pi * std::exp(-0.5 * x * x); }

// Acklam's rational approximation to the normal quantile (~1e-9 relative);
// used only as the Newton starting point.
double normal_quantile_guess(double p) {
  static const double a[6] = {-3.969683028665376e+01, 2.209460984245205e+02,
                              -2.759285104469687e+02, 1.383577518672690e+02,
                              -3.066479806614716e+01, 2.506628277459239e+00};
  static const double b[5] = {-5.447609879822406e+01, 1.615858368580409e+02,
                              -1.556989798598866e+02, 6.680131188771972e+01,
                              -1.328068155288572e+01};
  static const double c[6] = {-7.784894002430293e-03, -3.223964580411365e-01,
                              -2.400758277161838e+00, -2.549732539343734e+00,
                              4.374664141464968e+00,  2.938163982698783e+00};
  static const double d[4] = {7.784695709041462e-03, 3.224671290700398e-01,
                              2.445134137142996e+00, 3.754408661907416e+00};
  const double p_low = 0.02425;
  if (p < p_low) {
    const double q = std::sqrt(-2.0 * std::log(p));
    return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  if (p > 1.0 - p_low) {
    const double q = std::sqrt(-2.0 * std::log(1.0 - p));
    return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  const double q = p - 0.5;
  const double r = q * q;
  return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
         (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
}

// Starting point for the t quantile: exact for nu = 1 and 2, Hill's
// normal-based expansion otherwise.
double student_quantile_guess(double p, double nu) {
  if (nu == 1.0) return std::tan(kPi * (p - 0.5));
  if (nu == 2.0) return (2.0 * p - 1.0) * std::sqrt(0.5 / (p * (1.0 - p)));
  const double z = normal_quantile_guess(p);
  const double z2 = z * z;
  const double g1 = z * (z2 + 1.0) / 4.0;
  const double g2 = z * (5.0 * z2 * z2 + 16.0 * z2 + 3.0) / 96.0;
  const double g3 = z * (3.0 * z2 * z2 * z2 + 19.0 * z2 * z2 + 17.0 * z2 - 15.0) / 384.0;
  return z + g1 / nu + g2 / (nu * nu) + g3 / (nu * nu * nu);
}

// Safeguarded Newton solve of F(x) = p inside an expanding bracket (rtsafe
// scheme: a Newton step is taken only when it stays inside the bracket and
// at least halves it, otherwise bisect). F must be a nondecreasing cdf with
// density f.
template <class CdfFn, class PdfFn>
double invert_cdf(CdfFn&& cdf_fn, PdfFn&& pdf_fn, double p, double guess) {
  double lo;
  double hi;
  double x = std::isfinite(guess) ? guess : 0.0;
  if (cdf_fn(x) >= p) {
    hi = x;
    double step = std::fmax(1.0, std::fabs(x));
    lo = x - step;
    for (int i = 0; cdf_fn(lo) >= p; ++i) {
      if (i > 600) throw std::runtime_error("quantile: lower bracket search failed");
      step *= 2.0;
      lo -= step;
      x = lo + step;  // hi candidate tightened as we walk down
      hi = std::fmin(hi, x);
    }
  } else {
    lo = x;
    double step = std::fmax(1.0, std::fabs(x));
    hi = x + step;
    for (int i = 0; cdf_fn(hi) < p; ++i) {
      if (i > 600) throw std::runtime_error("quantile: upper bracket search failed");
      step *= 2.0;
      lo = hi;
      hi += step;
    }
  }

  const double tol_p = 1e-14 * std::fmax(p, 1.0 - p);
  x = std::fmin(std::fmax(std::isfinite(guess) ? guess : 0.0, lo), hi);
  double dx_old = hi - lo;
  double dx = dx_old;
  double f_val = cdf_fn(x) - p;
  double df = pdf_fn(x);
  for (int it = 0; it < 200; ++it) {
    if (std::fabs(f_val) <= tol_p) return x;
    if (hi - lo <= 1e-13 * std::fmax(1.0, std::fabs(x))) return hi;
    const bool newton_unsafe =
        (((x - hi) * df - f_val) * ((x - lo) * df - f_val) > 0.0) ||
        (std::fabs(2.0 * f_val) > std::fabs(dx_old * df));
    dx_old = dx;
    if (newton_unsafe) {
      dx = 0.5 * (hi - lo);
      x = lo + dx;
    } else {
      dx = f_val / df;
      x -= dx;
    }
    f_val = cdf_fn(x) - p;
    df = pdf_fn(x);
    if (f_val < 0.0) {
      lo = x;
    } else {
      hi = x;
    }
  }
  return hi;
}

double student_quantile(double p, double nu) {
  // Symmetry: solve on the upper half only so q(p) == -q(1-p) exactly.
  if (p == 0.5) return 0.0;
  if (p < 0.5) return -student_quantile(1.0 - p, nu);
  return invert_cdf([nu](double x) { return student_cdf(x, nu); },
                    [nu](double x) { return student_pdf(x, nu); }, p,
                    student_quantile_guess(p, nu));
}

double normal_quantile(double p) {
  if (p == 0.5) return 0.0;
  if (p < 0.5) return -normal_quantile(1.0 - p);
  return invert_cdf(normal_cdf, normal_pdf, p, normal_quantile_guess(p));
}

void require_finite(double x) {
  if (!std::isfinite(x))
    throw std::domain_error("ref_dist: argument must be finite");
}

}  // namespace

RefDist RefDist::student_t(double dof) {
  if (!(dof > 0.0) || !std::isfinite(dof))
    throw std::invalid_argument("RefDist: Student-t dof must be a positive real");
  return RefDist{Kind::StudentT, dof};
}

RefDist RefDist::normal() { return RefDist{Kind::Normal, 0.0}; }

double cdf(const RefDist& d, double x) {
  require_finite(x);
  return d.kind == RefDist::Kind::StudentT ? student_cdf(x, d.dof)
                                           : normal_cdf(x);
}

double quantile(const RefDist& d, double p) {
  if (!(p > 0.0 && p < 1.0))
    throw std::domain_error("quantile: p must lie in (0, 1), got " +
                            std::to_string(p));
  return d.kind == RefDist::Kind::StudentT ? student_quantile(p, d.dof)
                                           : normal_quantile(p);
}

double pdf(const RefDist& d, double x) {
  require_finite(x);
  return d.kind == RefDist::Kind::StudentT ? student_pdf(x, d.dof)
                                           : normal_pdf(x);
}

}  // namespace bvalue
