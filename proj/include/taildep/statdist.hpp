// statdist.hpp
//
// Normal, chi-square and F quantiles for the bootstrap decision rules.
// The special functions are evaluated in-house (series and continued
// fractions) so thresholds do not depend on a platform statistics library.

#ifndef TAILDEP_STATDIST_HPP
#define TAILDEP_STATDIST_HPP

namespace taildep::dist {

/// Regularized lower incomplete gamma P(a, x), a > 0, x >= 0.
double gamma_p(double a, double x);
/// Regularized upper incomplete gamma Q(a, x) = 1 - P(a, x).
double gamma_q(double a, double x);
/// Regularized incomplete beta I_x(a, b), a, b > 0, 0 <= x <= 1.
double beta_inc(double a, double b, double x);

double normal_cdf(double x);
double chisq_cdf(double x, double df);
double f_cdf(double x, double df1, double df2);

/// Phi^{-1}(p), absolute accuracy better than 1e-9.
double normal_quantile(double p);
/// Chi-square inverse CDF, relative accuracy 1e-8 or better.
double chisq_quantile(double p, double df);
/// F(df1, df2) inverse CDF, relative accuracy 1e-8 or better.
double f_quantile(double p, double df1, double df2);

}  // namespace taildep::dist

#endif  // TAILDEP_STATDIST_HPP
