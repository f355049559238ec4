#include "taildep/statdist.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace taildep::dist {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kTiny = 1e-300;
constexpr int kMaxIter = 100000;

void check_probability(double p) {
    if (!(p > 0.0 && p < 1.0)) {
        throw std::invalid_argument("probability must lie strictly between 0 and 1");
    }
}

void check_df(double df) {
    if (!(df > 0.0) || !std::isfinite(df)) {
        throw std::invalid_argument("degrees of freedom must be positive and finite");
    }
}

double log_gamma_prefactor(double a, double x) {
    return -x + a * std::log(x) - std::lgamma(a);
}

// Power series for P(a, x); converges quickly for x < a + 1.
double gamma_series(double a, double x) {
    double ap = a;
    double del = 1.0 / a;
    double sum = del;
    for (int i = 0; i < kMaxIter; ++i) {
        ap += 1.0;
        del *= x / ap;
        sum += del;
        if (std::fabs(del) < std::fabs(sum) * kEps) break;
    }
    return sum * std::exp(log_gamma_prefactor(a, x));
}

// Lentz continued fraction for Q(a, x); converges quickly for x >= a + 1.
double gamma_continued_fraction(double a, double x) {
    double b = x + 1.0 - a;
    double c = 1.0 / kTiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < kMaxIter; ++i) {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = b + an / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < kEps) break;
    }
    return std::exp(log_gamma_prefactor(a, x)) * h;
}

double beta_continued_fraction(double a, double b, double x) {
    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::fabs(d) < kTiny) d = kTiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m < kMaxIter; ++m) {
        const double m2 = 2.0 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < kEps) break;
    }
    return h;
}

double log_beta(double a, double b) {
    return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
}

// Safeguarded Newton for cdf(x) = p on a bracket [lo, hi] with cdf(lo) <= p <= cdf(hi).
double invert_cdf(const std::function<double(double)>& cdf, const std::function<double(double)>& pdf, double p,
                  double lo, double hi, double x) {
    for (int iter = 0; iter < 500; ++iter) {
        const double f = cdf(x) - p;
        if (f == 0.0) return x;
        if (f < 0.0) {
            lo = x;
        } else {
            hi = x;
        }
        const double dens = pdf(x);
        double next = (dens > 0.0 && std::isfinite(dens)) ? x - f / dens : 0.5 * (lo + hi);
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        if (std::fabs(next - x) <= 4.0 * kEps * std::fabs(next) || hi - lo <= 4.0 * kEps * std::fabs(next)) {
            return next;
        }
        x = next;
    }
    return x;
}

}  // namespace

double gamma_p(double a, double x) {
    if (!(a > 0.0) || !(x >= 0.0)) throw std::invalid_argument("gamma_p needs a > 0 and x >= 0");
    if (x == 0.0) return 0.0;
    if (std::isinf(x)) return 1.0;
    return x < a + 1.0 ? gamma_series(a, x) : 1.0 - gamma_continued_fraction(a, x);
}

double gamma_q(double a, double x) {
    if (!(a > 0.0) || !(x >= 0.0)) throw std::invalid_argument("gamma_q needs a > 0 and x >= 0");
    if (x == 0.0) return 1.0;
    if (std::isinf(x)) return 0.0;
    return x < a + 1.0 ? 1.0 - gamma_series(a, x) : gamma_continued_fraction(a, x);
}

double beta_inc(double a, double b, double x) {
    if (!(a > 0.0) || !(b > 0.0) || !(x >= 0.0 && x <= 1.0)) {
        throw std::invalid_argument("beta_inc needs a, b > 0 and 0 <= x <= 1");
    }
    if (x == 0.0) return 0.0;
    if (x == 1.0) return 1.0;
    const double front = std::exp(a * std::log(x) + b * std::log1p(-x) - log_beta(a, b));
    if (x < (a + 1.0) / (a + b + 2.0)) {
        return front * beta_continued_fraction(a, b, x) / a;
    }
    return 1.0 - front * beta_continued_fraction(b, a, 1.0 - x) / b;
}

double normal_cdf(double x) {
    return 0.5 * std::erfc(-x / std::numbers::sqrt2);
}

double chisq_cdf(double x, double df) {
    check_df(df);
    if (x <= 0.0) return 0.0;
    return gamma_p(0.5 * df, 0.5 * x);
}

double f_cdf(double x, double df1, double df2) {
    check_df(df1);
    check_df(df2);
    if (x <= 0.0) return 0.0;
    const double t = df1 * x;
    return beta_inc(0.5 * df1, 0.5 * df2, t / (t + df2));
}

double normal_quantile(double p) {
    check_probability(p);
    if (p == 0.5) return 0.0;
    // Rational start (Abramowitz & Stegun 26.2.23, |error| < 4.5e-4) ...
    const double q = p < 0.5 ? p : 1.0 - p;
    const double t = std::sqrt(-2.0 * std::log(q));
    double x = t - (2.515517 + t * (0.802853 + t * 0.010328)) /
                       (1.0 + t * (1.432788 + t * (0.189269 + t * 0.001308)));
    if (p < 0.5) x = -x;
    // ... polished by Halley steps on the erfc-based CDF.
    const double inv_sqrt_2pi = 0.5 * std::numbers::inv_sqrtpi * std::numbers::sqrt2;
    for (int i = 0; i < 4; ++i) {
        const double dens = inv_sqrt_2pi * std::exp(-0.5 * x * x);
        const double u = (normal_cdf(x) - p) / dens;
        const double step = u / (1.0 + 0.5 * x * u);
        x -= step;
        if (std::fabs(step) < 1e-15 * (1.0 + std::fabs(x))) break;
    }
    return x;
}

double chisq_quantile(double p, double df) {
    check_probability(p);
    check_df(df);
    const double k = 0.5 * df;
    // Wilson-Hilferty start.
    const double z = normal_quantile(p);
    const double c = 2.0 / (9.0 * df);
    double x0 = df * std::pow(1.0 - c + z * std::sqrt(c), 3.0);
    if (!(x0 > 0.0)) x0 = std::pow(p * std::tgamma(k + 1.0), 1.0 / k) * 2.0;  // small-x series
    if (!(x0 > 0.0) || !std::isfinite(x0)) x0 = df;

    auto cdf = [df](double x) { return chisq_cdf(x, df); };
    auto pdf = [k](double x) {
        if (x <= 0.0) return 0.0;
        const double t = 0.5 * x;
        return 0.5 * std::exp((k - 1.0) * std::log(t) - t - std::lgamma(k));
    };
    double hi = std::max(2.0 * x0, 1.0);
    while (cdf(hi) < p) hi *= 2.0;
    return invert_cdf(cdf, pdf, p, 0.0, hi, std::min(x0, hi));
}

double f_quantile(double p, double df1, double df2) {
    check_probability(p);
    check_df(df1);
    check_df(df2);
    const double a = 0.5 * df1;
    const double b = 0.5 * df2;
    const double lb = log_beta(a, b);
    auto cdf = [a, b](double x) { return beta_inc(a, b, x); };
    auto pdf = [a, b, lb](double x) {
        if (x <= 0.0 || x >= 1.0) return 0.0;
        return std::exp((a - 1.0) * std::log(x) + (b - 1.0) * std::log1p(-x) - lb);
    };
    const double x = invert_cdf(cdf, pdf, p, 0.0, 1.0, a / (a + b));
    return df2 * x / (df1 * (1.0 - x));
}

}  // namespace taildep::dist
