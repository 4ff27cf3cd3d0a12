#include "emvs/normal.hpp"

#include <cfloat>
#include <cmath>

namespace emvs::normal {

namespace {
constexpr double kInvSqrt2Pi = 0.3989422804014326779399461;   // 1/sqrt(2*pi)
constexpr double kLogSqrt2Pi = 0.9189385332046727417803297;   // log(sqrt(2*pi))
constexpr double kSqrt2OverPi = 0.7978845608028653558798921;  // sqrt(2/pi)
constexpr double kSqrt1_2 = 0.7071067811865475244008444;      // 1/sqrt(2)
}  // namespace

double pdf(double x) { return kInvSqrt2Pi * std::exp(-0.5 * x * x); }

double log_pdf(double x) { return -0.5 * x * x - kLogSqrt2Pi; }

double cdf(double x) { return 0.5 * std::erfc(-x * kSqrt1_2); }

double cdf_c(double x) { return 0.5 * std::erfc(x * kSqrt1_2); }

double erfcx(double x) {
    if (x <= 26.0) {
        // exp(x^2) stays below overflow and erfc(x) above underflow here, so
        // the literal product is accurate.
        return std::exp(x * x) * std::erfc(x);
    }
    // Asymptotic series 1/(x*sqrt(pi)) * sum (-1)^k (2k-1)!! / (2x^2)^k;
    // truncation error < 1e-12 relative for x > 26.
    const double z = 0.5 / (x * x);
    double series = 1.0 + z * (-1.0 + z * (3.0 + z * (-15.0 + z * 105.0)));
    return series / (x * 1.7724538509055160272981675);  // sqrt(pi)
}

double log_cdf(double x) {
    if (x >= -1.0) return std::log(cdf(x));
    const double t = -x * kSqrt1_2;
    // log(0.5 * erfcx(t) * exp(-t^2))
    return -0.6931471805599453094172321 + std::log(erfcx(t)) - t * t;
}

// Wichura's algorithm AS 241, PPND16.
double inv_cdf(double p) {
    const double q = p - 0.5;
    double r;
    if (std::fabs(q) <= 0.425) {
        r = 0.180625 - q * q;
        return q *
               (((((((2.5090809287301226727e3 * r + 3.3430575583588128105e4) * r +
                     6.7265770927008700853e4) *
                        r +
                    4.5921953931549871457e4) *
                       r +
                   1.3731693765509461125e4) *
                      r +
                  1.9715909503065514427e3) *
                     r +
                 1.3314166789178437745e2) *
                    r +
                3.3871328727963666080e0) /
               (((((((5.2264952788528545610e3 * r + 2.8729085735721942674e4) * r +
                     3.9307895800092710610e4) *
                        r +
                    2.1213794301586595867e4) *
                       r +
                   5.3941960214247511077e3) *
                      r +
                  6.8718700749205790830e2) *
                     r +
                 4.2313330701600911252e1) *
                    r +
                1.0);
    }
    r = (q < 0.0) ? p : 1.0 - p;
    r = std::sqrt(-std::log(r));
    double val;
    if (r <= 5.0) {
        r -= 1.6;
        val = (((((((7.74545014278341407640e-4 * r + 2.27238449892691845833e-2) * r +
                    2.41780725177450611770e-1) *
                       r +
                   1.27045825245236838258e0) *
                      r +
                  3.64784832476320460504e0) *
                     r +
                 5.76949722146069140550e0) *
                    r +
                4.63033784615654529590e0) *
                   r +
               1.42343711074968357734e0) /
              (((((((1.05075007164441684324e-9 * r + 5.47593808499534494600e-4) * r +
                    1.51986665636164571966e-2) *
                       r +
                   1.48103976427480074590e-1) *
                      r +
                  6.89767334985100004550e-1) *
                     r +
                 1.67638483018380384940e0) *
                    r +
                2.05319162663775882187e0) *
                   r +
               1.0);
    } else {
        r -= 5.0;
        val = (((((((2.01033439929228813265e-7 * r + 2.71155556874348757815e-5) * r +
                    1.24266094738807843860e-3) *
                       r +
                   2.65321895265761230930e-2) *
                      r +
                  2.96560571828504891230e-1) *
                     r +
                 1.78482653991729133580e0) *
                    r +
                5.46378491116411436990e0) *
                   r +
               6.65790464350110377720e0) /
              (((((((2.04426310338993978564e-15 * r + 1.42151175831644588870e-7) * r +
                    1.84631831751005468180e-5) *
                       r +
                   7.86869131145613259100e-4) *
                      r +
                  1.48753612908506148525e-2) *
                     r +
                 1.36929880922735805310e-1) *
                    r +
                5.99832206555887937690e-1) *
                   r +
               1.0);
    }
    return (q < 0.0) ? -val : val;
}

double inv_mills(double m) {
    if (m <= 1.0) return pdf(m) / cdf_c(m);
    // pdf/cdf_c with the common exp(-m^2/2) cancelled analytically, so the
    // ratio stays finite long after both factors underflow.
    return kSqrt2OverPi / erfcx(m * kSqrt1_2);
}

double inv_mills_residual(double t) {
    if (t < 20.0) return inv_mills(t) - t;
    const double x = 1.0 / (t * t);
    return (1.0 +
            x * (-2.0 +
                 x * (10.0 +
                      x * (-74.0 +
                           x * (706.0 + x * (-8162.0 + x * (110410.0 + x * -1708394.0))))))) /
           t;
}

double trunc_mean_positive(double m) {
    if (m <= -20.0) return inv_mills_residual(-m);  // m + inv_mills(-m) cancels here
    return m + inv_mills(-m);
}

double trunc_mean_negative(double m) { return -trunc_mean_positive(-m); }

double truncnorm_positive_quantile(double m, double u) {
    // Standardized bound: condition is T > alpha with T = Z - m, alpha = -m.
    // Solve cdf_c(t) = (1-u) * cdf_c(alpha) through the upper tail.  Means
    // deeper than 37 sd below the bound are clamped (consistently, so the
    // draw is still a valid truncated-normal quantile) to keep the tail
    // probability representable.
    double alpha = -m;
    if (alpha > 37.0) alpha = 37.0;
    const double z = -alpha - inv_cdf((1.0 - u) * cdf_c(alpha));
    return z > 0.0 ? z : DBL_MIN;
}

double truncnorm_negative_quantile(double m, double u) {
    return -truncnorm_positive_quantile(-m, u);
}

}  // namespace emvs::normal
