#pragma once

// Standard-normal functions with tail-stable evaluation.  The truncated-normal
// means used by the probit engine and the truncated-normal quantiles used by
// the MCMC baseline both break down under naive pdf/cdf arithmetic once the
// mean is a few dozen standard deviations from the truncation point, so the
// far-tail branches here are the load-bearing part.
namespace emvs::normal {

double pdf(double x);
double log_pdf(double x);

// Lower/upper tail CDF: cdf(x) = P(Z <= x), cdf_c(x) = P(Z > x).
double cdf(double x);
double cdf_c(double x);

// log P(Z <= x), finite for x down to about -3.8e4 (uses erfcx in the tail).
double log_cdf(double x);

// Scaled complementary error function exp(x^2) * erfc(x), accurate for all
// x >= 0 (asymptotic series beyond the range where exp(x^2) overflows).
double erfcx(double x);

// Quantile function (inverse CDF), Wichura's PPND16: |error| ~ 1e-16 relative,
// valid for p in (0,1) including subnormal tails.
double inv_cdf(double p);

// Inverse Mills ratio pdf(m)/cdf_c(m): the hazard of the standard normal.
// Monotone increasing, ~ m + 1/m for large m.
double inv_mills(double m);

// inv_mills(t) - t for t >= 0 without cancellation (direct below t=20,
// asymptotic series above).  This is the distance between a truncated
// normal's mean and the truncation-side bound, which itself tends to 0.
double inv_mills_residual(double t);

// E[Z | Z > 0] for Z ~ N(m, 1): strictly positive for every finite m.
double trunc_mean_positive(double m);
// E[Z | Z <= 0] for Z ~ N(m, 1): strictly negative; equals
// -trunc_mean_positive(-m) by symmetry.
double trunc_mean_negative(double m);

// Quantile of Z ~ N(m, 1) conditioned on Z > 0, at u in (0,1); the inverse-CDF
// sampler for the MCMC baseline's latent draws.  Parametrized through the
// upper tail so deep-tail truncations stay finite and sign-correct.
double truncnorm_positive_quantile(double m, double u);
// Same for Z <= 0 (returns a negative value).
double truncnorm_negative_quantile(double m, double u);

}  // namespace emvs::normal
