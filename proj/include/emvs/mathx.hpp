#pragma once

#include <cmath>

// Small numerically careful scalar helpers shared across modules.
namespace emvs {

// log(1 + e^x) without overflow/underflow (cutoffs per the usual log1pexp
// piecewise scheme; relative error < 1e-15 across the real line).
inline double log1pexp(double x) {
    if (x <= -37.0) return std::exp(x);
    if (x <= 18.0) return std::log1p(std::exp(x));
    if (x <= 33.3) return x + std::exp(-x);
    return x;
}

// 1/(1 + e^-x), evaluated on the side that avoids overflow.
inline double sigmoid(double x) {
    if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
    double e = std::exp(x);
    return e / (1.0 + e);
}

// b*log(b) with the b -> 0 limit (entropy terms in the logistic conjugate).
inline double xlogx(double b) { return b > 0.0 ? b * std::log(b) : 0.0; }

inline double sq(double x) { return x * x; }

}  // namespace emvs
