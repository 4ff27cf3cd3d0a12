#pragma once

#include <cstdint>
#include <vector>

#include "emvs/types.hpp"

// Synthetic data with a controlled ceiling on the correlation between the
// p_gamma "related" columns (which drive the response) and the remaining
// columns (which are pure decoys but may correlate with the related ones up
// to rho).
namespace emvs::datagen {

struct DesignSpec {
    std::size_t n = 100;
    std::size_t p = 1000;
    std::size_t p_gamma = 10;
    double rho = 0.6;  // target max correlation, in [0, 1)
    std::uint64_t seed = 0;

    void validate() const;
};

struct ResponseSpec {
    std::vector<double> beta_true;
    double sigma_eps2 = 3.0;  // noise variance on the latent continuous response
    Coding coding = Coding::PlusMinusOne;
};

// Construction: draw the related block U(-1.5,1.5) (n x p_gamma, row-major
// draw order); orthonormalize [related | gaussian fill] into a full basis
// (upsilon: the related directions; varrho: the complement); every unrelated
// column is (varrho + upsilon*T) x_c with x_c ~ U(-1,1)^{n-p_gamma} and T the
// diagonal-pattern matrix with every diagonal entry lambda = rho/sqrt(1-rho^2),
// then rescaled to the related columns' average norm.  Cauchy-Schwarz bounds
// any related/unrelated correlation by rho.  Columns come back unstandardized.
linalg::Matrix generate_design(const DesignSpec& spec);

// lambda = rho/sqrt(1-rho^2); lambda(0.6) = 0.75 exactly.
double correlation_lambda(double rho);

// y_cont = x*beta_true + N(0, sigma_eps2), labels ~ Bernoulli(sigmoid(y_cont))
// in the requested coding.  Draw order: the n noise normals, then the n label
// uniforms.  x is passed through untouched (standardization is the caller's).
Dataset generate_binary_response(const linalg::Matrix& x, const ResponseSpec& spec,
                                 std::uint64_t seed);

// First p_gamma entries i.i.d. U(-beta_max, beta_max), the rest exactly zero.
std::vector<double> generate_replicate_betas(std::size_t p, std::size_t p_gamma, double beta_max,
                                             std::uint64_t seed);

}  // namespace emvs::datagen
