#pragma once

#include <vector>

#include "emvs/sdca.hpp"
#include "emvs/types.hpp"

// EM engine for the probit likelihood: truncated-normal latent-data
// imputation in the E-step, then either a closed-form generalized ridge
// regression (GRR) solve or a squared-loss SDCA solve for beta.  sigma is
// fixed at 1 throughout (the latent augmentation has unit variance, and the
// prior's sigma^2 factor is absorbed by evaluating p*/d* at sigma = 1).
namespace emvs {

enum class ProbitBetaSolver { GRR, SDCA };

struct ProbitEmConfig {
    SpikeSlabHyper hyper;
    std::size_t max_em_iterations = 100;
    sdca::SolverConfig sdca{.max_picks = 6000};  // used by the SDCA beta solver
    ProbitBetaSolver beta_solver = ProbitBetaSolver::GRR;
    std::vector<double> beta_init;  // empty = auto (ridge-logistic solve on recoded labels)
    double theta_init = 0.5;
    double convergence_tol = 1e-6;
    // Optional precomputed X'X (p x p); a path runner fitting many grid
    // points on one dataset shares it across fits.  Borrowed, GRR mode only,
    // and ignored for wide designs (p > n), which solve through the n x n
    // dual form instead.
    const linalg::Matrix* gram_cache = nullptr;
};

// Conditional means of the latent normals: z_i = E[Z | Z > 0] when y_i = 1,
// z_i = E[Z | Z <= 0] when y_i = 0, Z ~ N(x_i'beta, 1).  Sign-consistent with
// y for every finite mean.
std::vector<double> impute_latent(const linalg::Matrix& x, const std::vector<int>& y,
                                  const std::vector<double>& beta);

// Labels must be 0/1 coded.  GRR mode is seed-free except for the auto init.
FitResult fit_probit(const Dataset& d, const ProbitEmConfig& cfg);

// Observed-data log posterior up to an additive constant (sigma = 1).
double log_posterior_probit(const Dataset& d, const EmState& state, const SpikeSlabHyper& h);

// Rowwise Phi(x_new beta).
std::vector<double> predict_probit(const std::vector<double>& beta, const linalg::Matrix& x_new);

}  // namespace emvs
