#pragma once

#include <cstdint>
#include <vector>

#include "emvs/linalg.hpp"
#include "emvs/types.hpp"

namespace emvs::ssvs {

// Stochastic search variable selection for probit data: a Gibbs sampler that
// alternates latent-response imputation, single-flip Metropolis moves on the
// inclusion vector gamma (slab-coefficients integrated out), and a conjugate
// draw of the active coefficients.  The spike is a point mass at zero, so
// excluded coordinates are dropped columns, not small-variance normals.
struct SsvsConfig {
    double nu1 = 1000.0;  // slab variance
    double nu0 = 0.0;     // must stay 0; anything else is rejected
    double a = 1.0;       // beta-binomial prior on |gamma|
    double b = 1.0;
    std::size_t iterations = 2000;  // total sweeps, burn-in included
    std::size_t burn_in = 500;
    std::size_t metropolis_steps_per_sweep = 1000;
    std::uint64_t seed = 0;
    bool record_decisions = false;    // keep the per-proposal accept/reject log
    bool record_gamma_trace = false;  // keep post-burn-in gamma states per sweep

    void validate() const;
};

struct SsvsResult {
    std::vector<double> gamma_inclusion_freq;  // post-burn-in mean of gamma
    std::vector<bool> selected;                // freq > 0.5
    double acceptance_rate = 0.0;
    std::size_t accepted = 0;
    std::size_t proposed = 0;
    std::size_t sweeps = 0;  // sweeps actually run (relevant in budget mode)
    bool active_set_overflow = false;  // |gamma| exceeded n at some point
    double wall_time = 0.0;            // seconds
    std::vector<std::uint8_t> decision_log;  // one flag per proposal if recorded
    std::vector<std::uint8_t> gamma_trace;   // post-burn-in sweeps x p, row-major
};

// log P(gamma) under the beta-binomial prior with theta integrated out:
// log B(a + k, b + p - k) - log B(a, b), k = |gamma|.
double log_prior_gamma(std::size_t k, std::size_t p, double a, double b);

// log N(z; 0, I + nu1 * X_g X_g') with X_g the active columns of x.  Uses the
// |gamma| x |gamma| determinant/solve form when the active set is smaller than
// n, the dense n x n form otherwise.  An optional precomputed X'X (p x p)
// avoids re-deriving active-set Gram blocks.
double marginal_log_likelihood(const linalg::Matrix& x, const std::vector<double>& z,
                               const std::vector<bool>& gamma, double nu1,
                               const linalg::Matrix* gram = nullptr);

// Run the chain for cfg.iterations sweeps.  Requires y coded 0/1.  The chain
// starts from the empty model with beta = 0.
SsvsResult run_ssvs_probit(const Dataset& d, const SsvsConfig& cfg);

// Budget variant: run sweeps until `seconds` of wall time have elapsed (at
// least one sweep; cfg.iterations is ignored).  cfg.burn_in still counts
// sweeps; if the budget expires before any post-burn-in sweep completes, the
// reported frequencies are the final gamma state.  Not bit-reproducible
// across machines, since the sweep count depends on measured time.
SsvsResult run_ssvs_probit_for(const Dataset& d, const SsvsConfig& cfg, double seconds);

}  // namespace emvs::ssvs
