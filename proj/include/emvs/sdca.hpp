#pragma once

#include <cstdint>
#include <vector>

#include "emvs/linalg.hpp"

// Stochastic dual coordinate ascent for the per-coordinate-penalized problem
//
//   F(w) = (1/n) sum_i phi_i(x_i'w) + (1/2) sum_j penalty_j * w_j^2
//
// in two loss flavors: logistic (phi_i(a) = log(1+exp(-y_i a)), proximal
// closed-form step) and squared (phi_i(a) = (a - z_i)^2 / 2, exact coordinate
// maximization).  Both report a duality-gap certificate for the returned
// iterate.
namespace emvs::sdca {

enum class Loss { Logistic, Squared };

struct PenalizedProblem {
    const linalg::Matrix* x = nullptr;  // n x p, borrowed
    std::vector<double> targets;        // labels +-1 (logistic) or responses z (squared)
    std::vector<double> penalty;        // per-coordinate weights, all > 0
    Loss loss = Loss::Logistic;

    void validate() const;  // throws on shape/penalty violations
};

struct SolverConfig {
    std::size_t max_picks = 10000;      // total coordinate picks T (not epochs)
    std::uint64_t seed = 0;
    std::size_t averaging_start = 0;    // T0; 0 means the default T/2
    double gap_tolerance = 1e-8;        // early exit once the certified gap is below this
};

struct SolverOutput {
    std::vector<double> w;      // averaged primal iterate
    std::vector<double> alpha;  // final dual, labeled convention: alpha_i * y_i in (0,1)
    double primal_value = 0.0;
    double dual_value = 0.0;
    double duality_gap = 0.0;
    std::size_t picks_used = 0;
    std::size_t clamp_events = 0;  // dual steps clipped back into the open unit interval
};

// warm_alpha, when given, must be dual-feasible for the loss; the primal
// iterate is rebuilt from it under the problem's penalties, which is what
// makes warm starts across EM iterations (changing penalties) valid.
SolverOutput solve_prox_sdca_logistic(const PenalizedProblem& prob, const SolverConfig& cfg,
                                      const std::vector<double>* warm_alpha = nullptr);
SolverOutput solve_sdca_squared(const PenalizedProblem& prob, const SolverConfig& cfg,
                                const std::vector<double>* warm_alpha = nullptr);

double primal_value(const PenalizedProblem& prob, const std::vector<double>& w);
double dual_value(const PenalizedProblem& prob, const std::vector<double>& alpha);
// P(w) - D(alpha); nonnegative up to round-off for any feasible pair.
double duality_gap(const PenalizedProblem& prob, const std::vector<double>& w,
                   const std::vector<double>& alpha);

}  // namespace emvs::sdca
