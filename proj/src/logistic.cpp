#include "emvs/logistic.hpp"

#include <chrono>
#include <cmath>

#include "emvs/errors.hpp"
#include "emvs/estep.hpp"
#include "emvs/kernels.hpp"
#include "emvs/mathx.hpp"
#include "emvs/rng.hpp"

namespace emvs {

namespace {

// log of the two-component prior density at one coordinate,
// log[theta*N(b;0,s^2*nu1) + (1-theta)*N(b;0,s^2*nu0)], via log-sum-exp.
double log_mix_prior(double b, double sigma, double theta, const SpikeSlabHyper& h) {
    const double v1 = sigma * sigma * h.nu1;
    const double v0 = sigma * sigma * h.nu0;
    const double l1 = std::log(theta) - 0.5 * std::log(2.0 * M_PI * v1) - 0.5 * b * b / v1;
    const double l0 = std::log1p(-theta) - 0.5 * std::log(2.0 * M_PI * v0) - 0.5 * b * b / v0;
    const double hi = std::max(l1, l0);
    return hi + std::log(std::exp(l1 - hi) + std::exp(l0 - hi));
}

double theta_update(const EmState& state, const SpikeSlabHyper& h) {
    const double p = static_cast<double>(state.p_star.size());
    return clamp_theta((kernels::sum(state.p_star.data(), state.p_star.size()) + h.a - 1.0) /
                       (h.a + h.b + p - 2.0));
}

double sigma_update(const std::vector<double>& beta_next, const EmState& state,
                    const SpikeSlabHyper& h) {
    const double pen =
        kernels::weighted_sqnorm(beta_next.data(), state.d_star.data(), beta_next.size());
    const double p = static_cast<double>(beta_next.size());
    return std::sqrt((pen + h.nu * h.lambda) / (p + h.nu + 2.0));
}

}  // namespace

double log_posterior_logistic(const Dataset& d, const EmState& state, const SpikeSlabHyper& h) {
    const std::size_t n = d.n(), p = d.p();
    double ll = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double m = kernels::dot(d.x.row(i), state.beta.data(), p);
        ll -= log1pexp(-static_cast<double>(d.y[i]) * m);
    }
    double prior = 0.0;
    for (std::size_t j = 0; j < p; ++j)
        prior += log_mix_prior(state.beta[j], state.sigma, state.theta, h);
    const double s2 = state.sigma * state.sigma;
    prior += -(h.nu + 2.0) / 2.0 * std::log(s2) - h.nu * h.lambda / (2.0 * s2);
    prior += (h.a - 1.0) * std::log(state.theta) + (h.b - 1.0) * std::log1p(-state.theta);
    return ll + prior;
}

std::vector<double> predict_logistic(const std::vector<double>& beta,
                                     const linalg::Matrix& x_new) {
    if (x_new.cols != beta.size())
        throw DimensionMismatch("prediction design has " + std::to_string(x_new.cols) +
                                " columns, fit has " + std::to_string(beta.size()));
    std::vector<double> out(x_new.rows);
    for (std::size_t i = 0; i < x_new.rows; ++i)
        out[i] = sigmoid(kernels::dot(x_new.row(i), beta.data(), beta.size()));
    return out;
}

FitResult fit_logistic(const Dataset& d, const LogisticEmConfig& cfg) {
    const auto t_begin = std::chrono::steady_clock::now();
    validate_dataset(d);
    if (d.coding != Coding::PlusMinusOne)
        throw SpecInvalid("fit_logistic needs +-1 labels; recode first");
    cfg.hyper.validate();
    if (!(cfg.theta_init > 0.0 && cfg.theta_init < 1.0) || !(cfg.sigma_init > 0.0))
        throw SpecInvalid("initial theta must be in (0,1) and sigma positive");
    const std::size_t n = d.n(), p = d.p();

    sdca::PenalizedProblem prob;
    prob.x = &d.x;
    prob.loss = sdca::Loss::Logistic;
    prob.targets.resize(n);
    for (std::size_t i = 0; i < n; ++i) prob.targets[i] = static_cast<double>(d.y[i]);

    FitResult res;
    res.seed = cfg.sdca.seed;

    std::vector<double> beta0 = cfg.beta_init;
    std::vector<double> alpha;  // carried dual, warm-starts every M-step
    if (beta0.empty()) {
        prob.penalty.assign(p, 1.0 / static_cast<double>(n));
        sdca::SolverConfig scfg = cfg.sdca;
        scfg.seed = derive_seed(cfg.sdca.seed, 0);
        sdca::SolverOutput init = solve_prox_sdca_logistic(prob, scfg);
        beta0 = std::move(init.w);
        alpha = std::move(init.alpha);
        res.solver_clamp_events += init.clamp_events;
    } else if (beta0.size() != p) {
        throw DimensionMismatch("beta_init length does not match column count");
    }

    EmState state;
    state.beta = std::move(beta0);
    state.sigma = cfg.sigma_init;
    state.theta = cfg.theta_init;
    state = e_step(std::move(state), cfg.hyper);
    res.objective_trace.push_back(log_posterior_logistic(d, state, cfg.hyper));

    prob.penalty.resize(p);
    for (std::size_t k = 1; k <= cfg.max_em_iterations; ++k) {
        const double scale = cfg.penalty_mode == PenaltyMode::PaperLiteral
                                 ? 1.0
                                 : 1.0 / (static_cast<double>(n) * state.sigma * state.sigma);
        for (std::size_t j = 0; j < p; ++j) prob.penalty[j] = state.d_star[j] * scale;

        sdca::SolverConfig scfg = cfg.sdca;
        scfg.seed = derive_seed(cfg.sdca.seed, k);
        sdca::SolverOutput out =
            solve_prox_sdca_logistic(prob, scfg, alpha.empty() ? nullptr : &alpha);
        alpha = std::move(out.alpha);
        res.solver_clamp_events += out.clamp_events;

        const double diff =
            kernels::max_abs_diff(out.w.data(), state.beta.data(), p);
        EmState next;
        next.beta = std::move(out.w);
        next.sigma = sigma_update(next.beta, state, cfg.hyper);
        next.theta = theta_update(state, cfg.hyper);
        next.iteration = k;
        state = e_step(std::move(next), cfg.hyper);
        res.objective_trace.push_back(log_posterior_logistic(d, state, cfg.hyper));

        if (diff < cfg.convergence_tol) {
            res.converged = true;
            break;
        }
    }

    res.selected.resize(p);
    for (std::size_t j = 0; j < p; ++j) res.selected[j] = state.p_star[j] > 0.5;
    res.state = std::move(state);
    res.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t_begin).count();
    return res;
}

}  // namespace emvs
