#include "emvs/probit.hpp"

#include <chrono>
#include <cmath>

#include "emvs/errors.hpp"
#include "emvs/estep.hpp"
#include "emvs/kernels.hpp"
#include "emvs/normal.hpp"
#include "emvs/rng.hpp"
#include "emvs/sdca.hpp"

namespace emvs {

namespace {

double log_mix_prior_unit_sigma(double b, double theta, const SpikeSlabHyper& h) {
    const double l1 = std::log(theta) - 0.5 * std::log(2.0 * M_PI * h.nu1) - 0.5 * b * b / h.nu1;
    const double l0 =
        std::log1p(-theta) - 0.5 * std::log(2.0 * M_PI * h.nu0) - 0.5 * b * b / h.nu0;
    const double hi = std::max(l1, l0);
    return hi + std::log(std::exp(l1 - hi) + std::exp(l0 - hi));
}

}  // namespace

std::vector<double> impute_latent(const linalg::Matrix& x, const std::vector<int>& y,
                                  const std::vector<double>& beta) {
    if (y.size() != x.rows) throw DimensionMismatch("label count does not match row count");
    if (beta.size() != x.cols) throw DimensionMismatch("beta length does not match column count");
    std::vector<double> z(x.rows);
    for (std::size_t i = 0; i < x.rows; ++i) {
        const double m = kernels::dot(x.row(i), beta.data(), x.cols);
        z[i] = y[i] == 1 ? normal::trunc_mean_positive(m) : normal::trunc_mean_negative(m);
    }
    return z;
}

double log_posterior_probit(const Dataset& d, const EmState& state, const SpikeSlabHyper& h) {
    const std::size_t n = d.n(), p = d.p();
    double ll = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double m = kernels::dot(d.x.row(i), state.beta.data(), p);
        ll += normal::log_cdf(d.y[i] == 1 ? m : -m);
    }
    double prior = 0.0;
    for (std::size_t j = 0; j < p; ++j)
        prior += log_mix_prior_unit_sigma(state.beta[j], state.theta, h);
    prior += (h.a - 1.0) * std::log(state.theta) + (h.b - 1.0) * std::log1p(-state.theta);
    return ll + prior;
}

std::vector<double> predict_probit(const std::vector<double>& beta, const linalg::Matrix& x_new) {
    if (x_new.cols != beta.size())
        throw DimensionMismatch("prediction design has " + std::to_string(x_new.cols) +
                                " columns, fit has " + std::to_string(beta.size()));
    std::vector<double> out(x_new.rows);
    for (std::size_t i = 0; i < x_new.rows; ++i)
        out[i] = normal::cdf(kernels::dot(x_new.row(i), beta.data(), beta.size()));
    return out;
}

FitResult fit_probit(const Dataset& d, const ProbitEmConfig& cfg) {
    const auto t_begin = std::chrono::steady_clock::now();
    validate_dataset(d);
    if (d.coding != Coding::ZeroOne)
        throw SpecInvalid("fit_probit needs 0/1 labels; recode first");
    cfg.hyper.validate();
    if (!(cfg.theta_init > 0.0 && cfg.theta_init < 1.0))
        throw SpecInvalid("initial theta must be in (0,1)");
    const std::size_t n = d.n(), p = d.p();

    FitResult res;
    res.seed = cfg.sdca.seed;

    std::vector<double> beta0 = cfg.beta_init;
    std::vector<double> warm_alpha;  // squared-loss dual carried across M-steps
    if (beta0.empty()) {
        sdca::PenalizedProblem init_prob;
        init_prob.x = &d.x;
        init_prob.loss = sdca::Loss::Logistic;
        init_prob.targets.resize(n);
        for (std::size_t i = 0; i < n; ++i)
            init_prob.targets[i] = d.y[i] == 1 ? 1.0 : -1.0;
        init_prob.penalty.assign(p, 1.0 / static_cast<double>(n));
        sdca::SolverConfig scfg = cfg.sdca;
        scfg.seed = derive_seed(cfg.sdca.seed, 0);
        sdca::SolverOutput init = solve_prox_sdca_logistic(init_prob, scfg);
        beta0 = std::move(init.w);
        res.solver_clamp_events += init.clamp_events;
    } else if (beta0.size() != p) {
        throw DimensionMismatch("beta_init length does not match column count");
    }

    // Wide designs solve the same ridge system through its n x n dual form,
    // so the p x p Gram matrix is only built (or borrowed) when p <= n.
    const bool dual_form = cfg.beta_solver == ProbitBetaSolver::GRR && p > n;
    linalg::Matrix gram_local;
    const linalg::Matrix* gram = cfg.gram_cache;
    if (cfg.beta_solver == ProbitBetaSolver::GRR && !dual_form) {
        if (gram == nullptr) {
            gram_local = linalg::gram(d.x);
            gram = &gram_local;
        } else if (gram->rows != p || gram->cols != p) {
            throw DimensionMismatch("gram cache shape does not match design");
        }
    }

    EmState state;
    state.beta = std::move(beta0);
    state.sigma = 1.0;
    state.theta = cfg.theta_init;
    state = e_step(std::move(state), cfg.hyper);
    res.objective_trace.push_back(log_posterior_probit(d, state, cfg.hyper));

    sdca::PenalizedProblem prob;  // SDCA mode only
    prob.x = &d.x;
    prob.loss = sdca::Loss::Squared;

    linalg::Matrix a;                 // GRR scratch: X'X + diag(d*), factorized in place
    linalg::Matrix cmat;              // dual-form scratch: I + X D*^-1 X'
    std::vector<double> rhs(p);       // X'z
    std::vector<double> beta_next(p);
    std::vector<double> binv, wrow, vvec, tvec, svec;
    if (dual_form) {
        cmat = linalg::Matrix(n, n);
        binv.resize(p);
        wrow.resize(p);
        vvec.resize(p);
        tvec.resize(n);
        svec.resize(n);
    }
    for (std::size_t k = 1; k <= cfg.max_em_iterations; ++k) {
        const std::vector<double> z = impute_latent(d.x, d.y, state.beta);

        if (dual_form) {
            // (X'X + D)^-1 X'z = D^-1 (X'z - X' (I + X D^-1 X')^-1 X D^-1 X'z):
            // the factorization drops from p^3 to n^2 p work.
            linalg::tmatvec(d.x, z.data(), rhs.data());
            for (std::size_t j = 0; j < p; ++j) binv[j] = rhs[j] / state.d_star[j];
            linalg::matvec(d.x, binv.data(), tvec.data());
            for (std::size_t i = 0; i < n; ++i) {
                const double* xi = d.x.row(i);
                for (std::size_t j = 0; j < p; ++j) wrow[j] = xi[j] / state.d_star[j];
                for (std::size_t r = 0; r <= i; ++r)
                    cmat(i, r) = kernels::dot(wrow.data(), d.x.row(r), p);
                cmat(i, i) += 1.0;
            }
            if (!linalg::cholesky_in_place(cmat))
                throw SingularSystem("I + X D*^-1 X' failed to factorize");
            linalg::cholesky_solve(cmat, tvec.data(), svec.data());
            linalg::tmatvec(d.x, svec.data(), vvec.data());
            for (std::size_t j = 0; j < p; ++j)
                beta_next[j] = binv[j] - vvec[j] / state.d_star[j];
        } else if (cfg.beta_solver == ProbitBetaSolver::GRR) {
            a = *gram;
            for (std::size_t j = 0; j < p; ++j) a(j, j) += state.d_star[j];
            if (!linalg::cholesky_in_place(a))
                throw SingularSystem("X'X + D* failed to factorize");
            linalg::tmatvec(d.x, z.data(), rhs.data());
            linalg::cholesky_solve(a, rhs.data(), beta_next.data());
        } else {
            prob.targets = z;
            prob.penalty.resize(p);
            for (std::size_t j = 0; j < p; ++j)
                prob.penalty[j] = state.d_star[j] / static_cast<double>(n);
            sdca::SolverConfig scfg = cfg.sdca;
            scfg.seed = derive_seed(cfg.sdca.seed, k);
            sdca::SolverOutput out =
                solve_sdca_squared(prob, scfg, warm_alpha.empty() ? nullptr : &warm_alpha);
            warm_alpha = std::move(out.alpha);
            beta_next.assign(out.w.begin(), out.w.end());
        }

        const double diff = kernels::max_abs_diff(beta_next.data(), state.beta.data(), p);
        const double pstar_sum = kernels::sum(state.p_star.data(), p);
        EmState next;
        next.beta = beta_next;
        next.sigma = 1.0;
        next.theta = clamp_theta((pstar_sum + cfg.hyper.a - 1.0) /
                                 (cfg.hyper.a + cfg.hyper.b + static_cast<double>(p) - 2.0));
        next.iteration = k;
        state = e_step(std::move(next), cfg.hyper);
        res.objective_trace.push_back(log_posterior_probit(d, state, cfg.hyper));

        if (diff < cfg.convergence_tol) {
            res.converged = true;
            break;
        }
    }

    res.selected.resize(p);
    for (std::size_t j = 0; j < p; ++j) res.selected[j] = state.p_star[j] > 0.5;
    res.state = std::move(state);
    res.wall_time =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t_begin).count();
    return res;
}

}  // namespace emvs
