#include "emvs/ssvs.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "emvs/errors.hpp"
#include "emvs/kernels.hpp"
#include "emvs/normal.hpp"
#include "emvs/rng.hpp"

namespace emvs::ssvs {
namespace {

constexpr double kLog2Pi = 1.8378770664093454836;

void reset(linalg::Matrix& m, std::size_t k) {
    m.rows = m.cols = k;
    m.data.assign(k * k, 0.0);
}

double column_dot(const linalg::Matrix& x, std::size_t j1, std::size_t j2) {
    double s = 0.0;
    for (std::size_t i = 0; i < x.rows; ++i) s += x(i, j1) * x(i, j2);
    return s;
}

struct Scratch {
    linalg::Matrix a;
    std::vector<double> u, v, c;
};

// log N(z; 0, I + nu1 X_a X_a') for the active index list.  Small active sets
// go through the k x k identity det(I + nu1 X'X) and the matching Woodbury
// quadratic; oversized ones fall back to the dense n x n covariance.
double log_marginal_active(const linalg::Matrix& x, const std::vector<std::size_t>& active,
                           const double* xtz, double zz, const std::vector<double>& z, double nu1,
                           const linalg::Matrix* gram, Scratch& s) {
    const std::size_t n = x.rows;
    const std::size_t k = active.size();
    const double base = -0.5 * static_cast<double>(n) * kLog2Pi;
    if (k == 0) return base - 0.5 * zz;

    if (k <= n) {
        reset(s.a, k);
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j <= i; ++j) {
                const double g = gram != nullptr ? (*gram)(active[i], active[j])
                                                 : column_dot(x, active[i], active[j]);
                s.a(i, j) = nu1 * g + (i == j ? 1.0 : 0.0);
            }
        s.u.resize(k);
        s.v.resize(k);
        for (std::size_t i = 0; i < k; ++i) s.u[i] = xtz[active[i]];
        if (!linalg::cholesky_in_place(s.a)) throw SingularSystem("marginal covariance");
        linalg::cholesky_solve(s.a, s.u.data(), s.v.data());
        const double quad = zz - nu1 * kernels::dot(s.u.data(), s.v.data(), k);
        return base - 0.5 * linalg::cholesky_logdet(s.a) - 0.5 * quad;
    }

    reset(s.a, n);
    for (std::size_t i = 0; i < n; ++i) s.a(i, i) = 1.0;
    s.c.resize(n);
    for (std::size_t idx : active) {
        for (std::size_t i = 0; i < n; ++i) s.c[i] = x(i, idx);
        for (std::size_t r = 0; r < n; ++r)
            kernels::axpy(nu1 * s.c[r], s.c.data(), s.a.row(r), r + 1);
    }
    s.v.resize(n);
    if (!linalg::cholesky_in_place(s.a)) throw SingularSystem("marginal covariance");
    linalg::cholesky_solve(s.a, z.data(), s.v.data());
    const double quad = kernels::dot(z.data(), s.v.data(), n);
    return base - 0.5 * linalg::cholesky_logdet(s.a) - 0.5 * quad;
}

// Solves L' t = b in place given the lower factor.
void backward_subst_lt(const linalg::Matrix& l, double* b) {
    const std::size_t k = l.rows;
    for (std::size_t i = k; i-- > 0;) {
        double s = b[i];
        for (std::size_t j = i + 1; j < k; ++j) s -= l(j, i) * b[j];
        b[i] = s / l(i, i);
    }
}

SsvsResult run_chain(const Dataset& d, const SsvsConfig& cfg, double budget_seconds) {
    cfg.validate();
    validate_dataset(d);
    if (d.coding != Coding::ZeroOne) throw SpecInvalid("ssvs expects 0/1-coded labels");

    const std::size_t n = d.n(), p = d.p();
    const bool use_gram = p <= 2000;
    linalg::Matrix gram_full;
    if (use_gram) gram_full = linalg::gram(d.x);
    const linalg::Matrix* gram_ptr = use_gram ? &gram_full : nullptr;

    std::vector<double> log_prior(p + 1);
    for (std::size_t k = 0; k <= p; ++k) log_prior[k] = log_prior_gamma(k, p, cfg.a, cfg.b);

    Rng rng(cfg.seed);
    std::vector<bool> gamma(p, false);
    std::vector<std::size_t> active, proposed_active;
    std::vector<double> beta(p, 0.0), z(n), mean_xb(n), xtz(p), freq(p, 0.0);
    std::vector<double> post_mean, xi;
    Scratch scratch;

    SsvsResult result;
    std::size_t post_sweeps = 0;
    const auto start = std::chrono::steady_clock::now();
    const bool time_mode = budget_seconds > 0.0;

    for (std::size_t sweep = 0;; ++sweep) {
        if (time_mode) {
            const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
            if (sweep >= 1 && elapsed.count() >= budget_seconds) break;
        } else if (sweep >= cfg.iterations) {
            break;
        }

        // Latent responses, truncated to the side the label dictates.
        linalg::matvec(d.x, beta.data(), mean_xb.data());
        for (std::size_t i = 0; i < n; ++i)
            z[i] = d.y[i] == 1 ? normal::truncnorm_positive_quantile(mean_xb[i], rng.uniform())
                               : normal::truncnorm_negative_quantile(mean_xb[i], rng.uniform());
        linalg::tmatvec(d.x, z.data(), xtz.data());
        const double zz = kernels::dot(z.data(), z.data(), n);
        double cur_lm = log_marginal_active(d.x, active, xtz.data(), zz, z, cfg.nu1, gram_ptr,
                                            scratch);

        // Single-flip Metropolis moves on gamma with beta integrated out.
        for (std::size_t step = 0; step < cfg.metropolis_steps_per_sweep; ++step) {
            const std::size_t j = rng.below(p);
            const double u = rng.uniform();
            proposed_active = active;
            if (gamma[j]) {
                proposed_active.erase(
                    std::find(proposed_active.begin(), proposed_active.end(), j));
            } else {
                proposed_active.insert(
                    std::lower_bound(proposed_active.begin(), proposed_active.end(), j), j);
            }
            const double prop_lm = log_marginal_active(d.x, proposed_active, xtz.data(), zz, z,
                                                       cfg.nu1, gram_ptr, scratch);
            const double delta = prop_lm + log_prior[proposed_active.size()] -
                                 (cur_lm + log_prior[active.size()]);
            const bool accept = std::log(u) < delta;
            ++result.proposed;
            if (accept) {
                ++result.accepted;
                gamma[j] = !gamma[j];
                active.swap(proposed_active);
                cur_lm = prop_lm;
                if (active.size() > n) result.active_set_overflow = true;
            }
            if (cfg.record_decisions) result.decision_log.push_back(accept ? 1 : 0);
        }

        // Conjugate draw of the active coefficients; excluded ones stay at 0.
        std::fill(beta.begin(), beta.end(), 0.0);
        const std::size_t k = active.size();
        if (k > 0) {
            reset(scratch.a, k);
            for (std::size_t i = 0; i < k; ++i)
                for (std::size_t j2 = 0; j2 <= i; ++j2) {
                    const double g = gram_ptr != nullptr ? (*gram_ptr)(active[i], active[j2])
                                                         : column_dot(d.x, active[i], active[j2]);
                    scratch.a(i, j2) = g + (i == j2 ? 1.0 / cfg.nu1 : 0.0);
                }
            scratch.u.resize(k);
            for (std::size_t i = 0; i < k; ++i) scratch.u[i] = xtz[active[i]];
            if (!linalg::cholesky_in_place(scratch.a)) throw SingularSystem("beta draw");
            post_mean.resize(k);
            linalg::cholesky_solve(scratch.a, scratch.u.data(), post_mean.data());
            xi.resize(k);
            for (std::size_t i = 0; i < k; ++i) xi[i] = rng.normal_draw();
            backward_subst_lt(scratch.a, xi.data());
            for (std::size_t i = 0; i < k; ++i) beta[active[i]] = post_mean[i] + xi[i];
        }

        ++result.sweeps;
        if (result.sweeps > cfg.burn_in) {
            for (std::size_t j2 = 0; j2 < p; ++j2)
                if (gamma[j2]) freq[j2] += 1.0;
            if (cfg.record_gamma_trace)
                for (std::size_t j2 = 0; j2 < p; ++j2)
                    result.gamma_trace.push_back(gamma[j2] ? 1 : 0);
            ++post_sweeps;
        }
    }

    result.gamma_inclusion_freq.resize(p);
    if (post_sweeps > 0) {
        for (std::size_t j = 0; j < p; ++j)
            result.gamma_inclusion_freq[j] = freq[j] / static_cast<double>(post_sweeps);
    } else {
        for (std::size_t j = 0; j < p; ++j)
            result.gamma_inclusion_freq[j] = gamma[j] ? 1.0 : 0.0;
    }
    result.selected.resize(p);
    for (std::size_t j = 0; j < p; ++j) result.selected[j] = result.gamma_inclusion_freq[j] > 0.5;
    result.acceptance_rate =
        result.proposed > 0
            ? static_cast<double>(result.accepted) / static_cast<double>(result.proposed)
            : 0.0;
    result.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                           .count();
    return result;
}

}  // namespace

void SsvsConfig::validate() const {
    if (nu0 != 0.0) throw SpecInvalid("the spike must be a point mass (nu0 = 0)");
    if (!(nu1 > 0.0) || !std::isfinite(nu1)) throw SpecInvalid("nu1 must be positive and finite");
    if (!(a > 0.0) || !(b > 0.0) || !std::isfinite(a) || !std::isfinite(b))
        throw SpecInvalid("beta-binomial hyperparameters must be positive and finite");
    if (iterations < 1) throw SpecInvalid("iterations must be at least 1");
    if (burn_in >= iterations) throw SpecInvalid("burn_in must be smaller than iterations");
    if (metropolis_steps_per_sweep < 1)
        throw SpecInvalid("metropolis_steps_per_sweep must be at least 1");
}

double log_prior_gamma(std::size_t k, std::size_t p, double a, double b) {
    if (k > p) throw SpecInvalid("|gamma| cannot exceed p");
    const double kk = static_cast<double>(k), pp = static_cast<double>(p);
    return std::lgamma(a + kk) + std::lgamma(b + pp - kk) - std::lgamma(a + b + pp) -
           (std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b));
}

double marginal_log_likelihood(const linalg::Matrix& x, const std::vector<double>& z,
                               const std::vector<bool>& gamma, double nu1,
                               const linalg::Matrix* gram) {
    if (z.size() != x.rows) throw DimensionMismatch("z length does not match row count");
    if (gamma.size() != x.cols) throw DimensionMismatch("gamma length does not match column count");
    if (!(nu1 > 0.0) || !std::isfinite(nu1)) throw SpecInvalid("nu1 must be positive and finite");
    if (gram != nullptr && (gram->rows != x.cols || gram->cols != x.cols))
        throw DimensionMismatch("gram cache shape does not match columns");

    std::vector<std::size_t> active;
    for (std::size_t j = 0; j < gamma.size(); ++j)
        if (gamma[j]) active.push_back(j);
    std::vector<double> xtz(x.cols);
    linalg::tmatvec(x, z.data(), xtz.data());
    const double zz = kernels::dot(z.data(), z.data(), z.size());
    Scratch scratch;
    return log_marginal_active(x, active, xtz.data(), zz, z, nu1, gram, scratch);
}

SsvsResult run_ssvs_probit(const Dataset& d, const SsvsConfig& cfg) {
    return run_chain(d, cfg, 0.0);
}

SsvsResult run_ssvs_probit_for(const Dataset& d, const SsvsConfig& cfg, double seconds) {
    if (!(seconds > 0.0) || !std::isfinite(seconds))
        throw SpecInvalid("time budget must be positive and finite");
    return run_chain(d, cfg, seconds);
}

}  // namespace emvs::ssvs
