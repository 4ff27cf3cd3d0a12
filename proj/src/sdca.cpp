#include "emvs/sdca.hpp"

#include <cmath>
#include <cstring>

#include "emvs/errors.hpp"
#include "emvs/kernels.hpp"
#include "emvs/mathx.hpp"
#include "emvs/rng.hpp"

namespace emvs::sdca {

namespace {

constexpr double kDualEps = 1e-12;  // open-interval margin for the logistic dual

// -phi*(-alpha~) for the logistic conjugate, written in b = -alpha~ in [0,1]:
// the binary entropy, finite at both endpoints via the x*log(x) limit.
double entropy(double b) { return -(xlogx(b) + xlogx(1.0 - b)); }

struct Workspace {
    std::size_t n, p;
    std::vector<double> invlam;   // 1/(penalty_j * n)
    std::vector<double> s_row;    // S_i = sum_j x_ij^2 / (penalty_j * n)
    std::vector<double> xw;       // scratch for primal evaluations
    std::vector<double> w_sum;    // averaging accumulator
    std::vector<double> w_bar;

    Workspace(const PenalizedProblem& prob) {
        const linalg::Matrix& x = *prob.x;
        n = x.rows;
        p = x.cols;
        invlam.resize(p);
        for (std::size_t j = 0; j < p; ++j) invlam[j] = 1.0 / (prob.penalty[j] * n);
        s_row.resize(n);
        for (std::size_t i = 0; i < n; ++i)
            s_row[i] = kernels::weighted_sqnorm(x.row(i), invlam.data(), p);
        xw.resize(n);
        w_sum.assign(p, 0.0);
    }
};

double penalty_term(const PenalizedProblem& prob, const std::vector<double>& w) {
    return 0.5 * kernels::weighted_sqnorm(w.data(), prob.penalty.data(), w.size());
}

// w(alpha) under the problem's penalties, labeled convention.
std::vector<double> primal_from_dual(const PenalizedProblem& prob,
                                     const std::vector<double>& alpha,
                                     const std::vector<double>& invlam) {
    std::vector<double> w(prob.x->cols);
    linalg::tmatvec(*prob.x, alpha.data(), w.data());
    for (std::size_t j = 0; j < w.size(); ++j) w[j] *= invlam[j];
    return w;
}

}  // namespace

void PenalizedProblem::validate() const {
    if (x == nullptr) throw SpecInvalid("solver problem has no design matrix");
    if (targets.size() != x->rows)
        throw DimensionMismatch("targets length does not match row count");
    if (penalty.size() != x->cols)
        throw DimensionMismatch("penalty length does not match column count");
    for (double v : penalty)
        if (!(v > 0.0) || !std::isfinite(v)) throw SpecInvalid("penalties must be positive");
    if (loss == Loss::Logistic)
        for (double v : targets)
            if (v != 1.0 && v != -1.0) throw SpecInvalid("logistic targets must be +-1");
}

double primal_value(const PenalizedProblem& prob, const std::vector<double>& w) {
    const linalg::Matrix& x = *prob.x;
    double loss_sum = 0.0;
    for (std::size_t i = 0; i < x.rows; ++i) {
        const double a = kernels::dot(x.row(i), w.data(), x.cols);
        if (prob.loss == Loss::Logistic)
            loss_sum += log1pexp(-prob.targets[i] * a);
        else
            loss_sum += 0.5 * sq(a - prob.targets[i]);
    }
    return loss_sum / static_cast<double>(x.rows) + penalty_term(prob, w);
}

double dual_value(const PenalizedProblem& prob, const std::vector<double>& alpha) {
    const std::size_t n = prob.x->rows;
    double loss_sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (prob.loss == Loss::Logistic) {
            const double b = alpha[i] * prob.targets[i];
            if (b < 0.0 || b > 1.0) throw SpecInvalid("logistic dual outside [0,1]");
            loss_sum += entropy(b);
        } else {
            loss_sum += alpha[i] * prob.targets[i] - 0.5 * sq(alpha[i]);
        }
    }
    std::vector<double> invlam(prob.x->cols);
    for (std::size_t j = 0; j < invlam.size(); ++j) invlam[j] = 1.0 / (prob.penalty[j] * n);
    const std::vector<double> w = primal_from_dual(prob, alpha, invlam);
    return loss_sum / static_cast<double>(n) - penalty_term(prob, w);
}

double duality_gap(const PenalizedProblem& prob, const std::vector<double>& w,
                   const std::vector<double>& alpha) {
    return primal_value(prob, w) - dual_value(prob, alpha);
}

SolverOutput solve_prox_sdca_logistic(const PenalizedProblem& prob, const SolverConfig& cfg,
                                      const std::vector<double>* warm_alpha) {
    prob.validate();
    if (prob.loss != Loss::Logistic) throw SpecInvalid("logistic solver got a non-logistic problem");
    if (cfg.max_picks < 1) throw SpecInvalid("solver needs at least one pick");
    const linalg::Matrix& x = *prob.x;
    Workspace ws(prob);
    const std::size_t n = ws.n, p = ws.p;
    const std::size_t t_total = cfg.max_picks;
    const std::size_t t0 = cfg.averaging_start > 0 ? cfg.averaging_start : t_total / 2;
    if (t0 >= t_total) throw SpecInvalid("averaging must start before the last pick");

    // Internal state uses the substituted convention: rows act as -y_i x_i,
    // folded in through the sign instead of copied; at_i = -y_i alpha_i, and
    // b_i = -at_i lives in [0,1].
    std::vector<double> at(n, 0.0);
    std::vector<double> w(p, 0.0);
    SolverOutput out;
    if (warm_alpha != nullptr) {
        if (warm_alpha->size() != n) throw DimensionMismatch("warm-start dual length mismatch");
        for (std::size_t i = 0; i < n; ++i) {
            double b = (*warm_alpha)[i] * prob.targets[i];
            if (b < 0.0 || b > 1.0) throw SpecInvalid("warm-start dual outside [0,1]");
            at[i] = -b;
        }
        w = primal_from_dual(prob, *warm_alpha, ws.invlam);
    }

    Rng rng(cfg.seed);
    bool certified = false;
    std::size_t picks = 0;
    for (std::size_t t = 1; t <= t_total; ++t) {
        if (t > t0) kernels::axpy(1.0, w.data(), ws.w_sum.data(), p);

        const auto i = static_cast<std::size_t>(rng.below(n));
        const double sign = -prob.targets[i];
        const double* row = x.row(i);
        const double pr = sign * kernels::dot(row, w.data(), p);
        const double q = -sigmoid(pr) - at[i];
        picks = t;
        if (q != 0.0) {
            const double num = log1pexp(pr) - entropy(-at[i]) + pr * at[i] + 2.0 * q * q;
            const double s = std::min(1.0, num / (q * q * (4.0 + ws.s_row[i])));
            double at_new = at[i] + s * q;
            // keep b = -at inside the open unit interval
            if (-at_new < kDualEps) {
                at_new = -kDualEps;
                ++out.clamp_events;
            } else if (-at_new > 1.0 - kDualEps) {
                at_new = -(1.0 - kDualEps);
                ++out.clamp_events;
            }
            const double delta = at_new - at[i];
            at[i] = at_new;
            if (delta != 0.0)
                kernels::axpy_weighted(delta * sign, ws.invlam.data(), row, w.data(), p);
        }

        if (t % n == 0 || t == t_total) {
            // certificate on the current iterate: w == w(alpha) by construction
            double dual_loss = 0.0;
            for (std::size_t k = 0; k < n; ++k) dual_loss += entropy(-at[k]);
            const double dual = dual_loss / static_cast<double>(n) - penalty_term(prob, w);
            const double primal = primal_value(prob, w);
            if (primal - dual <= cfg.gap_tolerance) {
                ws.w_bar = w;
                out.primal_value = primal;
                out.dual_value = dual;
                certified = true;
                break;
            }
        }
    }

    if (!certified) {
        ws.w_bar = ws.w_sum;
        kernels::scale(1.0 / static_cast<double>(t_total - t0), ws.w_bar.data(), p);
        double dual_loss = 0.0;
        for (std::size_t k = 0; k < n; ++k) dual_loss += entropy(-at[k]);
        out.dual_value = dual_loss / static_cast<double>(n) - penalty_term(prob, w);
        out.primal_value = primal_value(prob, ws.w_bar);
    }
    out.w = std::move(ws.w_bar);
    out.alpha.resize(n);
    for (std::size_t i = 0; i < n; ++i) out.alpha[i] = -prob.targets[i] * at[i];
    out.duality_gap = out.primal_value - out.dual_value;
    out.picks_used = picks;
    return out;
}

SolverOutput solve_sdca_squared(const PenalizedProblem& prob, const SolverConfig& cfg,
                                const std::vector<double>* warm_alpha) {
    prob.validate();
    if (prob.loss != Loss::Squared) throw SpecInvalid("squared solver got a non-squared problem");
    if (cfg.max_picks < 1) throw SpecInvalid("solver needs at least one pick");
    const linalg::Matrix& x = *prob.x;
    Workspace ws(prob);
    const std::size_t n = ws.n, p = ws.p;
    const std::size_t t_total = cfg.max_picks;
    const std::size_t t0 = cfg.averaging_start > 0 ? cfg.averaging_start : t_total / 2;
    if (t0 >= t_total) throw SpecInvalid("averaging must start before the last pick");

    std::vector<double> alpha(n, 0.0);
    std::vector<double> w(p, 0.0);
    SolverOutput out;
    if (warm_alpha != nullptr) {
        if (warm_alpha->size() != n) throw DimensionMismatch("warm-start dual length mismatch");
        alpha = *warm_alpha;
        w = primal_from_dual(prob, alpha, ws.invlam);
    }

    Rng rng(cfg.seed);
    bool certified = false;
    std::size_t picks = 0;
    for (std::size_t t = 1; t <= t_total; ++t) {
        if (t > t0) kernels::axpy(1.0, w.data(), ws.w_sum.data(), p);

        const auto i = static_cast<std::size_t>(rng.below(n));
        const double* row = x.row(i);
        const double a = kernels::dot(row, w.data(), p);
        const double delta = (prob.targets[i] - a - alpha[i]) / (1.0 + ws.s_row[i]);
        alpha[i] += delta;
        if (delta != 0.0) kernels::axpy_weighted(delta, ws.invlam.data(), row, w.data(), p);
        picks = t;

        if (t % n == 0 || t == t_total) {
            double dual_loss = 0.0;
            for (std::size_t k = 0; k < n; ++k)
                dual_loss += alpha[k] * prob.targets[k] - 0.5 * sq(alpha[k]);
            const double dual = dual_loss / static_cast<double>(n) - penalty_term(prob, w);
            const double primal = primal_value(prob, w);
            if (primal - dual <= cfg.gap_tolerance) {
                ws.w_bar = w;
                out.primal_value = primal;
                out.dual_value = dual;
                certified = true;
                break;
            }
        }
    }

    if (!certified) {
        ws.w_bar = ws.w_sum;
        kernels::scale(1.0 / static_cast<double>(t_total - t0), ws.w_bar.data(), p);
        double dual_loss = 0.0;
        for (std::size_t k = 0; k < n; ++k)
            dual_loss += alpha[k] * prob.targets[k] - 0.5 * sq(alpha[k]);
        out.dual_value = dual_loss / static_cast<double>(n) - penalty_term(prob, w);
        out.primal_value = primal_value(prob, ws.w_bar);
    }
    out.w = std::move(ws.w_bar);
    out.alpha = std::move(alpha);
    out.duality_gap = out.primal_value - out.dual_value;
    out.picks_used = picks;
    return out;
}

}  // namespace emvs::sdca
