#include "support/oracles.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>

namespace oracles {
namespace {

Eigen::MatrixXd to_eigen(const emvs::linalg::Matrix& x) {
    Eigen::MatrixXd out(x.rows, x.cols);
    for (std::size_t i = 0; i < x.rows; ++i)
        for (std::size_t j = 0; j < x.cols; ++j) out(i, j) = x(i, j);
    return out;
}

Eigen::VectorXd to_eigen(const std::vector<double>& v) {
    return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

std::vector<double> from_eigen(const Eigen::VectorXd& v) {
    return std::vector<double>(v.data(), v.data() + v.size());
}

double log1pexp_ref(double t) {
    if (t > 33.0) return t;
    if (t > -37.0) return std::log1p(std::exp(t));
    return std::exp(t);
}

// log Phi(u), stable into the lower tail.
double log_phi_ref(double u) {
    if (u > -20.0) return std::log(0.5 * std::erfc(-u * M_SQRT1_2));
    const double z = 1.0 / (u * u);
    return -0.5 * u * u - std::log(-u) - 0.5 * std::log(2.0 * M_PI) +
           std::log1p(-z + 3.0 * z * z);
}

// phi(u)/Phi(u); the -20 branch uses the same asymptotic as log_phi_ref.
double mills_ref(double u) {
    if (u > -20.0)
        return std::exp(-0.5 * u * u - 0.5 * std::log(2.0 * M_PI) - log_phi_ref(u));
    const double z = 1.0 / (u * u);
    return -u / (1.0 - z + 3.0 * z * z);
}

}  // namespace

std::vector<double> logistic_minimizer(const emvs::linalg::Matrix& x,
                                       const std::vector<double>& y,
                                       const std::vector<double>& penalty, double tol) {
    const Eigen::MatrixXd X = to_eigen(x);
    const Eigen::VectorXd yv = to_eigen(y);
    const Eigen::VectorXd lam = to_eigen(penalty);
    const auto n = X.rows();
    const auto p = X.cols();

    auto objective = [&](const Eigen::VectorXd& w) {
        const Eigen::VectorXd m = X * w;
        double f = 0.0;
        for (Eigen::Index i = 0; i < n; ++i) f += log1pexp_ref(-yv(i) * m(i));
        f /= static_cast<double>(n);
        for (Eigen::Index j = 0; j < p; ++j) f += 0.5 * lam(j) * w(j) * w(j);
        return f;
    };

    Eigen::VectorXd w = Eigen::VectorXd::Zero(p);
    for (int iter = 0; iter < 500; ++iter) {
        const Eigen::VectorXd m = X * w;
        Eigen::VectorXd sig(n);
        for (Eigen::Index i = 0; i < n; ++i) sig(i) = 1.0 / (1.0 + std::exp(yv(i) * m(i)));
        Eigen::VectorXd grad = Eigen::VectorXd::Zero(p);
        for (Eigen::Index i = 0; i < n; ++i) grad -= yv(i) * sig(i) * X.row(i).transpose();
        grad /= static_cast<double>(n);
        grad += lam.cwiseProduct(w);
        if (grad.lpNorm<Eigen::Infinity>() <= tol) break;

        Eigen::MatrixXd H = lam.asDiagonal();
        for (Eigen::Index i = 0; i < n; ++i)
            H += (sig(i) * (1.0 - sig(i)) / static_cast<double>(n)) * X.row(i).transpose() *
                 X.row(i);
        const Eigen::VectorXd step = H.ldlt().solve(grad);

        const double f0 = objective(w);
        double t = 1.0;
        while (t > 1e-12 && objective(w - t * step) > f0 - 1e-4 * t * grad.dot(step)) t *= 0.5;
        w -= t * step;
    }
    return from_eigen(w);
}

std::vector<double> squared_minimizer(const emvs::linalg::Matrix& x, const std::vector<double>& z,
                                      const std::vector<double>& penalty) {
    const Eigen::MatrixXd X = to_eigen(x);
    const Eigen::VectorXd zv = to_eigen(z);
    const Eigen::VectorXd lam = to_eigen(penalty);
    const double n = static_cast<double>(X.rows());
    Eigen::MatrixXd A = X.transpose() * X / n;
    A += Eigen::MatrixXd(lam.asDiagonal());
    return from_eigen(A.ldlt().solve(X.transpose() * zv / n));
}

std::vector<double> grr_solve(const emvs::linalg::Matrix& x, const std::vector<double>& z,
                              const std::vector<double>& d) {
    const Eigen::MatrixXd X = to_eigen(x);
    Eigen::MatrixXd A = X.transpose() * X;
    A += Eigen::MatrixXd(to_eigen(d).asDiagonal());
    return from_eigen(A.ldlt().solve(X.transpose() * to_eigen(z)));
}

void gauss_hermite(std::size_t m, std::vector<double>& nodes, std::vector<double>& weights) {
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(m, m);
    for (std::size_t i = 1; i < m; ++i) {
        const double b = std::sqrt(static_cast<double>(i) / 2.0);
        J(i, i - 1) = b;
        J(i - 1, i) = b;
    }
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
    nodes.resize(m);
    weights.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
        nodes[i] = es.eigenvalues()(i);
        const double v0 = es.eigenvectors()(0, i);
        weights[i] = std::sqrt(M_PI) * v0 * v0;
    }
}

double log_probit_evidence(const emvs::linalg::Matrix& x, const std::vector<int>& y01,
                           const std::vector<std::size_t>& active, double nu1,
                           std::size_t nodes) {
    const std::size_t n = x.rows;
    const std::size_t k = active.size();
    if (k == 0) return static_cast<double>(n) * std::log(0.5);
    if (k > 2) throw std::invalid_argument("quadrature oracle handles |gamma| <= 2");

    Eigen::MatrixXd Xa(n, k);
    Eigen::VectorXd s(n);
    for (std::size_t i = 0; i < n; ++i) {
        s(i) = y01[i] == 1 ? 1.0 : -1.0;
        for (std::size_t j = 0; j < k; ++j) Xa(i, j) = x(i, active[j]);
    }

    // log of likelihood times prior density, concave in beta
    auto h = [&](const Eigen::VectorXd& beta) {
        const Eigen::VectorXd t = Xa * beta;
        double v = -0.5 * static_cast<double>(k) * std::log(2.0 * M_PI * nu1) -
                   beta.squaredNorm() / (2.0 * nu1);
        for (std::size_t i = 0; i < n; ++i) v += log_phi_ref(s(i) * t(i));
        return v;
    };

    Eigen::VectorXd mode = Eigen::VectorXd::Zero(k);
    Eigen::MatrixXd A(k, k);
    for (int iter = 0; iter < 200; ++iter) {
        const Eigen::VectorXd t = Xa * mode;
        Eigen::VectorXd grad = -mode / nu1;
        A = Eigen::MatrixXd::Identity(k, k) / nu1;
        for (std::size_t i = 0; i < n; ++i) {
            const double u = s(i) * t(i);
            const double r = mills_ref(u);
            grad += s(i) * r * Xa.row(i).transpose();
            A += r * (u + r) * Xa.row(i).transpose() * Xa.row(i);  // -Hessian
        }
        if (grad.lpNorm<Eigen::Infinity>() <= 1e-11) break;
        const Eigen::VectorXd step = A.ldlt().solve(grad);
        const double h0 = h(mode);
        double tstep = 1.0;
        while (tstep > 1e-12 && h(mode + tstep * step) < h0) tstep *= 0.5;
        mode += tstep * step;
    }

    const Eigen::LLT<Eigen::MatrixXd> llt(A);
    const Eigen::MatrixXd L = llt.matrixL();
    double logdet_l = 0.0;
    for (std::size_t j = 0; j < k; ++j) logdet_l += std::log(L(j, j));

    std::vector<double> gh_nodes, gh_weights;
    gauss_hermite(nodes, gh_nodes, gh_weights);

    // beta = mode + sqrt(2) L^{-T} u; integral = 2^{k/2} det(L)^{-1} *
    // sum_u w(u) exp(h(beta(u)) + u'u), accumulated in log space.
    std::vector<double> terms;
    Eigen::VectorXd u(k);
    const std::size_t total = k == 1 ? nodes : nodes * nodes;
    for (std::size_t idx = 0; idx < total; ++idx) {
        double logw = 0.0;
        if (k == 1) {
            u(0) = gh_nodes[idx];
            logw = std::log(gh_weights[idx]);
        } else {
            const std::size_t i0 = idx / nodes, i1 = idx % nodes;
            u(0) = gh_nodes[i0];
            u(1) = gh_nodes[i1];
            logw = std::log(gh_weights[i0]) + std::log(gh_weights[i1]);
        }
        const Eigen::VectorXd beta =
            mode + M_SQRT2 * llt.matrixU().solve(u);
        terms.push_back(logw + h(beta) + u.squaredNorm());
    }
    double mx = terms[0];
    for (double t : terms) mx = std::max(mx, t);
    double acc = 0.0;
    for (double t : terms) acc += std::exp(t - mx);
    return 0.5 * static_cast<double>(k) * std::log(2.0) - logdet_l + mx + std::log(acc);
}

std::vector<double> enumerate_probit_inclusion(const emvs::linalg::Matrix& x,
                                               const std::vector<int>& y01, double nu1, double a,
                                               double b, std::size_t nodes) {
    const std::size_t p = x.cols;
    if (p > 12) throw std::invalid_argument("enumeration oracle handles p <= 12");
    const double pp = static_cast<double>(p);
    std::vector<double> log_post;
    log_post.reserve(std::size_t{1} << p);
    for (std::size_t mask = 0; mask < (std::size_t{1} << p); ++mask) {
        std::vector<std::size_t> active;
        for (std::size_t j = 0; j < p; ++j)
            if (mask & (std::size_t{1} << j)) active.push_back(j);
        const double kk = static_cast<double>(active.size());
        const double log_prior =
            std::lgamma(a + kk) + std::lgamma(b + pp - kk) - std::lgamma(a + b + pp);
        log_post.push_back(log_probit_evidence(x, y01, active, nu1, nodes) + log_prior);
    }
    double mx = log_post[0];
    for (double t : log_post) mx = std::max(mx, t);
    double z = 0.0;
    for (double t : log_post) z += std::exp(t - mx);

    std::vector<double> inclusion(p, 0.0);
    for (std::size_t mask = 0; mask < log_post.size(); ++mask) {
        const double w = std::exp(log_post[mask] - mx) / z;
        for (std::size_t j = 0; j < p; ++j)
            if (mask & (std::size_t{1} << j)) inclusion[j] += w;
    }
    return inclusion;
}

double batch_means_se(const std::vector<std::uint8_t>& series, std::size_t batches) {
    if (series.size() < 2 * batches) throw std::invalid_argument("series too short for batching");
    const std::size_t len = series.size() / batches;
    std::vector<double> means(batches, 0.0);
    for (std::size_t b = 0; b < batches; ++b) {
        double s = 0.0;
        for (std::size_t i = 0; i < len; ++i) s += series[b * len + i];
        means[b] = s / static_cast<double>(len);
    }
    double grand = 0.0;
    for (double m : means) grand += m;
    grand /= static_cast<double>(batches);
    double ss = 0.0;
    for (double m : means) ss += (m - grand) * (m - grand);
    const double var = ss / static_cast<double>(batches - 1);
    return std::sqrt(var / static_cast<double>(batches));
}

}  // namespace oracles
