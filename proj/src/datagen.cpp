#include "emvs/datagen.hpp"

#include <cmath>

#include "emvs/errors.hpp"
#include "emvs/kernels.hpp"
#include "emvs/mathx.hpp"
#include "emvs/rng.hpp"

namespace emvs::datagen {

void DesignSpec::validate() const {
    if (n < 2 || p < 1 || p_gamma < 1) throw SpecInvalid("design needs n >= 2, p >= 1, p_gamma >= 1");
    if (p_gamma > p || p_gamma > n) throw SpecInvalid("p_gamma must not exceed min(n, p)");
    if (p > p_gamma && p_gamma >= n)
        throw SpecInvalid("unrelated columns need p_gamma < n (empty complement otherwise)");
    if (!(rho >= 0.0 && rho < 1.0)) throw SpecInvalid("rho must be in [0, 1)");
}

double correlation_lambda(double rho) {
    if (!(rho >= 0.0 && rho < 1.0)) throw SpecInvalid("rho must be in [0, 1)");
    // sqrt(rho^2/(1-rho^2)) rather than rho/sqrt(1-rho^2): the single rounded
    // ratio keeps dyadic-exact cases exact (0.6 -> 0.5625 -> 0.75 bit-for-bit).
    return std::sqrt(rho * rho / (1.0 - rho * rho));
}

linalg::Matrix generate_design(const DesignSpec& spec) {
    spec.validate();
    const std::size_t n = spec.n, p = spec.p, pg = spec.p_gamma;
    Rng rng(spec.seed);

    // Related block, row-major draw order.
    linalg::Matrix rel(n, pg);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < pg; ++j) rel(i, j) = rng.uniform(-1.5, 1.5);

    // Basis vectors as rows: the related columns first, then gaussian fill,
    // orthonormalized by modified Gram-Schmidt with one re-orthogonalization
    // pass.  Rows 0..pg-1 become upsilon, the rest varrho.
    linalg::Matrix bt(n, n);
    for (std::size_t j = 0; j < pg; ++j)
        for (std::size_t i = 0; i < n; ++i) bt(j, i) = rel(i, j);
    for (std::size_t k = pg; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i) bt(k, i) = rng.normal_draw();

    for (std::size_t k = 0; k < n; ++k) {
        double* v = bt.row(k);
        double norm = 0.0;
        while (true) {
            for (int pass = 0; pass < 2; ++pass)
                for (std::size_t m = 0; m < k; ++m) {
                    const double c = kernels::dot(v, bt.row(m), n);
                    kernels::axpy(-c, bt.row(m), v, n);
                }
            norm = std::sqrt(kernels::dot(v, v, n));
            if (norm > 1e-10) break;
            // numerically dependent input vector; replace and retry
            for (std::size_t i = 0; i < n; ++i) v[i] = rng.normal_draw();
        }
        kernels::scale(1.0 / norm, v, n);
    }

    const double lambda = correlation_lambda(spec.rho);
    const std::size_t nc = n - pg;             // complement dimension
    const std::size_t m = pg < nc ? pg : nc;   // diagonal length of T

    double mean_norm = 0.0;
    for (std::size_t j = 0; j < pg; ++j) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) s += sq(rel(i, j));
        mean_norm += std::sqrt(s);
    }
    mean_norm /= static_cast<double>(pg);

    linalg::Matrix x(n, p);
    for (std::size_t j = 0; j < pg; ++j)
        for (std::size_t i = 0; i < n; ++i) x(i, j) = rel(i, j);

    std::vector<double> xc(nc), col(n);
    for (std::size_t c = pg; c < p; ++c) {
        for (std::size_t k = 0; k < nc; ++k) xc[k] = rng.uniform(-1.0, 1.0);
        std::fill(col.begin(), col.end(), 0.0);
        for (std::size_t k = 0; k < nc; ++k) kernels::axpy(xc[k], bt.row(pg + k), col.data(), n);
        for (std::size_t k = 0; k < m; ++k)
            kernels::axpy(lambda * xc[k], bt.row(k), col.data(), n);
        const double norm = std::sqrt(kernels::dot(col.data(), col.data(), n));
        const double scale = mean_norm / norm;
        for (std::size_t i = 0; i < n; ++i) x(i, c) = scale * col[i];
    }
    return x;
}

Dataset generate_binary_response(const linalg::Matrix& x, const ResponseSpec& spec,
                                 std::uint64_t seed) {
    if (spec.beta_true.size() != x.cols)
        throw DimensionMismatch("beta_true length does not match column count");
    if (!(spec.sigma_eps2 >= 0.0) || !std::isfinite(spec.sigma_eps2))
        throw SpecInvalid("noise variance must be finite and nonnegative");
    for (double b : spec.beta_true)
        if (!std::isfinite(b)) throw NonFinite("beta_true");

    const std::size_t n = x.rows;
    Rng rng(seed);
    std::vector<double> y_cont(n);
    linalg::matvec(x, spec.beta_true.data(), y_cont.data());
    const double sd = std::sqrt(spec.sigma_eps2);
    for (std::size_t i = 0; i < n; ++i) y_cont[i] += sd * rng.normal_draw();

    Dataset d;
    d.x = x;
    d.coding = spec.coding;
    d.y.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const bool one = rng.uniform() < sigmoid(y_cont[i]);
        d.y[i] = one ? 1 : (spec.coding == Coding::PlusMinusOne ? -1 : 0);
    }
    return d;
}

std::vector<double> generate_replicate_betas(std::size_t p, std::size_t p_gamma, double beta_max,
                                             std::uint64_t seed) {
    if (p_gamma > p) throw SpecInvalid("p_gamma must not exceed p");
    if (!(beta_max >= 0.0) || !std::isfinite(beta_max))
        throw SpecInvalid("beta_max must be finite and nonnegative");
    Rng rng(seed);
    std::vector<double> beta(p, 0.0);
    for (std::size_t j = 0; j < p_gamma; ++j) beta[j] = rng.uniform(-beta_max, beta_max);
    return beta;
}

}  // namespace emvs::datagen
