#include "emvs/linalg.hpp"

#include <cmath>
#include <cstring>

#include "emvs/errors.hpp"
#include "emvs/kernels.hpp"

namespace emvs::linalg {

void matvec(const Matrix& a, const double* x, double* out) {
    for (std::size_t i = 0; i < a.rows; ++i) out[i] = kernels::dot(a.row(i), x, a.cols);
}

void tmatvec(const Matrix& a, const double* x, double* out) {
    std::memset(out, 0, a.cols * sizeof(double));
    for (std::size_t i = 0; i < a.rows; ++i) kernels::axpy(x[i], a.row(i), out, a.cols);
}

Matrix gram(const Matrix& a) {
    const std::size_t p = a.cols;
    Matrix g(p, p);
    for (std::size_t i = 0; i < a.rows; ++i) {
        const double* r = a.row(i);
        for (std::size_t j = 0; j < p; ++j) {
            if (r[j] != 0.0) kernels::axpy(r[j], r, g.row(j), j + 1);
        }
    }
    for (std::size_t j = 0; j < p; ++j)
        for (std::size_t k = j + 1; k < p; ++k) g(j, k) = g(k, j);
    return g;
}

bool cholesky_in_place(Matrix& a) {
    const std::size_t n = a.rows;
    for (std::size_t j = 0; j < n; ++j) {
        double* rj = a.row(j);
        for (std::size_t k = 0; k < j; ++k) {
            const double* rk = a.row(k);
            rj[k] = (rj[k] - kernels::dot(rj, rk, k)) / rk[k];
        }
        const double d = rj[j] - kernels::dot(rj, rj, j);
        if (!(d > 0.0)) return false;
        rj[j] = std::sqrt(d);
    }
    return true;
}

void cholesky_solve(const Matrix& l, const double* b, double* x) {
    const std::size_t n = l.rows;
    // forward: L y = b
    for (std::size_t i = 0; i < n; ++i)
        x[i] = (b[i] - kernels::dot(l.row(i), x, i)) / l(i, i);
    // backward: L' x = y, accumulated by columns so rows stream contiguously
    for (std::size_t ii = n; ii-- > 0;) {
        x[ii] /= l(ii, ii);
        if (ii > 0) kernels::axpy(-x[ii], l.row(ii), x, ii);
    }
}

std::vector<double> solve_spd(Matrix a, const std::vector<double>& b) {
    if (a.rows != a.cols || b.size() != a.rows)
        throw DimensionMismatch("solve_spd: matrix/vector shapes disagree");
    if (!cholesky_in_place(a)) throw SingularSystem("solve_spd: matrix not positive definite");
    std::vector<double> x(b.size());
    cholesky_solve(a, b.data(), x.data());
    return x;
}

double cholesky_logdet(const Matrix& l) {
    double acc = 0.0;
    for (std::size_t i = 0; i < l.rows; ++i) acc += std::log(l(i, i));
    return 2.0 * acc;
}

}  // namespace emvs::linalg
