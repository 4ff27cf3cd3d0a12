#pragma once

#include <cstddef>
#include <vector>

// Dense row-major matrix plus the handful of operations the engines need
// (products, Gram matrices, SPD Cholesky solves).  Everything funnels through
// the dispatched kernels so the SIMD path covers these too.
namespace emvs::linalg {

struct Matrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> data;  // row-major, rows*cols

    Matrix() = default;
    Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}

    double* row(std::size_t i) { return data.data() + i * cols; }
    const double* row(std::size_t i) const { return data.data() + i * cols; }
    double& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }
};

// out[i] = a.row(i) . x   (out length a.rows)
void matvec(const Matrix& a, const double* x, double* out);

// out[j] = sum_i a(i,j) * x[i]   (out length a.cols; accumulated row-wise)
void tmatvec(const Matrix& a, const double* x, double* out);

// A'A as a full symmetric cols x cols matrix (lower triangle computed via
// row-wise prefix updates, then mirrored).
Matrix gram(const Matrix& a);

// In-place lower-triangular Cholesky of an SPD matrix (upper triangle left
// untouched).  Returns false when a pivot is not strictly positive.
bool cholesky_in_place(Matrix& a);

// Solves L L' x = b given the factor from cholesky_in_place.
void cholesky_solve(const Matrix& l, const double* b, double* x);

// One-shot SPD solve; throws SingularSystem when factorization fails.
std::vector<double> solve_spd(Matrix a, const std::vector<double>& b);

// 2 * sum of log(diag(L)): the log-determinant of the SPD matrix L L' came
// from.
double cholesky_logdet(const Matrix& l);

}  // namespace emvs::linalg
