#pragma once

#include <cstddef>

// Dense double-precision primitives used by all inner loops (SDCA picks,
// Gram/Cholesky, path accumulation).  Two implementations exist: a scalar
// reference and an AVX2/FMA variant.  The active one is chosen once at
// startup (auto-detect, overridable via EMVS_KERNELS=scalar|avx2) and the
// two are equivalence-tested against each other.
namespace emvs::kernels {

enum class Isa { Scalar, Avx2 };

Isa active_isa();
const char* isa_name(Isa isa);
bool isa_supported(Isa isa);
// Forces a specific implementation; returns false (and leaves the current
// one active) if the host cannot run it.
bool set_isa(Isa isa);

// sum_i a[i]*b[i]
double dot(const double* a, const double* b, std::size_t n);
// sum_i w[i]*x[i]^2
double weighted_sqnorm(const double* x, const double* w, std::size_t n);
// sum_i x[i]
double sum(const double* x, std::size_t n);
// max_i |a[i]-b[i]|
double max_abs_diff(const double* a, const double* b, std::size_t n);
// y[i] += c*x[i]
void axpy(double c, const double* x, double* y, std::size_t n);
// y[i] += c*s[i]*x[i]
void axpy_weighted(double c, const double* s, const double* x, double* y, std::size_t n);
// x[i] *= c
void scale(double c, double* x, std::size_t n);

}  // namespace emvs::kernels
