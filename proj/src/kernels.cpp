#include "emvs/kernels.hpp"

#include <cmath>
#include <cstdlib>
#include <cstring>

namespace emvs::kernels {

namespace scalar {

double dot(const double* a, const double* b, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += a[i] * b[i];
    return acc;
}

double weighted_sqnorm(const double* x, const double* w, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += w[i] * x[i] * x[i];
    return acc;
}

double sum(const double* x, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += x[i];
    return acc;
}

double max_abs_diff(const double* a, const double* b, std::size_t n) {
    double m = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double d = std::fabs(a[i] - b[i]);
        if (d > m) m = d;
    }
    return m;
}

void axpy(double c, const double* x, double* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] += c * x[i];
}

void axpy_weighted(double c, const double* s, const double* x, double* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] += c * s[i] * x[i];
}

void scale(double c, double* x, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) x[i] *= c;
}

}  // namespace scalar

// AVX2 variants live in kernels_avx2.cpp (compiled with -mavx2 -mfma).
namespace avx2 {
bool host_supported();
double dot(const double*, const double*, std::size_t);
double weighted_sqnorm(const double*, const double*, std::size_t);
double sum(const double*, std::size_t);
double max_abs_diff(const double*, const double*, std::size_t);
void axpy(double, const double*, double*, std::size_t);
void axpy_weighted(double, const double*, const double*, double*, std::size_t);
void scale(double, double*, std::size_t);
}  // namespace avx2

namespace {

struct Table {
    double (*dot)(const double*, const double*, std::size_t);
    double (*weighted_sqnorm)(const double*, const double*, std::size_t);
    double (*sum)(const double*, std::size_t);
    double (*max_abs_diff)(const double*, const double*, std::size_t);
    void (*axpy)(double, const double*, double*, std::size_t);
    void (*axpy_weighted)(double, const double*, const double*, double*, std::size_t);
    void (*scale)(double, double*, std::size_t);
};

constexpr Table kScalarTable = {scalar::dot,          scalar::weighted_sqnorm,
                                scalar::sum,          scalar::max_abs_diff,
                                scalar::axpy,         scalar::axpy_weighted,
                                scalar::scale};

constexpr Table kAvx2Table = {avx2::dot,          avx2::weighted_sqnorm,
                              avx2::sum,          avx2::max_abs_diff,
                              avx2::axpy,         avx2::axpy_weighted,
                              avx2::scale};

Isa g_isa = Isa::Scalar;
const Table* g_table = &kScalarTable;

Isa initial_isa() {
    const char* env = std::getenv("EMVS_KERNELS");
    if (env != nullptr) {
        if (std::strcmp(env, "scalar") == 0) return Isa::Scalar;
        if (std::strcmp(env, "avx2") == 0 && avx2::host_supported()) return Isa::Avx2;
        // unknown value or unsupported request: fall through to auto
    }
    return avx2::host_supported() ? Isa::Avx2 : Isa::Scalar;
}

struct Init {
    Init() {
        g_isa = initial_isa();
        g_table = (g_isa == Isa::Avx2) ? &kAvx2Table : &kScalarTable;
    }
};
Init g_init;

}  // namespace

Isa active_isa() { return g_isa; }

const char* isa_name(Isa isa) { return isa == Isa::Avx2 ? "avx2" : "scalar"; }

bool isa_supported(Isa isa) { return isa == Isa::Scalar || avx2::host_supported(); }

bool set_isa(Isa isa) {
    if (!isa_supported(isa)) return false;
    g_isa = isa;
    g_table = (isa == Isa::Avx2) ? &kAvx2Table : &kScalarTable;
    return true;
}

double dot(const double* a, const double* b, std::size_t n) { return g_table->dot(a, b, n); }

double weighted_sqnorm(const double* x, const double* w, std::size_t n) {
    return g_table->weighted_sqnorm(x, w, n);
}

double sum(const double* x, std::size_t n) { return g_table->sum(x, n); }

double max_abs_diff(const double* a, const double* b, std::size_t n) {
    return g_table->max_abs_diff(a, b, n);
}

void axpy(double c, const double* x, double* y, std::size_t n) { g_table->axpy(c, x, y, n); }

void axpy_weighted(double c, const double* s, const double* x, double* y, std::size_t n) {
    g_table->axpy_weighted(c, s, x, y, n);
}

void scale(double c, double* x, std::size_t n) { g_table->scale(c, x, n); }

}  // namespace emvs::kernels
