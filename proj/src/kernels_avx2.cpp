// AVX2/FMA kernel variants.  This translation unit is the only one compiled
// with -mavx2 -mfma; nothing here runs unless host_supported() returned true.

#include <cstddef>

#if defined(__x86_64__) || defined(_M_X64)
#define EMVS_HAVE_AVX2_TU 1
#include <immintrin.h>
#else
#define EMVS_HAVE_AVX2_TU 0
#endif

#include <cmath>

namespace emvs::kernels::avx2 {

#if EMVS_HAVE_AVX2_TU

bool host_supported() {
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
}

namespace {

inline double hsum(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_add_pd(lo, hi);
    __m128d swapped = _mm_unpackhi_pd(lo, lo);
    return _mm_cvtsd_f64(_mm_add_sd(lo, swapped));
}

inline double hmax(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_max_pd(lo, hi);
    __m128d swapped = _mm_unpackhi_pd(lo, lo);
    return _mm_cvtsd_f64(_mm_max_sd(lo, swapped));
}

}  // namespace

double dot(const double* a, const double* b, std::size_t n) {
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
        acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4), acc1);
    }
    for (; i + 4 <= n; i += 4)
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
    double r = hsum(_mm256_add_pd(acc0, acc1));
    for (; i < n; ++i) r += a[i] * b[i];
    return r;
}

double weighted_sqnorm(const double* x, const double* w, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d xv = _mm256_loadu_pd(x + i);
        acc = _mm256_fmadd_pd(_mm256_mul_pd(xv, xv), _mm256_loadu_pd(w + i), acc);
    }
    double r = hsum(acc);
    for (; i < n; ++i) r += w[i] * x[i] * x[i];
    return r;
}

double sum(const double* x, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) acc = _mm256_add_pd(acc, _mm256_loadu_pd(x + i));
    double r = hsum(acc);
    for (; i < n; ++i) r += x[i];
    return r;
}

double max_abs_diff(const double* a, const double* b, std::size_t n) {
    const __m256d sign_mask = _mm256_set1_pd(-0.0);
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d d = _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
        acc = _mm256_max_pd(acc, _mm256_andnot_pd(sign_mask, d));
    }
    double r = hmax(acc);
    for (; i < n; ++i) {
        double d = std::fabs(a[i] - b[i]);
        if (d > r) r = d;
    }
    return r;
}

void axpy(double c, const double* x, double* y, std::size_t n) {
    const __m256d cv = _mm256_set1_pd(c);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d yv = _mm256_fmadd_pd(cv, _mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i));
        _mm256_storeu_pd(y + i, yv);
    }
    for (; i < n; ++i) y[i] += c * x[i];
}

void axpy_weighted(double c, const double* s, const double* x, double* y, std::size_t n) {
    const __m256d cv = _mm256_set1_pd(c);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d sx = _mm256_mul_pd(_mm256_loadu_pd(s + i), _mm256_loadu_pd(x + i));
        __m256d yv = _mm256_fmadd_pd(cv, sx, _mm256_loadu_pd(y + i));
        _mm256_storeu_pd(y + i, yv);
    }
    for (; i < n; ++i) y[i] += c * s[i] * x[i];
}

void scale(double c, double* x, std::size_t n) {
    const __m256d cv = _mm256_set1_pd(c);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        _mm256_storeu_pd(x + i, _mm256_mul_pd(cv, _mm256_loadu_pd(x + i)));
    for (; i < n; ++i) x[i] *= c;
}

#else  // non-x86 fallback stubs; dispatch never selects these.

bool host_supported() { return false; }
double dot(const double*, const double*, std::size_t) { return 0.0; }
double weighted_sqnorm(const double*, const double*, std::size_t) { return 0.0; }
double sum(const double*, std::size_t) { return 0.0; }
double max_abs_diff(const double*, const double*, std::size_t) { return 0.0; }
void axpy(double, const double*, double*, std::size_t) {}
void axpy_weighted(double, const double*, const double*, double*, std::size_t) {}
void scale(double, double*, std::size_t) {}

#endif

}  // namespace emvs::kernels::avx2
