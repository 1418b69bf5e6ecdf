#include "sigkit/kernels.hpp"

// AVX2+FMA variants. This TU is compiled with -mavx2 -mfma; nothing here runs
// unless the dispatcher confirmed CPU support first.

#if defined(__x86_64__) || defined(_M_X64)
#define SIGKIT_X86 1
#else
#define SIGKIT_X86 0
#endif

#if SIGKIT_X86
#include <immintrin.h>
#include <cmath>

namespace sigkit::kern::detail {

namespace {

inline double hsum(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_add_pd(lo, hi);
    __m128d swapped = _mm_unpackhi_pd(lo, lo);
    return _mm_cvtsd_f64(_mm_add_sd(lo, swapped));
}

double dot_avx2(const double* a, const double* b, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d va = _mm256_loadu_pd(a + i);
        __m256d vb = _mm256_loadu_pd(b + i);
        acc = _mm256_fmadd_pd(va, vb, acc);
    }
    double s = hsum(acc);
    for (; i < n; ++i) s += a[i] * b[i];
    return s;
}

double sum_sq_avx2(const double* a, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d va = _mm256_loadu_pd(a + i);
        acc = _mm256_fmadd_pd(va, va, acc);
    }
    double s = hsum(acc);
    for (; i < n; ++i) s += a[i] * a[i];
    return s;
}

double sqdist_avx2(const double* a, const double* b, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d d = _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
        acc = _mm256_fmadd_pd(d, d, acc);
    }
    double s = hsum(acc);
    for (; i < n; ++i) {
        const double d = a[i] - b[i];
        s += d * d;
    }
    return s;
}

void axpy_avx2(double alpha, const double* x, double* y, std::size_t n) {
    const __m256d va = _mm256_set1_pd(alpha);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d vy = _mm256_loadu_pd(y + i);
        vy = _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i), vy);
        _mm256_storeu_pd(y + i, vy);
    }
    for (; i < n; ++i) y[i] += alpha * x[i];
}

void scale_avx2(double* x, std::size_t n, double c) {
    const __m256d vc = _mm256_set1_pd(c);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        _mm256_storeu_pd(x + i, _mm256_mul_pd(_mm256_loadu_pd(x + i), vc));
    for (; i < n; ++i) x[i] *= c;
}

void outer_accum_avx2(double* dest, const double* a, std::size_t na,
                      const double* b, std::size_t nb) {
    if (nb < 4) {
        // short rows: vector setup costs more than it saves
        for (std::size_t i = 0; i < na; ++i) {
            const double ai = a[i];
            double* row = dest + i * nb;
            for (std::size_t j = 0; j < nb; ++j) row[j] += ai * b[j];
        }
        return;
    }
    for (std::size_t i = 0; i < na; ++i) {
        const __m256d vai = _mm256_set1_pd(a[i]);
        double* row = dest + i * nb;
        std::size_t j = 0;
        for (; j + 4 <= nb; j += 4) {
            __m256d vr = _mm256_loadu_pd(row + j);
            vr = _mm256_fmadd_pd(vai, _mm256_loadu_pd(b + j), vr);
            _mm256_storeu_pd(row + j, vr);
        }
        const double ai = a[i];
        for (; j < nb; ++j) row[j] += ai * b[j];
    }
}

double max_abs_diff_avx2(const double* a, const double* b, std::size_t n) {
    const __m256d signmask = _mm256_set1_pd(-0.0);
    __m256d vmax = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d d = _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
        vmax = _mm256_max_pd(vmax, _mm256_andnot_pd(signmask, d));
    }
    __m128d lo = _mm256_castpd256_pd128(vmax);
    __m128d hi = _mm256_extractf128_pd(vmax, 1);
    lo = _mm_max_pd(lo, hi);
    double m = _mm_cvtsd_f64(_mm_max_sd(lo, _mm_unpackhi_pd(lo, lo)));
    for (; i < n; ++i) {
        const double d = std::fabs(a[i] - b[i]);
        if (d > m) m = d;
    }
    return m;
}

} // namespace

const Ops& avx2_ops() {
    static const Ops table = {
        dot_avx2,   sum_sq_avx2, sqdist_avx2,      axpy_avx2,
        scale_avx2, outer_accum_avx2, max_abs_diff_avx2,
    };
    return table;
}

} // namespace sigkit::kern::detail

#else // !SIGKIT_X86

namespace sigkit::kern::detail {
const Ops& avx2_ops() { return scalar_ops(); }
} // namespace sigkit::kern::detail

#endif
