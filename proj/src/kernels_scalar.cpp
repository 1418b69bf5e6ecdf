#include "sigkit/kernels.hpp"

#include <cmath>

// Reference kernels. Plain loops, no pragmas: these define the semantics the
// SIMD variants are tested against.

namespace sigkit::kern::detail {

namespace {

double dot_scalar(const double* a, const double* b, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
    return s;
}

double sum_sq_scalar(const double* a, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += a[i] * a[i];
    return s;
}

double sqdist_scalar(const double* a, const double* b, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double d = a[i] - b[i];
        s += d * d;
    }
    return s;
}

void axpy_scalar(double alpha, const double* x, double* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

void scale_scalar(double* x, std::size_t n, double c) {
    for (std::size_t i = 0; i < n; ++i) x[i] *= c;
}

void outer_accum_scalar(double* dest, const double* a, std::size_t na,
                        const double* b, std::size_t nb) {
    for (std::size_t i = 0; i < na; ++i) {
        const double ai = a[i];
        double* row = dest + i * nb;
        for (std::size_t j = 0; j < nb; ++j) row[j] += ai * b[j];
    }
}

double max_abs_diff_scalar(const double* a, const double* b, std::size_t n) {
    double m = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double d = std::fabs(a[i] - b[i]);
        if (d > m) m = d;
    }
    return m;
}

} // namespace

const Ops& scalar_ops() {
    static const Ops table = {
        dot_scalar,    sum_sq_scalar, sqdist_scalar,       axpy_scalar,
        scale_scalar,  outer_accum_scalar, max_abs_diff_scalar,
    };
    return table;
}

} // namespace sigkit::kern::detail
