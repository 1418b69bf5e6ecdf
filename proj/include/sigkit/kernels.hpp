#ifndef SIGKIT_KERNELS_HPP
#define SIGKIT_KERNELS_HPP

#include <cstddef>
#include <string>

// Hot arithmetic loops used by the tensor algebra and the metrics.
// Every kernel exists as a scalar reference implementation and, on x86-64
// hardware that supports it, as an AVX2+FMA variant. The backend is picked
// once at startup; force_backend() lets tests pin one side and compare.

namespace sigkit::kern {

struct Ops {
    // sum_i a[i]*b[i]
    double (*dot)(const double* a, const double* b, std::size_t n);
    // sum_i a[i]^2
    double (*sum_sq)(const double* a, std::size_t n);
    // sum_i (a[i]-b[i])^2
    double (*sqdist)(const double* a, const double* b, std::size_t n);
    // y[i] += alpha * x[i]
    void (*axpy)(double alpha, const double* x, double* y, std::size_t n);
    // x[i] *= c
    void (*scale)(double* x, std::size_t n, double c);
    // dest[i*nb + j] += a[i]*b[j]  (tensor level block: concat of word blocks)
    void (*outer_accum)(double* dest, const double* a, std::size_t na,
                        const double* b, std::size_t nb);
    // max_i |a[i]-b[i]|
    double (*max_abs_diff)(const double* a, const double* b, std::size_t n);
};

enum class Backend { Scalar, Avx2 };

const Ops& ops();
Backend active_backend();
bool backend_supported(Backend b);
// Test hook; throws std::invalid_argument if unsupported on this machine.
void force_backend(Backend b);
std::string backend_name(Backend b);

namespace detail {
const Ops& scalar_ops();
const Ops& avx2_ops();   // only valid to call through if AVX2 is supported
bool cpu_has_avx2();
}

} // namespace sigkit::kern

#endif
