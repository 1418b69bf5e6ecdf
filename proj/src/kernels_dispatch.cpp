#include "sigkit/kernels.hpp"

#include <stdexcept>

namespace sigkit::kern {

namespace detail {

bool cpu_has_avx2() {
#if (defined(__x86_64__) || defined(_M_X64)) && defined(__GNUC__)
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

} // namespace detail

namespace {

Backend pick_backend() {
    return detail::cpu_has_avx2() ? Backend::Avx2 : Backend::Scalar;
}

Backend& current_backend() {
    static Backend b = pick_backend();
    return b;
}

} // namespace

const Ops& ops() {
    return current_backend() == Backend::Avx2 ? detail::avx2_ops()
                                              : detail::scalar_ops();
}

Backend active_backend() { return current_backend(); }

bool backend_supported(Backend b) {
    return b == Backend::Scalar || detail::cpu_has_avx2();
}

void force_backend(Backend b) {
    if (!backend_supported(b))
        throw std::invalid_argument("kernel backend not supported on this CPU: " +
                                    backend_name(b));
    current_backend() = b;
}

std::string backend_name(Backend b) {
    return b == Backend::Avx2 ? "avx2" : "scalar";
}

} // namespace sigkit::kern
