// Micro-benchmark for the scalar and AVX2 kernel backends plus the two hot
// end-to-end paths built on them (batch signatures, pairwise sig distances).
//
//   usage: sigkit-bench [n]   (vector length, default 4096)

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <string>
#include <vector>

#include "sigkit/kernels.hpp"
#include "sigkit/rng.hpp"
#include "sigkit/signature.hpp"

using namespace sigkit;

namespace {

using Clock = std::chrono::steady_clock;

Path sample_path(Rng& rng) {
    const int L = 200;
    std::vector<double> t(L + 1), v(L + 1);
    for (int i = 0; i <= L; ++i) {
        t[static_cast<std::size_t>(i)] = static_cast<double>(i) / L;
        v[static_cast<std::size_t>(i)] = rng.normal();
    }
    return Path(std::move(t), std::move(v), 1);
}

double time_of(int iters, const std::function<void()>& fn) {
    // one warmup, then best of three
    fn();
    double best = 1e100;
    for (int trial = 0; trial < 3; ++trial) {
        const auto t0 = Clock::now();
        for (int i = 0; i < iters; ++i) fn();
        best = std::min(best, std::chrono::duration<double>(Clock::now() - t0).count() /
                                  iters);
    }
    return best;
}

volatile double g_sink;

void bench_backend(kern::Backend backend, std::size_t n) {
    if (!kern::backend_supported(backend)) {
        std::printf("%-8s unsupported on this CPU\n",
                    kern::backend_name(backend).c_str());
        return;
    }
    kern::force_backend(backend);
    const auto& ops = kern::ops();

    Rng rng(7);
    std::vector<double> a(n), b(n), c(n);
    for (std::size_t i = 0; i < n; ++i) {
        a[i] = rng.normal();
        b[i] = rng.normal();
        c[i] = rng.normal();
    }

    const double t_dot = time_of(2000, [&] { g_sink = ops.dot(a.data(), b.data(), n); });
    const double t_sqd =
        time_of(2000, [&] { g_sink = ops.sqdist(a.data(), b.data(), n); });
    const double t_axpy = time_of(2000, [&] { ops.axpy(1.0001, a.data(), c.data(), n); });
    const double t_mad =
        time_of(2000, [&] { g_sink = ops.max_abs_diff(a.data(), b.data(), n); });

    std::vector<Path> paths;
    for (int i = 0; i < 32; ++i) {
        Rng r(1000 + static_cast<std::uint64_t>(i));
        paths.push_back(sample_path(r));
    }
    const double t_sig = time_of(20, [&] {
        const auto sigs = batch_signatures(paths, 4, true);
        g_sink = sigs.back().flat()[0];
    });

    std::printf("%-8s dot %7.1f ns   sqdist %7.1f ns   axpy %7.1f ns   "
                "maxabs %7.1f ns   32 sigs(N=4,L=200) %7.2f ms\n",
                kern::backend_name(backend).c_str(), t_dot * 1e9, t_sqd * 1e9,
                t_axpy * 1e9, t_mad * 1e9, t_sig * 1e3);
}

} // namespace

int main(int argc, char** argv) {
    const std::size_t n = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 4096;
    const auto initial = kern::active_backend();
    std::printf("vector length %zu, active backend %s\n", n,
                kern::backend_name(initial).c_str());
    bench_backend(kern::Backend::Scalar, n);
    bench_backend(kern::Backend::Avx2, n);
    kern::force_backend(initial);
    return 0;
}
