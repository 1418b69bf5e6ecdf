#include "sigkit/signature.hpp"

#include <cmath>
#include <stdexcept>

#include "sigkit/parallel.hpp"

namespace sigkit {

TruncatedTensor segment_signature(std::span<const double> delta, int d, int N) {
    if (static_cast<int>(delta.size()) != d)
        throw std::invalid_argument("segment increment size must equal d");
    TruncatedTensor out(d, N);
    out.flat()[0] = 1.0;
    for (int k = 1; k <= N; ++k) {
        auto prev = out.level_span(k - 1);
        auto cur = out.level_span(k);
        const double inv_k = 1.0 / k;
        std::size_t idx = 0;
        for (double p : prev)
            for (int j = 0; j < d; ++j)
                cur[idx++] = p * delta[static_cast<std::size_t>(j)] * inv_k;
    }
    return out;
}

TruncatedTensor path_signature(const Path& p, int N) {
    const int d = p.dim();
    TruncatedTensor sig = unit_tensor(d, N);
    std::vector<double> delta(static_cast<std::size_t>(d));
    for (int s = 0; s < p.segments(); ++s) {
        auto a = p.row(static_cast<std::size_t>(s));
        auto b = p.row(static_cast<std::size_t>(s) + 1);
        bool zero = true;
        for (int c = 0; c < d; ++c) {
            delta[static_cast<std::size_t>(c)] =
                b[static_cast<std::size_t>(c)] - a[static_cast<std::size_t>(c)];
            zero = zero && delta[static_cast<std::size_t>(c)] == 0.0;
        }
        if (zero) continue;  // exp(0) is the unit
        tensor_product_inplace(sig, segment_signature(delta, d, N));
    }
    return sig;
}

TruncatedTensor chen_concat(const TruncatedTensor& s1, const TruncatedTensor& s2) {
    return tensor_product(s1, s2);
}

std::vector<TruncatedTensor> batch_signatures(const std::vector<Path>& paths, int N,
                                              bool augment_time) {
    std::vector<TruncatedTensor> out;
    out.reserve(paths.size());
    if (paths.empty()) return out;
    const int d = paths.front().dim() + (augment_time ? 1 : 0);
    for (std::size_t i = 0; i < paths.size(); ++i) out.emplace_back(d, N);
    parallel_for(paths.size(), [&](std::size_t i) {
        out[i] = augment_time ? path_signature(time_augment(paths[i]), N)
                              : path_signature(paths[i], N);
    });
    return out;
}

} // namespace sigkit
