#include "sigkit/tensor.hpp"

#include <cmath>
#include <cstring>
#include <stdexcept>

#include "sigkit/kernels.hpp"

namespace sigkit {

namespace {

void require(bool cond, const char* msg) {
    if (!cond) throw std::invalid_argument(msg);
}

void require_same_shape(const TruncatedTensor& a, const TruncatedTensor& b) {
    require(a.same_shape(b), "tensor dimension/level mismatch");
}

} // namespace

std::size_t level_size(int d, int k) {
    std::size_t s = 1;
    for (int i = 0; i < k; ++i) s *= static_cast<std::size_t>(d);
    return s;
}

std::size_t total_size(int d, int N) {
    std::size_t s = 0;
    for (int k = 0; k <= N; ++k) s += level_size(d, k);
    return s;
}

TruncatedTensor::TruncatedTensor(int d, int N) : d_(d), N_(N) {
    require(d >= 1, "tensor alphabet size must be >= 1");
    require(N >= 0, "tensor truncation level must be >= 0");
    offsets_.resize(static_cast<std::size_t>(N) + 2);
    std::size_t off = 0, sz = 1;
    for (int k = 0; k <= N; ++k) {
        offsets_[static_cast<std::size_t>(k)] = off;
        off += sz;
        sz *= static_cast<std::size_t>(d);
    }
    offsets_[static_cast<std::size_t>(N) + 1] = off;
    coef_.assign(off, 0.0);
}

std::span<double> TruncatedTensor::level_span(int k) {
    const std::size_t b = offsets_[static_cast<std::size_t>(k)];
    return {coef_.data() + b, offsets_[static_cast<std::size_t>(k) + 1] - b};
}

std::span<const double> TruncatedTensor::level_span(int k) const {
    const std::size_t b = offsets_[static_cast<std::size_t>(k)];
    return {coef_.data() + b, offsets_[static_cast<std::size_t>(k) + 1] - b};
}

TruncatedTensor unit_tensor(int d, int N) {
    TruncatedTensor t(d, N);
    t.flat()[0] = 1.0;
    return t;
}

TruncatedTensor tensor_add(const TruncatedTensor& a, const TruncatedTensor& b) {
    require_same_shape(a, b);
    TruncatedTensor out = a;
    kern::ops().axpy(1.0, b.flat().data(), out.flat().data(), out.flat().size());
    return out;
}

TruncatedTensor tensor_sub(const TruncatedTensor& a, const TruncatedTensor& b) {
    require_same_shape(a, b);
    TruncatedTensor out = a;
    kern::ops().axpy(-1.0, b.flat().data(), out.flat().data(), out.flat().size());
    return out;
}

TruncatedTensor tensor_scale(const TruncatedTensor& a, double c) {
    TruncatedTensor out = a;
    kern::ops().scale(out.flat().data(), out.flat().size(), c);
    return out;
}

TruncatedTensor tensor_product(const TruncatedTensor& a, const TruncatedTensor& b) {
    require_same_shape(a, b);
    const int N = a.level();
    TruncatedTensor out(a.dim(), N);
    const auto& k = kern::ops();
    for (int n = 0; n <= N; ++n) {
        auto dest = out.level_span(n);
        for (int l = 0; l <= n; ++l) {
            auto al = a.level_span(l);
            auto bl = b.level_span(n - l);
            k.outer_accum(dest.data(), al.data(), al.size(), bl.data(), bl.size());
        }
    }
    return out;
}

void tensor_product_inplace(TruncatedTensor& a, const TruncatedTensor& b) {
    require_same_shape(a, b);
    const int N = a.level();
    const double b0 = b.scalar();
    const auto& k = kern::ops();
    // Walk levels top-down: level n only reads levels < n of a, still untouched.
    for (int n = N; n >= 0; --n) {
        auto dest = a.level_span(n);
        k.scale(dest.data(), dest.size(), b0);  // l = n term: a^(n) * b^(0)
        for (int l = 0; l < n; ++l) {
            auto al = a.level_span(l);
            auto bl = b.level_span(n - l);
            k.outer_accum(dest.data(), al.data(), al.size(), bl.data(), bl.size());
        }
    }
}

double inner_product(const TruncatedTensor& a, const TruncatedTensor& b) {
    require_same_shape(a, b);
    return kern::ops().dot(a.flat().data(), b.flat().data(), a.flat().size());
}

double norm(const TruncatedTensor& a) {
    return std::sqrt(kern::ops().sum_sq(a.flat().data(), a.flat().size()));
}

TruncatedTensor dilate(const TruncatedTensor& a, double lambda) {
    require(lambda >= 0.0, "dilation factor must be >= 0");
    TruncatedTensor out = a;
    double lk = 1.0;
    for (int k = 1; k <= a.level(); ++k) {
        lk *= lambda;
        auto lv = out.level_span(k);
        kern::ops().scale(lv.data(), lv.size(), lk);
    }
    return out;
}

TruncatedTensor tensor_exp(const TruncatedTensor& v) {
    require(std::fabs(v.scalar()) <= 1e-12, "tensor_exp needs zero scalar part");
    const int N = v.level();
    // Horner form: exp(v) = 1 + v(1 + v/2 (1 + v/3 (...)))
    TruncatedTensor result = unit_tensor(v.dim(), N);
    for (int k = N; k >= 1; --k) {
        TruncatedTensor term = tensor_product(v, result);
        kern::ops().scale(term.flat().data(), term.flat().size(), 1.0 / k);
        term.flat()[0] += 1.0;
        result = std::move(term);
    }
    return result;
}

TruncatedTensor tensor_log(const TruncatedTensor& g) {
    require(std::fabs(g.scalar() - 1.0) <= 1e-12, "tensor_log needs unit scalar part");
    const int N = g.level();
    TruncatedTensor u = g;          // u = g - 1, nilpotent
    u.flat()[0] = 0.0;
    TruncatedTensor acc = u;
    TruncatedTensor power = u;
    double sign = 1.0;
    for (int n = 2; n <= N; ++n) {
        tensor_product_inplace(power, u);
        sign = -sign;
        kern::ops().axpy(sign / n, power.flat().data(), acc.flat().data(),
                         acc.flat().size());
    }
    return acc;
}

TruncatedTensor truncate(const TruncatedTensor& a, int M) {
    require(M >= 0 && M <= a.level(), "truncation level out of range");
    TruncatedTensor out(a.dim(), M);
    std::memcpy(out.flat().data(), a.flat().data(),
                out.flat().size() * sizeof(double));
    return out;
}

} // namespace sigkit
