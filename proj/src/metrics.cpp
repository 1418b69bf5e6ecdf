#include "sigkit/metrics.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "sigkit/kernels.hpp"
#include "sigkit/signature.hpp"

namespace sigkit {

namespace {

[[noreturn]] void bad_spec(std::string_view text) {
    throw std::invalid_argument("unparseable metric spec: " + std::string(text));
}

std::vector<std::string_view> split(std::string_view text, char sep) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = text.find(sep, start);
        if (pos == std::string_view::npos) {
            parts.push_back(text.substr(start));
            return parts;
        }
        parts.push_back(text.substr(start, pos - start));
        start = pos + 1;
    }
}

int parse_int(std::string_view s, std::string_view whole) {
    int v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) bad_spec(whole);
    return v;
}

double parse_real(std::string_view s, std::string_view whole) {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) bad_spec(whole);
    return v;
}

std::string fmt_real(double v) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    (void)ec;
    return std::string(buf, ptr);
}

double row_sqdist(std::span<const double> a, std::span<const double> b) {
    return kern::ops().sqdist(a.data(), b.data(), a.size());
}

} // namespace

SemiMetricSpec SemiMetricSpec::parse(std::string_view text) {
    const auto parts = split(text, ':');
    SemiMetricSpec spec;
    const auto& head = parts[0];
    if (head == "sig") {
        if (parts.size() != 2) bad_spec(text);
        spec.kind = Kind::SigTrunc;
        spec.level = parse_int(parts[1], text);
        if (spec.level < 1) bad_spec(text);
    } else if (head == "rsig") {
        if (parts.size() != 4) bad_spec(text);
        spec.kind = Kind::RSig;
        spec.level = parse_int(parts[1], text);
        spec.robust.threshold = parse_real(parts[2], text);
        spec.robust.decay = parse_real(parts[3], text);
        if (spec.level < 1 || spec.robust.threshold < 1.0 || !(spec.robust.decay > 0.0))
            bad_spec(text);
    } else if (head == "sup") {
        if (parts.size() != 1) bad_spec(text);
        spec.kind = Kind::Sup;
    } else if (head == "lp") {
        if (parts.size() != 2) bad_spec(text);
        spec.kind = Kind::Lp;
        spec.p = parse_real(parts[1], text);
        if (!(spec.p >= 1.0)) bad_spec(text);
    } else if (head == "pvar") {
        if (parts.size() != 2) bad_spec(text);
        spec.kind = Kind::PVar;
        spec.p = parse_real(parts[1], text);
        if (!(spec.p >= 1.0)) bad_spec(text);
    } else if (head == "dtw") {
        if (parts.size() != 1) bad_spec(text);
        spec.kind = Kind::Dtw;
    } else {
        bad_spec(text);
    }
    return spec;
}

std::string SemiMetricSpec::to_string() const {
    switch (kind) {
        case Kind::SigTrunc: return "sig:" + std::to_string(level);
        case Kind::RSig:
            return "rsig:" + std::to_string(level) + ":" + fmt_real(robust.threshold) +
                   ":" + fmt_real(robust.decay);
        case Kind::Sup: return "sup";
        case Kind::Lp: return "lp:" + fmt_real(p);
        case Kind::PVar: return "pvar:" + fmt_real(p);
        case Kind::Dtw: return "dtw";
    }
    return "sig:3";
}

double psi(double y, const RobustParams& params) {
    if (y < 1.0) throw std::invalid_argument("psi needs y >= 1");
    const double C = params.threshold;
    const double a = params.decay;
    const double x = y * y;
    if (x <= C) return x;
    return C + std::pow(C, 1.0 + a) * (std::pow(C, -a) - std::pow(x, -a)) / a;
}

double normalize_lambda(const TruncatedTensor& t, const RobustParams& params) {
    if (std::fabs(t.scalar() - 1.0) > 1e-12)
        throw std::invalid_argument("normalization needs scalar part 1");
    std::vector<double> level_sq(static_cast<std::size_t>(t.level()) + 1);
    double norm_sq = 0.0;
    double higher = 0.0;
    for (int k = 0; k <= t.level(); ++k) {
        auto lv = t.level_span(k);
        level_sq[static_cast<std::size_t>(k)] = kern::ops().sum_sq(lv.data(), lv.size());
        norm_sq += level_sq[static_cast<std::size_t>(k)];
        if (k >= 1) higher += level_sq[static_cast<std::size_t>(k)];
    }
    // all higher levels zero: the defining equation holds for every lambda
    if (higher == 0.0) return 1.0;
    // below the threshold Psi(||t||) = ||t||^2 and lambda = 1 solves exactly
    if (norm_sq <= params.threshold) return 1.0;

    const double target = psi(std::sqrt(norm_sq), params);
    auto value = [&](double lambda) {
        double acc = 0.0;
        double lk = 1.0;
        const double l2 = lambda * lambda;
        for (std::size_t k = 0; k < level_sq.size(); ++k) {
            acc += lk * level_sq[k];
            lk *= l2;
        }
        return acc;
    };
    // value() is strictly increasing in lambda here and Psi <= ||t||^2, so the
    // root sits in [0, 1]. 200 halvings exhaust double resolution long before
    // the cap; the 1e-12 bracket requirement is passed on the way.
    double lo = 0.0, hi = 1.0;
    for (int iter = 0; iter < 200; ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        (value(mid) < target ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

TruncatedTensor robust_normalize(const TruncatedTensor& t, const RobustParams& params) {
    return dilate(t, normalize_lambda(t, params));
}

TruncatedTensor robust_signature(const Path& x, int N, const RobustParams& params) {
    return robust_normalize(path_signature(x, N), params);
}

namespace {

double tensor_distance(const TruncatedTensor& a, const TruncatedTensor& b) {
    return std::sqrt(
        kern::ops().sqdist(a.flat().data(), b.flat().data(), a.flat().size()));
}

void require_same_dim(const Path& x, const Path& y) {
    if (x.dim() != y.dim()) throw std::invalid_argument("path dimension mismatch");
}

} // namespace

double trunc_sig_distance(const Path& x, const Path& y, int N) {
    require_same_dim(x, y);
    return tensor_distance(path_signature(x, N), path_signature(y, N));
}

double rsig_distance(const Path& x, const Path& y, int N, const RobustParams& params) {
    require_same_dim(x, y);
    return tensor_distance(robust_signature(x, N, params),
                           robust_signature(y, N, params));
}

double sup_distance(const Path& x, const Path& y) {
    require_same_dim(x, y);
    if (x.dim() == 1 && x.times() == y.times()) {
        // shared grid, one channel: straight max-abs scan
        return kern::ops().max_abs_diff(x.values().data(), y.values().data(),
                                        x.values().size());
    }
    const Path diff = difference_on_union_grid(x, y);
    double m = 0.0;
    for (std::size_t i = 0; i < diff.samples(); ++i) {
        auto r = diff.row(i);
        double s = 0.0;
        for (double v : r) s += v * v;
        m = std::max(m, s);
    }
    return std::sqrt(m);
}

double lp_distance(const Path& x, const Path& y, double p) {
    require_same_dim(x, y);
    if (!(p >= 1.0)) throw std::invalid_argument("lp distance needs p >= 1");
    const Path diff = difference_on_union_grid(x, y);
    // trapezoid rule on |x_t - y_t|^p over the union grid
    std::vector<double> g(diff.samples());
    for (std::size_t i = 0; i < diff.samples(); ++i) {
        auto r = diff.row(i);
        double s = 0.0;
        for (double v : r) s += v * v;
        g[i] = std::pow(std::sqrt(s), p);
    }
    double integral = 0.0;
    for (std::size_t i = 1; i < diff.samples(); ++i)
        integral += 0.5 * (g[i - 1] + g[i]) * (diff.times()[i] - diff.times()[i - 1]);
    return std::pow(integral, 1.0 / p);
}

double p_variation(const Path& x, double p) {
    if (!(p >= 1.0)) throw std::invalid_argument("p-variation needs p >= 1");
    const std::size_t n = x.samples();
    if (n < 2) return 0.0;
    // V(j) = max_{i<j} V(i) + |x_j - x_i|^p, answer V(L)^{1/p}
    std::vector<double> best(n, 0.0);
    for (std::size_t j = 1; j < n; ++j) {
        auto xj = x.row(j);
        double vj = 0.0;
        for (std::size_t i = 0; i < j; ++i) {
            auto xi = x.row(i);
            const double inc = std::sqrt(row_sqdist(xj, xi));
            vj = std::max(vj, best[i] + std::pow(inc, p));
        }
        best[j] = vj;
    }
    return std::pow(best[n - 1], 1.0 / p);
}

double p_var_distance(const Path& x, const Path& y, double p) {
    require_same_dim(x, y);
    return p_variation(difference_on_union_grid(x, y), p);
}

double dtw_distance(const Path& x, const Path& y) {
    require_same_dim(x, y);
    const std::size_t nx = x.samples(), ny = y.samples();
    if (nx == 0 || ny == 0) throw std::invalid_argument("dtw needs non-empty paths");
    constexpr double kInf = std::numeric_limits<double>::infinity();
    std::vector<double> prev(ny + 1, kInf), cur(ny + 1, kInf);
    prev[0] = 0.0;
    for (std::size_t i = 1; i <= nx; ++i) {
        cur[0] = kInf;
        auto xi = x.row(i - 1);
        for (std::size_t j = 1; j <= ny; ++j) {
            const double cost = std::sqrt(row_sqdist(xi, y.row(j - 1)));
            cur[j] = cost + std::min({prev[j], cur[j - 1], prev[j - 1]});
        }
        std::swap(prev, cur);
    }
    return prev[ny];
}

double distance(const SemiMetricSpec& spec, const Path& x, const Path& y) {
    using Kind = SemiMetricSpec::Kind;
    if (spec.signature_based() && spec.augment_time) {
        const AugmentedPath ax = time_augment(x);
        const AugmentedPath ay = time_augment(y);
        return spec.kind == Kind::SigTrunc
                   ? trunc_sig_distance(ax, ay, spec.level)
                   : rsig_distance(ax, ay, spec.level, spec.robust);
    }
    switch (spec.kind) {
        case Kind::SigTrunc: return trunc_sig_distance(x, y, spec.level);
        case Kind::RSig: return rsig_distance(x, y, spec.level, spec.robust);
        case Kind::Sup: return sup_distance(x, y);
        case Kind::Lp: return lp_distance(x, y, spec.p);
        case Kind::PVar: return p_var_distance(x, y, spec.p);
        case Kind::Dtw: return dtw_distance(x, y);
    }
    throw std::logic_error("unhandled metric kind");
}

} // namespace sigkit
