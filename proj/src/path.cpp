#include "sigkit/path.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sigkit {

Path::Path(std::vector<double> times, std::vector<double> values, int d)
    : times_(std::move(times)), values_(std::move(values)), d_(d) {
    if (d_ < 1) throw std::invalid_argument("path dimension must be >= 1");
    if (times_.empty()) throw std::invalid_argument("path needs at least one sample");
    if (values_.size() != times_.size() * static_cast<std::size_t>(d_))
        throw std::invalid_argument("path values shape does not match times x d");
    for (std::size_t i = 1; i < times_.size(); ++i)
        if (!(times_[i] > times_[i - 1]))
            throw std::invalid_argument("path times must be strictly increasing");
    for (double t : times_)
        if (!std::isfinite(t)) throw std::invalid_argument("non-finite path time");
    for (double v : values_)
        if (!std::isfinite(v)) throw std::invalid_argument("non-finite path value");
}

std::vector<double> Path::at(double t) const {
    std::vector<double> out(static_cast<std::size_t>(d_));
    if (t <= times_.front()) {
        auto r = row(0);
        out.assign(r.begin(), r.end());
        return out;
    }
    if (t >= times_.back()) {
        auto r = row(times_.size() - 1);
        out.assign(r.begin(), r.end());
        return out;
    }
    const auto it = std::upper_bound(times_.begin(), times_.end(), t);
    const std::size_t j = static_cast<std::size_t>(it - times_.begin());
    const double t0 = times_[j - 1], t1 = times_[j];
    const double w = (t - t0) / (t1 - t0);
    auto a = row(j - 1);
    auto b = row(j);
    for (int c = 0; c < d_; ++c)
        out[static_cast<std::size_t>(c)] = (1.0 - w) * a[static_cast<std::size_t>(c)] +
                                           w * b[static_cast<std::size_t>(c)];
    return out;
}

double Path::one_variation() const {
    double total = 0.0;
    for (std::size_t i = 1; i < times_.size(); ++i) {
        double s = 0.0;
        auto a = row(i - 1);
        auto b = row(i);
        for (int c = 0; c < d_; ++c) {
            const double dv = b[static_cast<std::size_t>(c)] - a[static_cast<std::size_t>(c)];
            s += dv * dv;
        }
        total += std::sqrt(s);
    }
    return total;
}

AugmentedPath::AugmentedPath(Path p) : Path(std::move(p)) {
    for (std::size_t i = 0; i < samples(); ++i)
        if (row(i)[0] != times()[i])
            throw std::invalid_argument("augmented path channel 0 must equal times");
}

AugmentedPath time_augment(const Path& p) {
    const int d = p.dim();
    std::vector<double> values;
    values.reserve(p.samples() * static_cast<std::size_t>(d + 1));
    for (std::size_t i = 0; i < p.samples(); ++i) {
        values.push_back(p.times()[i]);
        auto r = p.row(i);
        values.insert(values.end(), r.begin(), r.end());
    }
    return AugmentedPath(Path(p.times(), std::move(values), d + 1));
}

Path resample(const Path& p, const std::vector<double>& new_times) {
    std::vector<double> values;
    values.reserve(new_times.size() * static_cast<std::size_t>(p.dim()));
    for (double t : new_times) {
        auto v = p.at(t);
        values.insert(values.end(), v.begin(), v.end());
    }
    return Path(new_times, std::move(values), p.dim());
}

std::vector<double> union_times(const Path& a, const Path& b) {
    std::vector<double> merged;
    merged.reserve(a.times().size() + b.times().size());
    std::merge(a.times().begin(), a.times().end(), b.times().begin(), b.times().end(),
               std::back_inserter(merged));
    merged.erase(std::unique(merged.begin(), merged.end()), merged.end());
    return merged;
}

Path difference_on_union_grid(const Path& a, const Path& b) {
    if (a.dim() != b.dim())
        throw std::invalid_argument("path dimension mismatch");
    const auto grid = union_times(a, b);
    const Path ra = resample(a, grid);
    const Path rb = resample(b, grid);
    std::vector<double> values(ra.values().size());
    for (std::size_t i = 0; i < values.size(); ++i)
        values[i] = ra.values()[i] - rb.values()[i];
    return Path(grid, std::move(values), a.dim());
}

} // namespace sigkit
