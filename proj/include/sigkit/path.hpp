#ifndef SIGKIT_PATH_HPP
#define SIGKIT_PATH_HPP

#include <span>
#include <vector>

// Sampled multivariate series, always read as the piecewise-linear
// interpolant of its sample points.

namespace sigkit {

class Path {
public:
    // times strictly increasing (duplicates rejected), values row-major
    // (L+1) x d with one row per time stamp.
    Path(std::vector<double> times, std::vector<double> values, int d);

    int dim() const { return d_; }
    int segments() const { return static_cast<int>(times_.size()) - 1; }
    std::size_t samples() const { return times_.size(); }

    const std::vector<double>& times() const { return times_; }
    const std::vector<double>& values() const { return values_; }
    std::span<const double> row(std::size_t i) const {
        return {values_.data() + i * static_cast<std::size_t>(d_),
                static_cast<std::size_t>(d_)};
    }

    // value at time t by linear interpolation, clamped to [t_0, t_L]
    std::vector<double> at(double t) const;

    // polygonal length: sum of Euclidean segment increments
    double one_variation() const;

private:
    std::vector<double> times_;
    std::vector<double> values_;
    int d_;
};

// A path whose channel 0 is time itself.
struct AugmentedPath : Path {
    explicit AugmentedPath(Path p);  // validates channel 0 == times
};

// x_t -> (t, x_t)
AugmentedPath time_augment(const Path& p);

// p resampled by linear interpolation onto new_times (all inside [t_0, t_L]
// clamped, strictly increasing).
Path resample(const Path& p, const std::vector<double>& new_times);

// sorted union of both time grids
std::vector<double> union_times(const Path& a, const Path& b);

// pointwise difference a - b on the union grid (dimensions must match)
Path difference_on_union_grid(const Path& a, const Path& b);

} // namespace sigkit

#endif
