#ifndef SIGKIT_REGRESSION_HPP
#define SIGKIT_REGRESSION_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sigkit/metrics.hpp"
#include "sigkit/path.hpp"

// Nadaraya-Watson local regression and classification over any semi-metric:
//   F_hat(x) = sum_i Y_i K(rho(x, X_i)/h) / sum_j K(rho(x, X_j)/h).
// Signature features are computed once at fit time; a degenerate denominator
// (no neighbor in range, or underflow below 1e-300) falls back to the nearest
// training input, ties broken by lowest index.

namespace sigkit {

struct KernelSpec {
    enum class Kind { Box, Gaussian };
    Kind kind = Kind::Gaussian;

    static KernelSpec box() { return {Kind::Box}; }
    static KernelSpec gaussian() { return {Kind::Gaussian}; }
};

// Box: 1 on [0,1], else 0. Gaussian: exp(-u^2/2). u must be >= 0.
double kernel_eval(const KernelSpec& k, double u);

struct ClassifyResult {
    std::string label;
    // per-class posterior scores, keyed in sorted class order; they sum to 1
    // whenever the kernel denominator is positive
    std::vector<std::pair<std::string, double>> scores;
};

class NWModel {
public:
    double predict(const Path& x) const;
    std::vector<double> predict(const std::vector<Path>& xs) const;

    ClassifyResult classify(const Path& x) const;
    std::vector<ClassifyResult> classify(const std::vector<Path>& xs) const;

    const SemiMetricSpec& metric() const { return metric_; }
    const KernelSpec& kernel() const { return kernel_; }
    double bandwidth() const { return h_; }
    std::size_t training_size() const { return targets_.empty() ? labels_.size() : targets_.size(); }
    bool is_classifier() const { return classifier_; }

    friend NWModel fit(const SemiMetricSpec&, const KernelSpec&, double,
                       std::vector<Path>, std::vector<double>);
    friend NWModel fit_classifier(const SemiMetricSpec&, const KernelSpec&, double,
                                  std::vector<Path>, std::vector<std::string>);

private:
    NWModel() = default;
    std::vector<double> query_feature(const Path& x) const;
    // weights K(rho(x, X_i)/h) plus squared distances for the fallback
    void weights_for(const Path& x, std::vector<double>& w,
                     std::vector<double>& sqd) const;

    SemiMetricSpec metric_;
    KernelSpec kernel_;
    double h_ = 1.0;
    bool classifier_ = false;
    std::vector<Path> inputs_;                    // kept for path-based metrics
    std::vector<std::vector<double>> features_;   // sig/rsig flat coefficients
    std::vector<double> targets_;
    std::vector<std::string> labels_;
    std::vector<std::string> classes_;            // sorted unique labels
    std::vector<std::size_t> label_index_;        // labels_ resolved into classes_
};

NWModel fit(const SemiMetricSpec& metric, const KernelSpec& kernel, double h,
            std::vector<Path> inputs, std::vector<double> targets);
NWModel fit_classifier(const SemiMetricSpec& metric, const KernelSpec& kernel, double h,
                       std::vector<Path> inputs, std::vector<std::string> labels);

struct CVConfig {
    int folds = 5;
    // Relative bandwidth grid: factors applied to the median pairwise training
    // distance. Default: 12 geometric points spanning [0.05, 5].
    std::vector<double> bandwidth_factors;
    // When non-empty these absolute bandwidths are used instead.
    std::vector<double> bandwidths;
    // Robust-parameter grids, consulted only for rsig metrics.
    std::vector<double> threshold_grid = {1.0, 2.0, 4.0};
    std::vector<double> decay_grid = {0.5, 1.0};
    std::uint64_t seed = 0;
};

struct CVCandidate {
    double h = 1.0;
    std::optional<RobustParams> robust;  // engaged for rsig metrics
};

struct CVResult {
    CVCandidate best;
    double best_score = 0.0;  // mean validation RMSE (regression) or accuracy
    std::vector<std::pair<CVCandidate, double>> scores;  // every grid point
    SemiMetricSpec resolved_metric;  // base metric with best robust params applied
};

// Deterministic k-fold grid search: indices shuffled from cfg.seed, contiguous
// folds, every candidate scored, ties broken by smaller h then smaller
// threshold then smaller decay. Regression flavor scores RMSE (lower wins).
CVResult cross_validate(const CVConfig& cfg, const SemiMetricSpec& metric,
                        const KernelSpec& kernel, const std::vector<Path>& inputs,
                        const std::vector<double>& targets);

// Classification flavor scores accuracy (higher wins).
CVResult cross_validate_classifier(const CVConfig& cfg, const SemiMetricSpec& metric,
                                   const KernelSpec& kernel,
                                   const std::vector<Path>& inputs,
                                   const std::vector<std::string>& labels);

double rmse(const std::vector<double>& predictions, const std::vector<double>& targets);
double accuracy(const std::vector<std::string>& predictions,
                const std::vector<std::string>& labels);

} // namespace sigkit

#endif
