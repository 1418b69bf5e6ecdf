#include "sigkit/regression.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "sigkit/kernels.hpp"
#include "sigkit/parallel.hpp"
#include "sigkit/rng.hpp"
#include "sigkit/signature.hpp"

namespace sigkit {

double kernel_eval(const KernelSpec& k, double u) {
    if (u < 0.0) throw std::invalid_argument("kernel argument must be >= 0");
    switch (k.kind) {
        case KernelSpec::Kind::Box: return u <= 1.0 ? 1.0 : 0.0;
        case KernelSpec::Kind::Gaussian: return std::exp(-0.5 * u * u);
    }
    throw std::logic_error("unhandled kernel kind");
}

namespace {

constexpr double kDenominatorFloor = 1e-300;

// kernel evaluated on u^2 = (rho/h)^2; avoids the sqrt in hot loops
inline double kernel_eval_sq(KernelSpec::Kind kind, double u_sq) {
    return kind == KernelSpec::Kind::Box ? (u_sq <= 1.0 ? 1.0 : 0.0)
                                         : std::exp(-0.5 * u_sq);
}

std::vector<std::vector<double>> extract_features(const SemiMetricSpec& spec,
                                                  const std::vector<Path>& paths) {
    auto sigs = batch_signatures(paths, spec.level, spec.augment_time);
    if (spec.kind == SemiMetricSpec::Kind::RSig)
        parallel_for(sigs.size(),
                     [&](std::size_t i) { sigs[i] = robust_normalize(sigs[i], spec.robust); });
    std::vector<std::vector<double>> out(sigs.size());
    for (std::size_t i = 0; i < sigs.size(); ++i)
        out[i].assign(sigs[i].flat().begin(), sigs[i].flat().end());
    return out;
}

void check_training(const std::vector<Path>& inputs, std::size_t n_targets) {
    if (inputs.empty()) throw std::invalid_argument("empty training set");
    if (inputs.size() != n_targets)
        throw std::invalid_argument("training inputs and targets must align");
    for (const auto& p : inputs)
        if (p.dim() != inputs.front().dim())
            throw std::invalid_argument("inconsistent training path dimensions");
}

} // namespace

std::vector<double> NWModel::query_feature(const Path& x) const {
    TruncatedTensor sig = metric_.augment_time
                              ? path_signature(time_augment(x), metric_.level)
                              : path_signature(x, metric_.level);
    if (metric_.kind == SemiMetricSpec::Kind::RSig)
        sig = robust_normalize(sig, metric_.robust);
    return {sig.flat().begin(), sig.flat().end()};
}

void NWModel::weights_for(const Path& x, std::vector<double>& w,
                          std::vector<double>& sqd) const {
    const std::size_t n = training_size();
    w.resize(n);
    sqd.resize(n);
    const double inv_h2 = 1.0 / (h_ * h_);
    if (metric_.signature_based()) {
        const auto f = query_feature(x);
        for (std::size_t i = 0; i < n; ++i)
            sqd[i] = kern::ops().sqdist(f.data(), features_[i].data(), f.size());
    } else {
        for (std::size_t i = 0; i < n; ++i) {
            const double d = distance(metric_, x, inputs_[i]);
            sqd[i] = d * d;
        }
    }
    for (std::size_t i = 0; i < n; ++i)
        w[i] = kernel_eval_sq(kernel_.kind, sqd[i] * inv_h2);
}

double NWModel::predict(const Path& x) const {
    if (classifier_) throw std::logic_error("predict called on a classifier model");
    std::vector<double> w, sqd;
    weights_for(x, w, sqd);
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) {
        num += w[i] * targets_[i];
        den += w[i];
    }
    if (den >= kDenominatorFloor) return num / den;
    // nearest neighbor in the same metric, lowest index on ties
    std::size_t best = 0;
    for (std::size_t i = 1; i < sqd.size(); ++i)
        if (sqd[i] < sqd[best]) best = i;
    return targets_[best];
}

std::vector<double> NWModel::predict(const std::vector<Path>& xs) const {
    std::vector<double> out(xs.size());
    parallel_for(xs.size(), [&](std::size_t i) { out[i] = predict(xs[i]); });
    return out;
}

ClassifyResult NWModel::classify(const Path& x) const {
    if (!classifier_) throw std::logic_error("classify called on a regression model");
    std::vector<double> w, sqd;
    weights_for(x, w, sqd);
    std::vector<double> class_weight(classes_.size(), 0.0);
    double den = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) {
        class_weight[label_index_[i]] += w[i];
        den += w[i];
    }
    ClassifyResult result;
    if (den >= kDenominatorFloor) {
        std::size_t best = 0;
        for (std::size_t c = 0; c < classes_.size(); ++c) {
            result.scores.emplace_back(classes_[c], class_weight[c] / den);
            if (class_weight[c] > class_weight[best]) best = c;  // ties: first in sorted order
        }
        result.label = classes_[best];
        return result;
    }
    std::size_t nearest = 0;
    for (std::size_t i = 1; i < sqd.size(); ++i)
        if (sqd[i] < sqd[nearest]) nearest = i;
    for (std::size_t c = 0; c < classes_.size(); ++c)
        result.scores.emplace_back(classes_[c],
                                   c == label_index_[nearest] ? 1.0 : 0.0);
    result.label = labels_[nearest];
    return result;
}

std::vector<ClassifyResult> NWModel::classify(const std::vector<Path>& xs) const {
    std::vector<ClassifyResult> out(xs.size());
    parallel_for(xs.size(), [&](std::size_t i) { out[i] = classify(xs[i]); });
    return out;
}

NWModel fit(const SemiMetricSpec& metric, const KernelSpec& kernel, double h,
            std::vector<Path> inputs, std::vector<double> targets) {
    check_training(inputs, targets.size());
    if (!(h > 0.0)) throw std::invalid_argument("bandwidth must be positive");
    NWModel m;
    m.metric_ = metric;
    m.kernel_ = kernel;
    m.h_ = h;
    m.classifier_ = false;
    if (metric.signature_based())
        m.features_ = extract_features(metric, inputs);
    else
        m.inputs_ = std::move(inputs);
    m.targets_ = std::move(targets);
    return m;
}

NWModel fit_classifier(const SemiMetricSpec& metric, const KernelSpec& kernel, double h,
                       std::vector<Path> inputs, std::vector<std::string> labels) {
    check_training(inputs, labels.size());
    if (!(h > 0.0)) throw std::invalid_argument("bandwidth must be positive");
    NWModel m;
    m.metric_ = metric;
    m.kernel_ = kernel;
    m.h_ = h;
    m.classifier_ = true;
    if (metric.signature_based())
        m.features_ = extract_features(metric, inputs);
    else
        m.inputs_ = std::move(inputs);
    m.labels_ = std::move(labels);
    m.classes_ = m.labels_;
    std::sort(m.classes_.begin(), m.classes_.end());
    m.classes_.erase(std::unique(m.classes_.begin(), m.classes_.end()), m.classes_.end());
    m.label_index_.resize(m.labels_.size());
    for (std::size_t i = 0; i < m.labels_.size(); ++i)
        m.label_index_[i] = static_cast<std::size_t>(
            std::lower_bound(m.classes_.begin(), m.classes_.end(), m.labels_[i]) -
            m.classes_.begin());
    return m;
}

double rmse(const std::vector<double>& predictions, const std::vector<double>& targets) {
    if (predictions.empty()) throw std::invalid_argument("rmse of empty vectors");
    if (predictions.size() != targets.size())
        throw std::invalid_argument("rmse length mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < predictions.size(); ++i) {
        const double e = predictions[i] - targets[i];
        s += e * e;
    }
    return std::sqrt(s / static_cast<double>(predictions.size()));
}

double accuracy(const std::vector<std::string>& predictions,
                const std::vector<std::string>& labels) {
    if (predictions.empty()) throw std::invalid_argument("accuracy of empty vectors");
    if (predictions.size() != labels.size())
        throw std::invalid_argument("accuracy length mismatch");
    std::size_t correct = 0;
    for (std::size_t i = 0; i < predictions.size(); ++i)
        if (predictions[i] == labels[i]) ++correct;
    return static_cast<double>(correct) / static_cast<double>(predictions.size());
}

// ---------------------------------------------------------------------------
// Cross-validation

namespace {

struct CVTask {
    const std::vector<double>* targets = nullptr;            // regression
    const std::vector<std::size_t>* label_index = nullptr;   // classification
    std::size_t n_classes = 0;
    bool classification = false;
};

// fold id per index: seed-shuffled indices cut into k contiguous chunks
std::vector<int> fold_assignment(std::size_t n, int folds, std::uint64_t seed) {
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    Rng rng(splitmix64(seed) ^ 0x8badf00dcafef00dULL);
    rng.shuffle(order);
    std::vector<int> fold_of(n, 0);
    const std::size_t base = n / static_cast<std::size_t>(folds);
    const std::size_t extra = n % static_cast<std::size_t>(folds);
    std::size_t pos = 0;
    for (int f = 0; f < folds; ++f) {
        const std::size_t size = base + (static_cast<std::size_t>(f) < extra ? 1 : 0);
        for (std::size_t i = 0; i < size; ++i) fold_of[order[pos++]] = f;
    }
    return fold_of;
}

// full symmetric matrix of squared distances
std::vector<double> pairwise_sqdist(const SemiMetricSpec& spec,
                                    const std::vector<Path>& inputs,
                                    const std::vector<std::vector<double>>& features) {
    const std::size_t n = spec.signature_based() ? features.size() : inputs.size();
    std::vector<double> m(n * n, 0.0);
    parallel_for(n, [&](std::size_t i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            double d2;
            if (spec.signature_based()) {
                d2 = kern::ops().sqdist(features[i].data(), features[j].data(),
                                        features[i].size());
            } else {
                const double d = distance(spec, inputs[i], inputs[j]);
                d2 = d * d;
            }
            m[i * n + j] = d2;
            m[j * n + i] = d2;
        }
    });
    return m;
}

double median_distance(const std::vector<double>& sqmat, std::size_t n) {
    std::vector<double> upper;
    upper.reserve(n * (n - 1) / 2);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) upper.push_back(sqmat[i * n + j]);
    if (upper.empty()) return 1.0;
    const std::size_t mid = upper.size() / 2;
    std::nth_element(upper.begin(), upper.begin() + static_cast<std::ptrdiff_t>(mid),
                     upper.end());
    const double med = std::sqrt(upper[mid]);
    return med > 0.0 ? med : 1.0;
}

// mean validation score of one bandwidth over the folds
double score_candidate(const std::vector<double>& sqmat, std::size_t n,
                       const std::vector<int>& fold_of, int folds, double h,
                       KernelSpec::Kind kind, const CVTask& task) {
    const double inv_h2 = 1.0 / (h * h);
    double fold_sum = 0.0;
    std::vector<double> class_weight(task.n_classes);
    for (int f = 0; f < folds; ++f) {
        double err_sq = 0.0;
        std::size_t correct = 0, count = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (fold_of[i] != f) continue;
            const double* row = sqmat.data() + i * n;
            ++count;
            if (!task.classification) {
                double num = 0.0, den = 0.0;
                double best_d = std::numeric_limits<double>::infinity();
                std::size_t best_j = i;
                for (std::size_t j = 0; j < n; ++j) {
                    if (fold_of[j] == f) continue;
                    const double w = kernel_eval_sq(kind, row[j] * inv_h2);
                    num += w * (*task.targets)[j];
                    den += w;
                    if (row[j] < best_d) { best_d = row[j]; best_j = j; }
                }
                const double pred =
                    den >= kDenominatorFloor ? num / den : (*task.targets)[best_j];
                const double e = pred - (*task.targets)[i];
                err_sq += e * e;
            } else {
                std::fill(class_weight.begin(), class_weight.end(), 0.0);
                double den = 0.0;
                double best_d = std::numeric_limits<double>::infinity();
                std::size_t best_j = i;
                for (std::size_t j = 0; j < n; ++j) {
                    if (fold_of[j] == f) continue;
                    const double w = kernel_eval_sq(kind, row[j] * inv_h2);
                    class_weight[(*task.label_index)[j]] += w;
                    den += w;
                    if (row[j] < best_d) { best_d = row[j]; best_j = j; }
                }
                std::size_t pred;
                if (den >= kDenominatorFloor) {
                    pred = 0;
                    for (std::size_t c = 1; c < task.n_classes; ++c)
                        if (class_weight[c] > class_weight[pred]) pred = c;
                } else {
                    pred = (*task.label_index)[best_j];
                }
                if (pred == (*task.label_index)[i]) ++correct;
            }
        }
        fold_sum += task.classification
                        ? static_cast<double>(correct) / static_cast<double>(count)
                        : std::sqrt(err_sq / static_cast<double>(count));
    }
    return fold_sum / folds;
}

std::vector<double> default_factors() {
    // 12 geometric points on [0.05, 5]
    std::vector<double> f(12);
    const double lo = 0.05, hi = 5.0;
    for (int i = 0; i < 12; ++i)
        f[static_cast<std::size_t>(i)] = lo * std::pow(hi / lo, i / 11.0);
    return f;
}

CVResult cv_impl(const CVConfig& cfg, const SemiMetricSpec& metric,
                 const KernelSpec& kernel, const std::vector<Path>& inputs,
                 const CVTask& task) {
    const std::size_t n = inputs.size();
    if (n == 0) throw std::invalid_argument("cross_validate on empty data");
    if (cfg.folds < 2) throw std::invalid_argument("cross_validate needs k >= 2 folds");
    if (static_cast<std::size_t>(cfg.folds) > n)
        throw std::invalid_argument("fold count exceeds data size");

    const bool robust = metric.kind == SemiMetricSpec::Kind::RSig;
    std::vector<RobustParams> param_grid;
    if (robust) {
        if (cfg.threshold_grid.empty() || cfg.decay_grid.empty())
            throw std::invalid_argument("empty robust-parameter grid");
        auto Cs = cfg.threshold_grid;
        auto as = cfg.decay_grid;
        std::sort(Cs.begin(), Cs.end());
        std::sort(as.begin(), as.end());
        for (double C : Cs)
            for (double a : as) param_grid.push_back({C, a});
    } else {
        param_grid.push_back(metric.robust);  // placeholder, not searched
    }

    const auto fold_of = fold_assignment(n, cfg.folds, cfg.seed);

    // raw signatures are shared by every robust-parameter group
    std::vector<TruncatedTensor> raw_sigs;
    if (metric.signature_based())
        raw_sigs = batch_signatures(inputs, metric.level, metric.augment_time);

    CVResult result;
    for (const RobustParams& rp : param_grid) {
        SemiMetricSpec candidate_metric = metric;
        if (robust) candidate_metric.robust = rp;
        std::vector<std::vector<double>> features;
        if (candidate_metric.signature_based()) {
            features.resize(raw_sigs.size());
            parallel_for(raw_sigs.size(), [&](std::size_t i) {
                if (robust) {
                    const TruncatedTensor t = robust_normalize(raw_sigs[i], rp);
                    features[i].assign(t.flat().begin(), t.flat().end());
                } else {
                    features[i].assign(raw_sigs[i].flat().begin(),
                                       raw_sigs[i].flat().end());
                }
            });
        }
        const auto sqmat = pairwise_sqdist(candidate_metric, inputs, features);

        std::vector<double> hs = cfg.bandwidths;
        if (hs.empty()) {
            const double med = median_distance(sqmat, n);
            const auto factors =
                cfg.bandwidth_factors.empty() ? default_factors() : cfg.bandwidth_factors;
            for (double f : factors) hs.push_back(f * med);
        }
        std::sort(hs.begin(), hs.end());
        for (double h : hs)
            if (!(h > 0.0)) throw std::invalid_argument("bandwidth grid must be positive");

        std::vector<double> scores(hs.size());
        parallel_for(hs.size(), [&](std::size_t i) {
            scores[i] = score_candidate(sqmat, n, fold_of, cfg.folds, hs[i],
                                        kernel.kind, task);
        });
        for (std::size_t i = 0; i < hs.size(); ++i) {
            CVCandidate cand;
            cand.h = hs[i];
            if (robust) cand.robust = rp;
            result.scores.emplace_back(cand, scores[i]);
        }
    }

    // best mean score; ties broken by smaller h, then threshold, then decay
    auto better = [&task](const std::pair<CVCandidate, double>& a,
                          const std::pair<CVCandidate, double>& b) {
        if (a.second != b.second)
            return task.classification ? a.second > b.second : a.second < b.second;
        if (a.first.h != b.first.h) return a.first.h < b.first.h;
        const double ca = a.first.robust ? a.first.robust->threshold : 0.0;
        const double cb = b.first.robust ? b.first.robust->threshold : 0.0;
        if (ca != cb) return ca < cb;
        const double aa = a.first.robust ? a.first.robust->decay : 0.0;
        const double ab = b.first.robust ? b.first.robust->decay : 0.0;
        return aa < ab;
    };
    std::size_t best = 0;
    for (std::size_t i = 1; i < result.scores.size(); ++i)
        if (better(result.scores[i], result.scores[best])) best = i;
    result.best = result.scores[best].first;
    result.best_score = result.scores[best].second;
    result.resolved_metric = metric;
    if (robust && result.best.robust) result.resolved_metric.robust = *result.best.robust;
    return result;
}

} // namespace

CVResult cross_validate(const CVConfig& cfg, const SemiMetricSpec& metric,
                        const KernelSpec& kernel, const std::vector<Path>& inputs,
                        const std::vector<double>& targets) {
    if (inputs.size() != targets.size())
        throw std::invalid_argument("cross_validate inputs/targets mismatch");
    CVTask task;
    task.targets = &targets;
    task.classification = false;
    return cv_impl(cfg, metric, kernel, inputs, task);
}

CVResult cross_validate_classifier(const CVConfig& cfg, const SemiMetricSpec& metric,
                                   const KernelSpec& kernel,
                                   const std::vector<Path>& inputs,
                                   const std::vector<std::string>& labels) {
    if (inputs.size() != labels.size())
        throw std::invalid_argument("cross_validate inputs/labels mismatch");
    std::vector<std::string> classes = labels;
    std::sort(classes.begin(), classes.end());
    classes.erase(std::unique(classes.begin(), classes.end()), classes.end());
    std::vector<std::size_t> label_index(labels.size());
    for (std::size_t i = 0; i < labels.size(); ++i)
        label_index[i] = static_cast<std::size_t>(
            std::lower_bound(classes.begin(), classes.end(), labels[i]) - classes.begin());
    CVTask task;
    task.label_index = &label_index;
    task.n_classes = classes.size();
    task.classification = true;
    return cv_impl(cfg, metric, kernel, inputs, task);
}

} // namespace sigkit
