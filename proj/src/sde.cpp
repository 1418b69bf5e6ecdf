#include "sigkit/sde.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>

#include "sigkit/parallel.hpp"

namespace sigkit {

namespace {

std::pair<std::string, std::string> split_head(const std::string& spec) {
    const auto pos = spec.find(':');
    if (pos == std::string::npos) return {spec, ""};
    return {spec.substr(0, pos), spec.substr(pos + 1)};
}

} // namespace

ScalarFn make_drift(const std::string& spec) {
    const auto [head, arg] = split_head(spec);
    if (head == "zero") return [](double) { return 0.0; };
    if (head == "linear") return [](double x) { return -x; };
    if (head == "power") {
        const int p = arg.empty() ? 5 : std::stoi(arg);
        if (p < 1) throw std::invalid_argument("drift power must be >= 1");
        return [p](double x) { return -std::pow(x, p); };
    }
    throw std::invalid_argument("unknown drift: " + spec);
}

ScalarFn make_diffusion(const std::string& spec) {
    const auto [head, arg] = split_head(spec);
    (void)arg;
    if (head == "zero") return [](double) { return 0.0; };
    if (head == "linear") return [](double x) { return x; };
    if (head == "xcos") return [](double x) { return x * std::cos(x); };
    throw std::invalid_argument("unknown diffusion: " + spec);
}

SDEConfig SDEConfig::make(const std::string& drift_spec,
                          const std::string& diffusion_spec, double z0, double T,
                          int L) {
    if (L < 1) throw std::invalid_argument("Euler step count must be >= 1");
    if (!(T > 0.0)) throw std::invalid_argument("horizon must be positive");
    SDEConfig cfg;
    cfg.drift = make_drift(drift_spec);
    cfg.diffusion = make_diffusion(diffusion_spec);
    cfg.drift_name = drift_spec;
    cfg.diffusion_name = diffusion_spec;
    cfg.z0 = z0;
    cfg.horizon = T;
    cfg.steps = L;
    return cfg;
}

Path sample_brownian(int L, double T, int d, Rng& rng) {
    if (L < 1) throw std::invalid_argument("Brownian path needs L >= 1 steps");
    std::vector<double> times(static_cast<std::size_t>(L) + 1);
    for (int i = 0; i <= L; ++i)
        times[static_cast<std::size_t>(i)] = T * i / L;
    const double sd = std::sqrt(T / L);
    std::vector<double> values(times.size() * static_cast<std::size_t>(d), 0.0);
    for (int i = 1; i <= L; ++i) {
        const std::size_t row = static_cast<std::size_t>(i) * static_cast<std::size_t>(d);
        const std::size_t prev = row - static_cast<std::size_t>(d);
        for (int c = 0; c < d; ++c)
            values[row + static_cast<std::size_t>(c)] =
                values[prev + static_cast<std::size_t>(c)] + sd * rng.normal();
    }
    return Path(std::move(times), std::move(values), d);
}

double euler_maruyama(const SDEConfig& cfg, const Path& driver) {
    if (driver.dim() != 1)
        throw std::invalid_argument("euler_maruyama expects a 1-d driver");
    const int L = cfg.steps;
    if (driver.segments() != L)
        throw std::invalid_argument("driver grid does not match Euler steps");
    const double dt = cfg.horizon / L;
    for (int i = 0; i <= L; ++i) {
        const double expected = cfg.horizon * i / L;
        if (std::fabs(driver.times()[static_cast<std::size_t>(i)] - expected) >
            1e-9 * std::max(1.0, cfg.horizon))
            throw std::invalid_argument("driver grid does not match Euler grid");
    }
    double z = cfg.z0;
    const auto& b = driver.values();
    for (int i = 0; i < L; ++i) {
        const double db = b[static_cast<std::size_t>(i) + 1] - b[static_cast<std::size_t>(i)];
        z += cfg.drift(z) * dt + cfg.diffusion(z) * db;
        if (!std::isfinite(z))
            throw std::runtime_error("euler_maruyama state became non-finite at step " +
                                     std::to_string(i + 1));
    }
    return z;
}

RegressionDataset generate_dataset(int M, double train_fraction, const SDEConfig& cfg,
                                   const RngSpec& spec, bool augment_time) {
    if (M < 2) throw std::invalid_argument("dataset needs M >= 2 samples");
    const int n_train = static_cast<int>(std::llround(train_fraction * M));
    if (n_train < 1 || n_train >= M)
        throw std::invalid_argument("degenerate train/test split");
    RegressionDataset ds;
    ds.inputs.reserve(static_cast<std::size_t>(M));
    ds.targets.assign(static_cast<std::size_t>(M), 0.0);
    std::vector<Path> drivers;
    drivers.reserve(static_cast<std::size_t>(M));
    for (int i = 0; i < M; ++i) {
        Rng rng(spec.stream_seed(static_cast<std::uint64_t>(i)));
        drivers.push_back(sample_brownian(cfg.steps, cfg.horizon, 1, rng));
    }
    parallel_for(static_cast<std::size_t>(M), [&](std::size_t i) {
        ds.targets[i] = euler_maruyama(cfg, drivers[i]);
    });
    for (int i = 0; i < M; ++i)
        ds.inputs.push_back(augment_time ? time_augment(drivers[static_cast<std::size_t>(i)])
                                         : std::move(drivers[static_cast<std::size_t>(i)]));
    for (int i = 0; i < n_train; ++i) ds.train_indices.push_back(static_cast<std::size_t>(i));
    for (int i = n_train; i < M; ++i) ds.test_indices.push_back(static_cast<std::size_t>(i));
    return ds;
}

std::vector<std::pair<double, double>> empirical_small_ball(
    const std::vector<Path>& samples, const Path& center, const SemiMetricSpec& metric,
    const std::vector<double>& h_grid) {
    if (samples.empty()) throw std::invalid_argument("empirical_small_ball needs samples");
    if (h_grid.empty()) throw std::invalid_argument("empirical_small_ball needs a grid");
    std::vector<double> dists(samples.size());
    parallel_for(samples.size(),
                 [&](std::size_t i) { dists[i] = distance(metric, samples[i], center); });
    std::vector<std::pair<double, double>> out;
    out.reserve(h_grid.size());
    for (double h : h_grid) {
        std::size_t count = 0;
        for (double d : dists)
            if (d <= h) ++count;
        out.emplace_back(h, static_cast<double>(count) / static_cast<double>(samples.size()));
    }
    return out;
}

ConvergenceTable convergence_experiment(const std::vector<int>& m_values,
                                        const std::vector<SemiMetricSpec>& metrics,
                                        const SDEConfig& cfg,
                                        const ConvergenceOptions& opts,
                                        const RngSpec& rng) {
    if (m_values.empty() || metrics.empty())
        throw std::invalid_argument("convergence_experiment needs rows and columns");
    for (std::size_t i = 1; i < m_values.size(); ++i)
        if (m_values[i] <= m_values[i - 1])
            throw std::invalid_argument("m_values must be ascending");
    if (opts.test_size < 1) throw std::invalid_argument("test size must be >= 1");

    const int max_m = m_values.back();
    const std::size_t n_total =
        static_cast<std::size_t>(max_m) + static_cast<std::size_t>(opts.test_size);

    // one shared pool of drivers/targets; stream index = sample identity,
    // test block sits past the largest training block
    std::vector<Path> drivers(n_total, Path({0.0}, {0.0}, 1));
    std::vector<double> targets(n_total, 0.0);
    parallel_for(n_total, [&](std::size_t i) {
        Rng r(rng.stream_seed(static_cast<std::uint64_t>(i)));
        drivers[i] = sample_brownian(cfg.steps, cfg.horizon, 1, r);
        targets[i] = euler_maruyama(cfg, drivers[i]);
    });

    const std::vector<double> test_targets(targets.begin() + max_m, targets.end());
    ConvergenceTable table;
    table.m_values = m_values;
    table.metrics = metrics;
    table.cells.assign(m_values.size(),
                       std::vector<ConvergenceCell>(metrics.size()));

    for (std::size_t row = 0; row < m_values.size(); ++row) {
        const int M = m_values[row];
        for (std::size_t col = 0; col < metrics.size(); ++col) {
            SemiMetricSpec metric = metrics[col];
            metric.augment_time = metric.signature_based() && opts.augment_time;
            const auto t0 = std::chrono::steady_clock::now();

            std::vector<Path> train(drivers.begin(), drivers.begin() + M);
            std::vector<double> train_targets(targets.begin(), targets.begin() + M);
            CVConfig cv = opts.cv;
            cv.seed = rng.seed;
            cv.folds = std::min<int>(cv.folds, M);
            const CVResult cvres =
                cross_validate(cv, metric, opts.kernel, train, train_targets);

            const NWModel model = fit(cvres.resolved_metric, opts.kernel, cvres.best.h,
                                      std::move(train), std::move(train_targets));
            std::vector<Path> test(drivers.begin() + max_m, drivers.end());
            const std::vector<double> preds = model.predict(test);

            ConvergenceCell& cell = table.cells[row][col];
            cell.rmse = rmse(preds, test_targets);
            cell.chosen = cvres.best;
            cell.seconds =
                std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
                    .count();
        }
    }
    return table;
}

LabeledPaths make_wave_benchmark(int per_class, int samples_per_path, double noise,
                                 const RngSpec& spec) {
    if (per_class < 1 || samples_per_path < 2)
        throw std::invalid_argument("wave benchmark needs per_class >= 1, >= 2 samples");
    LabeledPaths out;
    const int total = 2 * per_class;
    for (int k = 0; k < total; ++k) {
        Rng rng(spec.stream_seed(static_cast<std::uint64_t>(k)));
        const bool sine = k < per_class;
        const double amplitude = rng.uniform(0.5, 1.5);
        const double phase = rng.uniform(-0.05, 0.05);
        std::vector<double> times(static_cast<std::size_t>(samples_per_path));
        std::vector<double> values(static_cast<std::size_t>(samples_per_path));
        for (int i = 0; i < samples_per_path; ++i) {
            const double t = static_cast<double>(i) / (samples_per_path - 1);
            const double arg = 6.283185307179586476925286766559 * (t + phase);
            const double clean = sine ? std::sin(arg) : std::cos(arg);
            times[static_cast<std::size_t>(i)] = t;
            values[static_cast<std::size_t>(i)] = amplitude * clean + noise * rng.normal();
        }
        out.inputs.emplace_back(std::move(times), std::move(values), 1);
        out.labels.emplace_back(sine ? "sine" : "cosine");
    }
    return out;
}

} // namespace sigkit
