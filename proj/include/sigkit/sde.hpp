#ifndef SIGKIT_SDE_HPP
#define SIGKIT_SDE_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "sigkit/metrics.hpp"
#include "sigkit/path.hpp"
#include "sigkit/regression.hpp"
#include "sigkit/rng.hpp"

// Synthetic-data lab: scalar Ito SDEs dZ = b(Z)dt + sigma(Z)dB driven by
// seeded Brownian paths, terminal-value regression datasets, empirical
// concentration functions, and the RMSE-vs-M convergence study.

namespace sigkit {

using ScalarFn = std::function<double(double)>;

struct SDEConfig {
    ScalarFn drift;      // b
    ScalarFn diffusion;  // sigma
    std::string drift_name = "power:5";
    std::string diffusion_name = "xcos";
    double z0 = 1.0;
    double horizon = 1.0;  // T
    int steps = 500;       // L

    static SDEConfig make(const std::string& drift_spec,
                          const std::string& diffusion_spec, double z0, double T,
                          int L);
};

// Named coefficient registry. Drifts: "power:p" (b(x) = -x^p), "linear"
// (b(x) = -x), "zero". Diffusions: "xcos" (sigma(x) = x cos x), "linear"
// (sigma(x) = x), "zero". Unknown names throw.
ScalarFn make_drift(const std::string& spec);
ScalarFn make_diffusion(const std::string& spec);

// d-dimensional Brownian path on the uniform grid t_i = i T / L, started at 0;
// increments are N(0, T/L) per channel.
Path sample_brownian(int L, double T, int d, Rng& rng);

// Euler scheme Z_{i+1} = Z_i + b(Z_i) dt + sigma(Z_i) dB_i along a 1-d driver
// whose times must match the L-step uniform grid. Returns Z_T; throws
// std::runtime_error if the state leaves the finite range.
double euler_maruyama(const SDEConfig& cfg, const Path& driver);

struct RegressionDataset {
    std::vector<Path> inputs;    // Brownian drivers (augmented when requested)
    std::vector<double> targets; // terminal values Z_T
    std::vector<std::size_t> train_indices;
    std::vector<std::size_t> test_indices;
};

// M driver/target pairs from per-sample streams of spec; deterministic
// contiguous split with |train| = round(M * train_fraction).
RegressionDataset generate_dataset(int M, double train_fraction, const SDEConfig& cfg,
                                   const RngSpec& spec, bool augment_time);

// fraction of samples with rho(sample, center) <= h for each h in h_grid
std::vector<std::pair<double, double>> empirical_small_ball(
    const std::vector<Path>& samples, const Path& center, const SemiMetricSpec& metric,
    const std::vector<double>& h_grid);

struct ConvergenceCell {
    double rmse = 0.0;
    double seconds = 0.0;
    CVCandidate chosen;
};

struct ConvergenceTable {
    std::vector<int> m_values;               // rows
    std::vector<SemiMetricSpec> metrics;     // columns
    std::vector<std::vector<ConvergenceCell>> cells;  // [row][col]
};

struct ConvergenceOptions {
    int test_size = 512;
    CVConfig cv;
    KernelSpec kernel = KernelSpec::gaussian();
    bool augment_time = true;  // signature metrics see time-augmented drivers
};

// For each M and metric: generate M train + test_size test samples,
// cross-validate, fit, evaluate held-out RMSE. Deterministic given the seed;
// the test block is shared across M values of one run.
ConvergenceTable convergence_experiment(const std::vector<int>& m_values,
                                        const std::vector<SemiMetricSpec>& metrics,
                                        const SDEConfig& cfg,
                                        const ConvergenceOptions& opts,
                                        const RngSpec& rng);

// Labeled waveform benchmark for the classifier: "sine" vs "cosine" curves
// a*sin(2 pi (t+phi)) / a*cos(2 pi (t+phi)) with amplitude a ~ U[0.5, 1.5],
// phase jitter phi ~ U[-0.05, 0.05] and iid N(0, noise^2) sample noise.
struct LabeledPaths {
    std::vector<Path> inputs;
    std::vector<std::string> labels;
};
LabeledPaths make_wave_benchmark(int per_class, int samples_per_path, double noise,
                                 const RngSpec& spec);

} // namespace sigkit

#endif
