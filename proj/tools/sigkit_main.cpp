// Command-line surface: dataset I/O, signature computation, distance
// matrices, the SDE regression benchmark, NW classification, empirical
// small-ball curves, and free-Lie dimension counts.
//
// Exit codes: 0 success, 1 input error, 2 numerical failure.

#include <chrono>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "sigkit/metrics.hpp"
#include "sigkit/regression.hpp"
#include "sigkit/sde.hpp"
#include "sigkit/series_io.hpp"
#include "sigkit/signature.hpp"
#include "sigkit/version.hpp"
#include "sigkit/words.hpp"

namespace {

using nlohmann::ordered_json;
using namespace sigkit;

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) parts.push_back(item);
    return parts;
}

std::vector<int> parse_int_list(const std::string& text) {
    std::vector<int> out;
    for (const auto& s : split_list(text)) out.push_back(std::stoi(s));
    return out;
}

std::vector<double> parse_real_list(const std::string& text) {
    std::vector<double> out;
    for (const auto& s : split_list(text)) out.push_back(std::stod(s));
    return out;
}

// "lo:hi:steps" -> linearly spaced grid, endpoints included
std::vector<double> parse_grid(const std::string& text) {
    std::vector<std::string> pieces;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ':')) pieces.push_back(item);
    if (pieces.size() != 3) throw std::invalid_argument("grid must be lo:hi:steps");
    const double lo = std::stod(pieces[0]);
    const double hi = std::stod(pieces[1]);
    const int steps = std::stoi(pieces[2]);
    if (steps < 1 || hi < lo) throw std::invalid_argument("bad grid bounds");
    std::vector<double> grid;
    for (int i = 0; i < steps; ++i)
        grid.push_back(steps == 1 ? lo : lo + (hi - lo) * i / (steps - 1));
    return grid;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::invalid_argument("cannot open output file: " + path);
    return out;
}

std::string timing_path(const std::string& out) {
    const auto pos = out.rfind(".csv");
    if (pos != std::string::npos && pos == out.size() - 4)
        return out.substr(0, pos) + "_timing.csv";
    return out + "_timing.csv";
}

void write_manifest(const std::string& path, const std::string& subcommand,
                    const ordered_json& params, std::uint64_t seed, double seconds) {
    ordered_json manifest;
    manifest["subcommand"] = subcommand;
    manifest["parameters"] = params;
    manifest["seed"] = seed;
    manifest["version"] = kVersion;
    manifest["wall_clock_seconds"] = seconds;
    auto out = open_out(path);
    out << manifest.dump(2) << '\n';
}

// ---------------------------------------------------------------------- sig

struct SigArgs {
    std::string input, output;
    int level = 3;
    bool augment = false;
};

int run_sig(const SigArgs& args) {
    const auto records = read_jsonl_file(args.input);
    std::ostream* out = &std::cout;
    std::ofstream file;
    if (!args.output.empty()) {
        file = open_out(args.output);
        out = &file;
    }
    for (const auto& rec : records) {
        const Path p = rec.to_path();
        const TruncatedTensor sig = args.augment
                                        ? path_signature(time_augment(p), args.level)
                                        : path_signature(p, args.level);
        ordered_json obj;
        obj["id"] = rec.id;
        obj["dim"] = sig.dim();
        obj["level"] = sig.level();
        obj["sig"] = std::vector<double>(sig.flat().begin(), sig.flat().end());
        *out << obj.dump() << '\n';
    }
    return 0;
}

// --------------------------------------------------------------------- dist

struct DistArgs {
    std::string metric, input, input2, output;
    bool augment = false;
};

int run_dist(const DistArgs& args) {
    SemiMetricSpec spec = SemiMetricSpec::parse(args.metric);
    spec.augment_time = args.augment;
    const auto recs_a = read_jsonl_file(args.input);
    std::vector<Path> a;
    for (const auto& r : recs_a) a.push_back(r.to_path());

    CsvTable table;
    table.header.push_back("id");
    const bool cross = !args.input2.empty();
    std::vector<Path> b;
    std::vector<std::string> col_ids;
    if (cross) {
        const auto recs_b = read_jsonl_file(args.input2);
        for (const auto& r : recs_b) {
            b.push_back(r.to_path());
            col_ids.push_back(r.id);
        }
    } else {
        for (const auto& r : recs_a) col_ids.push_back(r.id);
    }
    table.header.insert(table.header.end(), col_ids.begin(), col_ids.end());

    const auto& cols = cross ? b : a;
    std::vector<std::vector<double>> m(a.size(), std::vector<double>(cols.size(), 0.0));
    if (cross) {
        for (std::size_t i = 0; i < a.size(); ++i)
            for (std::size_t j = 0; j < cols.size(); ++j)
                m[i][j] = distance(spec, a[i], cols[j]);
    } else {
        // self-distance matrix: compute the upper triangle, mirror the rest
        for (std::size_t i = 0; i < a.size(); ++i)
            for (std::size_t j = i + 1; j < a.size(); ++j)
                m[i][j] = m[j][i] = distance(spec, a[i], a[j]);
    }
    for (std::size_t i = 0; i < a.size(); ++i) {
        std::vector<std::string> row{recs_a[i].id};
        for (double v : m[i]) row.push_back(csv_number(v));
        table.rows.push_back(std::move(row));
    }
    if (args.output.empty())
        write_csv(std::cout, table);
    else
        write_csv_file(args.output, table);
    return 0;
}

// ---------------------------------------------------------------- sde-bench

struct BenchArgs {
    std::string m_values = "8,16,32,64,128,256,512,1024,2048";
    std::string metrics = "rsig:3:4.0:1.0,sup";
    std::uint64_t seed = 0;
    int drift_power = 5;
    std::string diffusion = "xcos";
    int steps = 500;
    double horizon = 1.0;
    double z0 = 1.0;
    int test_size = 512;
    int cv_folds = 5;
    std::string grid_c, grid_a;
    std::string output;
};

int run_sde_bench(const BenchArgs& args) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto m_values = parse_int_list(args.m_values);
    std::vector<SemiMetricSpec> metrics;
    for (const auto& s : split_list(args.metrics))
        metrics.push_back(SemiMetricSpec::parse(s));

    const SDEConfig cfg = SDEConfig::make("power:" + std::to_string(args.drift_power),
                                          args.diffusion, args.z0, args.horizon,
                                          args.steps);
    ConvergenceOptions opts;
    opts.test_size = args.test_size;
    opts.cv.folds = args.cv_folds;
    if (!args.grid_c.empty()) opts.cv.threshold_grid = parse_real_list(args.grid_c);
    if (!args.grid_a.empty()) opts.cv.decay_grid = parse_real_list(args.grid_a);

    const ConvergenceTable table =
        convergence_experiment(m_values, metrics, cfg, opts, RngSpec{args.seed});

    CsvTable rmse_csv, time_csv;
    rmse_csv.header.push_back("M");
    for (const auto& m : metrics) rmse_csv.header.push_back(m.to_string());
    time_csv.header = rmse_csv.header;
    for (std::size_t row = 0; row < table.m_values.size(); ++row) {
        std::vector<std::string> r{std::to_string(table.m_values[row])};
        std::vector<std::string> t = r;
        for (std::size_t col = 0; col < metrics.size(); ++col) {
            r.push_back(csv_number(table.cells[row][col].rmse));
            t.push_back(csv_number(table.cells[row][col].seconds));
        }
        rmse_csv.rows.push_back(std::move(r));
        time_csv.rows.push_back(std::move(t));
    }
    write_csv_file(args.output, rmse_csv);
    write_csv_file(timing_path(args.output), time_csv);

    ordered_json params;
    params["m_values"] = args.m_values;
    params["metrics"] = args.metrics;
    params["p"] = args.drift_power;
    params["diffusion"] = args.diffusion;
    params["steps"] = args.steps;
    params["horizon"] = args.horizon;
    params["z0"] = args.z0;
    params["test_size"] = args.test_size;
    params["cv_folds"] = args.cv_folds;
    params["grid_C"] = args.grid_c;
    params["grid_a"] = args.grid_a;
    params["out"] = args.output;
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    write_manifest(args.output + ".manifest.json", "sde-bench", params, args.seed,
                   seconds);
    return 0;
}

// ----------------------------------------------------------------- classify

struct ClassifyArgs {
    std::string train, test, metric, output;
    bool augment = false;
    int cv_folds = 5;
    std::string grid_h, grid_c, grid_a;
    std::uint64_t seed = 0;
};

int run_classify(const ClassifyArgs& args) {
    SemiMetricSpec spec = SemiMetricSpec::parse(args.metric);
    spec.augment_time = args.augment;

    const auto train_recs = read_jsonl_file(args.train);
    std::vector<Path> train_paths;
    std::vector<std::string> train_labels;
    for (std::size_t i = 0; i < train_recs.size(); ++i) {
        if (!train_recs[i].label)
            throw std::invalid_argument("training record '" + train_recs[i].id +
                                        "' has no label");
        train_paths.push_back(train_recs[i].to_path());
        train_labels.push_back(*train_recs[i].label);
    }
    const auto test_recs = read_jsonl_file(args.test);
    std::vector<Path> test_paths;
    std::vector<std::string> test_labels;
    for (const auto& r : test_recs) {
        if (!r.label)
            throw std::invalid_argument("test record '" + r.id + "' has no label");
        test_paths.push_back(r.to_path());
        test_labels.push_back(*r.label);
    }

    CVConfig cv;
    cv.folds = args.cv_folds;
    cv.seed = args.seed;
    if (!args.grid_h.empty()) cv.bandwidths = parse_real_list(args.grid_h);
    if (!args.grid_c.empty()) cv.threshold_grid = parse_real_list(args.grid_c);
    if (!args.grid_a.empty()) cv.decay_grid = parse_real_list(args.grid_a);

    const KernelSpec kernel = KernelSpec::gaussian();
    const CVResult cvres =
        cross_validate_classifier(cv, spec, kernel, train_paths, train_labels);
    const NWModel model = fit_classifier(cvres.resolved_metric, kernel, cvres.best.h,
                                         train_paths, train_labels);
    const auto results = model.classify(test_paths);

    std::vector<std::string> predictions;
    for (const auto& r : results) predictions.push_back(r.label);
    const double acc = accuracy(predictions, test_labels);

    std::map<std::string, std::map<std::string, int>> confusion;
    for (std::size_t i = 0; i < predictions.size(); ++i)
        ++confusion[test_labels[i]][predictions[i]];

    ordered_json report;
    report["subcommand"] = "classify";
    report["metric"] = cvres.resolved_metric.to_string();
    report["augment_time"] = args.augment;
    report["n_train"] = train_paths.size();
    report["n_test"] = test_paths.size();
    report["accuracy"] = acc;
    ordered_json hyper;
    hyper["h"] = cvres.best.h;
    if (cvres.best.robust) {
        hyper["C"] = cvres.best.robust->threshold;
        hyper["a"] = cvres.best.robust->decay;
    }
    report["hyperparameters"] = hyper;
    ordered_json conf;
    for (const auto& [truth, row] : confusion) {
        ordered_json r;
        for (const auto& [pred, count] : row) r[pred] = count;
        conf[truth] = r;
    }
    report["confusion"] = conf;
    ordered_json preds;
    for (std::size_t i = 0; i < test_recs.size(); ++i)
        preds[test_recs[i].id] = predictions[i];
    report["predictions"] = preds;

    if (args.output.empty()) {
        std::cout << report.dump(2) << '\n';
    } else {
        auto out = open_out(args.output);
        out << report.dump(2) << '\n';
    }
    return 0;
}

// ---------------------------------------------------------------- smallball

struct SmallballArgs {
    int samples = 256;
    std::string metric = "sig:2";
    std::string h_grid = "0.0:2.0:21";
    std::uint64_t seed = 0;
    int steps = 100;
    double horizon = 1.0;
    std::string center = "fresh";  // fresh | zero
    bool augment = false;
    std::string output;
};

int run_smallball(const SmallballArgs& args) {
    SemiMetricSpec spec = SemiMetricSpec::parse(args.metric);
    spec.augment_time = args.augment;
    const auto grid = parse_grid(args.h_grid);
    if (args.samples < 1) throw std::invalid_argument("need at least one sample");

    const RngSpec rng{args.seed};
    std::vector<Path> samples;
    for (int i = 0; i < args.samples; ++i) {
        Rng r(rng.stream_seed(static_cast<std::uint64_t>(i)));
        samples.push_back(sample_brownian(args.steps, args.horizon, 1, r));
    }
    Path center = [&]() -> Path {
        if (args.center == "zero") {
            std::vector<double> times(static_cast<std::size_t>(args.steps) + 1);
            for (int i = 0; i <= args.steps; ++i)
                times[static_cast<std::size_t>(i)] = args.horizon * i / args.steps;
            return Path(times, std::vector<double>(times.size(), 0.0), 1);
        }
        if (args.center != "fresh")
            throw std::invalid_argument("center must be 'fresh' or 'zero'");
        Rng r(rng.stream_seed(static_cast<std::uint64_t>(args.samples)));
        return sample_brownian(args.steps, args.horizon, 1, r);
    }();

    const auto curve = empirical_small_ball(samples, center, spec, grid);
    CsvTable table;
    table.header = {"h", "fraction"};
    for (const auto& [h, frac] : curve)
        table.rows.push_back({csv_number(h), csv_number(frac)});
    if (args.output.empty())
        write_csv(std::cout, table);
    else
        write_csv_file(args.output, table);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"path-signature metrics and local regression toolkit"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    SigArgs sig_args;
    auto* sig_cmd = app.add_subcommand("sig", "truncated signatures of JSONL series");
    sig_cmd->add_option("--input", sig_args.input, "JSONL input")->required();
    sig_cmd->add_option("--level", sig_args.level, "truncation level")->required();
    sig_cmd->add_flag("--augment-time", sig_args.augment, "prepend time channel");
    sig_cmd->add_option("--out", sig_args.output, "output path (default stdout)");

    DistArgs dist_args;
    auto* dist_cmd = app.add_subcommand("dist", "pairwise distance matrix");
    dist_cmd->add_option("--metric", dist_args.metric, "metric spec string")->required();
    dist_cmd->add_option("--input", dist_args.input, "JSONL input")->required();
    dist_cmd->add_option("--input2", dist_args.input2, "second JSONL input (cross matrix)");
    dist_cmd->add_flag("--augment-time", dist_args.augment, "augment before sig metrics");
    dist_cmd->add_option("--out", dist_args.output, "output path (default stdout)");

    BenchArgs bench_args;
    auto* bench_cmd = app.add_subcommand("sde-bench", "SDE regression benchmark table");
    bench_cmd->add_option("--m-values", bench_args.m_values, "training sizes, comma list");
    bench_cmd->add_option("--metrics", bench_args.metrics, "metric specs, comma list");
    bench_cmd->add_option("--seed", bench_args.seed, "master seed");
    bench_cmd->add_option("--p", bench_args.drift_power, "drift power, b(x) = -x^p");
    bench_cmd->add_option("--diffusion", bench_args.diffusion, "diffusion name");
    bench_cmd->add_option("--steps", bench_args.steps, "Euler steps L");
    bench_cmd->add_option("--horizon", bench_args.horizon, "time horizon T");
    bench_cmd->add_option("--z0", bench_args.z0, "initial value");
    bench_cmd->add_option("--test-size", bench_args.test_size, "held-out sample count");
    bench_cmd->add_option("--cv-folds", bench_args.cv_folds, "cross-validation folds");
    bench_cmd->add_option("--grid-c", bench_args.grid_c, "robust C grid, comma list");
    bench_cmd->add_option("--grid-a", bench_args.grid_a, "robust a grid, comma list");
    bench_cmd->add_option("--out", bench_args.output, "RMSE CSV path")->required();

    ClassifyArgs cls_args;
    auto* cls_cmd = app.add_subcommand("classify", "NW classification report");
    cls_cmd->add_option("--train", cls_args.train, "labeled training JSONL")->required();
    cls_cmd->add_option("--test", cls_args.test, "labeled test JSONL")->required();
    cls_cmd->add_option("--metric", cls_args.metric, "metric spec string")->required();
    cls_cmd->add_flag("--augment-time", cls_args.augment, "augment before sig metrics");
    cls_cmd->add_option("--cv-folds", cls_args.cv_folds, "cross-validation folds");
    cls_cmd->add_option("--grid-h", cls_args.grid_h, "absolute bandwidth grid, comma list");
    cls_cmd->add_option("--grid-c", cls_args.grid_c, "robust C grid, comma list");
    cls_cmd->add_option("--grid-a", cls_args.grid_a, "robust a grid, comma list");
    cls_cmd->add_option("--seed", cls_args.seed, "fold-assignment seed");
    cls_cmd->add_option("--out", cls_args.output, "report path (default stdout)");

    SmallballArgs ball_args;
    auto* ball_cmd = app.add_subcommand("smallball", "empirical concentration curve");
    ball_cmd->add_option("--samples", ball_args.samples, "number of Brownian samples");
    ball_cmd->add_option("--metric", ball_args.metric, "metric spec string");
    ball_cmd->add_option("--h-grid", ball_args.h_grid, "radius grid lo:hi:steps");
    ball_cmd->add_option("--seed", ball_args.seed, "master seed");
    ball_cmd->add_option("--steps", ball_args.steps, "Brownian grid steps");
    ball_cmd->add_option("--horizon", ball_args.horizon, "time horizon T");
    ball_cmd->add_option("--center", ball_args.center, "'fresh' draw or 'zero' path");
    ball_cmd->add_flag("--augment-time", ball_args.augment, "augment before sig metrics");
    ball_cmd->add_option("--out", ball_args.output, "output path (default stdout)");

    int nu_d = 2, nu_n = 1;
    auto* nu_cmd = app.add_subcommand("nu", "free nilpotent Lie algebra dimension");
    nu_cmd->add_option("--d", nu_d, "alphabet size")->required();
    nu_cmd->add_option("--n", nu_n, "truncation level")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*sig_cmd) return run_sig(sig_args);
        if (*dist_cmd) return run_dist(dist_args);
        if (*bench_cmd) return run_sde_bench(bench_args);
        if (*cls_cmd) return run_classify(cls_args);
        if (*ball_cmd) return run_smallball(ball_args);
        if (*nu_cmd) {
            std::cout << free_lie_dim(nu_d, nu_n) << '\n';
            return 0;
        }
    } catch (const RecordError& e) {
        std::cerr << "input error: " << e.what() << '\n';
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "input error: " << e.what() << '\n';
        return 1;
    } catch (const std::overflow_error& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
