// End-to-end checks of the command-line binary. argv[1] is the CLI path,
// argv[2] a scratch directory.
#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include <json.hpp>

#include "sigkit/metrics.hpp"
#include "sigkit/sde.hpp"
#include "sigkit/series_io.hpp"

namespace {

std::string g_cli;
std::filesystem::path g_scratch;

struct RunResult {
    int exit_code = -1;
    std::string out;
};

RunResult run_cli(const std::string& args) {
    const std::string cmd = g_cli + " " + args + " 2>" + (g_scratch / "stderr.txt").string();
    RunResult r;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    char buf[4096];
    std::size_t got;
    while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
    const int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string read_file(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in.good());
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string scratch_file(const std::string& name) { return (g_scratch / name).string(); }

void write_wave_jsonl(const std::string& path, int per_class, std::uint64_t seed) {
    const auto bench = sigkit::make_wave_benchmark(per_class, 30, 0.1, sigkit::RngSpec{seed});
    std::vector<sigkit::SeriesRecord> recs;
    for (std::size_t i = 0; i < bench.inputs.size(); ++i) {
        auto rec = sigkit::SeriesRecord::from_path("w" + std::to_string(i), bench.inputs[i]);
        rec.label = bench.labels[i];
        recs.push_back(std::move(rec));
    }
    std::ofstream out(path, std::ios::binary);
    sigkit::write_jsonl(out, recs);
}

// split CSV text into cells
std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::stringstream ss(text);
    std::string line;
    while (std::getline(ss, line)) {
        std::vector<std::string> cells;
        std::stringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        rows.push_back(std::move(cells));
    }
    return rows;
}

} // namespace

TEST_CASE("nu subcommand prints dimension counts") {
    CHECK(run_cli("nu --d 2 --n 5").out == "14\n");
    CHECK(run_cli("nu --d 1 --n 7").out == "1\n");
    CHECK(run_cli("nu --d 3 --n 2").out == "6\n");
    const auto overflow = run_cli("nu --d 10 --n 40");
    CHECK(overflow.exit_code == 2);
}

TEST_CASE("sig subcommand emits level-major coefficients") {
    const auto in = scratch_file("const.jsonl");
    {
        std::ofstream f(in, std::ios::binary);
        f << R"({"id":"c","times":[0,0.5,1],"values":[[2],[2],[2]]})" << "\n";
    }
    const auto r = run_cli("sig --input " + in + " --level 3");
    CHECK(r.exit_code == 0);
    const auto obj = nlohmann::json::parse(r.out);
    const auto sig = obj.at("sig").get<std::vector<double>>();
    REQUIRE(sig.size() == 4);  // sum d^k for d=1
    CHECK(sig[0] == 1.0);
    for (std::size_t i = 1; i < sig.size(); ++i) CHECK(sig[i] == 0.0);

    // with augmentation the length becomes sum over d=2 levels
    const auto r2 = run_cli("sig --input " + in + " --level 2 --augment-time");
    const auto obj2 = nlohmann::json::parse(r2.out);
    CHECK(obj2.at("sig").get<std::vector<double>>().size() == 7);
}

TEST_CASE("sig subcommand reproduces the two-segment corner path") {
    const auto in = scratch_file("corner.jsonl");
    {
        std::ofstream f(in, std::ios::binary);
        f << R"({"id":"L","times":[0,1,2],"values":[[0,0],[1,0],[1,1]]})" << "\n";
    }
    const auto r = run_cli("sig --input " + in + " --level 2");
    REQUIRE(r.exit_code == 0);
    const auto sig = nlohmann::json::parse(r.out).at("sig").get<std::vector<double>>();
    REQUIRE(sig.size() == 7);
    const std::vector<double> expected{1.0, 1.0, 1.0, 0.5, 1.0, 0.0, 0.5};
    for (std::size_t i = 0; i < expected.size(); ++i)
        CHECK(sig[i] == doctest::Approx(expected[i]));
}

TEST_CASE("dist subcommand: diagonal, symmetry, and library agreement") {
    const auto in = scratch_file("three.jsonl");
    {
        std::ofstream f(in, std::ios::binary);
        f << R"({"id":"a","times":[0,1],"values":[[0],[1]]})" << "\n";
        f << R"({"id":"b","times":[0,1],"values":[[0],[2]]})" << "\n";
        f << R"({"id":"c","times":[0,0.5,1],"values":[[0],[1],[0]]})" << "\n";
    }
    const auto r = run_cli("dist --metric sig:2 --input " + in);
    CHECK(r.exit_code == 0);
    const auto rows = parse_csv(r.out);
    REQUIRE(rows.size() == 4);
    CHECK(rows[0][0] == "id");
    for (int i = 1; i <= 3; ++i) CHECK(rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] == "0");
    CHECK(rows[1][2] == rows[2][1]);  // mirrored exactly
    CHECK(rows[1][3] == rows[3][1]);

    const sigkit::Path a({0, 1}, {0, 1}, 1);
    const sigkit::Path b({0, 1}, {0, 2}, 1);
    const double expected = sigkit::trunc_sig_distance(a, b, 2);
    CHECK(std::stod(rows[1][2]) == doctest::Approx(expected).epsilon(1e-5));
}

TEST_CASE("dist cross matrix between two files, written to a file") {
    const auto in1 = scratch_file("cross_a.jsonl");
    const auto in2 = scratch_file("cross_b.jsonl");
    {
        std::ofstream f(in1, std::ios::binary);
        f << R"({"id":"a1","times":[0,1],"values":[[0],[1]]})" << "\n";
        f << R"({"id":"a2","times":[0,1],"values":[[0],[3]]})" << "\n";
        f << R"({"id":"a3","times":[0,1],"values":[[1],[0]]})" << "\n";
    }
    {
        std::ofstream f(in2, std::ios::binary);
        f << R"({"id":"b1","times":[0,1],"values":[[0],[2]]})" << "\n";
        f << R"({"id":"b2","times":[0,0.5,1],"values":[[0],[2],[1]]})" << "\n";
    }
    const auto out = scratch_file("cross.csv");
    const auto r = run_cli("dist --metric sup --input " + in1 + " --input2 " + in2 +
                           " --out " + out);
    CHECK(r.exit_code == 0);
    const auto rows = parse_csv(read_file(out));
    REQUIRE(rows.size() == 4);  // header + 3 rows
    CHECK(rows[0] == std::vector<std::string>{"id", "b1", "b2"});
    REQUIRE(rows[1].size() == 3);
    // sup(a1, b1): lines 0->1 vs 0->2 differ most at t=1
    CHECK(std::stod(rows[1][1]) == doctest::Approx(1.0));
}

TEST_CASE("malformed input names the offending line and exits 1") {
    const auto in = scratch_file("broken.jsonl");
    {
        std::ofstream f(in, std::ios::binary);
        f << R"({"id":"ok","times":[0,1],"values":[[0],[1]]})" << "\n";
        f << R"({"id":"bad","times":[0,0],"values":[[0],[1]]})" << "\n";
    }
    const auto r = run_cli("sig --input " + in + " --level 2");
    CHECK(r.exit_code == 1);
    const auto err = read_file(g_scratch / "stderr.txt");
    CHECK(err.find("line 2") != std::string::npos);

    const auto missing = run_cli("sig --input " + scratch_file("nope.jsonl") + " --level 2");
    CHECK(missing.exit_code == 1);
}

TEST_CASE("smallball curves are monotone and nested across truncation levels") {
    const std::string base = "smallball --samples 64 --seed 5 --steps 40 --augment-time";
    const auto r2 = run_cli(base + " --metric sig:2 --h-grid 0:4:17");
    const auto r4 = run_cli(base + " --metric sig:4 --h-grid 0:4:17");
    CHECK(r2.exit_code == 0);
    const auto c2 = parse_csv(r2.out);
    const auto c4 = parse_csv(r4.out);
    REQUIRE(c2.size() == 18);
    double prev = 0.0;
    for (std::size_t i = 1; i < c2.size(); ++i) {
        const double f2 = std::stod(c2[i][1]);
        const double f4 = std::stod(c4[i][1]);
        CHECK(f2 >= prev);
        CHECK(f2 >= f4);  // larger truncation, larger distance, smaller ball
        CHECK(f2 >= 0.0);
        CHECK(f2 <= 1.0);
        prev = f2;
    }
    const auto huge = run_cli(base + " --metric sig:2 --h-grid 1e9:1e9:1");
    CHECK(parse_csv(huge.out).back()[1] == "1");
}

TEST_CASE("classify reaches perfect accuracy when test equals train") {
    const auto train = scratch_file("waves_train.jsonl");
    write_wave_jsonl(train, 10, 91);
    const auto r = run_cli("classify --train " + train + " --test " + train +
                           " --metric sig:3 --augment-time --cv-folds 2 --grid-h 1e-6 --seed 1");
    CHECK(r.exit_code == 0);
    const auto report = nlohmann::json::parse(r.out);
    CHECK(report.at("accuracy").get<double>() == doctest::Approx(1.0));
    CHECK(report.at("hyperparameters").at("h").get<double>() == doctest::Approx(1e-6));
}

TEST_CASE("classify with single-class training predicts that class") {
    const auto train = scratch_file("one_class.jsonl");
    {
        std::ofstream f(train, std::ios::binary);
        f << R"({"id":"p","label":"only","times":[0,1],"values":[[0],[1]]})" << "\n";
        f << R"({"id":"q","label":"only","times":[0,1],"values":[[0],[2]]})" << "\n";
    }
    const auto test = scratch_file("one_class_test.jsonl");
    {
        std::ofstream f(test, std::ios::binary);
        f << R"({"id":"t","label":"only","times":[0,1],"values":[[5],[9]]})" << "\n";
    }
    const auto r = run_cli("classify --train " + train + " --test " + test +
                           " --metric sup --cv-folds 2 --grid-h 1.0 --seed 3");
    CHECK(r.exit_code == 0);
    const auto report = nlohmann::json::parse(r.out);
    CHECK(report.at("predictions").at("t").get<std::string>() == "only");

    // a training record without a label is an input error
    const auto unlabeled = scratch_file("unlabeled.jsonl");
    {
        std::ofstream f(unlabeled, std::ios::binary);
        f << R"({"id":"p","times":[0,1],"values":[[0],[1]]})" << "\n";
    }
    const auto bad = run_cli("classify --train " + unlabeled + " --test " + test +
                             " --metric sup --grid-h 1.0");
    CHECK(bad.exit_code == 1);
}

TEST_CASE("classify reruns are byte-identical") {
    const auto train = scratch_file("det_train.jsonl");
    const auto test = scratch_file("det_test.jsonl");
    write_wave_jsonl(train, 8, 17);
    write_wave_jsonl(test, 8, 18);
    const std::string cmd = "classify --train " + train + " --test " + test +
                            " --metric rsig:3:4.0:1.0 --augment-time --cv-folds 3 "
                            "--grid-c 1,4 --grid-a 1 --seed 7 --out ";
    const auto out1 = scratch_file("report1.json");
    const auto out2 = scratch_file("report2.json");
    CHECK(run_cli(cmd + out1).exit_code == 0);
    CHECK(run_cli(cmd + out2).exit_code == 0);
    CHECK(read_file(out1) == read_file(out2));
}

TEST_CASE("sde-bench writes table, timing, and manifest; reruns identical") {
    const auto out1 = scratch_file("bench1.csv");
    const auto out2 = scratch_file("bench2.csv");
    const std::string cmd =
        "sde-bench --m-values 8,16 --metrics sup,sig:2 --seed 11 --p 5 --steps 40 "
        "--test-size 12 --cv-folds 2 --out ";
    CHECK(run_cli(cmd + out1).exit_code == 0);
    CHECK(run_cli(cmd + out2).exit_code == 0);

    const auto table = parse_csv(read_file(out1));
    REQUIRE(table.size() == 3);
    CHECK(table[0] == std::vector<std::string>{"M", "sup", "sig:2"});
    CHECK(table[1][0] == "8");
    CHECK(table[2][0] == "16");

    CHECK(read_file(out1) == read_file(out2));  // byte-identical reruns

    const auto manifest = nlohmann::json::parse(read_file(out1 + ".manifest.json"));
    CHECK(manifest.at("subcommand") == "sde-bench");
    CHECK(manifest.at("seed") == 11);
    const auto timing = parse_csv(read_file(scratch_file("bench1_timing.csv")));
    CHECK(timing.size() == 3);
    CHECK(timing[0] == table[0]);
}

TEST_CASE("unparseable metric spec exits 1") {
    const auto in = scratch_file("three.jsonl");
    const auto r = run_cli("dist --metric wob:3 --input " + in);
    CHECK(r.exit_code == 1);
}

TEST_CASE("csv numbers carry 6 significant digits") {
    CHECK(sigkit::csv_number(0.123456789) == "0.123457");
    CHECK(sigkit::csv_number(1234567.0) == "1.23457e+06");
    CHECK(sigkit::csv_number(0.0) == "0");
    CHECK(sigkit::csv_number(2.5) == "2.5");
}

TEST_CASE("series records survive a JSONL round trip") {
    sigkit::SeriesRecord rec;
    rec.id = "r1";
    rec.label = "up";
    rec.target = 0.75;
    rec.times = {0.0, 0.5, 1.0};
    rec.values = {{0.0, 1.0}, {0.25, 0.5}, {1.0, -1.0}};
    std::stringstream buf;
    sigkit::write_jsonl(buf, {rec});
    const auto back = sigkit::read_jsonl(buf, "buffer");
    REQUIRE(back.size() == 1);
    CHECK(back[0].id == rec.id);
    CHECK(back[0].label == rec.label);
    CHECK(back[0].target == rec.target);
    CHECK(back[0].times == rec.times);
    CHECK(back[0].values == rec.values);
    const auto p = back[0].to_path();
    CHECK(p.dim() == 2);
    CHECK(p.samples() == 3);
}

int main(int argc, char** argv) {
    if (argc < 3) {
        std::fprintf(stderr, "usage: test_cli <cli-binary> <scratch-dir>\n");
        return 1;
    }
    g_cli = argv[1];
    g_scratch = argv[2];
    std::filesystem::create_directories(g_scratch);
    doctest::Context context;
    context.applyCommandLine(argc - 2, argv + 2);
    return context.run();
}
