// SPDX-License-Identifier: Apache-2.0
#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include <unistd.h>

#include "json.hpp"
#include "smpde/harness.hpp"
#include "smpde/io.hpp"
#include "smpde/seed.hpp"

using namespace smpde;
namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

fs::path fresh_dir(const std::string& name) {
    const auto dir = fs::temp_directory_path() / ("smpde_test_harness_" + std::to_string(::getpid())) / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

fs::path write_text(const fs::path& path, const std::string& text) {
    std::ofstream os(path);
    os << text;
    return path;
}

std::string slurp(const fs::path& p) {
    std::ifstream is(p);
    std::stringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

std::set<std::string> tree(const fs::path& root) {
    std::set<std::string> out;
    for (const auto& e : fs::recursive_directory_iterator(root)) out.insert(fs::relative(e.path(), root).string());
    return out;
}

const char* kHeat = R"(command: solve
seed: 1
grid: {x_min: -10.0, x_max: 10.0, nx: 256, t_max: 1.0, nt: 32}
coefficients:
  preset: heat
output:
  directory: out
  slice_times: [0.0, 0.5, 1.0]
)";

const char* kRich = R"(command: average
seed: 99
grid: {x_min: -6.0, x_max: 6.0, nx: 128, t_max: 0.5, nt: 16}
measure:
  kind: weighted_wiener
  seed: 1234
  weight: {kind: power_decay, amplitude: 0.5, rate: 2.0}
coefficients:
  preset: custom
  u0: {kind: profile, profile: {kind: table, x0: -1.0, dx: 0.5, values: [0.0, 1.0, 0.3, 0.0]}}
  f: {kind: sine, a: {kind: gaussian, amplitude: 0.2, width: 2.0}, k: 0.5}
  g: {b: {kind: constant, amplitude: 0.1}, k1: 0.25, c2: 0.5}
  sigma:
    family: separable
    time_factor: {kind: harmonic, offset: 1.0, amplitude: 0.5, period: 0.25, phase: 0.1}
    profile: {kind: gaussian, amplitude: 1.0, width: 1.0}
    bounds: {c_sigma: 1.5, l_sigma: 1.5, beta: 0.75}
  declared: {K: 1.0, L: 1.0}
solver: {N: 12.5, adaptive: true, lambda_weight: 80.0, tol: 1.0e-9, max_iter: 40, start: zero}
averaging: {eps_list: [0.5, 0.1], period: 0.5}
regularity: {delta_frac: 0.2, seeds: 3, lambda_tilde: 0.1}
besov_check: {alpha: 0.6, C: 2.0, t: 0.5, x: 1.0, j_min: -2, j_max: 1}
kernel_table: {t_list: [0.5]}
output: {directory: results, formats: [json], slice_times: [0.25]}
)";

}  // namespace

TEST_CASE("config parsing and round trip") {
    const auto c = parse_config(kRich, "rich.yaml");
    CHECK(c.command == Command::average);
    CHECK(c.seed == 99);
    CHECK(c.grid.nx == 128);
    CHECK(c.measure.seed.value() == 1234);
    CHECK(c.measure_seed() == 1234);
    CHECK(c.measure.params.weight.kind == WeightSpec::Kind::power_decay);
    CHECK(c.coefficients.set.u0.shape.table.size() == 4);
    CHECK(c.coefficients.set.f.kind == DriftSpec::Kind::sine);
    CHECK(c.coefficients.set.g.k1 == 0.25);
    CHECK(c.coefficients.set.sigma.time_factor().period == 0.25);
    CHECK(c.coefficients.set.declared->K == 1.0);
    CHECK(c.solver.start == "zero");
    CHECK(c.solver_config().start == SolverConfig::Start::zero);
    CHECK(c.averaging.eps_list == std::vector<double>{0.5, 0.1});
    CHECK(c.besov_check.j_min == -2);
    CHECK(c.output.formats == std::vector<std::string>{"json"});
    CHECK(c.lines.at("besov_check.alpha") == 22);

    for (const char* text : {kHeat, kRich}) {
        const auto once = serialize_config(parse_config(text));
        const auto twice = serialize_config(parse_config(once));
        CHECK(once == twice);
    }
    // a table sigma survives the trip too
    const std::string table = std::string(kHeat) + R"(measure: {kind: fbm, hurst: 0.3}
)";
    auto t = parse_config(table);
    t.coefficients.set.sigma = SigmaSpec::table(0.5, -1.0, 0.5, 4, {0, 1, 1, 0, 0, 0.5, 0.5, 0}, {1.0, 2.0, 0.75});
    const auto s1 = serialize_config(t);
    CHECK(serialize_config(parse_config(s1)) == s1);
    CHECK(parse_config(s1).coefficients.set.sigma.table_values() == t.coefficients.set.sigma.table_values());

    // defaults: master seed feeds stream 0
    CHECK(parse_config(kHeat).measure_seed() == seed_split(1, 0));
}

TEST_CASE("config errors carry line numbers") {
    auto message = [](const std::string& text) {
        try {
            parse_config(text, "bad.yaml").validate();
        } catch (const ConfigError& e) {
            return std::string(e.what());
        }
        return std::string("no error");
    };
    const std::string besov = R"(command: besov-check
grid: {x_min: -8.0, x_max: 8.0, nx: 1024, t_max: 1.0, nt: 16}
besov_check:
  alpha: 0.4
)";
    const auto m = message(besov);
    CHECK(m.find("bad.yaml:4:") == 0);
    CHECK(m.find("(1/2, 1)") != std::string::npos);

    CHECK(message("command: solve\ngrid: {nx: 1000}\n").find("bad.yaml:2:") == 0);
    CHECK(message("command: solve\nsolver:\n  tol: fast\n").find("bad.yaml:3: solver.tol: expected a number") == 0);
    CHECK(message("command: solve\nsolver:\n  tolerance: 1\n").find("unknown key 'solver.tolerance'") != std::string::npos);
    CHECK(message("command: integrate\n").find("unknown command") != std::string::npos);
    CHECK(message("seed: 3\n").find("missing key 'command'") != std::string::npos);
    CHECK(message("command: [solve, average]\n").find("exactly one command") != std::string::npos);
    CHECK(message("command: solve\nseed: -4\n").find("bad.yaml:2:") == 0);
    CHECK(message("command: solve\ngrid: {nx: 8\n").find("bad.yaml:") == 0);
    CHECK(message("command: average\ncoefficients: {preset: burgers}\naveraging: {eps_list: [0.1, 0.5]}\n")
              .find("strictly decreasing") != std::string::npos);
    CHECK(message("command: solve\nmeasure: {sample_file: nowhere.bin}\n").find("does not exist") != std::string::npos);
    CHECK(message("command: solve\ncoefficients:\n  sigma: {family: separable}\n").find("bad.yaml:3:") == 0);
    CHECK(message("command: besov-check\nbesov_check: {alpha: 0.7}\n").find("not a union of grid cells") !=
          std::string::npos);
    CHECK(message("command: solve\noutput: {slice_times: [2.0]}\n").find("outside [0, grid.t_max]") != std::string::npos);
    CHECK(message(kHeat) == "no error");
}

TEST_CASE("run: heat preset smoke, determinism and confinement") {
    const auto root = fresh_dir("smoke");
    const auto cfg = write_text(root / "heat.yaml", kHeat);
    const auto before = tree(root);

    const auto r1 = run(cfg, RunOptions{std::nullopt, 1, root / "a"});
    REQUIRE(r1.exit_code == 0);
    for (const char* f : {"manifest.json", "report.json", "solution_slices.csv", "solution.bin", "config.yaml"})
        CHECK(fs::exists(root / "a" / f));
    CHECK(slurp(root / "a" / "solution_slices.csv").rfind("t,x,value\n", 0) == 0);
    const auto report = json::parse(slurp(root / "a" / "report.json"));
    CHECK(report["iterations"].get<int>() <= 2);
    CHECK(report["cutoff_active"] == false);

    // every file written lies inside the output directory
    auto after = tree(root);
    for (const auto& p : before) after.erase(p);
    for (const auto& p : after) CHECK(p.rfind("a", 0) == 0);

    const auto r2 = run(cfg, RunOptions{std::nullopt, 2, root / "b"});
    REQUIRE(r2.exit_code == 0);
    CHECK(slurp(root / "a" / "manifest.json") == slurp(root / "b" / "manifest.json"));
    const auto manifest = json::parse(slurp(root / "a" / "manifest.json"));
    for (const auto& a : manifest["artifacts"]) {
        if (a.contains("volatile")) continue;
        CHECK(a["sha256"].get<std::string>() == sha256_file(root / "a" / a["path"].get<std::string>()));
    }

    // the seed override changes the sample and is recorded
    const auto r3 = run(cfg, RunOptions{77, 1, root / "c"});
    REQUIRE(r3.exit_code == 0);
    CHECK(parse_config(slurp(root / "c" / "config.yaml")).seed == 77);
    CHECK(slurp(root / "a" / "measure.bin") != slurp(root / "c" / "measure.bin"));
}

TEST_CASE("run: error exits") {
    const auto root = fresh_dir("errors");
    const auto bad = write_text(root / "bad.yaml", "command: besov-check\nbesov_check: {alpha: 0.4}\n");
    const auto r = run(bad, RunOptions{std::nullopt, 1, root / "out"});
    CHECK(r.exit_code == 2);
    CHECK(r.message.find("bad.yaml:2:") != std::string::npos);
    CHECK_FALSE(fs::exists(root / "out"));  // nothing computed, nothing written

    // a solve that cannot converge in one iteration reports the solver error verbatim
    const auto slow = write_text(root / "slow.yaml", R"(command: solve
grid: {x_min: -10.0, x_max: 10.0, nx: 128, t_max: 1.0, nt: 16}
coefficients: {preset: burgers}
solver: {max_iter: 1}
)");
    const auto s = run(slow, RunOptions{std::nullopt, 1, root / "slow"});
    CHECK(s.exit_code == 3);
    CHECK(s.message.rfind("picard_solve: no convergence after 1 iterations", 0) == 0);

    CHECK(run(root / "missing.yaml").exit_code == 2);
}

TEST_CASE("run: sm-sample feeds a solve through sample_file") {
    const auto root = fresh_dir("sample");
    write_text(root / "sample.yaml", R"(command: sm-sample
seed: 5
grid: {x_min: -4.0, x_max: 4.0, nx: 256, t_max: 1.0, nt: 16}
measure: {kind: wiener}
)");
    REQUIRE(run(root / "sample.yaml", RunOptions{std::nullopt, 1, root / "s"}).exit_code == 0);
    const auto masses = slurp(root / "s" / "unit_masses.csv");
    CHECK(masses.rfind("j,mass\n", 0) == 0);
    CHECK(std::count(masses.begin(), masses.end(), '\n') == 1 + 8);
    CHECK(slurp(root / "s" / "increments.csv").rfind("x_left,x_right,increment\n", 0) == 0);

    write_text(root / "solve.yaml", R"(command: solve
grid: {x_min: -4.0, x_max: 4.0, nx: 256, t_max: 1.0, nt: 16}
measure: {sample_file: s/measure.bin}
coefficients: {preset: burgers, sigma: {family: constant, value: 0.5}}
)");
    const auto r = run(root / "solve.yaml", RunOptions{std::nullopt, 1, root / "u"});
    REQUIRE(r.exit_code == 0);
    const auto rep = json::parse(slurp(root / "u" / "report.json"));
    CHECK(rep["measure_seed"].get<std::uint64_t>() == seed_split(5, 0));
    CHECK_FALSE(fs::exists(root / "u" / "measure.bin"));
    const auto u = load_space_time(root / "u" / "solution.bin");
    CHECK(u.grid().nx == 256);
    CHECK(u.rows() == 17);
}

TEST_CASE("run: other commands emit their tables") {
    const auto root = fresh_dir("commands");
    write_text(root / "k.yaml", R"(command: kernel-table
grid: {x_min: -2.0, x_max: 2.0, nx: 8, t_max: 1.0, nt: 4}
kernel_table: {t_list: [0.5, 1.0]}
)");
    REQUIRE(run(root / "k.yaml", RunOptions{std::nullopt, 1, root / "k"}).exit_code == 0);
    const auto k = slurp(root / "k" / "kernel_table.csv");
    CHECK(k.rfind("t,x,p,dp_dy\n", 0) == 0);
    CHECK(std::count(k.begin(), k.end(), '\n') == 1 + 16);

    write_text(root / "b.yaml", R"(command: besov-check
seed: 3
grid: {x_min: -8.0, x_max: 8.0, nx: 512, t_max: 1.0, nt: 16}
coefficients: {preset: custom, sigma: {family: constant, value: 1.0}}
besov_check: {alpha: 0.75, C: 1.0, t: 1.0, x: 0.0, j_min: -2, j_max: 1}
)");
    REQUIRE(run(root / "b.yaml", RunOptions{std::nullopt, 1, root / "b"}).exit_code == 0);
    const auto b = slurp(root / "b" / "besov_check.csv");
    CHECK(b.rfind("j,alpha,lhs,rhs,slack\n", 0) == 0);
    CHECK(std::count(b.begin(), b.end(), '\n') == 1 + 4);

    write_text(root / "r.yaml", R"(command: regularity
seed: 4
grid: {x_min: -8.0, x_max: 8.0, nx: 256, t_max: 1.0, nt: 32}
coefficients: {preset: custom, sigma: {family: constant, value: 1.0}}
regularity: {seeds: 3}
)");
    REQUIRE(run(root / "r.yaml", RunOptions{std::nullopt, 2, root / "r"}).exit_code == 0);
    const auto rep = json::parse(slurp(root / "r" / "regularity.json"));
    for (const char* key : {"gamma1_est", "gamma2_est", "sup_bound", "l2_trace"}) CHECK(rep.contains(key));
    CHECK(rep["l2_trace"].size() == 33);
    CHECK(rep["runs"].size() == 3);
    CHECK(slurp(root / "r" / "theta_slices.csv").rfind("t,x,value\n", 0) == 0);

    write_text(root / "a.yaml", R"(command: average
seed: 8
grid: {x_min: -8.0, x_max: 8.0, nx: 128, t_max: 1.0, nt: 32}
measure: {kind: weighted_wiener}
coefficients:
  preset: burgers
  sigma:
    family: separable
    time_factor: {kind: harmonic, offset: 1.0, amplitude: 1.0, period: 1.0}
    profile: {kind: gaussian, amplitude: 1.0, width: 1.0}
    bounds: {c_sigma: 2.0, l_sigma: 2.0, beta: 0.75}
averaging: {eps_list: [1.0, 0.25]}
)");
    REQUIRE(run(root / "a.yaml", RunOptions{std::nullopt, 2, root / "a"}).exit_code == 0);
    const auto a = slurp(root / "a" / "convergence.csv");
    CHECK(a.rfind("epsilon,sup_t_l2_distance,xi_sup,fitted_rate\n", 0) == 0);
    const auto aj = json::parse(slurp(root / "a" / "convergence.json"));
    CHECK(aj["rows"].size() == 2);
    CHECK(aj["scenario"]["period"].get<double>() == 1.0);
}
