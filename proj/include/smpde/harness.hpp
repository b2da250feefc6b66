// SPDX-License-Identifier: Apache-2.0
// Experiment configuration (YAML), command dispatch and artifact manifests.
#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "smpde/error.hpp"
#include "smpde/grid.hpp"
#include "smpde/measure.hpp"
#include "smpde/solver.hpp"

namespace smpde {

/// Invalid configuration; the message starts with "<source>:<line>: ".
class ConfigError : public Error {
public:
    using Error::Error;
};

enum class Command { solve, average, regularity, besov_check, sm_sample, kernel_table };
std::string to_string(Command c);
Command command_from_string(const std::string& name);

struct ExperimentConfig {
    Command command = Command::solve;
    std::uint64_t seed = 0;
    GridSpec grid{};

    struct Measure {
        MeasureKind kind = MeasureKind::wiener;
        MeasureParams params{};
        std::optional<std::uint64_t> seed;  // default: seed_split(master, 0)
        std::string sample_file;             // relative to the config file
    } measure;

    struct Coefficients {
        std::string preset = "heat";  // heat | burgers | custom
        CoefficientSet set = CoefficientSet::heat();
    } coefficients;

    struct Solver {
        double N = 0.0;  // 0 selects N
        bool adaptive = false;
        double lambda_weight = 0.0;  // 0: 50 / t_max
        double tol = 1e-10;
        std::size_t max_iter = 100;
        std::size_t max_retries = 8;
        double n_margin = 4.0;
        std::string start = "semigroup_plus_theta";  // or zero
    } solver;

    struct Averaging {
        std::vector<double> eps_list{1.0, 0.25, 0.0625, 0.015625};
        double period = 0.0;  // > 0 overrides the period of the time factor
    } averaging;

    struct Regularity {
        double delta_frac = 0.1;
        std::size_t seeds = 1;
        double lambda_tilde = 0.15;
    } regularity;

    struct BesovCheck {
        double alpha = 0.75;
        double C = 1.0;
        double t = 1.0;  // q(t, x, .) is tested
        double x = 0.0;
        long j_min = -4;
        long j_max = 3;
    } besov_check;

    struct KernelTable {
        std::vector<double> t_list{0.01, 0.1, 1.0};
    } kernel_table;

    struct Output {
        std::string directory = "out";
        std::vector<std::string> formats{"csv", "json", "binary"};
        std::vector<double> slice_times{0.0, 0.5, 1.0};
    } output;

    /// Directory that relative input paths are resolved against.
    std::filesystem::path base_dir = ".";
    /// Source name and key-path -> line (1-based) for diagnostics.
    std::string source = "<config>";
    std::map<std::string, int> lines;

    bool wants(const std::string& format) const;
    SolverConfig solver_config() const;
    std::uint64_t measure_seed() const;
    /// Every module precondition that can be checked before computing; throws ConfigError.
    void validate() const;
};

ExperimentConfig parse_config(const std::string& text, const std::string& source = "<config>");
ExperimentConfig load_config(const std::filesystem::path& path);
/// Full YAML with every key explicit; parse_config(serialize_config(c)) reproduces c.
std::string serialize_config(const ExperimentConfig& config);

struct ArtifactRecord {
    std::string path;  // relative to the output directory
    std::uintmax_t bytes = 0;
    std::string sha256;  // empty for volatile artifacts
    bool is_volatile = false;
};

std::string sha256_file(const std::filesystem::path& path);

struct RunOptions {
    std::optional<std::uint64_t> seed;
    std::size_t threads = 0;  // 0: SMPDE_THREADS, then hardware
    std::optional<std::filesystem::path> out;
};

struct RunResult {
    int exit_code = 0;  // 0 ok, 2 invalid config, 3 numerical error, 1 other
    std::string message;
    std::filesystem::path out_dir;
    std::vector<ArtifactRecord> artifacts;
};

/// Never throws; failures are reported through exit_code and message.
RunResult run(const std::filesystem::path& config_path, const RunOptions& options = {});
RunResult run(ExperimentConfig config, const RunOptions& options = {});

}  // namespace smpde
