// SPDX-License-Identifier: Apache-2.0
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "smpde/harness.hpp"

int main(int argc, char** argv) {
    CLI::App app{"smpde: stochastic heat and Burgers experiments driven by stochastic measures"};
    std::string config;
    std::uint64_t seed = 0;
    std::size_t threads = 0;
    std::string out;
    bool print_config = false;
    app.add_option("--config", config, "experiment config (YAML)")->required()->check(CLI::ExistingFile);
    auto* seed_opt = app.add_option("--seed", seed, "master seed, overrides the config");
    app.add_option("--threads", threads, "worker threads (default: SMPDE_THREADS, then all cores)")
        ->check(CLI::PositiveNumber);
    auto* out_opt = app.add_option("--out", out, "output directory, overrides output.directory");
    app.add_flag("--print-config", print_config, "print the fully resolved config and exit");
    CLI11_PARSE(app, argc, argv);

    if (print_config) {
        try {
            std::cout << smpde::serialize_config(smpde::load_config(config));
            return 0;
        } catch (const std::exception& e) {
            std::cerr << "error: " << e.what() << "\n";
            return 2;
        }
    }

    smpde::RunOptions opts;
    if (*seed_opt) opts.seed = seed;
    opts.threads = threads;
    if (*out_opt) opts.out = out;
    const auto res = smpde::run(config, opts);
    if (res.exit_code != 0) {
        std::cerr << "error: " << res.message << "\n";
        return res.exit_code;
    }
    if (!res.message.empty()) std::cerr << res.message;
    std::cout << "wrote " << res.artifacts.size() + 1 << " artifacts to " << res.out_dir.string() << "\n";
    return 0;
}
