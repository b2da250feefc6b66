// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <openssl/evp.h>

#include "json.hpp"
#include "smpde/averaging.hpp"
#include "smpde/besov.hpp"
#include "smpde/harness.hpp"
#include "smpde/heat.hpp"
#include "smpde/io.hpp"
#include "smpde/parallel.hpp"
#include "smpde/seed.hpp"
#include "smpde/stochastic_convolution.hpp"

namespace smpde {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

std::string sha256_file(const fs::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw Error("sha256: cannot open " + path.string());
    EVP_MD_CTX* ctx = EVP_MD_CTX_new();
    if (!ctx || EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr) != 1) {
        EVP_MD_CTX_free(ctx);
        throw Error("sha256: digest initialisation failed");
    }
    std::array<char, 1 << 16> buf{};
    while (is) {
        is.read(buf.data(), buf.size());
        if (is.gcount() > 0) EVP_DigestUpdate(ctx, buf.data(), static_cast<std::size_t>(is.gcount()));
    }
    std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
    unsigned int len = 0;
    EVP_DigestFinal_ex(ctx, md.data(), &len);
    EVP_MD_CTX_free(ctx);
    std::string hex;
    char b[3];
    for (unsigned i = 0; i < len; ++i) {
        std::snprintf(b, sizeof b, "%02x", md[i]);
        hex += b;
    }
    return hex;
}

namespace {

/// Hands out paths inside the output directory and records what was written.
class Artifacts {
public:
    explicit Artifacts(fs::path dir) : dir_(std::move(dir)) {}

    fs::path path(const std::string& name, bool is_volatile = false) {
        const fs::path rel(name);
        if (rel.is_absolute() || rel.has_parent_path() || name == "." || name == "..")
            throw Error("artifact name '" + name + "' must be a plain file name");
        entries_.push_back({name, is_volatile});
        return dir_ / rel;
    }

    void write_json(const std::string& name, const json& j, bool is_volatile = false) {
        std::ofstream os(path(name, is_volatile));
        os << j.dump(2) << "\n";
        if (!os) throw Error("cannot write " + name);
    }

    std::vector<ArtifactRecord> finish(const json& header) {
        std::vector<ArtifactRecord> out;
        for (const auto& [name, vol] : entries_) {
            ArtifactRecord r;
            r.path = name;
            r.is_volatile = vol;
            const auto p = dir_ / name;
            if (!fs::exists(p)) continue;
            r.bytes = vol ? 0 : fs::file_size(p);
            if (!vol) r.sha256 = sha256_file(p);
            out.push_back(r);
        }
        std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.path < b.path; });
        json m = header;
        json arts = json::array();
        for (const auto& r : out) {
            json a;
            a["path"] = r.path;
            if (r.is_volatile) {
                a["volatile"] = true;
                a["sha256"] = nullptr;
            } else {
                a["bytes"] = r.bytes;
                a["sha256"] = r.sha256;
            }
            arts.push_back(a);
        }
        m["artifacts"] = arts;
        std::ofstream os(dir_ / "manifest.json");
        os << m.dump(2) << "\n";
        if (!os) throw Error("cannot write manifest.json");
        return out;
    }

private:
    fs::path dir_;
    std::vector<std::pair<std::string, bool>> entries_;
};

json grid_json(const GridSpec& g) {
    return json{{"x_min", g.x_min}, {"x_max", g.x_max}, {"nx", g.nx}, {"t_max", g.t_max}, {"nt", g.nt}};
}

json fit_json(const RateFit& f) {
    return json{{"exponent", f.exponent}, {"std_error", f.std_error}, {"valid", f.valid}};
}

std::vector<std::size_t> slice_levels(const ExperimentConfig& c) {
    std::vector<std::size_t> levels;
    for (double t : c.output.slice_times) {
        const auto n = static_cast<std::size_t>(std::llround(t / c.grid.dt()));
        if (std::find(levels.begin(), levels.end(), n) == levels.end()) levels.push_back(std::min(n, c.grid.nt));
    }
    return levels;
}

struct Context {
    const ExperimentConfig& cfg;
    Artifacts& out;
    std::size_t threads;
    json header;  // copied into every JSON report
    std::vector<std::string> warnings;
};

/// The configured sample: loaded from file or drawn from the measure seed.
MeasureSample obtain_sample(Context& ctx, bool save) {
    const auto& c = ctx.cfg;
    if (!c.measure.sample_file.empty()) return load_measure(c.base_dir / c.measure.sample_file);
    auto s = sample_measure(c.grid, c.measure.kind, c.measure.params, c.measure_seed());
    if (save && c.wants("binary")) save_measure(s, ctx.out.path("measure.bin"));
    return s;
}

json solve_report_json(const SolveReport& r) {
    return json{{"iterations", r.iterations},       {"successive_distances", r.successive_distances},
                {"final_residual", r.final_residual}, {"sup_t_l2_norm", r.sup_t_l2_norm},
                {"cutoff_active", r.cutoff_active},   {"N_used", r.N_used},
                {"retries", r.retries}};
}

json cmd_solve(Context& ctx) {
    const auto& c = ctx.cfg;
    const auto sample = obtain_sample(ctx, true);
    const auto sc = c.solver_config();
    const MildOperator op(c.coefficients.set, theta_field(sample, c.coefficients.set.sigma));
    const auto res = picard_solve(op, sc);
    if (c.wants("binary")) save_space_time(res.u, ctx.out.path("solution.bin"));
    if (c.wants("csv")) save_slices_csv(res.u, slice_levels(c), ctx.out.path("solution_slices.csv"));
    json rep = ctx.header;
    rep["measure_seed"] = sample.seed;
    rep["lambda_weight"] = sc.effective_lambda();
    rep["tol"] = sc.tol;
    rep.update(solve_report_json(res.report));
    rep["uncut_residual"] = uncut_residual(op, res.u, sc.effective_lambda());
    if (c.wants("json")) ctx.out.write_json("report.json", rep);
    return json{{"solve_seconds", res.report.wall_time}};
}

json cmd_average(Context& ctx) {
    const auto& c = ctx.cfg;
    AveragingScenario sc;
    sc.coeffs = c.coefficients.set;
    if (c.averaging.period > 0.0) {
        auto phi = sc.coeffs.sigma.time_factor();
        phi.period = c.averaging.period;
        sc.coeffs.sigma = SigmaSpec::separable(phi, sc.coeffs.sigma.profile(), sc.coeffs.sigma.bounds());
    }
    sc.eps_list = c.averaging.eps_list;
    sc.grid = c.grid;
    sc.measure = c.measure.kind;
    sc.measure_params = c.measure.params;
    sc.seed = c.measure_seed();
    sc.solver = c.solver_config();
    sc.threads = ctx.threads;
    const auto sample = obtain_sample(ctx, true);
    const auto table = averaging_experiment(sc, sample);

    if (c.wants("csv")) {
        std::vector<std::vector<std::string>> rows;
        for (const auto& r : table.rows)
            rows.push_back({format_real(r.epsilon), format_real(r.sup_t_l2_distance), format_real(r.xi_sup),
                            format_real(table.xi_rate.exponent)});
        write_csv(ctx.out.path("convergence.csv"), {"epsilon", "sup_t_l2_distance", "xi_sup", "fitted_rate"}, rows);
    }
    if (c.wants("json")) {
        json j = ctx.header;
        j["measure_seed"] = sample.seed;
        const auto& s = sc.coeffs.sigma;
        j["scenario"] = json{{"sigma_family", to_string(s.family())},
                             {"time_factor", to_string(s.time_factor().kind)},
                             {"period", s.time_factor().declared_period()},
                             {"sigma_bar_mean", s.time_independent() ? s.time_factor().offset : period_mean(s.time_factor())},
                             {"eps_list", sc.eps_list},
                             {"measure", to_string(sample.kind)},
                             {"lambda_weight", sc.solver.effective_lambda()},
                             {"tol", sc.solver.tol}};
        json rows = json::array();
        for (const auto& r : table.rows)
            rows.push_back(json{{"epsilon", r.epsilon},
                                {"sup_t_l2_distance", r.sup_t_l2_distance},
                                {"xi_sup", r.xi_sup},
                                {"iterations", r.iterations}});
        j["rows"] = rows;
        j["bar_iterations"] = table.bar_iterations;
        j["distance_rate"] = fit_json(table.distance_rate);
        j["xi_rate"] = fit_json(table.xi_rate);
        ctx.out.write_json("convergence.json", j);
    }
    return json::object();
}

json cmd_regularity(Context& ctx) {
    const auto& c = ctx.cfg;
    const auto base = obtain_sample(ctx, true);
    const auto& sigma = c.coefficients.set.sigma;
    struct Run {
        std::uint64_t seed = 0;
        RegularityReport rep;
    };
    SpaceTimeField first;
    const auto runs = parallel_map(c.regularity.seeds, ctx.threads, [&](std::size_t k) {
        Run r;
        MeasureSample s = base;
        if (k > 0) s = sample_measure(c.grid, c.measure.kind, c.measure.params, seed_split(base.seed, k));
        r.seed = s.seed;
        auto th = theta_field(s, sigma);
        r.rep = regularity_report(th, c.regularity.delta_frac);
        if (k == 0) first = std::move(th);
        return r;
    });
    const auto& r0 = runs.front().rep;
    if (c.wants("csv")) save_slices_csv(first, slice_levels(c), ctx.out.path("theta_slices.csv"));
    if (c.wants("json")) {
        json j = ctx.header;
        j["measure_seed"] = runs.front().seed;
        j["gamma1_est"] = r0.gamma1_est;
        j["gamma1_se"] = r0.gamma1_se;
        j["gamma2_est"] = r0.gamma2_est;
        j["gamma2_se"] = r0.gamma2_se;
        j["sup_bound"] = r0.sup_bound;
        j["l2_trace"] = r0.l2_trace;
        j["degenerate"] = r0.degenerate;
        j["delta"] = c.regularity.delta_frac * c.grid.t_max;
        try {
            const auto g = envelope_field(base, 0.75, 2.0, c.regularity.lambda_tilde, c.grid.t_max);
            double ratio = 0.0;
            for (std::size_t n = 0; n <= c.grid.nt; ++n) {
                const auto row = first.row(n);
                for (std::size_t i = 0; i < c.grid.nx; ++i)
                    if (g.values()[i] > 0.0) ratio = std::max(ratio, std::abs(row[i]) / g.values()[i]);
            }
            j["envelope_ratio"] = ratio;
        } catch (const DomainError&) {
            j["envelope_ratio"] = nullptr;  // grid not aligned with unit intervals
        }
        j["lambda_tilde"] = c.regularity.lambda_tilde;
        if (runs.size() > 1) {
            json arr = json::array();
            std::size_t pass = 0;
            for (const auto& r : runs) {
                arr.push_back(json{{"seed", r.seed},
                                   {"gamma1_est", r.rep.gamma1_est},
                                   {"gamma2_est", r.rep.gamma2_est},
                                   {"sup_bound", r.rep.sup_bound}});
                if (r.rep.gamma1_est >= 0.4 && r.rep.gamma2_est >= 0.2) ++pass;
            }
            j["runs"] = arr;
            j["fraction_gamma1_ge_0.4_and_gamma2_ge_0.2"] = static_cast<double>(pass) / static_cast<double>(runs.size());
        }
        ctx.out.write_json("regularity.json", j);
    }
    return json::object();
}

json cmd_besov_check(Context& ctx) {
    const auto& c = ctx.cfg;
    const auto& b = c.besov_check;
    const auto sample = obtain_sample(ctx, true);
    const auto& g = c.grid;
    const auto& sigma = c.coefficients.set.sigma;
    std::vector<std::vector<std::string>> rows;
    json arr = json::array();
    for (long j = b.j_min; j <= b.j_max; ++j) {
        const auto i0 = static_cast<std::size_t>(g.edge_index(static_cast<double>(j)));
        const auto i1 = static_cast<std::size_t>(g.edge_index(static_cast<double>(j + 1)));
        std::vector<double> q(i1 - i0);
        for (std::size_t i = i0; i < i1; ++i) q[i - i0] = q_cell_average(b.t, b.x, g.x(i), g.dx(), sigma);
        const auto chk = verify_dyadic_bound(q, sample, j, b.alpha, b.C);
        rows.push_back({std::to_string(j), format_real(b.alpha), format_real(chk.lhs), format_real(chk.rhs),
                        format_real(chk.slack)});
        arr.push_back(json{{"j", j},
                           {"lhs", chk.lhs},
                           {"rhs", chk.rhs},
                           {"slack", chk.slack},
                           {"c_required", chk.c_required},
                           {"holds", chk.holds}});
    }
    if (c.wants("csv")) write_csv(ctx.out.path("besov_check.csv"), {"j", "alpha", "lhs", "rhs", "slack"}, rows);
    if (c.wants("json")) {
        json j = ctx.header;
        j["measure_seed"] = sample.seed;
        j["alpha"] = b.alpha;
        j["C"] = b.C;
        j["t"] = b.t;
        j["x"] = b.x;
        j["intervals"] = arr;
        ctx.out.write_json("besov_check.json", j);
    }
    return json::object();
}

json cmd_sm_sample(Context& ctx) {
    const auto& c = ctx.cfg;
    const auto s = obtain_sample(ctx, true);
    const auto& g = c.grid;
    if (c.wants("csv")) {
        std::vector<std::vector<std::string>> rows;
        rows.reserve(g.nx);
        for (std::size_t i = 0; i < g.nx; ++i)
            rows.push_back({format_real(g.x_min + static_cast<double>(i) * g.dx()),
                            format_real(g.x_min + static_cast<double>(i + 1) * g.dx()), format_real(s.increments[i])});
        write_csv(ctx.out.path("increments.csv"), {"x_left", "x_right", "increment"}, rows);
        std::vector<long> js;
        try {
            js = unit_intervals(g);
        } catch (const DomainError&) {
        }
        if (js.empty()) {
            ctx.warnings.push_back("grid cells do not tile unit intervals; unit_masses.csv skipped");
        } else {
            std::vector<std::vector<std::string>> m;
            for (long j : js)
                m.push_back({std::to_string(j), format_real(measure_of(s, static_cast<double>(j), static_cast<double>(j + 1)))});
            write_csv(ctx.out.path("unit_masses.csv"), {"j", "mass"}, m);
        }
    }
    return json::object();
}

json cmd_kernel_table(Context& ctx) {
    const auto& c = ctx.cfg;
    const auto& g = c.grid;
    if (c.wants("csv")) {
        std::vector<std::vector<std::string>> rows;
        for (double t : c.kernel_table.t_list)
            for (std::size_t i = 0; i < g.nx; ++i) {
                const double x = g.x(i);
                // d/dy p(t, x - y) at y = 0
                rows.push_back({format_real(t), format_real(x), format_real(kernel(t, x)), format_real(-kernel_dx(t, x))});
            }
        write_csv(ctx.out.path("kernel_table.csv"), {"t", "x", "p", "dp_dy"}, rows);
    }
    return json::object();
}

}  // namespace

RunResult run(const fs::path& config_path, const RunOptions& options) {
    try {
        return run(load_config(config_path), options);
    } catch (const ConfigError& e) {
        return RunResult{2, e.what(), {}, {}};
    } catch (const std::exception& e) {
        return RunResult{1, e.what(), {}, {}};
    }
}

RunResult run(ExperimentConfig cfg, const RunOptions& options) {
    RunResult result;
    try {
        if (options.seed) cfg.seed = *options.seed;
        cfg.validate();
        const std::size_t threads = resolve_threads(options.threads);
        result.out_dir = options.out ? *options.out : fs::path(cfg.output.directory);
        fs::create_directories(result.out_dir);

        Artifacts out(result.out_dir);
        json header{{"command", to_string(cfg.command)}, {"seed", cfg.seed}, {"grid", grid_json(cfg.grid)}};
        Context ctx{cfg, out, threads, header, {}};
        if (cfg.command != Command::sm_sample && cfg.command != Command::kernel_table &&
            cfg.grid.truncation_mass() > 1e-8) {
            std::ostringstream os;
            os << "heat-kernel mass outside the box is " << cfg.grid.truncation_mass() << " > 1e-8";
            ctx.warnings.push_back(os.str());
        }
        {
            std::ofstream os(out.path("config.yaml"));
            os << serialize_config(cfg);
        }
        const auto start = std::chrono::steady_clock::now();
        json timing;
        switch (cfg.command) {
            case Command::solve: timing = cmd_solve(ctx); break;
            case Command::average: timing = cmd_average(ctx); break;
            case Command::regularity: timing = cmd_regularity(ctx); break;
            case Command::besov_check: timing = cmd_besov_check(ctx); break;
            case Command::sm_sample: timing = cmd_sm_sample(ctx); break;
            case Command::kernel_table: timing = cmd_kernel_table(ctx); break;
        }
        timing["wall_seconds"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        timing["threads"] = threads;
        out.write_json("timing.json", timing, true);
        header["warnings"] = ctx.warnings;
        result.artifacts = out.finish(header);
        for (const auto& w : ctx.warnings) result.message += "warning: " + w + "\n";
        result.exit_code = 0;
    } catch (const ConfigError& e) {
        result.exit_code = 2;
        result.message = e.what();
    } catch (const Error& e) {
        result.exit_code = 3;
        result.message = e.what();
    } catch (const std::exception& e) {
        result.exit_code = 1;
        result.message = e.what();
    }
    return result;
}

}  // namespace smpde
