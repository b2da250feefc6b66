// SPDX-License-Identifier: Apache-2.0
#include <cmath>
#include <filesystem>
#include <sstream>

#include "smpde/averaging.hpp"
#include "smpde/harness.hpp"

namespace smpde {

namespace {

class Checker {
public:
    explicit Checker(const ExperimentConfig& c) : c_(c) {}

    [[noreturn]] void fail(std::string key, const std::string& msg) const {
        std::ostringstream os;
        os << c_.source;
        for (;;) {
            if (auto it = c_.lines.find(key); it != c_.lines.end()) {
                os << ":" << it->second;
                break;
            }
            const auto dot = key.rfind('.');
            if (dot == std::string::npos) break;
            key.resize(dot);
        }
        os << ": " << msg;
        throw ConfigError(os.str());
    }

    void require(bool ok, const std::string& key, const std::string& msg) const {
        if (!ok) fail(key, msg);
    }

    template <typename F>
    void module(const std::string& key, F&& fn) const {
        try {
            fn();
        } catch (const ConfigError&) {
            throw;
        } catch (const Error& e) {
            fail(key, key + ": " + e.what());
        }
    }

private:
    const ExperimentConfig& c_;
};

std::string num(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

}  // namespace

void ExperimentConfig::validate() const {
    const Checker ck(*this);
    const auto& g = grid;
    ck.module("grid", [&] { g.validate(); });

    // measure
    if (command != Command::kernel_table) {
        const auto& m = measure;
        if (m.kind == MeasureKind::fbm)
            ck.require(m.params.hurst > 0.0 && m.params.hurst < 1.0, "measure.hurst",
                       "measure.hurst = " + num(m.params.hurst) + " must lie in (0, 1)");
        if (m.kind == MeasureKind::alpha_stable)
            ck.require(m.params.alpha_stable > 0.0 && m.params.alpha_stable <= 2.0, "measure.alpha_stable",
                       "measure.alpha_stable = " + num(m.params.alpha_stable) + " must lie in (0, 2]");
        if (m.kind == MeasureKind::weighted_wiener) ck.module("measure.weight", [&] { m.params.weight.validate(); });
        if (m.kind == MeasureKind::explicit_increments)
            ck.require(!m.sample_file.empty(), "measure.kind", "measure.kind explicit_increments needs measure.sample_file");
        if (!m.sample_file.empty()) {
            const auto path = base_dir / m.sample_file;
            ck.require(std::filesystem::is_regular_file(path), "measure.sample_file",
                       "measure.sample_file: " + path.string() + " does not exist");
            ck.module("measure.sample_file", [&] {
                const auto s = load_measure(path);
                if (!(s.grid == g)) throw DomainError("sample grid does not match the grid block");
            });
        }
    }

    // coefficients and solver
    if (command == Command::solve || command == Command::average || command == Command::regularity ||
        command == Command::besov_check) {
        const auto& cs = coefficients.set;
        ck.module("coefficients.sigma", [&] { cs.sigma.spot_check(std::max(std::abs(g.x_min), std::abs(g.x_max))); });
    }
    if (command == Command::solve || command == Command::average) {
        ck.module("coefficients", [&] { coefficients.set.validate(); });
        ck.require(solver.start == "semigroup_plus_theta" || solver.start == "zero", "solver.start",
                   "solver.start must be semigroup_plus_theta or zero");
        ck.require(solver.N >= 0.0, "solver.N", "solver.N must be > 0 (or 0 / auto to select it)");
        ck.module("solver", [&] { solver_config().validate(); });
    }

    switch (command) {
        case Command::average: {
            const auto& e = averaging.eps_list;
            ck.require(!e.empty(), "averaging.eps_list", "averaging.eps_list is empty");
            for (std::size_t k = 0; k < e.size(); ++k) {
                ck.require(e[k] > 0.0, "averaging.eps_list", "averaging.eps_list entries must be > 0");
                ck.require(k == 0 || e[k] < e[k - 1], "averaging.eps_list",
                           "averaging.eps_list must be strictly decreasing");
            }
            ck.require(averaging.period >= 0.0, "averaging.period", "averaging.period must be >= 0 (0 keeps the declared period)");
            const auto& s = coefficients.set.sigma;
            if (averaging.period > 0.0)
                ck.require(s.family() == SigmaSpec::Family::separable_periodic &&
                               s.time_factor().kind == TimeFactor::Kind::harmonic,
                           "averaging.period", "averaging.period applies to a separable sigma with a harmonic time factor");
            ck.module("averaging", [&] {
                AveragingScenario sc;
                sc.coeffs = coefficients.set;
                sc.eps_list = e;
                sc.grid = g;
                sc.solver = solver_config();
                sc.validate();
            });
            break;
        }
        case Command::regularity:
            ck.require(regularity.delta_frac > 0.0 && regularity.delta_frac < 1.0, "regularity.delta_frac",
                       "regularity.delta_frac = " + num(regularity.delta_frac) + " must lie in (0, 1)");
            ck.require(regularity.seeds >= 1, "regularity.seeds", "regularity.seeds must be >= 1");
            ck.require(regularity.lambda_tilde > 0.0 && regularity.lambda_tilde < 0.25, "regularity.lambda_tilde",
                       "regularity.lambda_tilde = " + num(regularity.lambda_tilde) + " must lie in (0, 1/4)");
            ck.require(g.nx >= 32, "grid.nx", "regularity needs grid.nx >= 32");
            ck.require(static_cast<double>(g.nt) * (1.0 - regularity.delta_frac) >= 16.0, "grid.nt",
                       "regularity needs at least 16 time levels in [delta, t_max]");
            break;
        case Command::besov_check: {
            const auto& b = besov_check;
            ck.require(b.alpha > 0.5 && b.alpha < 1.0, "besov_check.alpha",
                       "besov_check.alpha = " + num(b.alpha) + " must lie in the open range (1/2, 1)");
            ck.require(b.C > 0.0, "besov_check.C", "besov_check.C must be > 0");
            ck.require(b.t > 0.0 && b.t <= g.t_max, "besov_check.t", "besov_check.t must lie in (0, grid.t_max]");
            ck.require(b.x >= g.x_min && b.x <= g.x_max, "besov_check.x", "besov_check.x must lie inside the grid box");
            ck.require(b.j_min <= b.j_max, "besov_check.j_min", "besov_check.j_min must be <= besov_check.j_max");
            for (long j = b.j_min; j <= b.j_max; ++j)
                ck.require(g.edge_index(static_cast<double>(j)) >= 0 && g.edge_index(static_cast<double>(j + 1)) >= 0,
                           "besov_check.j_min",
                           "besov_check: [" + std::to_string(j) + ", " + std::to_string(j + 1) +
                               "] is not a union of grid cells");
            break;
        }
        case Command::kernel_table:
            ck.require(!kernel_table.t_list.empty(), "kernel_table.t_list", "kernel_table.t_list is empty");
            for (double t : kernel_table.t_list)
                ck.require(t > 0.0 && std::isfinite(t), "kernel_table.t_list", "kernel_table.t_list entries must be > 0");
            break;
        default: break;
    }

    ck.require(!output.directory.empty(), "output.directory", "output.directory is empty");
    for (const auto& f : output.formats)
        ck.require(f == "csv" || f == "json" || f == "binary", "output.formats",
                   "output.formats: unknown format '" + f + "' (csv | json | binary)");
    for (double t : output.slice_times)
        ck.require(t >= 0.0 && t <= g.t_max, "output.slice_times",
                   "output.slice_times entry " + num(t) + " lies outside [0, grid.t_max]");
}

}  // namespace smpde
