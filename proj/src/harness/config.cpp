// SPDX-License-Identifier: Apache-2.0
#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include <yaml-cpp/yaml.h>

#include "smpde/harness.hpp"
#include "smpde/seed.hpp"

namespace smpde {

std::string to_string(Command c) {
    switch (c) {
        case Command::solve: return "solve";
        case Command::average: return "average";
        case Command::regularity: return "regularity";
        case Command::besov_check: return "besov-check";
        case Command::sm_sample: return "sm-sample";
        case Command::kernel_table: return "kernel-table";
    }
    return "unknown";
}

Command command_from_string(const std::string& name) {
    for (auto c : {Command::solve, Command::average, Command::regularity, Command::besov_check, Command::sm_sample,
                   Command::kernel_table})
        if (to_string(c) == name) return c;
    throw DomainError("unknown command '" + name +
                      "' (solve | average | regularity | besov-check | sm-sample | kernel-table)");
}

namespace {

std::string sigma_family_name(SigmaSpec::Family f) {
    switch (f) {
        case SigmaSpec::Family::constant: return "constant";
        case SigmaSpec::Family::separable_periodic: return "separable";
        case SigmaSpec::Family::custom_table: return "table";
    }
    return "unknown";
}

class Reader {
public:
    explicit Reader(ExperimentConfig& cfg) : cfg_(cfg) {}

    [[noreturn]] void fail(const YAML::Node& n, const std::string& msg) const {
        std::ostringstream os;
        os << cfg_.source << ":" << n.Mark().line + 1 << ": " << msg;
        throw ConfigError(os.str());
    }

    void note(const YAML::Node& n, const std::string& path) { cfg_.lines[path] = n.Mark().line + 1; }

    void require_map(const YAML::Node& n, const std::string& path) const {
        if (!n.IsMap()) fail(n, path + ": expected a mapping");
    }

    void allow_keys(const YAML::Node& n, const std::string& path, std::initializer_list<const char*> keys) const {
        require_map(n, path);
        const std::set<std::string> allowed(keys.begin(), keys.end());
        for (const auto& kv : n) {
            const auto key = kv.first.as<std::string>();
            if (!allowed.count(key)) {
                std::string list;
                for (const auto& k : allowed) list += (list.empty() ? "" : ", ") + k;
                fail(kv.first, "unknown key '" + join(path, key) + "' (allowed: " + list + ")");
            }
        }
    }

    static std::string join(const std::string& a, const std::string& b) { return a.empty() ? b : a + "." + b; }

    template <typename T>
    T as(const YAML::Node& n, const std::string& path, const char* what) {
        note(n, path);
        if (!n.IsScalar()) fail(n, path + ": expected " + what);
        try {
            return n.as<T>();
        } catch (const YAML::Exception&) {
            fail(n, path + ": expected " + what + ", got '" + n.Scalar() + "'");
        }
    }

    void real(const YAML::Node& m, const char* key, const std::string& prefix, double& out) {
        if (const YAML::Node n = m[key]) out = as<double>(n, join(prefix, key), "a number");
    }
    void text(const YAML::Node& m, const char* key, const std::string& prefix, std::string& out) {
        if (const YAML::Node n = m[key]) out = as<std::string>(n, join(prefix, key), "a string");
    }
    void flag(const YAML::Node& m, const char* key, const std::string& prefix, bool& out) {
        if (const YAML::Node n = m[key]) out = as<bool>(n, join(prefix, key), "true or false");
    }
    void integer(const YAML::Node& m, const char* key, const std::string& prefix, long& out) {
        if (const YAML::Node n = m[key]) out = static_cast<long>(as<long long>(n, join(prefix, key), "an integer"));
    }
    void count(const YAML::Node& m, const char* key, const std::string& prefix, std::size_t& out) {
        if (const YAML::Node n = m[key]) {
            const auto v = as<long long>(n, join(prefix, key), "a non-negative integer");
            if (v < 0) fail(n, join(prefix, key) + ": expected a non-negative integer");
            out = static_cast<std::size_t>(v);
        }
    }
    void u64(const YAML::Node& m, const char* key, const std::string& prefix, std::uint64_t& out) {
        if (const YAML::Node n = m[key]) {
            if (n.IsScalar() && !n.Scalar().empty() && n.Scalar()[0] == '-')
                fail(n, join(prefix, key) + ": expected an unsigned 64-bit integer");
            out = as<std::uint64_t>(n, join(prefix, key), "an unsigned 64-bit integer");
        }
    }
    void reals(const YAML::Node& m, const char* key, const std::string& prefix, std::vector<double>& out) {
        const YAML::Node n = m[key];
        if (!n) return;
        const auto path = join(prefix, key);
        note(n, path);
        if (!n.IsSequence()) fail(n, path + ": expected a list of numbers");
        out.clear();
        for (const auto& e : n) out.push_back(as<double>(e, path, "a number"));
        note(n, path);
    }
    void strings(const YAML::Node& m, const char* key, const std::string& prefix, std::vector<std::string>& out) {
        const YAML::Node n = m[key];
        if (!n) return;
        const auto path = join(prefix, key);
        note(n, path);
        if (!n.IsSequence()) fail(n, path + ": expected a list of strings");
        out.clear();
        for (const auto& e : n) out.push_back(as<std::string>(e, path, "a string"));
        note(n, path);
    }

    template <typename F>
    auto named(const YAML::Node& n, const std::string& path, F&& from_string) {
        const auto name = as<std::string>(n, path, "a name");
        try {
            return from_string(name);
        } catch (const Error& e) {
            fail(n, path + ": " + e.what());
        }
    }

    Profile profile(const YAML::Node& n, const std::string& path) {
        allow_keys(n, path, {"kind", "amplitude", "width", "x0", "dx", "values"});
        note(n, path);
        Profile p;
        if (const YAML::Node k = n["kind"])
            p.kind = named(k, join(path, "kind"), [](const std::string& s) { return profile_kind_from_string(s); });
        real(n, "amplitude", path, p.amplitude);
        real(n, "width", path, p.width);
        real(n, "x0", path, p.table_x0);
        real(n, "dx", path, p.table_dx);
        reals(n, "values", path, p.table);
        return p;
    }

    InitialSpec initial(const YAML::Node& n, const std::string& path) {
        allow_keys(n, path, {"kind", "t0", "l2_norm", "width", "center", "profile"});
        note(n, path);
        InitialSpec u;
        if (const YAML::Node k = n["kind"])
            u.kind = named(k, join(path, "kind"), [](const std::string& s) { return initial_kind_from_string(s); });
        real(n, "t0", path, u.t0);
        real(n, "l2_norm", path, u.l2_norm);
        real(n, "width", path, u.width);
        real(n, "center", path, u.center);
        if (const YAML::Node p = n["profile"]) u.shape = profile(p, join(path, "profile"));
        return u;
    }

    DriftSpec drift(const YAML::Node& n, const std::string& path) {
        allow_keys(n, path, {"kind", "a", "k"});
        note(n, path);
        DriftSpec f;
        if (const YAML::Node k = n["kind"])
            f.kind = named(k, join(path, "kind"), [](const std::string& s) { return drift_kind_from_string(s); });
        if (const YAML::Node a = n["a"]) f.a = profile(a, join(path, "a"));
        real(n, "k", path, f.k);
        return f;
    }

    FluxSpec flux(const YAML::Node& n, const std::string& path) {
        allow_keys(n, path, {"b", "k1", "c2"});
        note(n, path);
        FluxSpec g;
        if (const YAML::Node b = n["b"]) g.b = profile(b, join(path, "b"));
        real(n, "k1", path, g.k1);
        real(n, "c2", path, g.c2);
        return g;
    }

    SigmaSpec::Bounds bounds(const YAML::Node& n, const std::string& path) {
        allow_keys(n, path, {"c_sigma", "l_sigma", "beta"});
        note(n, path);
        SigmaSpec::Bounds b;
        real(n, "c_sigma", path, b.c_sigma);
        real(n, "l_sigma", path, b.l_sigma);
        real(n, "beta", path, b.beta);
        return b;
    }

    TimeFactor time_factor(const YAML::Node& n, const std::string& path) {
        allow_keys(n, path, {"kind", "offset", "amplitude", "period", "phase", "slope"});
        note(n, path);
        TimeFactor phi;
        if (const YAML::Node k = n["kind"]) {
            phi.kind = named(k, join(path, "kind"), [](const std::string& s) { return time_factor_kind_from_string(s); });
            if (phi.kind == TimeFactor::Kind::custom)
                fail(k, join(path, "kind") + ": custom time factors cannot be given in a config file");
        }
        real(n, "offset", path, phi.offset);
        real(n, "amplitude", path, phi.amplitude);
        real(n, "period", path, phi.period);
        real(n, "phase", path, phi.phase);
        real(n, "slope", path, phi.slope);
        return phi;
    }

    SigmaSpec sigma(const YAML::Node& n, const std::string& path) {
        allow_keys(n, path, {"family", "value", "time_factor", "profile", "dt_table", "x0", "dx", "ncells", "values",
                             "bounds"});
        note(n, path);
        std::string family = "constant";
        text(n, "family", path, family);
        const YAML::Node bn = n["bounds"];
        try {
            if (family == "constant") {
                double v = 0.0;
                real(n, "value", path, v);
                return bn ? SigmaSpec::constant(v, bounds(bn, join(path, "bounds"))) : SigmaSpec::constant(v);
            }
            if (!bn) fail(n, path + ": family '" + family + "' needs a bounds block (c_sigma, l_sigma, beta)");
            const auto b = bounds(bn, join(path, "bounds"));
            if (family == "separable") {
                TimeFactor phi;
                Profile c = Profile::constant(1.0);
                if (const YAML::Node t = n["time_factor"]) phi = time_factor(t, join(path, "time_factor"));
                if (const YAML::Node p = n["profile"]) c = profile(p, join(path, "profile"));
                return SigmaSpec::separable(phi, c, b);
            }
            if (family == "table") {
                double dt = 1.0, x0 = 0.0, dx = 1.0;
                std::size_t cells = 0;
                std::vector<double> values;
                real(n, "dt_table", path, dt);
                real(n, "x0", path, x0);
                real(n, "dx", path, dx);
                count(n, "ncells", path, cells);
                reals(n, "values", path, values);
                return SigmaSpec::table(dt, x0, dx, cells, std::move(values), b);
            }
        } catch (const ConfigError&) {
            throw;
        } catch (const Error& e) {
            fail(n, path + ": " + e.what());
        }
        fail(n["family"], join(path, "family") + ": unknown family '" + family + "' (constant | separable | table)");
    }

    void grid(const YAML::Node& n) {
        allow_keys(n, "grid", {"x_min", "x_max", "nx", "t_max", "nt"});
        note(n, "grid");
        auto& g = cfg_.grid;
        real(n, "x_min", "grid", g.x_min);
        real(n, "x_max", "grid", g.x_max);
        count(n, "nx", "grid", g.nx);
        real(n, "t_max", "grid", g.t_max);
        count(n, "nt", "grid", g.nt);
    }

    void measure(const YAML::Node& n) {
        allow_keys(n, "measure", {"kind", "seed", "sample_file", "hurst", "alpha_stable", "weight"});
        note(n, "measure");
        auto& m = cfg_.measure;
        if (const YAML::Node k = n["kind"])
            m.kind = named(k, "measure.kind", [](const std::string& s) { return measure_kind_from_string(s); });
        if (n["seed"]) {
            std::uint64_t s = 0;
            u64(n, "seed", "measure", s);
            m.seed = s;
        }
        text(n, "sample_file", "measure", m.sample_file);
        real(n, "hurst", "measure", m.params.hurst);
        real(n, "alpha_stable", "measure", m.params.alpha_stable);
        if (const YAML::Node w = n["weight"]) {
            allow_keys(w, "measure.weight", {"kind", "amplitude", "rate"});
            note(w, "measure.weight");
            if (const YAML::Node k = w["kind"])
                m.params.weight.kind =
                    named(k, "measure.weight.kind", [](const std::string& s) { return weight_kind_from_string(s); });
            real(w, "amplitude", "measure.weight", m.params.weight.amplitude);
            real(w, "rate", "measure.weight", m.params.weight.rate);
        }
    }

    void coefficients(const YAML::Node& n) {
        allow_keys(n, "coefficients", {"preset", "u0", "f", "g", "sigma", "declared"});
        note(n, "coefficients");
        auto& c = cfg_.coefficients;
        text(n, "preset", "coefficients", c.preset);
        if (c.preset == "heat") {
            c.set = CoefficientSet::heat();
        } else if (c.preset == "burgers") {
            c.set = CoefficientSet::burgers();
        } else if (c.preset == "custom") {
            c.set = CoefficientSet{};
        } else {
            fail(n["preset"], "coefficients.preset: unknown preset '" + c.preset + "' (heat | burgers | custom)");
        }
        if (const YAML::Node u = n["u0"]) c.set.u0 = initial(u, "coefficients.u0");
        if (const YAML::Node f = n["f"]) c.set.f = drift(f, "coefficients.f");
        if (const YAML::Node g = n["g"]) c.set.g = flux(g, "coefficients.g");
        if (const YAML::Node s = n["sigma"]) c.set.sigma = sigma(s, "coefficients.sigma");
        if (const YAML::Node d = n["declared"]) {
            allow_keys(d, "coefficients.declared", {"K", "L"});
            note(d, "coefficients.declared");
            CoefficientSet::Declared dc;
            real(d, "K", "coefficients.declared", dc.K);
            real(d, "L", "coefficients.declared", dc.L);
            c.set.declared = dc;
        }
    }

    void solver(const YAML::Node& n) {
        allow_keys(n, "solver", {"N", "adaptive", "lambda_weight", "tol", "max_iter", "max_retries", "n_margin", "start"});
        note(n, "solver");
        auto& s = cfg_.solver;
        if (const YAML::Node nn = n["N"]) {
            if (nn.IsScalar() && nn.Scalar() == "auto") {
                note(nn, "solver.N");
                s.N = 0.0;
            } else {
                s.N = as<double>(nn, "solver.N", "a number or 'auto'");
            }
        }
        flag(n, "adaptive", "solver", s.adaptive);
        real(n, "lambda_weight", "solver", s.lambda_weight);
        real(n, "tol", "solver", s.tol);
        count(n, "max_iter", "solver", s.max_iter);
        count(n, "max_retries", "solver", s.max_retries);
        real(n, "n_margin", "solver", s.n_margin);
        text(n, "start", "solver", s.start);
    }

    void parse(const YAML::Node& root) {
        if (!root.IsMap()) fail(root, "the config must be a mapping");
        allow_keys(root, "", {"command", "seed", "grid", "measure", "coefficients", "solver", "averaging", "regularity",
                              "besov_check", "kernel_table", "output"});
        const YAML::Node cmd = root["command"];
        if (!cmd) fail(root, "missing key 'command'");
        if (cmd.IsSequence()) fail(cmd, "command: exactly one command is allowed");
        cfg_.command = named(cmd, "command", [](const std::string& s) { return command_from_string(s); });
        u64(root, "seed", "", cfg_.seed);
        if (const YAML::Node n = root["grid"]) grid(n);
        if (const YAML::Node n = root["measure"]) measure(n);
        if (const YAML::Node n = root["coefficients"]) coefficients(n);
        if (const YAML::Node n = root["solver"]) solver(n);
        if (const YAML::Node n = root["averaging"]) {
            allow_keys(n, "averaging", {"eps_list", "period"});
            note(n, "averaging");
            reals(n, "eps_list", "averaging", cfg_.averaging.eps_list);
            real(n, "period", "averaging", cfg_.averaging.period);
        }
        if (const YAML::Node n = root["regularity"]) {
            allow_keys(n, "regularity", {"delta_frac", "seeds", "lambda_tilde"});
            note(n, "regularity");
            real(n, "delta_frac", "regularity", cfg_.regularity.delta_frac);
            count(n, "seeds", "regularity", cfg_.regularity.seeds);
            real(n, "lambda_tilde", "regularity", cfg_.regularity.lambda_tilde);
        }
        if (const YAML::Node n = root["besov_check"]) {
            allow_keys(n, "besov_check", {"alpha", "C", "t", "x", "j_min", "j_max"});
            note(n, "besov_check");
            auto& b = cfg_.besov_check;
            real(n, "alpha", "besov_check", b.alpha);
            real(n, "C", "besov_check", b.C);
            real(n, "t", "besov_check", b.t);
            real(n, "x", "besov_check", b.x);
            integer(n, "j_min", "besov_check", b.j_min);
            integer(n, "j_max", "besov_check", b.j_max);
        }
        if (const YAML::Node n = root["kernel_table"]) {
            allow_keys(n, "kernel_table", {"t_list"});
            note(n, "kernel_table");
            reals(n, "t_list", "kernel_table", cfg_.kernel_table.t_list);
        }
        if (const YAML::Node n = root["output"]) {
            allow_keys(n, "output", {"directory", "formats", "slice_times"});
            note(n, "output");
            text(n, "directory", "output", cfg_.output.directory);
            strings(n, "formats", "output", cfg_.output.formats);
            reals(n, "slice_times", "output", cfg_.output.slice_times);
        }
    }

private:
    ExperimentConfig& cfg_;
};

// ---------------------------------------------------------------- emitting

void emit_profile(YAML::Emitter& e, const Profile& p) {
    e << YAML::BeginMap << YAML::Key << "kind" << YAML::Value << to_string(p.kind);
    switch (p.kind) {
        case Profile::Kind::zero: break;
        case Profile::Kind::constant: e << YAML::Key << "amplitude" << YAML::Value << p.amplitude; break;
        case Profile::Kind::gaussian:
            e << YAML::Key << "amplitude" << YAML::Value << p.amplitude;
            e << YAML::Key << "width" << YAML::Value << p.width;
            break;
        case Profile::Kind::table:
            e << YAML::Key << "x0" << YAML::Value << p.table_x0;
            e << YAML::Key << "dx" << YAML::Value << p.table_dx;
            e << YAML::Key << "values" << YAML::Value << YAML::Flow << p.table;
            break;
    }
    e << YAML::EndMap;
}

void emit_bounds(YAML::Emitter& e, const SigmaSpec::Bounds& b) {
    e << YAML::Key << "bounds" << YAML::Value << YAML::BeginMap;
    e << YAML::Key << "c_sigma" << YAML::Value << b.c_sigma;
    e << YAML::Key << "l_sigma" << YAML::Value << b.l_sigma;
    e << YAML::Key << "beta" << YAML::Value << b.beta;
    e << YAML::EndMap;
}

void emit_sigma(YAML::Emitter& e, const SigmaSpec& s) {
    e << YAML::BeginMap << YAML::Key << "family" << YAML::Value << sigma_family_name(s.family());
    switch (s.family()) {
        case SigmaSpec::Family::constant: e << YAML::Key << "value" << YAML::Value << s.constant_value(); break;
        case SigmaSpec::Family::separable_periodic: {
            const auto& phi = s.time_factor();
            e << YAML::Key << "time_factor" << YAML::Value << YAML::BeginMap;
            e << YAML::Key << "kind" << YAML::Value << to_string(phi.kind);
            e << YAML::Key << "offset" << YAML::Value << phi.offset;
            e << YAML::Key << "amplitude" << YAML::Value << phi.amplitude;
            e << YAML::Key << "period" << YAML::Value << phi.period;
            e << YAML::Key << "phase" << YAML::Value << phi.phase;
            e << YAML::Key << "slope" << YAML::Value << phi.slope;
            e << YAML::EndMap;
            e << YAML::Key << "profile" << YAML::Value;
            emit_profile(e, s.profile());
            break;
        }
        case SigmaSpec::Family::custom_table:
            e << YAML::Key << "dt_table" << YAML::Value << s.table_dt();
            e << YAML::Key << "x0" << YAML::Value << s.table_x0();
            e << YAML::Key << "dx" << YAML::Value << s.table_dx();
            e << YAML::Key << "ncells" << YAML::Value << s.table_cells();
            e << YAML::Key << "values" << YAML::Value << YAML::Flow << s.table_values();
            break;
    }
    emit_bounds(e, s.bounds());
    e << YAML::EndMap;
}

template <typename T>
void kv(YAML::Emitter& e, const char* key, const T& value) {
    e << YAML::Key << key << YAML::Value << value;
}

}  // namespace

bool ExperimentConfig::wants(const std::string& format) const {
    for (const auto& f : output.formats)
        if (f == format) return true;
    return false;
}

SolverConfig ExperimentConfig::solver_config() const {
    SolverConfig s;
    s.grid = grid;
    s.N = solver.N;
    s.adaptive_N = solver.adaptive;
    s.lambda_weight = solver.lambda_weight;
    s.tol = solver.tol;
    s.max_iter = solver.max_iter;
    s.max_retries = solver.max_retries;
    s.n_margin = solver.n_margin;
    s.start = solver.start == "zero" ? SolverConfig::Start::zero : SolverConfig::Start::semigroup_plus_theta;
    return s;
}

std::uint64_t ExperimentConfig::measure_seed() const { return measure.seed ? *measure.seed : seed_split(seed, 0); }

ExperimentConfig parse_config(const std::string& text, const std::string& source) {
    ExperimentConfig cfg;
    cfg.source = source;
    YAML::Node root;
    try {
        root = YAML::Load(text);
    } catch (const YAML::ParserException& e) {
        std::ostringstream os;
        os << source << ":" << e.mark.line + 1 << ": " << e.msg;
        throw ConfigError(os.str());
    }
    Reader(cfg).parse(root);
    return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
    std::ifstream is(path);
    if (!is) throw ConfigError(path.string() + ": cannot open config file");
    std::stringstream ss;
    ss << is.rdbuf();
    auto cfg = parse_config(ss.str(), path.string());
    cfg.base_dir = path.parent_path().empty() ? std::filesystem::path(".") : path.parent_path();
    return cfg;
}

std::string serialize_config(const ExperimentConfig& c) {
    YAML::Emitter e;
    e.SetDoublePrecision(17);
    e << YAML::BeginMap;
    kv(e, "command", to_string(c.command));
    kv(e, "seed", c.seed);

    e << YAML::Key << "grid" << YAML::Value << YAML::BeginMap;
    kv(e, "x_min", c.grid.x_min);
    kv(e, "x_max", c.grid.x_max);
    kv(e, "nx", c.grid.nx);
    kv(e, "t_max", c.grid.t_max);
    kv(e, "nt", c.grid.nt);
    e << YAML::EndMap;

    e << YAML::Key << "measure" << YAML::Value << YAML::BeginMap;
    kv(e, "kind", to_string(c.measure.kind));
    if (c.measure.seed) kv(e, "seed", *c.measure.seed);
    if (!c.measure.sample_file.empty()) kv(e, "sample_file", c.measure.sample_file);
    kv(e, "hurst", c.measure.params.hurst);
    kv(e, "alpha_stable", c.measure.params.alpha_stable);
    e << YAML::Key << "weight" << YAML::Value << YAML::BeginMap;
    kv(e, "kind", to_string(c.measure.params.weight.kind));
    kv(e, "amplitude", c.measure.params.weight.amplitude);
    kv(e, "rate", c.measure.params.weight.rate);
    e << YAML::EndMap << YAML::EndMap;

    const auto& cs = c.coefficients.set;
    e << YAML::Key << "coefficients" << YAML::Value << YAML::BeginMap;
    kv(e, "preset", c.coefficients.preset);
    e << YAML::Key << "u0" << YAML::Value << YAML::BeginMap;
    kv(e, "kind", to_string(cs.u0.kind));
    kv(e, "t0", cs.u0.t0);
    kv(e, "l2_norm", cs.u0.l2_norm);
    kv(e, "width", cs.u0.width);
    kv(e, "center", cs.u0.center);
    e << YAML::Key << "profile" << YAML::Value;
    emit_profile(e, cs.u0.shape);
    e << YAML::EndMap;
    e << YAML::Key << "f" << YAML::Value << YAML::BeginMap;
    kv(e, "kind", to_string(cs.f.kind));
    e << YAML::Key << "a" << YAML::Value;
    emit_profile(e, cs.f.a);
    kv(e, "k", cs.f.k);
    e << YAML::EndMap;
    e << YAML::Key << "g" << YAML::Value << YAML::BeginMap;
    e << YAML::Key << "b" << YAML::Value;
    emit_profile(e, cs.g.b);
    kv(e, "k1", cs.g.k1);
    kv(e, "c2", cs.g.c2);
    e << YAML::EndMap;
    e << YAML::Key << "sigma" << YAML::Value;
    emit_sigma(e, cs.sigma);
    if (cs.declared) {
        e << YAML::Key << "declared" << YAML::Value << YAML::BeginMap;
        kv(e, "K", cs.declared->K);
        kv(e, "L", cs.declared->L);
        e << YAML::EndMap;
    }
    e << YAML::EndMap;

    e << YAML::Key << "solver" << YAML::Value << YAML::BeginMap;
    kv(e, "N", c.solver.N);
    kv(e, "adaptive", c.solver.adaptive);
    kv(e, "lambda_weight", c.solver.lambda_weight);
    kv(e, "tol", c.solver.tol);
    kv(e, "max_iter", c.solver.max_iter);
    kv(e, "max_retries", c.solver.max_retries);
    kv(e, "n_margin", c.solver.n_margin);
    kv(e, "start", c.solver.start);
    e << YAML::EndMap;

    e << YAML::Key << "averaging" << YAML::Value << YAML::BeginMap;
    e << YAML::Key << "eps_list" << YAML::Value << YAML::Flow << c.averaging.eps_list;
    kv(e, "period", c.averaging.period);
    e << YAML::EndMap;

    e << YAML::Key << "regularity" << YAML::Value << YAML::BeginMap;
    kv(e, "delta_frac", c.regularity.delta_frac);
    kv(e, "seeds", c.regularity.seeds);
    kv(e, "lambda_tilde", c.regularity.lambda_tilde);
    e << YAML::EndMap;

    e << YAML::Key << "besov_check" << YAML::Value << YAML::BeginMap;
    kv(e, "alpha", c.besov_check.alpha);
    kv(e, "C", c.besov_check.C);
    kv(e, "t", c.besov_check.t);
    kv(e, "x", c.besov_check.x);
    kv(e, "j_min", c.besov_check.j_min);
    kv(e, "j_max", c.besov_check.j_max);
    e << YAML::EndMap;

    e << YAML::Key << "kernel_table" << YAML::Value << YAML::BeginMap;
    e << YAML::Key << "t_list" << YAML::Value << YAML::Flow << c.kernel_table.t_list;
    e << YAML::EndMap;

    e << YAML::Key << "output" << YAML::Value << YAML::BeginMap;
    kv(e, "directory", c.output.directory);
    e << YAML::Key << "formats" << YAML::Value << YAML::Flow << c.output.formats;
    e << YAML::Key << "slice_times" << YAML::Value << YAML::Flow << c.output.slice_times;
    e << YAML::EndMap;

    e << YAML::EndMap;
    return std::string(e.c_str()) + "\n";
}

}  // namespace smpde
