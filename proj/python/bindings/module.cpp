// SPDX-License-Identifier: Apache-2.0
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "smpde/averaging.hpp"
#include "smpde/harness.hpp"
#include "smpde/heat.hpp"
#include "smpde/io.hpp"
#include "smpde/measure.hpp"
#include "smpde/seed.hpp"
#include "smpde/solver.hpp"
#include "smpde/stochastic_convolution.hpp"

namespace py = pybind11;
using namespace smpde;

namespace {

py::array_t<double> to_array(const SpaceTimeField& u) {
    py::array_t<double> a({u.rows(), u.cols()});
    std::copy(u.data().begin(), u.data().end(), a.mutable_data());
    return a;
}

py::array_t<double> to_array(std::span<const double> v) {
    py::array_t<double> a(v.size());
    std::copy(v.begin(), v.end(), a.mutable_data());
    return a;
}

py::dict report_dict(const SolveReport& r) {
    py::dict d;
    d["iterations"] = r.iterations;
    d["successive_distances"] = r.successive_distances;
    d["final_residual"] = r.final_residual;
    d["sup_t_l2_norm"] = r.sup_t_l2_norm;
    d["cutoff_active"] = r.cutoff_active;
    d["N_used"] = r.N_used;
    d["retries"] = r.retries;
    return d;
}

}  // namespace

PYBIND11_MODULE(_smpde, m) {
    m.doc() = "Stochastic heat and Burgers equations driven by stochastic measures";

    py::register_exception<Error>(m, "Error");
    py::register_exception<DomainError>(m, "DomainError", m.attr("Error"));
    py::register_exception<AssumptionError>(m, "AssumptionError", m.attr("Error"));
    py::register_exception<DegenerateInputError>(m, "DegenerateInputError", m.attr("Error"));
    py::register_exception<ConvergenceError>(m, "ConvergenceError", m.attr("Error"));
    py::register_exception<ConfigError>(m, "ConfigError", m.attr("Error"));

    py::class_<GridSpec>(m, "GridSpec")
        .def(py::init([](double x_min, double x_max, std::size_t nx, double t_max, std::size_t nt) {
                 GridSpec g{x_min, x_max, nx, t_max, nt};
                 g.validate();
                 return g;
             }),
             py::arg("x_min") = -10.0, py::arg("x_max") = 10.0, py::arg("nx") = 1024, py::arg("t_max") = 1.0,
             py::arg("nt") = 256)
        .def_readonly("x_min", &GridSpec::x_min)
        .def_readonly("x_max", &GridSpec::x_max)
        .def_readonly("nx", &GridSpec::nx)
        .def_readonly("t_max", &GridSpec::t_max)
        .def_readonly("nt", &GridSpec::nt)
        .def_property_readonly("dx", &GridSpec::dx)
        .def_property_readonly("dt", &GridSpec::dt)
        .def_property_readonly("x", [](const GridSpec& g) {
            std::vector<double> x(g.nx);
            for (std::size_t i = 0; i < g.nx; ++i) x[i] = g.x(i);
            return to_array(x);
        })
        .def("__repr__", [](const GridSpec& g) {
            return "GridSpec(x_min=" + std::to_string(g.x_min) + ", x_max=" + std::to_string(g.x_max) +
                   ", nx=" + std::to_string(g.nx) + ", t_max=" + std::to_string(g.t_max) +
                   ", nt=" + std::to_string(g.nt) + ")";
        });

    py::class_<MeasureSample>(m, "MeasureSample")
        .def_readonly("grid", &MeasureSample::grid)
        .def_readonly("seed", &MeasureSample::seed)
        .def_property_readonly("kind", [](const MeasureSample& s) { return to_string(s.kind); })
        .def_property_readonly("increments", [](const MeasureSample& s) { return to_array(s.increments); })
        .def("measure_of", [](const MeasureSample& s, double a, double b) { return measure_of(s, a, b); })
        .def("save", [](const MeasureSample& s, const std::filesystem::path& p) { save_measure(s, p); });

    m.def(
        "sample_measure",
        [](const GridSpec& grid, const std::string& kind, std::uint64_t seed, double hurst, double alpha_stable,
           double weight_rate) {
            MeasureParams p;
            p.hurst = hurst;
            p.alpha_stable = alpha_stable;
            p.weight.rate = weight_rate;
            return sample_measure(grid, measure_kind_from_string(kind), p, seed);
        },
        py::arg("grid"), py::arg("kind") = "wiener", py::arg("seed") = 0, py::arg("hurst") = 0.75,
        py::arg("alpha_stable") = 1.5, py::arg("weight_rate") = 1.0);
    m.def(
        "measure_from_increments",
        [](const GridSpec& grid, std::vector<double> inc) { return measure_from_increments(grid, std::move(inc)); },
        py::arg("grid"), py::arg("increments"));
    m.def("load_measure", [](const std::filesystem::path& p) { return load_measure(p); });

    m.def("heat_kernel", py::vectorize(static_cast<double (*)(double, double)>(&kernel)), py::arg("t"), py::arg("x"));
    m.def("heat_kernel_dx", py::vectorize(static_cast<double (*)(double, double)>(&kernel_dx)), py::arg("t"),
          py::arg("x"));

    py::class_<SigmaSpec>(m, "SigmaSpec")
        .def_static("constant", py::overload_cast<double>(&SigmaSpec::constant), py::arg("value"))
        .def_static(
            "harmonic",
            [](double offset, double amplitude, double period, double width, double c_sigma, double l_sigma,
               double beta) {
                return SigmaSpec::separable(TimeFactor::harmonic(offset, amplitude, period),
                                            Profile::gaussian(1.0, width), SigmaSpec::Bounds{c_sigma, l_sigma, beta});
            },
            "(offset + amplitude sin(2 pi s / period)) exp(-(y / width)^2)", py::arg("offset") = 1.0,
            py::arg("amplitude") = 1.0, py::arg("period") = 1.0, py::arg("width") = 1.0, py::arg("c_sigma") = 2.0,
            py::arg("l_sigma") = 2.0, py::arg("beta") = 0.75)
        .def("__call__", &SigmaSpec::operator(), py::arg("s"), py::arg("y"))
        .def("time_scaled", &SigmaSpec::time_scaled, py::arg("eps"))
        .def_property_readonly("time_independent", &SigmaSpec::time_independent);
    m.def("sigma_bar", &sigma_bar);

    m.def("theta_field", [](const MeasureSample& s, const SigmaSpec& sigma) { return to_array(theta_field(s, sigma)); },
          py::arg("sample"), py::arg("sigma"));
    m.def(
        "regularity_report",
        [](const MeasureSample& s, const SigmaSpec& sigma, double delta_frac) {
            const auto r = regularity_report(s, sigma, delta_frac);
            py::dict d;
            d["gamma1_est"] = r.gamma1_est;
            d["gamma1_se"] = r.gamma1_se;
            d["gamma2_est"] = r.gamma2_est;
            d["gamma2_se"] = r.gamma2_se;
            d["sup_bound"] = r.sup_bound;
            d["l2_trace"] = r.l2_trace;
            d["degenerate"] = r.degenerate;
            return d;
        },
        py::arg("sample"), py::arg("sigma"), py::arg("delta_frac") = 0.1);

    py::class_<CoefficientSet>(m, "CoefficientSet")
        .def_static("heat", &CoefficientSet::heat)
        .def_static("burgers", &CoefficientSet::burgers, py::arg("sigma_value") = 0.0)
        .def("with_sigma", [](CoefficientSet c, const SigmaSpec& s) {
            c.sigma = s;
            return c;
        });

    m.def(
        "solve",
        [](const CoefficientSet& coeffs, const MeasureSample& sample, double N, double lambda_weight, double tol,
           std::size_t max_iter, bool adaptive_N) {
            SolverConfig cfg;
            cfg.grid = sample.grid;
            cfg.N = N;
            cfg.lambda_weight = lambda_weight;
            cfg.tol = tol;
            cfg.max_iter = max_iter;
            cfg.adaptive_N = adaptive_N;
            SolveResult res;
            {
                py::gil_scoped_release nogil;
                res = picard_solve(coeffs, sample, cfg);
            }
            return py::make_tuple(to_array(res.u), report_dict(res.report));
        },
        "Picard solve; returns (u with shape (nt + 1, nx), report)", py::arg("coeffs"), py::arg("sample"),
        py::arg("N") = 0.0, py::arg("lambda_weight") = 0.0, py::arg("tol") = 1e-10, py::arg("max_iter") = 100,
        py::arg("adaptive_N") = false);

    m.def(
        "project_pi_n",
        [](py::array_t<double, py::array::c_style | py::array::forcecast> v, double dx, double N) {
            std::vector<double> out(v.data(), v.data() + v.size());
            project_pi_n_inplace(out, dx, N);
            return to_array(out);
        },
        py::arg("v"), py::arg("dx"), py::arg("N"));

    m.def(
        "gronwall_series",
        [](double z, double tol) {
            const auto g = gronwall_series(z, tol);
            return py::make_tuple(g.value, g.terms);
        },
        py::arg("z"), py::arg("tol") = 1e-12);
    m.def("seed_split", &seed_split, py::arg("master_seed"), py::arg("stream_id"));

    m.def("load_space_time", [](const std::filesystem::path& p) { return to_array(load_space_time(p)); });
    m.def("serialize_config", [](const std::string& text) { return serialize_config(parse_config(text)); },
          "Parse YAML config text and return it with every key explicit", py::arg("text"));
    m.def(
        "run",
        [](const std::filesystem::path& config, std::optional<std::uint64_t> seed, std::size_t threads,
           std::optional<std::filesystem::path> out) {
            RunResult r;
            {
                py::gil_scoped_release nogil;
                r = run(config, RunOptions{seed, threads, out});
            }
            py::dict d;
            d["exit_code"] = r.exit_code;
            d["message"] = r.message;
            d["out_dir"] = r.out_dir;
            py::list arts;
            for (const auto& a : r.artifacts) {
                py::dict e;
                e["path"] = a.path;
                e["bytes"] = a.bytes;
                e["sha256"] = a.sha256;
                e["volatile"] = a.is_volatile;
                arts.append(e);
            }
            d["artifacts"] = arts;
            return d;
        },
        "Run a config file like the command-line tool", py::arg("config"), py::arg("seed") = py::none(),
        py::arg("threads") = 0, py::arg("out") = py::none());
}
