// SPDX-License-Identifier: Apache-2.0
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <random>

#include "../support/fd_burgers.hpp"
#include "smpde/error.hpp"
#include "smpde/solver.hpp"

using namespace smpde;

namespace {

GridSpec small_grid(std::size_t nx = 256, std::size_t nt = 64) {
    GridSpec g;
    g.nx = nx;
    g.nt = nt;
    return g;
}

SolverConfig config_for(const GridSpec& g) {
    SolverConfig c;
    c.grid = g;
    return c;
}

double first_moment(std::span<const double> v, const GridSpec& g) {
    double m = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) m += g.x(i) * v[i] * g.dx();
    return m;
}

}  // namespace

TEST_CASE("pi_N examples and properties") {
    const GridSpec g = small_grid();
    const Field v = Field::from_function(g, [](double x) { return std::exp(-x * x); });
    const double n = l2_norm(v);
    const Field inside = project_pi_n(v, 2.0 * n);
    for (std::size_t i = 0; i < g.nx; ++i) CHECK(inside[i] == v[i]);

    const Field out = project_pi_n(v, 0.5 * n);
    CHECK(l2_norm(out) == doctest::Approx(0.5 * n).epsilon(1e-14));
    double dot = 0.0;
    for (std::size_t i = 0; i < g.nx; ++i) dot += out[i] * v[i] * g.dx();
    CHECK(dot / (l2_norm(out) * n) == doctest::Approx(1.0).epsilon(1e-14));

    const Field once = project_pi_n(v, 0.3);
    const Field twice = project_pi_n(once, 0.3);
    for (std::size_t i = 0; i < g.nx; ++i) CHECK(twice[i] == once[i]);

    CHECK_THROWS_AS(project_pi_n(v, 0.0), DomainError);
    CHECK_THROWS_AS(project_pi_n(v, -1.0), DomainError);

    std::mt19937_64 rng(9);
    std::normal_distribution<double> nd;
    for (int k = 0; k < 200; ++k) {
        Field a = Field::zeros(g), b = Field::zeros(g);
        const double s = std::exp(nd(rng));
        for (std::size_t i = 0; i < g.nx; ++i) {
            a[i] = s * nd(rng);
            b[i] = s * nd(rng);
        }
        const double N = std::exp(nd(rng));
        CHECK(l2_distance(project_pi_n(a, N), project_pi_n(b, N)) <= l2_distance(a, b) + 1e-12);
    }
}

TEST_CASE("weighted norm") {
    GridSpec g = small_grid(64, 256);
    SpaceTimeField z(g);
    CHECK(weighted_norm(z, 1.0) == 0.0);
    // ||u(t)|| = 1 on every level
    SpaceTimeField one(g);
    const double c = 1.0 / std::sqrt(g.x_max - g.x_min);
    for (double& v : one.data()) v = c;
    const double w = weighted_norm(one, 1.0);
    CHECK(w * w == doctest::Approx(1.0 - std::exp(-1.0)).epsilon(1e-5));
    CHECK(w * w == doctest::Approx(0.632121).epsilon(1e-5));
    double prev = w;
    for (double lam : {2.0, 8.0, 32.0, 128.0}) {
        const double wl = weighted_norm(one, lam);
        CHECK(wl < prev);
        prev = wl;
    }
    CHECK_THROWS_AS(weighted_norm(one, 0.0), DomainError);
}

TEST_CASE("select_N and R1, R2") {
    GridSpec g = small_grid(64, 8);
    g.x_min = 0.0;
    g.x_max = 1.0;
    const SpaceTimeField zero(g);
    const auto s0 = select_N(Field::zeros(g), zero, 4.0);
    CHECK(s0.N == doctest::Approx(4.0));
    CHECK(s0.r1 == 0.0);
    CHECK(s0.r2 == 0.0);

    SpaceTimeField ones(g);
    for (double& v : ones.data()) v = 1.0;
    const auto rr = compute_r1_r2(ones);
    CHECK(rr.r1 == doctest::Approx(3.0));
    CHECK(rr.r2 == doctest::Approx(1.0));

    SpaceTimeField twos(g);
    for (double& v : twos.data()) v = 2.0;  // L2 norm 2 on [0, 1]
    const Field u0 = Field::from_function(g, [](double) { return 1.0; });
    const auto s = select_N(u0, twos, 4.0);
    CHECK(s.N == doctest::Approx(16.0));
    CHECK(s.r2 == doctest::Approx(4.0));

    std::mt19937_64 rng(4);
    std::normal_distribution<double> nd;
    for (int k = 0; k < 20; ++k) {
        SpaceTimeField r(g);
        for (double& v : r.data()) v = nd(rng);
        const auto x = compute_r1_r2(r);
        CHECK(x.r2 <= x.r1);
    }
}

TEST_CASE("coefficient validation") {
    auto c = CoefficientSet::burgers();
    CHECK_NOTHROW(c.validate());
    c.declared = CoefficientSet::Declared{0.1, 0.0};
    CHECK_THROWS_AS(c.validate(), AssumptionError);
    CoefficientSet d;
    d.f.kind = DriftSpec::Kind::sine;
    d.f.k = 2.0;
    d.f.a = Profile::gaussian(1.0, 1.0);
    CHECK_NOTHROW(d.validate());
    CHECK(d.constants().L == 2.0);
    d.declared = CoefficientSet::Declared{2.0, 1.0};
    CHECK_THROWS_AS(d.validate(), AssumptionError);
    CHECK(drift_kind_from_string("sine") == DriftSpec::Kind::sine);
    CHECK_THROWS_AS(initial_kind_from_string("spike"), DomainError);
}

TEST_CASE("apply_A reductions") {
    const GridSpec g = small_grid(256, 32);
    const SpaceTimeField theta0(g);

    // heat reduction: g constant makes the flux term vanish
    CoefficientSet heat = CoefficientSet::heat();
    heat.g.b = Profile::constant(3.0);
    const MildOperator op(heat, theta0);
    const auto au = op.apply(op.free_part(), 10.0);
    HeatOperators h(g);
    const auto sem = h.semigroup_levels(heat.u0.on(g));
    double err = 0.0;
    for (std::size_t k = 0; k < au.data().size(); ++k) err = std::max(err, std::abs(au.data()[k] - sem.data()[k]));
    CHECK(err < 1e-12);
    auto cfg = config_for(g);
    const auto res = picard_solve(op, cfg);
    CHECK(res.report.iterations == 1);

    // u = 0, u0 = 0, f = a(y): A 0 = J1 a
    CoefficientSet drift;
    drift.f.kind = DriftSpec::Kind::linear;
    drift.f.a = Profile::gaussian(1.0, 1.0);
    drift.f.k = 0.0;
    const auto a0 = apply_A(SpaceTimeField(g), drift, theta0, 1.0);
    SpaceTimeField av(g);
    for (std::size_t n = 0; n <= g.nt; ++n)
        for (std::size_t i = 0; i < g.nx; ++i) av.row(n)[i] = std::exp(-g.x(i) * g.x(i));
    for (std::size_t n : {1ul, 16ul, 32ul}) {
        const auto ref = j1(av, n);
        double e = 0.0;
        for (std::size_t i = 0; i < g.nx; ++i) e = std::max(e, std::abs(a0.row(n)[i] - ref[i]));
        CHECK(e < 1e-12);
    }
    CHECK(sup_norm(a0.row(0)) == 0.0);
}

TEST_CASE("Burgers drift sign: one application moves mass left") {
    GridSpec g;
    g.nt = 256;
    g.t_max = 0.05;
    const auto c = CoefficientSet::burgers();
    const MildOperator op(c, SpaceTimeField(g));
    const auto a1 = op.apply(op.free_part(), 1e6);
    const double m0 = first_moment(op.u0().values(), g);
    const double shift = first_moment(a1.row(g.nt), g) - m0;
    CHECK(shift < 0.0);

    testing::FdBurgers fd;
    const std::size_t ratio = 4;
    fd.nx = g.nx * ratio;
    std::vector<double> u0(fd.nx);
    const double scale = 1.0 / l2_norm(Field::from_function(g, [](double x) { return std::exp(-x * x); }));
    for (std::size_t i = 0; i < fd.nx; ++i) u0[i] = scale * std::exp(-fd.x(i) * fd.x(i));
    const auto fine = fd.run(u0, g.t_max);
    double fd_shift = 0.0;
    for (std::size_t i = 0; i < fd.nx; ++i) fd_shift += fd.x(i) * (fine[i] - u0[i]) * fd.dx();
    CHECK(std::abs(shift / fd_shift - 1.0) < 0.05);
}

TEST_CASE("heat case converges to the closed form") {
    GridSpec g;  // default rig
    const auto c = CoefficientSet::heat();
    const auto res = picard_solve(c, sample_wiener(g, 1), config_for(g));
    CHECK(res.report.iterations <= 2);
    CHECK_FALSE(res.report.cutoff_active);
    double worst = 0.0;
    for (std::size_t n = 0; n <= g.nt; n += 16) {
        const double t = g.t(n);
        double num = 0.0, den = 0.0;
        for (std::size_t i = 0; i < g.nx; ++i) {
            const double ex = kernel(1.0 + t, g.x(i));
            num = std::max(num, std::abs(res.u.row(n)[i] - ex));
            den = std::max(den, ex);
        }
        worst = std::max(worst, num / den);
    }
    CHECK(worst <= 1e-3);
}

TEST_CASE("deterministic Burgers against the finite-difference reference") {
    GridSpec g;
    const auto c = CoefficientSet::burgers();
    const auto res = picard_solve(c, sample_wiener(g, 1), config_for(g));
    CHECK_FALSE(res.report.cutoff_active);
    CHECK(res.report.final_residual <= 2.0 * 1e-10);

    testing::FdBurgers fd;
    const std::size_t ratio = 4;
    fd.nx = g.nx * ratio;
    std::vector<double> u0(fd.nx);
    const double scale = 1.0 / l2_norm(Field::from_function(g, [](double x) { return std::exp(-x * x); }));
    for (std::size_t i = 0; i < fd.nx; ++i) u0[i] = scale * std::exp(-fd.x(i) * fd.x(i));
    const auto ref = testing::FdBurgers::restrict_to(fd.run(u0, 0.5), ratio);
    const auto row = res.u.row(g.nt / 2);
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < g.nx; ++i) {
        num += (row[i] - ref[i]) * (row[i] - ref[i]);
        den += ref[i] * ref[i];
    }
    MESSAGE("Burgers L2 relative error at t = 0.5: " << std::sqrt(num / den));
    CHECK(std::sqrt(num / den) <= 1e-2);
}

TEST_CASE("stochastic Burgers: contraction, residuals, uniqueness") {
    GridSpec g;
    g.nx = 512;
    g.nt = 128;
    auto c = CoefficientSet::burgers(1.0);
    WeightSpec w;
    w.kind = WeightSpec::Kind::gaussian;
    const auto mu = sample_weighted_wiener(g, w, 2024);
    const MildOperator op(c, theta_field(mu, c.sigma));
    auto cfg = config_for(g);
    const auto res = picard_solve(op, cfg);
    const auto& d = res.report.successive_distances;
    REQUIRE(d.size() >= 5);
    std::vector<double> ratios;
    for (std::size_t k = 3; k + 1 < d.size(); ++k) ratios.push_back(d[k + 1] / d[k]);
    std::sort(ratios.begin(), ratios.end());
    CHECK(ratios[ratios.size() / 2] <= 0.5);
    CHECK_FALSE(res.report.cutoff_active);
    const double lam = cfg.effective_lambda();
    CHECK(res.report.final_residual <= 2.0 * cfg.tol);
    CHECK(uncut_residual(op, res.u, lam) <= 2.0 * cfg.tol);

    auto cfg0 = cfg;
    cfg0.start = SolverConfig::Start::zero;
    const auto res0 = picard_solve(op, cfg0);
    CHECK(weighted_norm(res.u - res0.u, lam) <= 10.0 * cfg.tol);
}

TEST_CASE("cutoff handling") {
    GridSpec g = small_grid(256, 32);
    auto c = CoefficientSet::burgers();
    c.u0 = InitialSpec::bump(3.0, 1.0);
    const MildOperator op(c, SpaceTimeField(g));
    auto cfg = config_for(g);
    cfg.N = 0.5;
    const auto cut = picard_solve(op, cfg);
    CHECK(cut.report.cutoff_active);
    cfg.adaptive_N = true;
    const auto adapted = picard_solve(op, cfg);
    CHECK_FALSE(adapted.report.cutoff_active);
    CHECK(adapted.report.N_used >= 3.0);
    CHECK(adapted.report.retries >= 3);
    cfg.max_retries = 1;
    CHECK_THROWS_AS(picard_solve(op, cfg), ConvergenceError);

    auto bad = config_for(g);
    bad.max_iter = 1;
    bad.tol = 1e-30;
    try {
        picard_solve(op, bad);
        CHECK(false);
    } catch (const ConvergenceError& e) {
        CHECK(e.distances.size() == 1);
    }
    bad.tol = 0.0;
    CHECK_THROWS_AS(picard_solve(op, bad), DomainError);
}
