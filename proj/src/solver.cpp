// SPDX-License-Identifier: Apache-2.0
#include "smpde/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <random>
#include <sstream>

#include "smpde/error.hpp"

namespace smpde {

// --------------------------------------------------------------- coefficients

double DriftSpec::operator()(double y, double r) const {
    switch (kind) {
        case Kind::zero: return 0.0;
        case Kind::linear: return a(y) + k * r;
        case Kind::sine: return a(y) + k * std::sin(r);
    }
    return 0.0;
}

double FluxSpec::operator()(double y, double r) const { return b(y) + k1 * r + c2 * r * r; }

InitialSpec InitialSpec::heat_kernel(double t0, double center) {
    if (!(t0 > 0.0)) throw DomainError("u0: heat kernel time must be > 0");
    InitialSpec s;
    s.kind = Kind::heat_kernel;
    s.t0 = t0;
    s.center = center;
    return s;
}

InitialSpec InitialSpec::bump(double l2, double width, double center) {
    if (!(l2 >= 0.0) || !(width > 0.0)) throw DomainError("u0: bump needs l2_norm >= 0 and width > 0");
    InitialSpec s;
    s.kind = Kind::bump;
    s.l2_norm = l2;
    s.width = width;
    s.center = center;
    return s;
}

InitialSpec InitialSpec::from_profile(Profile p) {
    p.validate();
    InitialSpec s;
    s.kind = Kind::profile;
    s.shape = std::move(p);
    return s;
}

Field InitialSpec::on(const GridSpec& grid) const {
    switch (kind) {
        case Kind::zero: return Field::zeros(grid);
        case Kind::heat_kernel: return Field::from_function(grid, [&](double y) { return kernel(t0, y - center); });
        case Kind::bump: {
            Field f = Field::from_function(grid, [&](double y) {
                const double z = (y - center) / width;
                return std::exp(-z * z);
            });
            const double n = smpde::l2_norm(f);
            if (n == 0.0) throw DomainError("u0: bump vanishes on the grid");
            f *= l2_norm / n;
            return f;
        }
        case Kind::profile: return Field::from_function(grid, [&](double y) { return shape(y); });
    }
    return Field::zeros(grid);
}

std::string to_string(DriftSpec::Kind kind) {
    switch (kind) {
        case DriftSpec::Kind::zero: return "zero";
        case DriftSpec::Kind::linear: return "linear";
        case DriftSpec::Kind::sine: return "sine";
    }
    return "unknown";
}

DriftSpec::Kind drift_kind_from_string(const std::string& name) {
    for (auto k : {DriftSpec::Kind::zero, DriftSpec::Kind::linear, DriftSpec::Kind::sine})
        if (to_string(k) == name) return k;
    throw DomainError("drift '" + name + "' is not supported (zero | linear | sine)");
}

std::string to_string(InitialSpec::Kind kind) {
    switch (kind) {
        case InitialSpec::Kind::zero: return "zero";
        case InitialSpec::Kind::heat_kernel: return "heat_kernel";
        case InitialSpec::Kind::bump: return "bump";
        case InitialSpec::Kind::profile: return "profile";
    }
    return "unknown";
}

InitialSpec::Kind initial_kind_from_string(const std::string& name) {
    for (auto k : {InitialSpec::Kind::zero, InitialSpec::Kind::heat_kernel, InitialSpec::Kind::bump,
                   InitialSpec::Kind::profile})
        if (to_string(k) == name) return k;
    throw DomainError("u0 '" + name + "' is not supported (zero | heat_kernel | bump | profile)");
}

CoefficientSet::Declared CoefficientSet::constants() const {
    if (declared) return *declared;
    const double kf = f.kind == DriftSpec::Kind::zero ? 0.0 : std::abs(f.k);
    Declared d;
    d.K = std::max({kf, std::abs(g.k1), std::abs(g.c2)});
    d.L = std::max(kf, std::abs(g.k1));
    return d;
}

void CoefficientSet::validate() const {
    f.a.validate();
    g.b.validate();
    const Declared d = constants();
    if (!(d.K >= 0.0) || !(d.L >= 0.0)) throw DomainError("coefficients: declared K and L must be >= 0");
    std::mt19937_64 rng(0xc0ef);
    std::uniform_real_distribution<double> uy(-10.0, 10.0), ur(-10.0, 10.0);
    const double tol = 1e-9;
    auto fail = [](const std::string& what, double y, double r1, double r2) {
        std::ostringstream os;
        os << "coefficients: declared " << what << " bound fails at y = " << y << ", r = " << r1;
        if (r2 != r1) os << ", r' = " << r2;
        throw AssumptionError(os.str());
    };
    for (int k = 0; k < 1000; ++k) {
        const double y = uy(rng), r1 = ur(rng), r2 = ur(rng);
        const double fa = f.kind == DriftSpec::Kind::zero ? 0.0 : std::abs(f.a(y));
        if (std::abs(f(y, r1)) > fa + d.K * std::abs(r1) + tol) fail("growth of f", y, r1, r1);
        if (std::abs(f(y, r1) - f(y, r2)) > d.L * std::abs(r1 - r2) * (1 + tol) + tol) fail("Lipschitz f", y, r1, r2);
        const double g1a = g.b(y) + g.k1 * r1, g1b = g.b(y) + g.k1 * r2;
        if (std::abs(g1a) > std::abs(g.b(y)) + d.K * std::abs(r1) + tol) fail("growth of g1", y, r1, r1);
        if (std::abs(g1a - g1b) > d.L * std::abs(r1 - r2) * (1 + tol) + tol) fail("Lipschitz g1", y, r1, r2);
        if (std::abs(g.c2 * r1 * r1) > d.K * r1 * r1 * (1 + tol) + tol) fail("quadratic growth of g2", y, r1, r1);
    }
}

CoefficientSet CoefficientSet::heat() {
    CoefficientSet c;
    c.u0 = InitialSpec::heat_kernel(1.0);
    return c;
}

CoefficientSet CoefficientSet::burgers(double sigma_value) {
    CoefficientSet c;
    c.u0 = InitialSpec::bump(1.0, 1.0);
    c.g.c2 = 0.5;
    c.sigma = SigmaSpec::constant(sigma_value);
    return c;
}

void SolverConfig::validate() const {
    grid.validate();
    if (!(N >= 0.0) && !std::isinf(N)) throw DomainError("solver: N must be > 0 (or 0 to select it)");
    if (!(tol > 0.0)) throw DomainError("solver: tol must be > 0");
    if (max_iter < 1) throw DomainError("solver: max_iter must be >= 1");
    if (!(n_margin > 0.0)) throw DomainError("solver: N margin must be > 0");
    if (lambda_weight < 0.0) throw DomainError("solver: lambda_weight must be > 0 (or 0 for the default)");
}

// --------------------------------------------------------------- primitives

void project_pi_n_inplace(std::span<double> v, double dx, double N) {
    if (!(N > 0.0)) throw DomainError("pi_N: N must be > 0");
    if (std::isinf(N)) return;
    const double n = l2_norm(v, dx);
    if (n <= N) return;
    // shrink s by ulps until the rounded image lies in the ball, so that pi_N is exactly idempotent
    double s = N / n;
    std::vector<double> w(v.size());
    for (int k = 0; k < 64; ++k) {
        for (std::size_t i = 0; i < v.size(); ++i) w[i] = v[i] * s;
        if (l2_norm(w, dx) <= N) break;
        s = std::nextafter(s, 0.0);
    }
    std::copy(w.begin(), w.end(), v.begin());
}

Field project_pi_n(const Field& v, double N) {
    Field out = v;
    project_pi_n_inplace(out.values(), v.grid().dx(), N);
    return out;
}

double weighted_norm(const SpaceTimeField& u, double lambda_weight) {
    if (!(lambda_weight > 0.0)) throw DomainError("weighted_norm: lambda must be > 0");
    const GridSpec& g = u.grid();
    const double dt = g.dt(), dx = g.dx();
    double s = 0.0;
    for (std::size_t n = 0; n <= g.nt; ++n) {
        const double w = (n == 0 || n == g.nt) ? 0.5 : 1.0;
        double sq = 0.0;
        for (double v : u.row(n)) sq += v * v;
        s += w * std::exp(-lambda_weight * g.t(n)) * sq * dx;
    }
    return std::sqrt(s * dt);
}

R1R2 compute_r1_r2(const SpaceTimeField& zeta) {
    const GridSpec& g = zeta.grid();
    R1R2 r;
    for (std::size_t n = 0; n <= g.nt; ++n) {
        const auto row = zeta.row(n);
        const double l2 = l2_norm(row, g.dx());
        const double l4 = l4_norm(row, g.dx());
        const double inf = sup_norm(row);
        r.r1 = std::max(r.r1, l2 * l2 + l4 * l4 * l4 * l4 + inf * inf);
        r.r2 = std::max(r.r2, inf * inf);
    }
    return r;
}

NSelection select_N(const Field& u0, const SpaceTimeField& theta, double margin) {
    if (!(margin > 0.0)) throw DomainError("select_N: margin must be > 0");
    require_same_grid(u0.grid(), theta.grid(), "select_N");
    const auto rr = compute_r1_r2(theta);
    NSelection s;
    s.N = margin * (l2_norm(u0) + sup_t_l2_norm(theta) + 1.0);
    s.r1 = rr.r1;
    s.r2 = rr.r2;
    return s;
}

// ------------------------------------------------------------- the operator

MildOperator::MildOperator(const CoefficientSet& coeffs, SpaceTimeField theta)
    : grid_(theta.grid()),
      coeffs_(coeffs),
      u0_(coeffs.u0.on(theta.grid())),
      theta_(std::move(theta)),
      heat_(grid_),
      free_(heat_.semigroup_levels(u0_)) {
    coeffs_.validate();
    const auto th = theta_.data();
    auto fr = free_.data();
    for (std::size_t k = 0; k < fr.size(); ++k) fr[k] += th[k];
}

SpaceTimeField MildOperator::apply(const SpaceTimeField& u, double N) const {
    require_same_grid(grid_, u.grid(), "apply_A");
    const bool has_f = coeffs_.f.kind != DriftSpec::Kind::zero;
    const bool has_g = !(coeffs_.g.b.is_zero() && coeffs_.g.k1 == 0.0 && coeffs_.g.c2 == 0.0);
    SpaceTimeField out = free_;
    if (!has_f && !has_g) return out;

    SpaceTimeField fv(grid_), gw(grid_);
    std::vector<double> row(grid_.nx);
    std::vector<double> ys(grid_.nx);
    for (std::size_t i = 0; i < grid_.nx; ++i) ys[i] = grid_.x(i);
    // level nt is never read by the left-endpoint Duhamel sums
    for (std::size_t n = 0; n < grid_.nt; ++n) {
        const auto src = u.row(n);
        std::copy(src.begin(), src.end(), row.begin());
        project_pi_n_inplace(row, grid_.dx(), N);
        auto fr = fv.row(n);
        auto gr = gw.row(n);
        for (std::size_t i = 0; i < grid_.nx; ++i) {
            if (has_f) fr[i] = coeffs_.f(ys[i], row[i]);
            if (has_g) gr[i] = -coeffs_.g(ys[i], row[i]);
        }
    }
    const auto d = heat_.duhamel(has_f ? &fv : nullptr, has_g ? &gw : nullptr);
    auto o = out.data();
    const auto dd = d.data();
    for (std::size_t k = 0; k < o.size(); ++k) o[k] += dd[k];
    return out;
}

SpaceTimeField apply_A(const SpaceTimeField& u, const CoefficientSet& coeffs, const SpaceTimeField& theta, double N) {
    return MildOperator(coeffs, theta).apply(u, N);
}

double uncut_residual(const MildOperator& op, const SpaceTimeField& u, double lambda_weight) {
    return weighted_norm(u - op.apply(u, std::numeric_limits<double>::infinity()), lambda_weight);
}

// ------------------------------------------------------------------ Picard

SolveResult picard_solve(const MildOperator& op, const SolverConfig& config) {
    config.validate();
    require_same_grid(op.grid(), config.grid, "picard_solve");
    const auto t_start = std::chrono::steady_clock::now();
    const double lambda = config.effective_lambda();
    double N = config.N > 0.0 ? config.N : select_N(op.u0(), op.theta(), config.n_margin).N;

    std::size_t retries = 0;
    for (;;) {
        SpaceTimeField u;
        if (config.start == SolverConfig::Start::zero) {
            u = SpaceTimeField(op.grid());
            u.set_row(0, op.u0().values());
        } else {
            u = op.free_part();
        }
        bool exceeded = sup_t_l2_norm(u) > N;
        std::vector<double> dist;
        bool converged = false;
        for (std::size_t k = 0; k < config.max_iter; ++k) {
            SpaceTimeField next = op.apply(u, N);
            dist.push_back(weighted_norm(next - u, lambda));
            u = std::move(next);
            exceeded = exceeded || sup_t_l2_norm(u) > N;
            if (!std::isfinite(dist.back())) break;
            if (dist.back() < config.tol) {
                converged = true;
                break;
            }
        }
        if (!converged) {
            std::ostringstream os;
            os << "picard_solve: no convergence after " << dist.size() << " iterations (last distance "
               << dist.back() << ", tol " << config.tol << ", N " << N << ")";
            throw ConvergenceError(os.str(), std::move(dist));
        }
        if (exceeded && config.adaptive_N) {
            if (retries >= config.max_retries) {
                std::ostringstream os;
                os << "picard_solve: cutoff still active after " << retries << " doublings of N (N = " << N << ")";
                throw ConvergenceError(os.str(), std::move(dist));
            }
            ++retries;
            N *= 2.0;
            continue;
        }
        SolveResult res;
        res.report.iterations = dist.size();
        res.report.successive_distances = std::move(dist);
        res.report.final_residual = weighted_norm(u - op.apply(u, N), lambda);
        res.report.sup_t_l2_norm = sup_t_l2_norm(u);
        res.report.cutoff_active = exceeded;
        res.report.N_used = N;
        res.report.retries = retries;
        res.u = std::move(u);
        res.report.wall_time =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
        return res;
    }
}

SolveResult picard_solve(const CoefficientSet& coeffs, const MeasureSample& sample, const SolverConfig& config) {
    require_same_grid(config.grid, sample.grid, "picard_solve");
    const MildOperator op(coeffs, theta_field(sample, coeffs.sigma));
    return picard_solve(op, config);
}

}  // namespace smpde
