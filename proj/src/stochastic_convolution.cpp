// SPDX-License-Identifier: Apache-2.0
#include "smpde/stochastic_convolution.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

#include "smpde/besov.hpp"
#include "smpde/error.hpp"
#include "smpde/heat.hpp"
#include "smpde/toeplitz.hpp"

namespace smpde {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

inline void complex_axpy(std::size_t m, const std::complex<double>* a, const std::complex<double>* b,
                         std::complex<double>* acc) {
    const double* pa = reinterpret_cast<const double*>(a);
    const double* pb = reinterpret_cast<const double*>(b);
    double* pc = reinterpret_cast<double*>(acc);
    for (std::size_t k = 0; k < m; ++k) {
        const double ar = pa[2 * k], ai = pa[2 * k + 1];
        const double br = pb[2 * k], bi = pb[2 * k + 1];
        pc[2 * k] += ar * br - ai * bi;
        pc[2 * k + 1] += ar * bi + ai * br;
    }
}

void check_bounds(const SigmaSpec::Bounds& b) {
    if (!(b.c_sigma >= 0.0) || !std::isfinite(b.c_sigma)) throw DomainError("sigma: C_sigma must be finite and >= 0");
    if (!(b.l_sigma >= 0.0) || !std::isfinite(b.l_sigma)) throw DomainError("sigma: L_sigma must be finite and >= 0");
    if (!(b.beta > 0.5 && b.beta < 1.0)) throw DomainError("sigma: beta must lie in (1/2, 1)");
}

// offsets -(nx-1)..nx-1 of f(k dx)
template <typename F>
std::vector<double> offset_table(std::size_t nx, double dx, F&& f) {
    std::vector<double> t(2 * nx - 1);
    for (std::size_t k = 0; k < nx; ++k) {
        const double v = f(static_cast<double>(k) * dx);
        t[nx - 1 + k] = v;
        t[nx - 1 - k] = v;
    }
    return t;
}

}  // namespace

// ---------------------------------------------------------------- TimeFactor

TimeFactor TimeFactor::constant(double value) {
    TimeFactor f;
    f.kind = Kind::constant;
    f.offset = value;
    return f;
}

TimeFactor TimeFactor::harmonic(double offset, double amplitude, double period, double phase) {
    if (!(period > 0.0)) throw DomainError("time factor: period must be > 0");
    TimeFactor f;
    f.kind = Kind::harmonic;
    f.offset = offset;
    f.amplitude = amplitude;
    f.period = period;
    f.phase = phase;
    return f;
}

TimeFactor TimeFactor::linear(double offset, double slope) {
    TimeFactor f;
    f.kind = Kind::linear;
    f.offset = offset;
    f.slope = slope;
    return f;
}

TimeFactor TimeFactor::custom(std::function<double(double)> fn, double period) {
    if (!fn) throw DomainError("time factor: empty function");
    if (period < 0.0) throw DomainError("time factor: period must be >= 0");
    TimeFactor f;
    f.kind = Kind::custom;
    f.fn = std::move(fn);
    f.period = period;
    return f;
}

double TimeFactor::operator()(double s) const {
    switch (kind) {
        case Kind::constant: return offset;
        case Kind::harmonic: return offset + amplitude * std::sin(kTwoPi * s / period + phase);
        case Kind::linear: return offset + slope * s;
        case Kind::custom: return fn(s);
    }
    return 0.0;
}

double TimeFactor::declared_period() const {
    switch (kind) {
        case Kind::constant: return 0.0;
        case Kind::harmonic: return period;
        case Kind::linear: return 0.0;
        case Kind::custom: return period;
    }
    return 0.0;
}

TimeFactor TimeFactor::time_scaled(double eps) const {
    if (!(eps > 0.0)) throw DomainError("time factor: eps must be > 0");
    TimeFactor f = *this;
    switch (kind) {
        case Kind::constant: break;
        case Kind::harmonic: f.period = period * eps; break;
        case Kind::linear: f.slope = slope / eps; break;
        case Kind::custom: {
            auto inner = fn;
            f.fn = [inner, eps](double s) { return inner(s / eps); };
            f.period = period * eps;
            break;
        }
    }
    return f;
}

std::string to_string(TimeFactor::Kind kind) {
    switch (kind) {
        case TimeFactor::Kind::constant: return "constant";
        case TimeFactor::Kind::harmonic: return "harmonic";
        case TimeFactor::Kind::linear: return "linear";
        case TimeFactor::Kind::custom: return "custom";
    }
    return "unknown";
}

TimeFactor::Kind time_factor_kind_from_string(const std::string& name) {
    for (auto k : {TimeFactor::Kind::constant, TimeFactor::Kind::harmonic, TimeFactor::Kind::linear})
        if (to_string(k) == name) return k;
    throw DomainError("time factor '" + name + "' is not supported (constant | harmonic | linear)");
}

// ----------------------------------------------------------------- SigmaSpec

SigmaSpec::SigmaSpec() = default;

SigmaSpec SigmaSpec::constant(double value) {
    return constant(value, Bounds{std::abs(value), 1.0, 0.75});
}

SigmaSpec SigmaSpec::constant(double value, Bounds declared) {
    if (!std::isfinite(value)) throw DomainError("sigma: constant must be finite");
    SigmaSpec s;
    s.family_ = Family::constant;
    s.value_ = value;
    declared.c_sigma = std::max(declared.c_sigma, 0.0);
    s.bounds_ = declared;
    check_bounds(s.bounds_);
    s.spot_check();
    return s;
}

SigmaSpec SigmaSpec::separable(TimeFactor phi, Profile c, Bounds declared) {
    c.validate();
    SigmaSpec s;
    s.family_ = Family::separable_periodic;
    s.phi_ = std::move(phi);
    s.profile_ = std::move(c);
    s.bounds_ = declared;
    check_bounds(s.bounds_);
    s.spot_check();
    return s;
}

SigmaSpec SigmaSpec::table(double dt_table, double x0, double dx, std::size_t ncells, std::vector<double> values,
                           Bounds declared) {
    if (!(dt_table > 0.0) || !(dx > 0.0) || ncells == 0) throw DomainError("sigma table: bad geometry");
    if (values.empty() || values.size() % ncells != 0)
        throw DomainError("sigma table: value count must be a multiple of the cell count");
    for (double v : values)
        if (!std::isfinite(v)) throw DomainError("sigma table: entries must be finite");
    SigmaSpec s;
    s.family_ = Family::custom_table;
    s.table_dt_ = dt_table;
    s.table_x0_ = x0;
    s.table_dx_ = dx;
    s.table_cells_ = ncells;
    s.table_ = std::move(values);
    s.bounds_ = declared;
    check_bounds(s.bounds_);
    s.spot_check(std::max(std::abs(x0), std::abs(x0 + dx * static_cast<double>(ncells))));
    return s;
}

SigmaSpec SigmaSpec::default_sweep() {
    return separable(TimeFactor::harmonic(1.0, 0.5, 1.0), Profile::gaussian(1.0, 1.0), Bounds{1.5, 1.5, 0.75});
}

double SigmaSpec::operator()(double s, double y) const {
    switch (family_) {
        case Family::constant: return value_;
        case Family::separable_periodic: return phi_(s) * profile_(y);
        case Family::custom_table: {
            const double pos = (y - table_x0_) / table_dx_;
            if (pos < 0.0) return 0.0;
            const auto i = static_cast<std::size_t>(pos);
            if (i >= table_cells_) return 0.0;
            const std::size_t rows = table_.size() / table_cells_;
            const double r = std::max(0.0, s / table_dt_);
            const auto k = static_cast<std::size_t>(r);
            if (k + 1 >= rows) return table_[(rows - 1) * table_cells_ + i];
            const double w = r - static_cast<double>(k);
            return (1.0 - w) * table_[k * table_cells_ + i] + w * table_[(k + 1) * table_cells_ + i];
        }
    }
    return 0.0;
}

bool SigmaSpec::is_zero() const {
    switch (family_) {
        case Family::constant: return value_ == 0.0;
        case Family::separable_periodic:
            return profile_.is_zero() || (phi_.kind == TimeFactor::Kind::constant && phi_.offset == 0.0);
        case Family::custom_table: return std::all_of(table_.begin(), table_.end(), [](double v) { return v == 0.0; });
    }
    return true;
}

bool SigmaSpec::time_independent() const {
    switch (family_) {
        case Family::constant: return true;
        case Family::separable_periodic:
            return phi_.kind == TimeFactor::Kind::constant ||
                   (phi_.kind == TimeFactor::Kind::harmonic && phi_.amplitude == 0.0) ||
                   (phi_.kind == TimeFactor::Kind::linear && phi_.slope == 0.0) || profile_.is_zero();
        case Family::custom_table: return table_.size() == table_cells_;
    }
    return true;
}

double SigmaSpec::time_scale() const {
    if (time_independent()) return std::numeric_limits<double>::infinity();
    switch (family_) {
        case Family::constant: return std::numeric_limits<double>::infinity();
        case Family::separable_periodic: {
            const double p = phi_.declared_period();
            if (phi_.kind == TimeFactor::Kind::linear) return std::numeric_limits<double>::infinity();
            return p > 0.0 ? p : std::numeric_limits<double>::infinity();
        }
        case Family::custom_table: return 8.0 * table_dt_;
    }
    return std::numeric_limits<double>::infinity();
}

SigmaSpec SigmaSpec::time_scaled(double eps) const {
    if (!(eps > 0.0)) throw DomainError("sigma: eps must be > 0");
    SigmaSpec s = *this;
    switch (family_) {
        case Family::constant: break;
        case Family::separable_periodic: s.phi_ = phi_.time_scaled(eps); break;
        case Family::custom_table: s.table_dt_ = table_dt_ * eps; break;
    }
    return s;
}

void SigmaSpec::spot_check(double y_extent, std::uint64_t seed) const {
    std::mt19937_64 rng(seed);
    const double period = family_ == Family::separable_periodic ? phi_.declared_period() : 0.0;
    double s_max = 1.0;
    if (period > 0.0) s_max = 2.0 * period;
    if (family_ == Family::custom_table)
        s_max = table_dt_ * static_cast<double>(table_.size() / std::max<std::size_t>(table_cells_, 1));
    std::uniform_real_distribution<double> us(0.0, s_max);
    std::uniform_real_distribution<double> uy(-y_extent, y_extent);
    std::uniform_real_distribution<double> ulog(std::log(1e-4), std::log(2.0));
    const double tol = 1e-9;
    for (int k = 0; k < 1000; ++k) {
        const double s = us(rng);
        double y1 = uy(rng);
        double d = std::exp(ulog(rng)) * ((k & 1) ? 1.0 : -1.0);
        double y2 = y1 + d;
        if (family_ == Family::custom_table) {
            // tables are piecewise constant; compare cell centers only
            auto snap = [&](double y) {
                return table_x0_ + (std::floor((y - table_x0_) / table_dx_) + 0.5) * table_dx_;
            };
            y1 = snap(y1);
            y2 = snap(y2);
            if (y1 == y2) continue;
            d = y2 - y1;
        }
        const double v1 = (*this)(s, y1);
        const double v2 = (*this)(s, y2);
        if (std::abs(v1) > bounds_.c_sigma * (1.0 + tol) + tol) {
            std::ostringstream os;
            os << "sigma: |sigma(" << s << ", " << y1 << ")| = " << std::abs(v1) << " exceeds declared C_sigma = "
               << bounds_.c_sigma;
            throw AssumptionError(os.str());
        }
        const double lhs = std::abs(v1 - v2);
        const double rhs = bounds_.l_sigma * std::pow(std::abs(d), bounds_.beta);
        if (lhs > rhs * (1.0 + tol) + tol) {
            std::ostringstream os;
            os << "sigma: Hoelder bound fails at s = " << s << ", y = " << y1 << ", h = " << d << " (" << lhs
               << " > L_sigma |h|^beta = " << rhs << ")";
            throw AssumptionError(os.str());
        }
    }
}

std::string to_string(SigmaSpec::Family family) {
    switch (family) {
        case SigmaSpec::Family::constant: return "constant";
        case SigmaSpec::Family::separable_periodic: return "separable_periodic";
        case SigmaSpec::Family::custom_table: return "custom_table";
    }
    return "unknown";
}

// ------------------------------------------------------------------ kernels

double kernel_antiderivative(double tau, double z) { return kernel_time_integral(tau, z); }

namespace {

// int_z^inf P(tau, zeta) dzeta for z >= 0
double kernel_tail(double tau, double z) {
    if (!(tau > 0.0)) return 0.0;
    const double u = z / (2.0 * std::sqrt(tau));
    return tau * ((u * u + 0.5) * std::erfc(u) - u * std::exp(-u * u) / std::sqrt(std::numbers::pi));
}

}  // namespace

double kernel_cell_average(double tau, double z, double dx) {
    if (!(dx > 0.0)) throw DomainError("kernel_cell_average: dx must be > 0");
    if (!(tau > 0.0)) return 0.0;
    double a = z - 0.5 * dx, b = z + 0.5 * dx;
    if (b <= 0.0) {
        std::swap(a, b);
        a = -a;
        b = -b;
    }
    if (a >= 0.0) return (kernel_tail(tau, a) - kernel_tail(tau, b)) / dx;
    return (tau - kernel_tail(tau, -a) - kernel_tail(tau, b)) / dx;
}

std::size_t theta_substeps(const GridSpec& grid, const SigmaSpec& sigma) {
    const double scale = sigma.time_scale();
    if (!std::isfinite(scale)) return 1;
    return std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(grid.dt() / (scale / 8.0) - 1e-9)));
}

double q_kernel(double t, double x, double y, const SigmaSpec& sigma, std::size_t substeps) {
    if (!(t > 0.0)) throw DomainError("q_kernel: t must be > 0");
    const double z = x - y;
    if (sigma.time_independent()) return sigma(0.0, y) * kernel_time_integral(t, z);
    if (substeps == 0) {
        const double scale = sigma.time_scale();
        const double by_scale = std::isfinite(scale) ? std::ceil(8.0 * t / scale) : 0.0;
        substeps = static_cast<std::size_t>(std::max(64.0, by_scale));
    }
    const double h = t / static_cast<double>(substeps);
    double q = 0.0;
    double upper = kernel_time_integral(t, z);
    for (std::size_t i = 0; i < substeps; ++i) {
        const double lower = kernel_time_integral(t - static_cast<double>(i + 1) * h, z);
        q += sigma((static_cast<double>(i) + 0.5) * h, y) * (upper - lower);
        upper = lower;
    }
    return q;
}

double q_cell_average(double t, double x, double y, double dy, const SigmaSpec& sigma, std::size_t substeps) {
    if (!(t > 0.0)) throw DomainError("q_cell_average: t must be > 0");
    const double z = x - y;
    if (sigma.time_independent()) return sigma(0.0, y) * kernel_cell_average(t, z, dy);
    if (substeps == 0) {
        const double scale = sigma.time_scale();
        const double by_scale = std::isfinite(scale) ? std::ceil(8.0 * t / scale) : 0.0;
        substeps = static_cast<std::size_t>(std::max(64.0, by_scale));
    }
    const double h = t / static_cast<double>(substeps);
    double q = 0.0;
    double upper = kernel_cell_average(t, z, dy);
    for (std::size_t i = 0; i < substeps; ++i) {
        const double lower = kernel_cell_average(t - static_cast<double>(i + 1) * h, z, dy);
        q += sigma((static_cast<double>(i) + 0.5) * h, y) * (upper - lower);
        upper = lower;
    }
    return q;
}

// ------------------------------------------------------------- ThetaOperator

struct ThetaOperator::Tables {
    explicit Tables(std::size_t nx) : conv(nx) {}
    ToeplitzConvolver conv;
    std::vector<Spectrum> delta_hat;  // m = 1..M: P(m h) - P((m-1) h)
    std::vector<Spectrum> level_hat;  // n = 1..nt: P(t_n)
};

ThetaOperator::ThetaOperator(const GridSpec& grid, std::size_t substeps)
    : grid_(grid), substeps_(substeps), tables_(std::make_unique<Tables>(grid.nx)) {
    grid_.validate();
    if (substeps_ < 1) throw DomainError("theta: substeps must be >= 1");
}

ThetaOperator::~ThetaOperator() = default;
ThetaOperator::ThetaOperator(ThetaOperator&&) noexcept = default;
ThetaOperator& ThetaOperator::operator=(ThetaOperator&&) noexcept = default;

SpaceTimeField ThetaOperator::field(const MeasureSample& sample, const SigmaSpec& sigma) const {
    require_same_grid(grid_, sample.grid, "theta");
    const std::size_t nx = grid_.nx;
    const std::size_t nt = grid_.nt;
    const double dx = grid_.dx();
    auto& tb = *tables_;
    const std::size_t m = tb.conv.spectrum_size();
    SpaceTimeField out(grid_);
    if (sigma.is_zero()) return out;

    if (sigma.time_independent()) {
        if (tb.level_hat.empty()) {
            tb.level_hat.resize(nt + 1);
            for (std::size_t n = 1; n <= nt; ++n) {
                const double t = grid_.t(n);
                tb.level_hat[n] = tb.conv.kernel_spectrum(
                    offset_table(nx, dx, [t, dx](double z) { return kernel_cell_average(t, z, dx); }));
            }
        }
        std::vector<double> a(nx);
        for (std::size_t j = 0; j < nx; ++j) a[j] = sigma(0.0, grid_.x(j)) * sample.increments[j];
        const Spectrum a_hat = tb.conv.signal_spectrum(a);
        Spectrum prod(m);
        for (std::size_t n = 1; n <= nt; ++n) {
            for (std::size_t k = 0; k < m; ++k) prod[k] = tb.level_hat[n][k] * a_hat[k];
            tb.conv.inverse(prod, out.row(n));
        }
        return out;
    }

    const std::size_t r = substeps_;
    const std::size_t total = nt * r;
    const double h = grid_.dt() / static_cast<double>(r);
    if (tb.delta_hat.empty()) {
        tb.delta_hat.resize(total + 1);
        std::vector<double> prev(2 * nx - 1, 0.0);
        for (std::size_t mm = 1; mm <= total; ++mm) {
            const double tau = static_cast<double>(mm) * h;
            auto cur = offset_table(nx, dx, [tau, dx](double z) { return kernel_cell_average(tau, z, dx); });
            std::vector<double> diff(cur.size());
            for (std::size_t k = 0; k < cur.size(); ++k) diff[k] = cur[k] - prev[k];
            tb.delta_hat[mm] = tb.conv.kernel_spectrum(diff);
            prev = std::move(cur);
        }
    }

    std::vector<Spectrum> a_hat(total);
    std::vector<double> a(nx);
    for (std::size_t i = 0; i < total; ++i) {
        const double s = (static_cast<double>(i) + 0.5) * h;
        for (std::size_t j = 0; j < nx; ++j) a[j] = sigma(s, grid_.x(j)) * sample.increments[j];
        a_hat[i] = tb.conv.signal_spectrum(a);
    }
    Spectrum acc(m);
    for (std::size_t n = 1; n <= nt; ++n) {
        std::fill(acc.begin(), acc.end(), std::complex<double>(0.0, 0.0));
        const std::size_t upto = n * r;
        for (std::size_t i = 0; i < upto; ++i) complex_axpy(m, tb.delta_hat[upto - i].data(), a_hat[i].data(), acc.data());
        tb.conv.inverse(acc, out.row(n));
    }
    return out;
}

SpaceTimeField theta_field(const MeasureSample& sample, const SigmaSpec& sigma) {
    return ThetaOperator(sample.grid, theta_substeps(sample.grid, sigma)).field(sample, sigma);
}

Field theta(std::size_t t_index, const MeasureSample& sample, const SigmaSpec& sigma) {
    if (t_index > sample.grid.nt) throw DomainError("theta: time index outside grid");
    return theta_field(sample, sigma).slice(t_index);
}

Field theta_direct(std::size_t t_index, const MeasureSample& sample, const SigmaSpec& sigma) {
    const GridSpec& g = sample.grid;
    if (t_index > g.nt) throw DomainError("theta: time index outside grid");
    Field out = Field::zeros(g, g.t(t_index));
    if (t_index == 0) return out;
    const std::size_t sub = t_index * theta_substeps(g, sigma);
    const double t = g.t(t_index);
    for (std::size_t k = 0; k < g.nx; ++k) {
        double s = 0.0;
        for (std::size_t j = 0; j < g.nx; ++j) s += q_cell_average(t, g.x(k), g.x(j), g.dx(), sigma, sub) * sample.increments[j];
        out[k] = s;
    }
    return out;
}

// ------------------------------------------------------------------ envelope

namespace {

void check_envelope_params(double alpha, double theta, double lambda_tilde, double t_max) {
    if (!(theta > 1.0)) throw DomainError("envelope: theta must be > 1");
    if (!(alpha > 0.5 && alpha < 1.0)) throw DomainError("envelope: alpha must lie in (1/2, 1)");
    if (!(lambda_tilde > 0.0)) throw DomainError("envelope: lambda_tilde must be > 0");
    if (!(t_max > 0.0)) throw DomainError("envelope: t_max must be > 0");
}

struct EnvelopeTerms {
    std::vector<long> js;
    std::vector<double> weight;  // (|j|+1)^theta (mu^2 + E_j)
};

EnvelopeTerms envelope_terms(const MeasureSample& sample, double alpha, double theta) {
    EnvelopeTerms t;
    t.js = unit_intervals(sample.grid);
    for (long j : t.js) {
        const double jd = static_cast<double>(j);
        const double m = measure_of(sample, jd, jd + 1.0);
        const double e = dyadic_energy(sample, j, alpha);
        t.weight.push_back(std::pow(static_cast<double>(std::labs(j) + 1), theta) * (m * m + e));
    }
    return t;
}

double envelope_at(const EnvelopeTerms& terms, double x, double lambda_tilde, double t_max) {
    double g2 = 0.0;
    for (std::size_t k = 0; k < terms.js.size(); ++k) {
        const double d = std::abs(x - static_cast<double>(terms.js[k])) - 1.0;
        g2 += terms.weight[k] * std::exp(2.0 * (1.0 - d * d) * lambda_tilde / t_max);
    }
    return std::sqrt(g2);
}

}  // namespace

double envelope(double x, const MeasureSample& sample, double alpha, double theta, double lambda_tilde,
                double t_max) {
    check_envelope_params(alpha, theta, lambda_tilde, t_max);
    return envelope_at(envelope_terms(sample, alpha, theta), x, lambda_tilde, t_max);
}

Field envelope_field(const MeasureSample& sample, double alpha, double theta, double lambda_tilde, double t_max) {
    check_envelope_params(alpha, theta, lambda_tilde, t_max);
    const auto terms = envelope_terms(sample, alpha, theta);
    const GridSpec& g = sample.grid;
    return Field::from_function(g, [&](double x) { return envelope_at(terms, x, lambda_tilde, t_max); });
}

// ---------------------------------------------------------------- regularity

RegularityReport regularity_report(const SpaceTimeField& th, double delta_frac) {
    const GridSpec& g = th.grid();
    if (!(delta_frac > 0.0 && delta_frac < 1.0)) throw DomainError("regularity: delta must lie in (0, T)");
    RegularityReport rep;
    rep.l2_trace.resize(g.nt + 1);
    for (std::size_t n = 0; n <= g.nt; ++n) rep.l2_trace[n] = l2_norm(th.row(n), g.dx());
    for (double v : th.data()) rep.sup_bound = std::max(rep.sup_bound, std::abs(v));

    const auto first = static_cast<std::size_t>(std::ceil(delta_frac * static_cast<double>(g.nt) - 1e-9));
    const std::size_t rows = g.nt + 1 - first;
    if (rows < 16) throw DomainError("regularity: need at least 16 time levels in [delta, T]");
    if (g.nx < 32) throw DomainError("regularity: need at least 32 cells");
    if (rep.sup_bound == 0.0) {
        rep.degenerate = true;
        return rep;
    }

    std::vector<std::span<const double>> xs;
    for (std::size_t n = first; n <= g.nt; ++n) xs.push_back(th.row(n));
    const auto fx = holder_fit(xs, g.dx(), 1, 16);
    rep.gamma1_est = fx.exponent;
    rep.gamma1_se = fx.std_error;

    std::vector<std::vector<double>> cols(g.nx, std::vector<double>(rows));
    for (std::size_t n = first; n <= g.nt; ++n) {
        const auto row = th.row(n);
        for (std::size_t i = 0; i < g.nx; ++i) cols[i][n - first] = row[i];
    }
    std::vector<std::span<const double>> ts(cols.begin(), cols.end());
    const std::size_t max_lag = std::max<std::size_t>(10, std::min<std::size_t>(16, rows / 4));
    const auto ft = holder_fit(ts, g.dt(), 1, max_lag);
    rep.gamma2_est = ft.exponent;
    rep.gamma2_se = ft.std_error;
    return rep;
}

RegularityReport regularity_report(const MeasureSample& sample, const SigmaSpec& sigma, double delta_frac) {
    return regularity_report(theta_field(sample, sigma), delta_frac);
}

}  // namespace smpde
