// SPDX-License-Identifier: Apache-2.0
#include "smpde/heat.hpp"

#include <boost/math/quadrature/gauss.hpp>

#include <cmath>
#include <complex>
#include <numbers>

#include "smpde/error.hpp"

namespace smpde {

namespace {

constexpr double kInvSqrtPi = 0.56418958354775628695;  // 1/sqrt(pi)
constexpr int kSubstitutionPanels = 2;

void require_positive_time(double t, const char* where) {
    if (!(t > 0.0)) detail::domain_fail(std::string(where) + ": t must be > 0");
}

// Accumulate acc += a * b over interleaved complex arrays.
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

}  // namespace

double kernel(double t, double x) {
    require_positive_time(t, "kernel");
    return 0.5 * kInvSqrtPi / std::sqrt(t) * std::exp(-x * x / (4.0 * t));
}

double kernel_dx(double t, double x) {
    require_positive_time(t, "kernel_dx");
    return -x / (2.0 * t) * kernel(t, x);
}

double kernel_time_integral(double tau, double z) {
    if (tau < 0.0) detail::domain_fail("kernel_time_integral: tau must be >= 0");
    if (tau == 0.0) return 0.0;
    const double az = std::abs(z);
    const double st = std::sqrt(tau);
    return st * kInvSqrtPi * std::exp(-z * z / (4.0 * tau)) - 0.5 * az * std::erfc(az / (2.0 * st));
}

double kernel_dx_time_integral(double a, double b, double z) {
    if (!(a >= 0.0 && b > a)) detail::domain_fail("kernel_dx_time_integral: need 0 <= a < b");
    if (z == 0.0) return 0.0;
    // 2 r p_x(r^2, z) = -z / (2 sqrt(pi) r^2) exp(-z^2 / (4 r^2)), smooth on [0, sqrt(b)].
    auto integrand = [z](double r) {
        if (r <= 0.0) return 0.0;
        const double r2 = r * r;
        return -z * 0.5 * kInvSqrtPi / r2 * std::exp(-z * z / (4.0 * r2));
    };
    const double ra = std::sqrt(a);
    const double rb = std::sqrt(b);
    // The integrand peaks at r = |z|/2; panels are graded geometrically toward it.
    std::vector<double> cuts{rb};
    const double floor_r = std::max(ra, std::abs(z) / 16.0);
    while (cuts.back() * 0.5 > floor_r) cuts.push_back(cuts.back() * 0.5);
    cuts.push_back(ra);
    double total = 0.0;
    for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
        const double hi = cuts[c];
        const double lo = cuts[c + 1];
        const double h = (hi - lo) / kSubstitutionPanels;
        for (int p = 0; p < kSubstitutionPanels; ++p)
            total += boost::math::quadrature::gauss<double, 30>::integrate(integrand, lo + p * h, lo + (p + 1) * h);
    }
    return total;
}

std::vector<double> semigroup_table(const GridSpec& grid, double t) {
    const std::size_t nx = grid.nx;
    const double dx = grid.dx();
    std::vector<double> table(2 * nx - 1, 0.0);
    if (t < kDiracThreshold) {
        table[nx - 1] = 1.0;
        return table;
    }
    for (std::size_t k = 0; k < nx; ++k) {
        const double v = kernel(t, static_cast<double>(k) * dx) * dx;
        table[nx - 1 + k] = v;
        table[nx - 1 - k] = v;
    }
    return table;
}

Field apply_semigroup(const Field& u0, double t, ConvolutionMethod method) {
    if (t < 0.0) detail::domain_fail("apply_semigroup: t must be >= 0");
    if (t == 0.0) return u0;
    const GridSpec& g = u0.grid();
    const auto table = semigroup_table(g, t);
    std::vector<double> out(g.nx);
    if (method == ConvolutionMethod::direct) {
        ToeplitzConvolver::convolve_direct(table, u0.values(), out);
    } else {
        ToeplitzConvolver conv(g.nx);
        conv.convolve(table, u0.values(), out);
    }
    return Field(g, std::move(out), u0.t_label() + t);
}

struct HeatOperators::Tables {
    explicit Tables(std::size_t nx) : conv(nx) {}

    ToeplitzConvolver conv;
    std::vector<std::vector<double>> k1;     // level l -> offsets table
    std::vector<std::vector<double>> k2;
    std::vector<Spectrum> k1_hat;
    std::vector<Spectrum> k2_hat;
    // tail[l][m] = sum_{k >= m} K2_l(k dx), m = 0..nx
    std::vector<std::vector<double>> k2_tail;
};

HeatOperators::HeatOperators(const GridSpec& grid) : grid_(grid) {
    grid_.validate();
    const std::size_t nx = grid_.nx;
    const std::size_t nt = grid_.nt;
    const double dx = grid_.dx();
    const double dt = grid_.dt();
    tables_ = std::make_unique<Tables>(nx);
    auto& tb = *tables_;
    tb.k1.resize(nt + 1);
    tb.k2.resize(nt + 1);
    tb.k1_hat.resize(nt + 1);
    tb.k2_hat.resize(nt + 1);
    tb.k2_tail.resize(nt + 1);

    for (std::size_t l = 1; l <= nt; ++l) {
        const double tau = (static_cast<double>(l) - 0.5) * dt;
        // The tail sum runs until the Gaussian factor underflows.
        const double reach = 40.0 * std::sqrt(static_cast<double>(l) * dt) / dx;
        const std::size_t kmax = nx + static_cast<std::size_t>(reach) + 2;
        std::vector<double> half(kmax + 1, 0.0);  // K2_l(k dx), k >= 0
        for (std::size_t k = 1; k <= kmax; ++k) {
            const double z = static_cast<double>(k) * dx;
            half[k] = (l == 1) ? -dx * kernel_dx_time_integral(0.0, dt, z) : -dt * dx * kernel_dx(tau, z);
        }

        auto& t1 = tb.k1[l];
        auto& t2 = tb.k2[l];
        t1.assign(2 * nx - 1, 0.0);
        t2.assign(2 * nx - 1, 0.0);
        for (std::size_t k = 0; k < nx; ++k) {
            const double v1 = dt * dx * kernel(tau, static_cast<double>(k) * dx);
            t1[nx - 1 + k] = v1;
            t1[nx - 1 - k] = v1;
            t2[nx - 1 + k] = half[k];
            t2[nx - 1 - k] = -half[k];
        }

        auto& tail = tb.k2_tail[l];
        tail.assign(nx + 1, 0.0);
        double acc = 0.0;
        for (std::size_t k = kmax; k > nx; --k) acc += half[k];
        for (std::size_t m = nx + 1; m-- > 0;) {
            acc += half[m];
            tail[m] = acc;
        }

        tb.k1_hat[l] = tb.conv.kernel_spectrum(t1);
        tb.k2_hat[l] = tb.conv.kernel_spectrum(t2);
    }
}

HeatOperators::~HeatOperators() = default;
HeatOperators::HeatOperators(HeatOperators&&) noexcept = default;
HeatOperators& HeatOperators::operator=(HeatOperators&&) noexcept = default;

std::span<const double> HeatOperators::j1_kernel(std::size_t level) const { return tables_->k1.at(level); }
std::span<const double> HeatOperators::j2_kernel(std::size_t level) const { return tables_->k2.at(level); }

Field HeatOperators::semigroup(const Field& u0, double t, ConvolutionMethod method) const {
    require_same_grid(grid_, u0.grid(), "semigroup");
    if (t < 0.0) detail::domain_fail("semigroup: t must be >= 0");
    if (t == 0.0) return u0;
    const auto table = semigroup_table(grid_, t);
    std::vector<double> out(grid_.nx);
    if (method == ConvolutionMethod::direct)
        ToeplitzConvolver::convolve_direct(table, u0.values(), out);
    else
        tables_->conv.convolve(table, u0.values(), out);
    return Field(grid_, std::move(out), u0.t_label() + t);
}

SpaceTimeField HeatOperators::semigroup_levels(const Field& u0) const {
    require_same_grid(grid_, u0.grid(), "semigroup_levels");
    SpaceTimeField out(grid_);
    out.set_row(0, u0.values());
    const Spectrum u_hat = tables_->conv.signal_spectrum(u0.values());
    Spectrum prod(u_hat.size());
    for (std::size_t n = 1; n <= grid_.nt; ++n) {
        const Spectrum k_hat = tables_->conv.kernel_spectrum(semigroup_table(grid_, grid_.t(n)));
        for (std::size_t k = 0; k < prod.size(); ++k) prod[k] = k_hat[k] * u_hat[k];
        tables_->conv.inverse(prod, out.row(n));
    }
    return out;
}

void HeatOperators::add_j2_tails(const SpaceTimeField& w, std::size_t n, std::size_t level,
                                 std::span<double> out) const {
    const std::size_t nx = grid_.nx;
    const auto src = w.row(n - level);
    const double left = src[0];
    const double right = src[nx - 1];
    const auto& tail = tables_->k2_tail[level];
    for (std::size_t i = 0; i < nx; ++i) out[i] += left * tail[i + 1] - right * tail[nx - i];
}

Field HeatOperators::j1(const SpaceTimeField& v, std::size_t n, ConvolutionMethod method) const {
    require_same_grid(grid_, v.grid(), "j1");
    if (n > grid_.nt) detail::domain_fail("j1: time index outside grid");
    std::vector<double> out(grid_.nx, 0.0);
    if (method == ConvolutionMethod::direct) {
        std::vector<double> tmp(grid_.nx);
        for (std::size_t l = 1; l <= n; ++l) {
            ToeplitzConvolver::convolve_direct(tables_->k1[l], v.row(n - l), tmp);
            for (std::size_t i = 0; i < grid_.nx; ++i) out[i] += tmp[i];
        }
    } else if (n > 0) {
        const auto& conv = tables_->conv;
        Spectrum acc(conv.spectrum_size(), 0.0), s(conv.spectrum_size());
        for (std::size_t l = 1; l <= n; ++l) {
            conv.signal_spectrum(v.row(n - l), s);
            complex_axpy(acc.size(), tables_->k1_hat[l].data(), s.data(), acc.data());
        }
        conv.inverse(acc, out);
    }
    return Field(grid_, std::move(out), grid_.t(n));
}

Field HeatOperators::j2(const SpaceTimeField& w, std::size_t n, ConvolutionMethod method) const {
    require_same_grid(grid_, w.grid(), "j2");
    if (n > grid_.nt) detail::domain_fail("j2: time index outside grid");
    std::vector<double> out(grid_.nx, 0.0);
    if (method == ConvolutionMethod::direct) {
        std::vector<double> tmp(grid_.nx);
        for (std::size_t l = 1; l <= n; ++l) {
            ToeplitzConvolver::convolve_direct(tables_->k2[l], w.row(n - l), tmp);
            for (std::size_t i = 0; i < grid_.nx; ++i) out[i] += tmp[i];
        }
    } else if (n > 0) {
        const auto& conv = tables_->conv;
        Spectrum acc(conv.spectrum_size(), 0.0), s(conv.spectrum_size());
        for (std::size_t l = 1; l <= n; ++l) {
            conv.signal_spectrum(w.row(n - l), s);
            complex_axpy(acc.size(), tables_->k2_hat[l].data(), s.data(), acc.data());
        }
        conv.inverse(acc, out);
    }
    for (std::size_t l = 1; l <= n; ++l) add_j2_tails(w, n, l, out);
    return Field(grid_, std::move(out), grid_.t(n));
}

SpaceTimeField HeatOperators::duhamel(const SpaceTimeField* v, const SpaceTimeField* w) const {
    if (v) require_same_grid(grid_, v->grid(), "duhamel");
    if (w) require_same_grid(grid_, w->grid(), "duhamel");
    const std::size_t nt = grid_.nt;
    const auto& conv = tables_->conv;
    const std::size_t m = conv.spectrum_size();
    SpaceTimeField out(grid_);
    if (!v && !w) return out;

    std::vector<Spectrum> v_hat, w_hat;
    if (v) {
        v_hat.resize(nt);
        for (std::size_t r = 0; r < nt; ++r) v_hat[r] = conv.signal_spectrum(v->row(r));
    }
    if (w) {
        w_hat.resize(nt);
        for (std::size_t r = 0; r < nt; ++r) w_hat[r] = conv.signal_spectrum(w->row(r));
    }
    Spectrum acc(m);
    for (std::size_t n = 1; n <= nt; ++n) {
        std::fill(acc.begin(), acc.end(), std::complex<double>(0.0, 0.0));
        for (std::size_t l = 1; l <= n; ++l) {
            if (v) complex_axpy(m, tables_->k1_hat[l].data(), v_hat[n - l].data(), acc.data());
            if (w) complex_axpy(m, tables_->k2_hat[l].data(), w_hat[n - l].data(), acc.data());
        }
        auto row = out.row(n);
        conv.inverse(acc, row);
        if (w)
            for (std::size_t l = 1; l <= n; ++l) add_j2_tails(*w, n, l, row);
    }
    return out;
}

Field j1(const SpaceTimeField& v, std::size_t t_index) { return HeatOperators(v.grid()).j1(v, t_index); }
Field j2(const SpaceTimeField& w, std::size_t t_index) { return HeatOperators(w.grid()).j2(w, t_index); }

}  // namespace smpde
