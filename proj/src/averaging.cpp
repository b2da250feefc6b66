// SPDX-License-Identifier: Apache-2.0
#include "smpde/averaging.hpp"
#include "smpde/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <sstream>

#include <boost/math/quadrature/gauss.hpp>

#include "smpde/error.hpp"

namespace smpde {

namespace {

using Gauss = boost::math::quadrature::gauss<double, 10>;

double integrate(const std::function<double(double)>& fn, double a, double b, std::size_t panels) {
    const double h = (b - a) / static_cast<double>(panels);
    double s = 0.0;
    for (std::size_t k = 0; k < panels; ++k) {
        const double lo = a + static_cast<double>(k) * h;
        s += Gauss::integrate(fn, lo, lo + h);
    }
    return s;
}

// sup_{r in [0, R]} |int_0^r (phi - mean)| on a uniform lattice of `cells` steps.
struct Excursion {
    double sup = 0.0;
    double r_at = 0.0;
};

Excursion excursion(const std::function<double(double)>& phi, double mean, double R, std::size_t cells) {
    const double h = R / static_cast<double>(cells);
    auto centered = [&](double s) { return phi(s) - mean; };
    Excursion e;
    double acc = 0.0;
    for (std::size_t k = 0; k < cells; ++k) {
        const double lo = static_cast<double>(k) * h;
        acc += Gauss::integrate(centered, lo, lo + h);
        if (std::abs(acc) > e.sup) {
            e.sup = std::abs(acc);
            e.r_at = lo + h;
        }
    }
    return e;
}

constexpr std::size_t kCellsPerPeriod = 2048;

// G-sup of a scalar time factor (the spatial factor is applied by the caller)
GSigmaReport factor_sup(const std::function<double(double)>& phi, double period, double r_max) {
    GSigmaReport rep;
    if (period > 0.0) {
        const double mean = integrate(phi, 0.0, period, 64) / period;
        const auto whole = static_cast<std::size_t>(std::floor(r_max / period + 1e-12));
        const std::size_t periods = std::max<std::size_t>(1, std::min<std::size_t>(whole, 16));
        auto centered = [&](double s) { return phi(s) - mean; };
        const double h = period / static_cast<double>(kCellsPerPeriod);
        double acc = 0.0, first = 0.0;
        for (std::size_t p = 0; p < periods; ++p) {
            const double offset = static_cast<double>(p) * period;
            double sup_p = 0.0, r_p = offset;
            for (std::size_t k = 0; k < kCellsPerPeriod; ++k) {
                const double lo = offset + static_cast<double>(k) * h;
                acc += Gauss::integrate(centered, lo, lo + h);
                if (std::abs(acc) > sup_p) {
                    sup_p = std::abs(acc);
                    r_p = lo + h;
                }
            }
            if (p == 0) first = sup_p;
            if (sup_p > first * (1.0 + 1e-6) + 1e-12) {
                std::ostringstream os;
                os << "g_sigma_sup: the running integral of sigma - sigma_bar grows from period to period ("
                   << first << " in the first period, " << sup_p << " in period " << p + 1
                   << "); the boundedness assumption on G_sigma fails";
                throw AssumptionError(os.str());
            }
            if (sup_p > rep.sup) {
                rep.sup = sup_p;
                rep.r_at_sup = r_p;
            }
        }
        rep.periods_checked = periods;
        return rep;
    }
    const double half = 0.5 * r_max;
    const double m_half = integrate(phi, 0.0, half, 256) / half;
    const double m_full = integrate(phi, 0.0, r_max, 512) / r_max;
    const auto e_half = excursion(phi, m_half, half, 4096);
    const auto e_full = excursion(phi, m_full, r_max, 8192);
    const double scale = std::max({std::abs(m_full), e_full.sup, 1e-300});
    if (std::abs(m_full - m_half) > 1e-6 * scale || e_full.sup > 1.1 * e_half.sup + 1e-12) {
        std::ostringstream os;
        os << "g_sigma_sup: sigma has no declared period and its running integral keeps growing (sup "
           << e_half.sup << " on [0, " << half << "], " << e_full.sup << " on [0, " << r_max
           << "]); the boundedness assumption on G_sigma fails";
        throw AssumptionError(os.str());
    }
    rep.sup = e_full.sup;
    rep.r_at_sup = e_full.r_at;
    return rep;
}

}  // namespace

double period_mean(const TimeFactor& phi) {
    const double p = phi.declared_period();
    if (!(p > 0.0)) throw DomainError("sigma_bar: time factor '" + to_string(phi.kind) + "' has no period; the time average is not computable");
    if (phi.kind == TimeFactor::Kind::harmonic) return phi.offset;
    const double m = integrate([&](double s) { return phi(s); }, 0.0, p, 64) / p;
    return m;
}

SigmaSpec sigma_bar(const SigmaSpec& sigma) {
    if (sigma.time_independent()) return sigma;
    switch (sigma.family()) {
        case SigmaSpec::Family::constant: return sigma;
        case SigmaSpec::Family::separable_periodic: {
            const double m = period_mean(sigma.time_factor());
            return SigmaSpec::separable(TimeFactor::constant(m), sigma.profile(), sigma.bounds());
        }
        case SigmaSpec::Family::custom_table:
            throw DomainError("sigma_bar: tabulated sigma varies in time without a period; the time average is not computable");
    }
    return sigma;
}

GSigmaReport g_sigma_sup(const SigmaSpec& sigma, double r_max) {
    if (!(r_max > 0.0)) throw DomainError("g_sigma_sup: r_max must be > 0");
    if (sigma.time_independent()) return {};
    switch (sigma.family()) {
        case SigmaSpec::Family::constant: return {};
        case SigmaSpec::Family::separable_periodic: {
            const TimeFactor& phi = sigma.time_factor();
            const double c = sigma.profile().sup_abs();
            auto rep = factor_sup([&](double s) { return phi(s); }, phi.declared_period(), r_max);
            rep.sup *= c;
            return rep;
        }
        case SigmaSpec::Family::custom_table: {
            GSigmaReport best;
            for (std::size_t i = 0; i < sigma.table_cells(); ++i) {
                const double y = sigma.table_x0() + (static_cast<double>(i) + 0.5) * sigma.table_dx();
                const auto rep = factor_sup([&](double s) { return sigma(s, y); }, 0.0, r_max);
                if (rep.sup > best.sup) best = rep;
            }
            return best;
        }
    }
    return {};
}

// ------------------------------------------------------------------ experiment

void AveragingScenario::validate() const {
    grid.validate();
    coeffs.validate();
    if (eps_list.empty()) throw DomainError("averaging: eps_list is empty");
    for (std::size_t k = 0; k < eps_list.size(); ++k) {
        if (!(eps_list[k] > 0.0)) throw DomainError("averaging: every epsilon must be > 0");
        if (k > 0 && !(eps_list[k] < eps_list[k - 1])) throw DomainError("averaging: eps_list must be strictly decreasing");
    }
    const auto fam = coeffs.sigma.family();
    if (fam == SigmaSpec::Family::custom_table)
        throw DomainError("averaging: sigma must be constant or separable with a periodic time factor");
    if (!coeffs.sigma.time_independent() && !(coeffs.sigma.time_factor().declared_period() > 0.0))
        throw DomainError("averaging: the time factor of sigma needs a declared period");
}

AveragingScenario AveragingScenario::standard() {
    AveragingScenario s;
    s.coeffs = CoefficientSet::burgers();
    s.coeffs.sigma = SigmaSpec::separable(TimeFactor::harmonic(1.0, 1.0, 1.0), Profile::gaussian(1.0, 1.0),
                                          SigmaSpec::Bounds{2.0, 2.0, 0.75});
    s.seed = 20240601;
    return s;
}

RateFit fit_rate(const std::vector<double>& eps, const std::vector<double>& values) {
    std::vector<double> lx, ly;
    for (std::size_t k = 0; k < eps.size() && k < values.size(); ++k) {
        if (eps[k] > 0.0 && values[k] > 0.0) {
            lx.push_back(std::log(eps[k]));
            ly.push_back(std::log(values[k]));
        }
    }
    RateFit f;
    const std::size_t n = lx.size();
    if (n < 2) return f;
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += lx[i];
        my += ly[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (lx[i] - mx) * (lx[i] - mx);
        sxy += (lx[i] - mx) * (ly[i] - my);
    }
    if (sxx == 0.0) return f;
    f.exponent = sxy / sxx;
    double ssr = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = ly[i] - my - f.exponent * (lx[i] - mx);
        ssr += r * r;
    }
    f.std_error = n > 2 ? std::sqrt(ssr / static_cast<double>(n - 2) / sxx) : 0.0;
    f.valid = true;
    return f;
}

ConvergenceTable averaging_experiment(const AveragingScenario& scenario) {
    scenario.validate();
    return averaging_experiment(scenario,
                                sample_measure(scenario.grid, scenario.measure, scenario.measure_params, scenario.seed));
}

ConvergenceTable averaging_experiment(const AveragingScenario& sc, const MeasureSample& sample) {
    sc.validate();
    require_same_grid(sc.grid, sample.grid, "averaging_experiment");
    SolverConfig cfg = sc.solver;
    cfg.grid = sc.grid;

    const SigmaSpec bar = sigma_bar(sc.coeffs.sigma);
    CoefficientSet bar_coeffs = sc.coeffs;
    bar_coeffs.sigma = bar;
    SpaceTimeField theta_bar = theta_field(sample, bar);
    const MildOperator bar_op(bar_coeffs, theta_bar);
    const auto bar_res = picard_solve(bar_op, cfg);

    ConvergenceTable table;
    table.bar_iterations = bar_res.report.iterations;
    table.rows = parallel_map(sc.eps_list.size(), sc.threads, [&](std::size_t k) {
        const double eps = sc.eps_list[k];
        CoefficientSet c = sc.coeffs;
        c.sigma = sc.coeffs.sigma.time_scaled(eps);
        SolveResult res;
        SpaceTimeField th = theta_field(sample, c.sigma);
        try {
            const MildOperator op(c, th);
            res = picard_solve(op, cfg);
        } catch (const ConvergenceError& e) {
            std::ostringstream os;
            os << "averaging (epsilon = " << eps << "): " << e.what();
            throw ConvergenceError(os.str(), e.distances);
        } catch (const Error& e) {
            std::ostringstream os;
            os << "averaging (epsilon = " << eps << "): " << e.what();
            throw Error(os.str());
        }
        ConvergenceRow row;
        row.epsilon = eps;
        row.iterations = res.report.iterations;
        const GridSpec& g = sc.grid;
        for (std::size_t n = 0; n <= g.nt; ++n) {
            const auto a = res.u.row(n);
            const auto b = bar_res.u.row(n);
            double s = 0.0;
            for (std::size_t i = 0; i < g.nx; ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
            row.sup_t_l2_distance = std::max(row.sup_t_l2_distance, std::sqrt(s * g.dx()));
        }
        const auto ta = th.data();
        const auto tb = theta_bar.data();
        for (std::size_t i = 0; i < ta.size(); ++i) row.xi_sup = std::max(row.xi_sup, std::abs(ta[i] - tb[i]));
        return row;
    });
    std::vector<double> dists, xis;
    for (const auto& r : table.rows) {
        dists.push_back(r.sup_t_l2_distance);
        xis.push_back(r.xi_sup);
    }
    table.distance_rate = fit_rate(sc.eps_list, dists);
    table.xi_rate = fit_rate(sc.eps_list, xis);
    return table;
}

// ------------------------------------------------------------------- Gronwall

namespace {

double gronwall_log_term(double n, double log_g, double log_z) {
    return n * log_g - std::lgamma(n / 4.0) + (n / 4.0 - 1.0) * log_z;
}

}  // namespace

GronwallValue gronwall_series(double z, double tol) {
    if (!(z > 0.0)) throw DomainError("gronwall_series: z must be > 0");
    if (!(tol > 0.0)) throw DomainError("gronwall_series: tol must be > 0");
    const double log_g = std::lgamma(0.25);
    const double log_z = std::log(z);
    GronwallValue out;
    double sum = 0.0;
    for (std::size_t n = 1;; ++n) {
        const double term = std::exp(gronwall_log_term(static_cast<double>(n), log_g, log_z));
        if (!std::isfinite(term) || !std::isfinite(sum + term)) {
            std::ostringstream os;
            os << "gronwall_series: overflow at z = " << z << " (term " << n << ")";
            throw DomainError(os.str());
        }
        sum += term;
        out.terms = n;
        const double next = std::exp(gronwall_log_term(static_cast<double>(n + 1), log_g, log_z));
        // terms rise to a single peak and then fall; stop only on the falling side
        if (next <= term && next < tol * std::abs(sum)) break;
        if (n > 10'000'000) throw DomainError("gronwall_series: no convergence");
    }
    out.value = sum;
    return out;
}

double gronwall_partial_sum(double z, std::size_t n_terms) {
    if (!(z > 0.0)) throw DomainError("gronwall_series: z must be > 0");
    const double log_g = std::lgamma(0.25);
    const double log_z = std::log(z);
    double sum = 0.0;
    for (std::size_t n = 1; n <= n_terms; ++n) sum += std::exp(gronwall_log_term(static_cast<double>(n), log_g, log_z));
    return sum;
}

}  // namespace smpde
