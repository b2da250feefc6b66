// SPDX-License-Identifier: Apache-2.0
#include "smpde/besov.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "smpde/error.hpp"

namespace smpde {

namespace {

std::size_t edge_or_throw(const GridSpec& grid, double pos, const char* where) {
    const long e = grid.edge_index(pos);
    if (e < 0) {
        std::ostringstream os;
        os << where << ": " << pos << " is not a cell edge of the grid";
        detail::domain_fail(os.str());
    }
    return static_cast<std::size_t>(e);
}

void check_alpha(double alpha, double lo, const char* where) {
    if (!(alpha > lo && alpha < 1.0)) {
        std::ostringstream os;
        os << where << ": alpha = " << alpha << " must lie in (" << lo << ", 1)";
        detail::domain_fail(os.str());
    }
}

std::vector<std::size_t> geometric_lags(std::size_t lo, std::size_t hi) {
    std::vector<std::size_t> lags;
    double v = static_cast<double>(lo);
    while (v <= static_cast<double>(hi) + 0.5) {
        const auto l = static_cast<std::size_t>(std::llround(v));
        if (lags.empty() || l != lags.back()) lags.push_back(l);
        v *= 1.25;
    }
    if (lags.back() != hi) lags.push_back(hi);
    return lags;
}

// int_lo^hi r^q dr
double power_integral(double q, double lo, double hi) {
    if (std::abs(q + 1.0) < 1e-12) return std::log(hi / lo);
    return (std::pow(hi, q + 1.0) - std::pow(lo, q + 1.0)) / (q + 1.0);
}

}  // namespace

BesovEstimate besov_norm(std::span<const double> values, double c, double d, double alpha) {
    check_alpha(alpha, 0.0, "besov_norm");
    const std::size_t m = values.size();
    if (!(d > c)) detail::domain_fail("besov_norm: need c < d");
    if (m < 4) detail::domain_fail("besov_norm: interval must span at least 4 cells");
    const double dx = (d - c) / static_cast<double>(m);

    BesovEstimate est;
    est.alpha = alpha;
    est.c = c;
    est.d = d;
    double sq = 0.0;
    for (double v : values) sq += v * v;
    est.l2_part = std::sqrt(dx * sq);

    // W[k] = w_2 at r = k dx (sup over lattice shifts h <= r)
    std::vector<double> W(m + 1, 0.0);
    for (std::size_t k = 1; k < m; ++k) {
        double s = 0.0;
        for (std::size_t i = 0; i + k < m; ++i) {
            const double diff = values[i + k] - values[i];
            s += diff * diff;
        }
        W[k] = std::max(W[k - 1], std::sqrt(dx * s));
    }
    W[m] = W[m - 1];

    // w_2 is linear in r between lattice shifts; the weight is integrated exactly.
    const double q = -2.0 * alpha - 1.0;
    double integral = 0.0;
    for (std::size_t k = 0; k < m; ++k) {
        const double lo = static_cast<double>(k) * dx;
        const double hi = lo + dx;
        const double b = (W[k + 1] - W[k]) / dx;
        const double a = W[k] - b * lo;
        double part = b * b * power_integral(q + 2.0, lo, hi);
        if (a != 0.0) part += 2.0 * a * b * power_integral(q + 1.0, lo, hi) + a * a * power_integral(q, lo, hi);
        integral += part;
    }
    est.modulus_part = std::sqrt(integral);
    est.total = est.l2_part + est.modulus_part;
    return est;
}

BesovEstimate besov_norm(const Field& g, double c, double d, double alpha) {
    if (!(d > c)) detail::domain_fail("besov_norm: need c < d");
    const std::size_t a = edge_or_throw(g.grid(), c, "besov_norm");
    const std::size_t b = edge_or_throw(g.grid(), d, "besov_norm");
    return besov_norm(g.values().subspan(a, b - a), c, d, alpha);
}

HolderFit holder_fit(const std::vector<std::span<const double>>& series, double spacing, std::size_t min_lag,
                     std::size_t max_lag) {
    if (series.empty()) detail::domain_fail("holder_fit: no samples");
    if (!(spacing > 0.0)) detail::domain_fail("holder_fit: spacing must be > 0");
    std::size_t shortest = std::numeric_limits<std::size_t>::max();
    for (const auto& s : series) shortest = std::min(shortest, s.size());
    if (shortest < 16) detail::domain_fail("holder_fit: need at least 16 samples");
    if (min_lag < 1 || max_lag < 10 * min_lag) detail::domain_fail("holder_fit: lags must span at least one decade");
    if (max_lag >= shortest) detail::domain_fail("holder_fit: largest lag exceeds the series length");

    HolderFit fit;
    for (std::size_t lag : geometric_lags(min_lag, max_lag)) {
        double sum = 0.0;
        std::size_t count = 0;
        for (const auto& s : series) {
            for (std::size_t i = 0; i + lag < s.size(); ++i) sum += std::abs(s[i + lag] - s[i]);
            count += s.size() - lag;
        }
        fit.lags.push_back(static_cast<double>(lag) * spacing);
        fit.mean_incr.push_back(sum / static_cast<double>(count));
    }
    for (double m : fit.mean_incr) {
        if (!(m > 0.0)) throw DegenerateInputError("holder_fit: increments vanish at some lag (constant input)");
    }

    const std::size_t n = fit.lags.size();
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += std::log(fit.lags[i]);
        my += std::log(fit.mean_incr[i]);
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = std::log(fit.lags[i]) - mx;
        sxx += dx * dx;
        sxy += dx * (std::log(fit.mean_incr[i]) - my);
    }
    fit.exponent = sxy / sxx;
    fit.intercept = my - fit.exponent * mx;
    double ssr = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = std::log(fit.mean_incr[i]) - fit.intercept - fit.exponent * std::log(fit.lags[i]);
        ssr += r * r;
    }
    fit.std_error = n > 2 ? std::sqrt(ssr / static_cast<double>(n - 2) / sxx) : 0.0;
    return fit;
}

HolderFit holder_fit(std::span<const double> values, double spacing, std::size_t min_lag, std::size_t max_lag) {
    return holder_fit(std::vector<std::span<const double>>{values}, spacing, min_lag, max_lag);
}

DyadicBoundCheck verify_dyadic_bound(std::span<const double> q_values, const MeasureSample& sample, long j,
                                     double alpha, double C) {
    check_alpha(alpha, 0.5, "verify_dyadic_bound");
    if (!(C >= 0.0)) detail::domain_fail("verify_dyadic_bound: C must be >= 0");
    const double jd = static_cast<double>(j);
    const std::size_t a = edge_or_throw(sample.grid, jd, "verify_dyadic_bound");
    const std::size_t b = edge_or_throw(sample.grid, jd + 1.0, "verify_dyadic_bound");
    if (q_values.size() != b - a) detail::domain_fail("verify_dyadic_bound: q must have one value per cell of [j, j+1]");

    DyadicBoundCheck out;
    const std::span<const double> mu(sample.increments.data() + a, b - a);
    double lhs = 0.0;
    for (std::size_t i = 0; i < mu.size(); ++i) lhs += q_values[i] * mu[i];
    out.lhs = std::abs(lhs);
    out.first_term = std::abs(q_values[0] * measure_of(sample, jd, jd + 1.0));
    out.besov = besov_norm(q_values, jd, jd + 1.0, alpha).total;
    out.energy = dyadic_energy(sample, j, alpha);
    const double scale = out.besov * std::sqrt(out.energy);
    out.rhs = out.first_term + C * scale;

    const double excess = out.lhs - out.first_term;
    if (excess <= 0.0)
        out.c_required = 0.0;
    else
        out.c_required = scale > 0.0 ? excess / scale : std::numeric_limits<double>::infinity();

    if (out.rhs > 0.0)
        out.slack = out.lhs / out.rhs;
    else
        out.slack = out.lhs > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
    out.holds = out.lhs <= out.rhs * (1.0 + 1e-12) + 1e-300;
    return out;
}

DyadicBoundCheck verify_dyadic_bound(const Field& q, const MeasureSample& sample, long j, double alpha, double C) {
    require_same_grid(q.grid(), sample.grid, "verify_dyadic_bound");
    const double jd = static_cast<double>(j);
    const std::size_t a = edge_or_throw(q.grid(), jd, "verify_dyadic_bound");
    const std::size_t b = edge_or_throw(q.grid(), jd + 1.0, "verify_dyadic_bound");
    return verify_dyadic_bound(q.values().subspan(a, b - a), sample, j, alpha, C);
}

}  // namespace smpde
