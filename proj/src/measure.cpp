// SPDX-License-Identifier: Apache-2.0
#include "smpde/measure.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Dense>

#include <cmath>
#include <fstream>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <random>
#include <sstream>
#include <tuple>

#include "binary_io.hpp"
#include "smpde/error.hpp"

namespace smpde {

namespace {

constexpr char kMeasureMagic[9] = "SMPDEMS1";

// Neumaier compensated summation over a contiguous range of increments.
double compensated_sum(const double* first, const double* last) {
    double sum = 0.0;
    double c = 0.0;
    for (const double* p = first; p != last; ++p) {
        const double t = sum + *p;
        if (std::abs(sum) >= std::abs(*p))
            c += (sum - t) + *p;
        else
            c += (*p - t) + sum;
        sum = t;
    }
    return sum + c;
}

std::size_t edge_or_throw(const GridSpec& grid, double pos, const char* where) {
    const long e = grid.edge_index(pos);
    if (e < 0) {
        std::ostringstream os;
        os << where << ": " << pos << " is not a cell edge of the grid";
        detail::domain_fail(os.str());
    }
    return static_cast<std::size_t>(e);
}

MeasureSample make_sample(const GridSpec& grid, MeasureKind kind, std::uint64_t seed) {
    grid.validate();
    MeasureSample s;
    s.grid = grid;
    s.kind = kind;
    s.seed = seed;
    s.increments.assign(grid.nx, 0.0);
    return s;
}

struct CholeskyKey {
    std::size_t nx;
    double dx;
    double hurst;
    auto operator<=>(const CholeskyKey&) const = default;
};

// Lower Cholesky factors of fBm increment covariances, shared across seeds.
std::shared_ptr<const Eigen::MatrixXd> fbm_factor(std::size_t nx, double dx, double hurst) {
    static std::mutex mutex;
    static std::map<CholeskyKey, std::shared_ptr<const Eigen::MatrixXd>> cache;
    const CholeskyKey key{nx, dx, hurst};
    {
        std::lock_guard lock(mutex);
        if (auto it = cache.find(key); it != cache.end()) return it->second;
    }

    const double h2 = 2.0 * hurst;
    const double scale = 0.5 * std::pow(dx, h2);
    std::vector<double> gamma(nx);
    for (std::size_t k = 0; k < nx; ++k) {
        const double kd = static_cast<double>(k);
        gamma[k] = scale * (std::pow(kd + 1.0, h2) - 2.0 * std::pow(kd, h2) + std::pow(std::abs(kd - 1.0), h2));
    }
    Eigen::MatrixXd cov(nx, nx);
    for (std::size_t i = 0; i < nx; ++i)
        for (std::size_t j = 0; j < nx; ++j) cov(i, j) = gamma[i > j ? i - j : j - i];

    Eigen::LLT<Eigen::MatrixXd> llt(cov);
    if (llt.info() != Eigen::Success) {
        cov.diagonal().array() += 1e-12 * gamma[0];
        llt.compute(cov);
        if (llt.info() != Eigen::Success)
            throw DomainError("sample_fbm: increment covariance is not positive definite after jitter");
    }
    auto factor = std::make_shared<const Eigen::MatrixXd>(llt.matrixL());

    std::lock_guard lock(mutex);
    if (cache.size() > 8) cache.clear();
    cache.emplace(key, factor);
    return factor;
}

}  // namespace

std::string to_string(MeasureKind kind) {
    switch (kind) {
        case MeasureKind::wiener: return "wiener";
        case MeasureKind::weighted_wiener: return "weighted_wiener";
        case MeasureKind::fbm: return "fbm";
        case MeasureKind::alpha_stable: return "alpha_stable";
        case MeasureKind::deterministic_lebesgue: return "deterministic_lebesgue";
        case MeasureKind::explicit_increments: return "explicit_increments";
    }
    return "unknown";
}

MeasureKind measure_kind_from_string(const std::string& name) {
    for (auto k : {MeasureKind::wiener, MeasureKind::weighted_wiener, MeasureKind::fbm, MeasureKind::alpha_stable,
                   MeasureKind::deterministic_lebesgue, MeasureKind::explicit_increments}) {
        if (to_string(k) == name) return k;
    }
    throw DomainError("unknown measure kind '" + name + "'");
}

std::string to_string(WeightSpec::Kind kind) {
    switch (kind) {
        case WeightSpec::Kind::constant: return "constant";
        case WeightSpec::Kind::gaussian: return "gaussian";
        case WeightSpec::Kind::power_decay: return "power_decay";
    }
    return "unknown";
}

WeightSpec::Kind weight_kind_from_string(const std::string& name) {
    for (auto k : {WeightSpec::Kind::constant, WeightSpec::Kind::gaussian, WeightSpec::Kind::power_decay}) {
        if (to_string(k) == name) return k;
    }
    throw DomainError("weight kind '" + name + "' is not supported (constant | gaussian | power_decay)");
}

double WeightSpec::operator()(double t) const {
    switch (kind) {
        case Kind::constant: return amplitude;
        case Kind::gaussian: return amplitude * std::exp(-rate * t * t);
        case Kind::power_decay: return amplitude * std::pow(1.0 + t * t, -rate);
    }
    return 0.0;
}

void WeightSpec::validate() const {
    if (kind != Kind::constant && kind != Kind::gaussian && kind != Kind::power_decay)
        throw DomainError("weight spec: unsupported family");
    if (!std::isfinite(amplitude)) throw DomainError("weight spec: amplitude must be finite");
    if (kind != Kind::constant && !(rate > 0.0)) throw DomainError("weight spec: rate must be > 0");
}

MeasureSample sample_wiener(const GridSpec& grid, std::uint64_t seed) {
    MeasureSample s = make_sample(grid, MeasureKind::wiener, seed);
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, std::sqrt(grid.dx()));
    for (double& v : s.increments) v = normal(rng);
    return s;
}

MeasureSample sample_weighted_wiener(const GridSpec& grid, const WeightSpec& weight, std::uint64_t seed) {
    weight.validate();
    MeasureSample s = make_sample(grid, MeasureKind::weighted_wiener, seed);
    s.params.weight = weight;
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    const double sdx = std::sqrt(grid.dx());
    for (std::size_t i = 0; i < grid.nx; ++i) s.increments[i] = weight(grid.x(i)) * sdx * normal(rng);
    return s;
}

MeasureSample sample_fbm(const GridSpec& grid, double hurst, std::uint64_t seed) {
    if (!(hurst > 0.5 && hurst < 1.0)) throw DomainError("sample_fbm: Hurst index must lie in (1/2, 1)");
    MeasureSample s = make_sample(grid, MeasureKind::fbm, seed);
    s.params.hurst = hurst;
    auto factor = fbm_factor(grid.nx, grid.dx(), hurst);

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    Eigen::VectorXd z(grid.nx);
    for (std::size_t i = 0; i < grid.nx; ++i) z(i) = normal(rng);
    Eigen::VectorXd x = factor->triangularView<Eigen::Lower>() * z;
    for (std::size_t i = 0; i < grid.nx; ++i) s.increments[i] = x(i);
    return s;
}

MeasureSample sample_alpha_stable(const GridSpec& grid, double alpha, std::uint64_t seed) {
    if (!(alpha > 0.0 && alpha <= 2.0) || alpha == 1.0)
        throw DomainError("sample_alpha_stable: alpha must lie in (0,1) or (1,2]");
    MeasureSample s = make_sample(grid, MeasureKind::alpha_stable, seed);
    s.params.alpha_stable = alpha;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uniform(-0.5 * std::numbers::pi, 0.5 * std::numbers::pi);
    std::exponential_distribution<double> expo(1.0);
    const double scale = std::pow(grid.dx(), 1.0 / alpha);
    for (double& v : s.increments) {
        const double u = uniform(rng);
        const double w = expo(rng);
        const double x = std::sin(alpha * u) / std::pow(std::cos(u), 1.0 / alpha) *
                         std::pow(std::cos(u - alpha * u) / w, (1.0 - alpha) / alpha);
        v = scale * x;
    }
    return s;
}

MeasureSample lebesgue_measure(const GridSpec& grid) {
    MeasureSample s = make_sample(grid, MeasureKind::deterministic_lebesgue, 0);
    std::fill(s.increments.begin(), s.increments.end(), grid.dx());
    return s;
}

MeasureSample measure_from_increments(const GridSpec& grid, std::vector<double> increments) {
    MeasureSample s = make_sample(grid, MeasureKind::explicit_increments, 0);
    if (increments.size() != grid.nx) throw DomainError("measure_from_increments: expected nx increments");
    for (double v : increments)
        if (!std::isfinite(v)) throw DomainError("measure_from_increments: non-finite increment");
    s.increments = std::move(increments);
    return s;
}

MeasureSample sample_measure(const GridSpec& grid, MeasureKind kind, const MeasureParams& params,
                             std::uint64_t seed) {
    switch (kind) {
        case MeasureKind::wiener: return sample_wiener(grid, seed);
        case MeasureKind::weighted_wiener: return sample_weighted_wiener(grid, params.weight, seed);
        case MeasureKind::fbm: return sample_fbm(grid, params.hurst, seed);
        case MeasureKind::alpha_stable: return sample_alpha_stable(grid, params.alpha_stable, seed);
        case MeasureKind::deterministic_lebesgue: return lebesgue_measure(grid);
        case MeasureKind::explicit_increments:
            throw DomainError("sample_measure: explicit increments cannot be sampled");
    }
    throw DomainError("sample_measure: unknown kind");
}

double measure_of(const MeasureSample& sample, double a, double b) {
    if (!(a <= b)) throw DomainError("measure_of: interval must satisfy a <= b");
    const std::size_t ia = edge_or_throw(sample.grid, a, "measure_of");
    const std::size_t ib = edge_or_throw(sample.grid, b, "measure_of");
    return compensated_sum(sample.increments.data() + ia, sample.increments.data() + ib);
}

int dyadic_depth(const GridSpec& grid) {
    const double per_unit = 1.0 / grid.dx();
    const double r = std::round(per_unit);
    if (std::abs(per_unit - r) > 1e-9 || r < 1.0)
        throw DomainError("dyadic partition: unit intervals are not unions of grid cells");
    const auto m = static_cast<std::size_t>(r);
    if ((m & (m - 1)) != 0) throw DomainError("dyadic partition: cells per unit interval must be a power of two");
    int depth = 0;
    while ((std::size_t{1} << depth) < m) ++depth;
    return depth;
}

double dyadic_energy(const MeasureSample& sample, long j, double alpha) {
    return dyadic_energy(sample, j, alpha, dyadic_depth(sample.grid));
}

double dyadic_energy(const MeasureSample& sample, long j, double alpha, int depth) {
    if (!(alpha > 0.5 && alpha < 1.0)) throw DomainError("dyadic_energy: alpha must lie in (1/2, 1)");
    const int max_depth = dyadic_depth(sample.grid);
    if (depth < 1 || depth > max_depth) throw DomainError("dyadic_energy: depth outside [1, grid depth]");
    const std::size_t first = edge_or_throw(sample.grid, static_cast<double>(j), "dyadic_energy");
    edge_or_throw(sample.grid, static_cast<double>(j + 1), "dyadic_energy");

    const std::size_t cells = std::size_t{1} << max_depth;
    const double* inc = sample.increments.data() + first;
    double total = 0.0;
    for (int n = 1; n <= depth; ++n) {
        const std::size_t parts = std::size_t{1} << n;
        const std::size_t width = cells / parts;
        double inner = 0.0;
        for (std::size_t k = 0; k < parts; ++k) {
            const double m = compensated_sum(inc + k * width, inc + (k + 1) * width);
            inner += m * m;
        }
        total += std::pow(2.0, n * (1.0 - 2.0 * alpha)) * inner;
    }
    return total;
}

std::vector<long> unit_intervals(const GridSpec& grid) {
    dyadic_depth(grid);
    std::vector<long> js;
    for (long j = static_cast<long>(std::ceil(grid.x_min - 1e-12)); static_cast<double>(j) + 1.0 <= grid.x_max + 1e-12;
         ++j) {
        if (grid.edge_index(static_cast<double>(j)) >= 0 && grid.edge_index(static_cast<double>(j + 1)) >= 0)
            js.push_back(j);
    }
    return js;
}

double tail_weight(const MeasureSample& sample, double theta) {
    if (!(theta > 1.0)) throw DomainError("tail_weight: theta must be > 1");
    double total = 0.0;
    for (long j : unit_intervals(sample.grid)) {
        const double m = measure_of(sample, static_cast<double>(j), static_cast<double>(j + 1));
        total += std::pow(static_cast<double>(std::labs(j) + 1), theta) * m * m;
    }
    return total;
}

double integrate_cellwise(const MeasureSample& sample, const Field& f) {
    require_same_grid(sample.grid, f.grid(), "integrate_cellwise");
    return integrate_cellwise(sample, f.values());
}

double integrate_cellwise(const MeasureSample& sample, std::span<const double> f) {
    if (f.size() != sample.increments.size()) throw DomainError("integrate_cellwise: integrand is not cell aligned");
    double s = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) s += f[i] * sample.increments[i];
    return s;
}

MeasureSample coarsen(const MeasureSample& sample) {
    GridSpec g = sample.grid;
    if (g.nx < 4) throw DomainError("coarsen: grid too small");
    g.nx /= 2;
    MeasureSample out = sample;
    out.grid = g;
    out.increments.assign(g.nx, 0.0);
    for (std::size_t i = 0; i < g.nx; ++i) out.increments[i] = sample.increments[2 * i] + sample.increments[2 * i + 1];
    return out;
}

MeasureSample combine(double a, const MeasureSample& mu1, double b, const MeasureSample& mu2) {
    require_same_grid(mu1.grid, mu2.grid, "combine");
    std::vector<double> v(mu1.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = a * mu1.increments[i] + b * mu2.increments[i];
    return measure_from_increments(mu1.grid, std::move(v));
}

void save_measure(const MeasureSample& s, const std::filesystem::path& path) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw Error("save_measure: cannot open " + path.string());
    detail::put_magic(os, kMeasureMagic);
    detail::put<std::uint32_t>(os, static_cast<std::uint32_t>(s.kind));
    detail::put<std::uint32_t>(os, static_cast<std::uint32_t>(s.params.weight.kind));
    detail::put<double>(os, s.params.hurst);
    detail::put<double>(os, s.params.alpha_stable);
    detail::put<double>(os, s.params.weight.amplitude);
    detail::put<double>(os, s.params.weight.rate);
    detail::put<std::uint64_t>(os, s.seed);
    detail::put<double>(os, s.grid.x_min);
    detail::put<double>(os, s.grid.x_max);
    detail::put<std::uint64_t>(os, s.grid.nx);
    detail::put<double>(os, s.grid.t_max);
    detail::put<std::uint64_t>(os, s.grid.nt);
    detail::put<std::uint64_t>(os, s.increments.size());
    detail::put_doubles(os, s.increments);
    if (!os) throw Error("save_measure: write failed for " + path.string());
}

MeasureSample load_measure(const std::filesystem::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw Error("load_measure: cannot open " + path.string());
    detail::expect_magic(is, kMeasureMagic);
    MeasureSample s;
    const auto kind = detail::get<std::uint32_t>(is);
    if (kind > static_cast<std::uint32_t>(MeasureKind::explicit_increments))
        throw Error("load_measure: unknown kind tag");
    s.kind = static_cast<MeasureKind>(kind);
    const auto wkind = detail::get<std::uint32_t>(is);
    if (wkind > static_cast<std::uint32_t>(WeightSpec::Kind::power_decay)) throw Error("load_measure: unknown weight tag");
    s.params.weight.kind = static_cast<WeightSpec::Kind>(wkind);
    s.params.hurst = detail::get<double>(is);
    s.params.alpha_stable = detail::get<double>(is);
    s.params.weight.amplitude = detail::get<double>(is);
    s.params.weight.rate = detail::get<double>(is);
    s.seed = detail::get<std::uint64_t>(is);
    s.grid.x_min = detail::get<double>(is);
    s.grid.x_max = detail::get<double>(is);
    s.grid.nx = detail::get<std::uint64_t>(is);
    s.grid.t_max = detail::get<double>(is);
    s.grid.nt = detail::get<std::uint64_t>(is);
    s.grid.validate();
    const auto count = detail::get<std::uint64_t>(is);
    if (count != s.grid.nx) throw Error("load_measure: increment count does not match grid");
    s.increments = detail::get_doubles(is, count);
    return s;
}

}  // namespace smpde
