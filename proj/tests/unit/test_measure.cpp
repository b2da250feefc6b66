// SPDX-License-Identifier: Apache-2.0
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <random>

#include "smpde/error.hpp"
#include "smpde/measure.hpp"

using namespace smpde;

namespace {

double sample_variance(const std::vector<double>& xs) {
    double m = 0.0;
    for (double x : xs) m += x;
    m /= static_cast<double>(xs.size());
    double v = 0.0;
    for (double x : xs) v += (x - m) * (x - m);
    return v / static_cast<double>(xs.size() - 1);
}

double median_abs(std::vector<double> v) {
    for (double& x : v) x = std::abs(x);
    std::nth_element(v.begin(), v.begin() + v.size() / 2, v.end());
    return v[v.size() / 2];
}

}  // namespace

TEST_CASE("wiener: cell variance and unit interval") {
    const GridSpec g{-1.0, 1.0, 64, 1.0, 1};
    double second = 0.0;
    std::vector<double> unit;
    const int seeds = 10000;
    for (int s = 0; s < seeds; ++s) {
        const auto mu = sample_wiener(g, static_cast<std::uint64_t>(s));
        for (double v : mu.increments) second += v * v;
        unit.push_back(measure_of(mu, 0.0, 1.0));
    }
    second /= static_cast<double>(seeds) * static_cast<double>(g.nx);
    CHECK(std::abs(second / g.dx() - 1.0) < 0.05);
    CHECK(std::abs(sample_variance(unit) - 1.0) < 0.05);

    const auto a = sample_wiener(g, 42);
    const auto b = sample_wiener(g, 42);
    CHECK(a.increments == b.increments);
    CHECK(a.increments != sample_wiener(g, 43).increments);
}

TEST_CASE("weighted wiener") {
    const GridSpec g{-1.0, 1.0, 64, 1.0, 1};
    const WeightSpec one{WeightSpec::Kind::constant, 1.0, 0.0};
    const WeightSpec gauss{WeightSpec::Kind::gaussian, 1.0, 1.0};
    const WeightSpec zero{WeightSpec::Kind::constant, 0.0, 0.0};

    // unit weight reproduces the Wiener generator cell for cell
    CHECK(sample_weighted_wiener(g, one, 5).increments == sample_wiener(g, 5).increments);

    std::vector<double> unit;
    for (int s = 0; s < 10000; ++s) unit.push_back(measure_of(sample_weighted_wiener(g, gauss, s), 0.0, 1.0));
    // int_0^1 exp(-2 t^2) dt
    CHECK(std::abs(sample_variance(unit) / 0.598144 - 1.0) < 0.05);

    const auto z = sample_weighted_wiener(g, zero, 3);
    CHECK(std::all_of(z.increments.begin(), z.increments.end(), [](double v) { return v == 0.0; }));

    WeightSpec bad = gauss;
    bad.rate = -1.0;
    CHECK_THROWS_AS(sample_weighted_wiener(g, bad, 1), DomainError);
    CHECK_THROWS_AS(weight_kind_from_string("cauchy"), DomainError);
}

TEST_CASE("fractional brownian increments") {
    const GridSpec g{0.0, 2.0, 64, 1.0, 1};
    std::vector<double> a, b;
    double cov = 0.0;
    const int seeds = 10000;
    for (int s = 0; s < seeds; ++s) {
        const auto mu = sample_fbm(g, 0.75, s);
        a.push_back(measure_of(mu, 0.0, 1.0));
        b.push_back(measure_of(mu, 1.0, 2.0));
        cov += a.back() * b.back();
    }
    cov /= seeds;
    const double expected = (std::pow(2.0, 1.5) - 2.0) / 2.0;
    CHECK(expected == doctest::Approx(0.41421).epsilon(1e-4));
    CHECK(std::abs(cov / expected - 1.0) < 0.05);
    CHECK(std::abs(sample_variance(a) - 1.0) < 0.05);

    CHECK_THROWS_AS(sample_fbm(g, 0.5, 1), DomainError);
    CHECK_THROWS_AS(sample_fbm(g, 1.0, 1), DomainError);
    CHECK(sample_fbm(g, 0.75, 9).increments == sample_fbm(g, 0.75, 9).increments);
}

TEST_CASE("alpha stable") {
    const GridSpec g{0.0, 1.0, 256, 1.0, 1};
    // alpha = 2 reduces to N(0, 2 dx)
    double second = 0.0;
    std::size_t count = 0;
    for (int s = 0; s < 200; ++s) {
        for (double v : sample_alpha_stable(g, 2.0, s).increments) {
            second += v * v;
            ++count;
        }
    }
    CHECK(std::abs(second / count / (2.0 * g.dx()) - 1.0) < 0.05);

    // median |increment| scales as dx^{1/alpha}
    const double alpha = 1.5;
    const GridSpec coarse{0.0, 1.0, 64, 1.0, 1};
    std::vector<double> fine_all, coarse_all;
    for (int s = 0; s < 200; ++s) {
        auto f = sample_alpha_stable(g, alpha, s).increments;
        auto c = sample_alpha_stable(coarse, alpha, 1000 + s).increments;
        fine_all.insert(fine_all.end(), f.begin(), f.end());
        coarse_all.insert(coarse_all.end(), c.begin(), c.end());
    }
    const double ratio = median_abs(coarse_all) / median_abs(fine_all);
    CHECK(std::abs(ratio / std::pow(4.0, 1.0 / alpha) - 1.0) < 0.10);

    CHECK_THROWS_AS(sample_alpha_stable(g, 1.0, 1), DomainError);
    CHECK_THROWS_AS(sample_alpha_stable(g, 2.5, 1), DomainError);
    CHECK_THROWS_AS(sample_alpha_stable(g, 0.0, 1), DomainError);
    CHECK(sample_alpha_stable(g, 0.7, 4).increments == sample_alpha_stable(g, 0.7, 4).increments);
}

TEST_CASE("measure_of and additivity") {
    const GridSpec g{-4.0, 4.0, 256, 1.0, 1};
    const auto mu = sample_wiener(g, 17);
    double total = 0.0;
    for (double v : mu.increments) total += v;
    CHECK(measure_of(mu, -4.0, 4.0) == doctest::Approx(total).epsilon(1e-12));
    CHECK(measure_of(mu, 1.0, 1.0) == 0.0);
    const double dx = g.dx();
    CHECK(measure_of(mu, 0.0, 2 * dx) == doctest::Approx(mu.increments[128] + mu.increments[129]).epsilon(1e-15));
    CHECK_THROWS_AS(measure_of(mu, 0.01, 1.0), DomainError);
    CHECK_THROWS_AS(measure_of(mu, 1.0, 0.0), DomainError);

    std::mt19937_64 rng(3);
    std::uniform_int_distribution<int> cut(0, 256);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<int> edges{cut(rng), cut(rng), cut(rng), cut(rng)};
        std::sort(edges.begin(), edges.end());
        const auto at = [&](int e) { return g.x_min + e * dx; };
        double parts = 0.0;
        for (std::size_t k = 0; k + 1 < edges.size(); ++k) parts += measure_of(mu, at(edges[k]), at(edges[k + 1]));
        CHECK(std::abs(parts - measure_of(mu, at(edges.front()), at(edges.back()))) <= 1e-12);
    }
}

TEST_CASE("dyadic energy") {
    const GridSpec g{0.0, 1.0, 64, 1.0, 1};
    CHECK(dyadic_depth(g) == 6);
    const double alpha = 0.75;

    const auto leb = lebesgue_measure(g);
    double truncated = 0.0;
    for (int n = 1; n <= 6; ++n) truncated += std::pow(2.0, -2.0 * n * alpha);
    CHECK(dyadic_energy(leb, 0, alpha) == doctest::Approx(truncated).epsilon(1e-12));
    // infinite-depth limit
    CHECK(1.0 / (std::pow(2.0, 2 * alpha) - 1.0) == doctest::Approx(0.546918).epsilon(1e-6));

    double expect = 0.0;
    for (int n = 1; n <= 6; ++n) expect += std::pow(2.0, n * (1.0 - 2 * alpha));
    double mean = 0.0;
    const int seeds = 10000;
    for (int s = 0; s < seeds; ++s) mean += dyadic_energy(sample_wiener(g, s), 0, alpha);
    mean /= seeds;
    CHECK(std::abs(mean / expect - 1.0) < 0.05);
    CHECK(1.0 / (std::sqrt(2.0) - 1.0) == doctest::Approx(2.41421).epsilon(1e-5));

    const auto zero = measure_from_increments(g, std::vector<double>(64, 0.0));
    CHECK(dyadic_energy(zero, 0, alpha) == 0.0);

    const auto w = sample_wiener(g, 99);
    double prev = 0.0;
    for (int d = 1; d <= 6; ++d) {
        const double e = dyadic_energy(w, 0, alpha, d);
        CHECK(e >= prev);
        prev = e;
    }
    CHECK_THROWS_AS(dyadic_energy(w, 0, 0.5), DomainError);
    CHECK_THROWS_AS(dyadic_energy(w, 0, 1.0), DomainError);
    CHECK_THROWS_AS(dyadic_depth(GridSpec{}), DomainError);
}

TEST_CASE("tail weight") {
    const GridSpec g{-8.0, 8.0, 1024, 1.0, 1};
    CHECK(tail_weight(measure_from_increments(g, std::vector<double>(1024, 0.0)), 2.0) == 0.0);

    std::vector<double> single(1024, 0.0);
    single[512] = 1.0;  // inside (0, 1]
    CHECK(tail_weight(measure_from_increments(g, single), 2.0) == doctest::Approx(1.0));

    double expect = 0.0;
    for (long j = -8; j <= 7; ++j) expect += std::pow(std::labs(j) + 1.0, 2.0);
    double mean = 0.0;
    const int seeds = 10000;
    for (int s = 0; s < seeds; ++s) mean += tail_weight(sample_wiener(g, s), 2.0);
    mean /= seeds;
    CHECK(std::abs(mean / expect - 1.0) < 0.05);

    // the same direct sum on the symmetric twenty-interval window
    double window = 0.0;
    for (long j = -10; j <= 9; ++j) window += std::pow(std::labs(j) + 1.0, 2.0);
    CHECK(window == doctest::Approx(890.0));

    CHECK_THROWS_AS(tail_weight(sample_wiener(g, 1), 1.0), DomainError);
}

TEST_CASE("integrate_cellwise") {
    const GridSpec g{-2.0, 2.0, 128, 1.0, 1};
    const auto mu = sample_wiener(g, 8);
    const Field one = Field::from_function(g, [](double) { return 1.0; });
    CHECK(integrate_cellwise(mu, one) == doctest::Approx(measure_of(mu, -2.0, 2.0)).epsilon(1e-12));
    const Field ind = Field::from_function(g, [](double x) { return (x > 0.0 && x < 1.0) ? 1.0 : 0.0; });
    CHECK(integrate_cellwise(mu, ind) == doctest::Approx(measure_of(mu, 0.0, 1.0)).epsilon(1e-12));

    std::mt19937_64 rng(2);
    std::normal_distribution<double> n;
    for (int trial = 0; trial < 20; ++trial) {
        const Field f = Field::from_function(g, [&](double) { return n(rng); });
        const Field h = Field::from_function(g, [&](double) { return n(rng); });
        const double a = n(rng), b = n(rng);
        const double lhs = integrate_cellwise(mu, a * f + b * h);
        const double rhs = a * integrate_cellwise(mu, f) + b * integrate_cellwise(mu, h);
        CHECK(std::abs(lhs - rhs) <= 1e-12 * (1.0 + std::abs(rhs)));
    }
    CHECK_THROWS_AS(integrate_cellwise(mu, Field::zeros(GridSpec{-2.0, 2.0, 64, 1.0, 1})), DomainError);
}

TEST_CASE("square-summable family: relative tail at the boundary") {
    // partial sums of sum_j ((|j|+1)^{theta/2} mu((j,j+1]))^2 ordered outward in |j|
    const GridSpec g{-8.0, 8.0, 512, 1.0, 1};
    const WeightSpec xi{WeightSpec::Kind::gaussian, 1.0, 1.0};
    int good = 0;
    for (int s = 0; s < 100; ++s) {
        const auto mu = sample_weighted_wiener(g, xi, s);
        std::vector<std::pair<long, double>> terms;
        for (long j : unit_intervals(g)) {
            const double m = measure_of(mu, j, j + 1);
            terms.emplace_back(std::labs(j < 0 ? j + 1 : j), std::pow(std::labs(j) + 1.0, 2.0) * m * m);
        }
        std::sort(terms.begin(), terms.end(), [](auto& a, auto& b) { return a.first < b.first; });
        double total = 0.0, outer = 0.0;
        for (auto& [r, v] : terms) {
            total += v;
            if (r == terms.back().first) outer += v;
        }
        if (total > 0.0 && outer / total < 0.01) ++good;
    }
    CHECK(good >= 95);
}

TEST_CASE("coarsen, combine and persistence") {
    const GridSpec g{-2.0, 2.0, 64, 1.0, 1};
    const auto mu = sample_fbm(g, 0.7, 21);
    const auto c = coarsen(mu);
    CHECK(c.grid.nx == 32);
    CHECK(measure_of(c, -1.0, 1.5) == doctest::Approx(measure_of(mu, -1.0, 1.5)).epsilon(1e-13));

    const auto w = sample_wiener(g, 4);
    const auto mix = combine(2.0, mu, -1.0, w);
    CHECK(mix.increments[7] == doctest::Approx(2.0 * mu.increments[7] - w.increments[7]));

    const auto path = std::filesystem::temp_directory_path() / "smpde_measure_roundtrip.bin";
    save_measure(mu, path);
    const auto back = load_measure(path);
    CHECK(back.increments == mu.increments);
    CHECK(back.grid == mu.grid);
    CHECK(back.kind == mu.kind);
    CHECK(back.seed == mu.seed);
    CHECK(back.params == mu.params);
    std::filesystem::remove(path);

    CHECK(measure_kind_from_string("fbm") == MeasureKind::fbm);
    CHECK_THROWS_AS(measure_kind_from_string("rosenblatt"), DomainError);
}
