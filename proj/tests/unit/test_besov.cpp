// SPDX-License-Identifier: Apache-2.0
#include "doctest.h"

#include <cmath>
#include <random>

#include "smpde/besov.hpp"
#include "smpde/error.hpp"

using namespace smpde;

namespace {

std::vector<double> cells(std::size_t m, double c, double d, auto&& fn) {
    std::vector<double> v(m);
    const double dx = (d - c) / static_cast<double>(m);
    for (std::size_t i = 0; i < m; ++i) v[i] = fn(c + (i + 0.5) * dx);
    return v;
}

}  // namespace

TEST_CASE("besov norm examples") {
    const auto cst = cells(64, 0.0, 1.0, [](double) { return -3.0; });
    const auto e = besov_norm(cst, 0.0, 1.0, 0.6);
    CHECK(e.modulus_part == 0.0);
    CHECK(e.total == doctest::Approx(3.0).epsilon(1e-14));
    CHECK(e.total == e.l2_part + e.modulus_part);

    // ramp against the same definition at 16x resolution
    const auto ramp = besov_norm(cells(64, 0.0, 1.0, [](double y) { return y; }), 0.0, 1.0, 0.6);
    const auto dense = besov_norm(cells(1024, 0.0, 1.0, [](double y) { return y; }), 0.0, 1.0, 0.6);
    CHECK(std::abs(ramp.total / dense.total - 1.0) < 0.02);

    // single-cell spike of height 1/sqrt(dx): modulus ~ dx^{-alpha}
    const double alpha = 0.6;
    auto spike = [](std::size_t m) {
        std::vector<double> v(m, 0.0);
        v[m / 2] = std::sqrt(static_cast<double>(m));
        return v;
    };
    const double r = besov_norm(spike(256), 0.0, 1.0, alpha).modulus_part /
                     besov_norm(spike(128), 0.0, 1.0, alpha).modulus_part;
    CHECK(std::abs(r / std::pow(2.0, alpha) - 1.0) < 0.15);

    CHECK_THROWS_AS(besov_norm(cst, 0.0, 1.0, 0.0), DomainError);
    CHECK_THROWS_AS(besov_norm(cst, 0.0, 1.0, 1.0), DomainError);
    CHECK_THROWS_AS(besov_norm(std::vector<double>{1, 2, 3}, 0.0, 1.0, 0.5), DomainError);
}

TEST_CASE("besov norm from a field") {
    const GridSpec g{-2.0, 2.0, 256, 1.0, 1};
    const Field f = Field::from_function(g, [](double y) { return std::sin(3 * y); });
    const auto a = besov_norm(f, 0.0, 1.0, 0.7);
    const auto b = besov_norm(cells(64, 0.0, 1.0, [](double y) { return std::sin(3 * y); }), 0.0, 1.0, 0.7);
    CHECK(a.total == doctest::Approx(b.total).epsilon(1e-14));
    CHECK_THROWS_AS(besov_norm(f, 0.01, 1.0, 0.7), DomainError);
}

TEST_CASE("besov norm is a norm and monotone in alpha") {
    std::mt19937_64 rng(4);
    std::normal_distribution<double> n;
    for (int trial = 0; trial < 30; ++trial) {
        std::vector<double> f(64), h(64), sum(64), scaled(64);
        const double lam = n(rng);
        for (std::size_t i = 0; i < 64; ++i) {
            f[i] = n(rng);
            h[i] = n(rng);
            sum[i] = f[i] + h[i];
            scaled[i] = lam * f[i];
        }
        const double nf = besov_norm(f, 0.0, 1.0, 0.7).total;
        const double nh = besov_norm(h, 0.0, 1.0, 0.7).total;
        CHECK(besov_norm(sum, 0.0, 1.0, 0.7).total <= nf + nh + 1e-10);
        CHECK(std::abs(besov_norm(scaled, 0.0, 1.0, 0.7).total - std::abs(lam) * nf) <= 1e-10 * (1 + nf));

        double prev = 0.0;
        for (double a : {0.55, 0.65, 0.75, 0.85, 0.95}) {
            const double m = besov_norm(f, 0.0, 1.0, a).modulus_part;
            CHECK(m >= prev);
            prev = m;
        }
    }
}

TEST_CASE("holder fit") {
    std::vector<double> ramp(512);
    for (std::size_t i = 0; i < ramp.size(); ++i) ramp[i] = 0.01 * i;
    const auto lin = holder_fit(ramp, 0.01, 1, 32);
    CHECK(std::abs(lin.exponent - 1.0) <= 0.01);

    std::mt19937_64 rng(2024);
    std::normal_distribution<double> n;
    std::vector<double> path(4096, 0.0);
    const double h = 1.0 / 4096;
    for (std::size_t i = 1; i < path.size(); ++i) path[i] = path[i - 1] + std::sqrt(h) * n(rng);
    const auto bm = holder_fit(path, h, 1, 64);
    CHECK(std::abs(bm.exponent - 0.5) <= 0.1);
    CHECK(bm.std_error > 0.0);

    std::vector<double> flat(100, 2.0);
    CHECK_THROWS_AS(holder_fit(flat, 1.0, 1, 20), DegenerateInputError);
    CHECK_THROWS_AS(holder_fit(std::vector<double>(8, 1.0), 1.0, 1, 10), DomainError);
    CHECK_THROWS_AS(holder_fit(ramp, 1.0, 2, 10), DomainError);
}

TEST_CASE("dyadic bound: trivial cases and scaling") {
    const GridSpec g{-2.0, 2.0, 256, 1.0, 1};
    const auto mu = sample_wiener(g, 77);
    std::vector<double> zero(64, 0.0), one(64, 1.0);

    const auto z = verify_dyadic_bound(zero, mu, 0, 0.75, 1.0);
    CHECK(z.lhs == 0.0);
    CHECK(z.rhs == 0.0);
    CHECK(z.slack == 0.0);
    CHECK(z.holds);

    for (double C : {0.0, 1.0}) {
        const auto o = verify_dyadic_bound(one, mu, -1, 0.75, C);
        CHECK(o.lhs == doctest::Approx(std::abs(measure_of(mu, -1.0, 0.0))).epsilon(1e-12));
        CHECK(o.lhs == doctest::Approx(o.first_term).epsilon(1e-12));
        CHECK(o.holds);
    }

    std::vector<double> q(64), q3(64);
    for (std::size_t i = 0; i < 64; ++i) {
        q[i] = std::cos(5.0 * i / 64.0) + 0.2 * i / 64.0;
        q3[i] = -3.0 * q[i];
    }
    const auto a = verify_dyadic_bound(q, mu, 1, 0.7, 0.5);
    const auto b = verify_dyadic_bound(q3, mu, 1, 0.7, 0.5);
    CHECK(b.slack == doctest::Approx(a.slack).epsilon(1e-12));
    CHECK(b.lhs == doctest::Approx(3.0 * a.lhs).epsilon(1e-12));

    CHECK_THROWS_AS(verify_dyadic_bound(q, mu, 0, 0.5, 1.0), DomainError);
    CHECK_THROWS_AS(verify_dyadic_bound(std::vector<double>(63, 0.0), mu, 0, 0.7, 1.0), DomainError);
    CHECK_THROWS_AS(verify_dyadic_bound(q, mu, 5, 0.7, 1.0), DomainError);
}

TEST_CASE("dyadic bound: calibration and validation") {
    const GridSpec g{-2.0, 2.0, 256, 1.0, 1};
    const double alpha = 0.7;
    auto draw = [&](std::uint64_t seed) {
        std::mt19937_64 rng(seed);
        std::normal_distribution<double> n;
        std::uniform_int_distribution<long> pick(-2, 1);
        const long j = pick(rng);
        std::vector<double> q(64, 0.0);
        for (int k = 1; k <= 6; ++k) {
            const double a = n(rng) / k, ph = n(rng);
            for (std::size_t i = 0; i < 64; ++i) q[i] += a * std::sin(k * M_PI * (i + 0.5) / 64.0 + ph);
        }
        return std::tuple{q, sample_wiener(g, seed * 7919 + 1), j};
    };
    double C = 0.0;
    for (std::uint64_t s = 0; s < 100; ++s) {
        auto [q, mu, j] = draw(s);
        C = std::max(C, verify_dyadic_bound(q, mu, j, alpha, 0.0).c_required);
    }
    CHECK(C > 0.0);
    int holds = 0;
    for (std::uint64_t s = 1000; s < 1100; ++s) {
        auto [q, mu, j] = draw(s);
        holds += verify_dyadic_bound(q, mu, j, alpha, 2.0 * C).holds ? 1 : 0;
    }
    CHECK(holds >= 99);
}
