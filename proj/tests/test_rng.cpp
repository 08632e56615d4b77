#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cmath>

#include "nearcrit/rng.hpp"

using namespace nearcrit;

namespace {

// independent root finder for the conjugacy equation: damped Newton
double oracle_conjugate(double eps) {
    const double target = (1.0 + eps) * std::exp(-(1.0 + eps));
    double x = 0.5;
    for (int i = 0; i < 200; ++i) {
        const double f = x * std::exp(-x) - target;
        const double fp = std::exp(-x) * (1.0 - x);
        double next = x - f / fp;
        if (!(next > 0.0 && next < 1.0)) next = x > 0.5 ? 0.5 * x : 0.5 * (x + 1.0);
        if (std::abs(next - x) < 1e-16) return next;
        x = next;
    }
    return x;
}

}  // namespace

TEST_CASE("reproducibility: equal (seed, stream) -> bit-identical draws") {
    RngStream a(123456789, 42), b(123456789, 42), c(123456789, 43);
    bool any_diff = false;
    for (int i = 0; i < 1000; ++i) {
        const std::uint64_t x = a.next_u64();
        CHECK(x == b.next_u64());
        if (x != c.next_u64()) any_diff = true;
    }
    CHECK(any_diff);  // distinct streams do diverge
}

TEST_CASE("conjugate_mu: residual, expansion, frozen value") {
    CHECK_THROWS_AS(conjugate_mu(0.0), std::invalid_argument);
    CHECK_THROWS_AS(conjugate_mu(-0.5), std::invalid_argument);

    // eps -> 0+: mu -> 1
    CHECK(conjugate_mu(1e-6) == doctest::Approx(1.0).epsilon(1e-2));

    const double mu1 = conjugate_mu(1.0);
    CHECK(std::abs(mu1 - oracle_conjugate(1.0)) < 1e-13);
    CHECK(mu1 == doctest::Approx(0.40637).epsilon(2e-4));

    const double mu01 = conjugate_mu(0.1);
    CHECK(std::abs(mu01 - (1.0 - 0.1 + (2.0 / 3.0) * 0.01)) < 1e-3);

    RngStream stream(7, 0);
    for (int i = 0; i < 1000; ++i) {
        const double eps = 1e-6 + stream.uniform01() * (1.0 - 2e-6);
        const double mu = conjugate_mu(eps);
        CHECK(mu > 0.0);
        CHECK(mu < 1.0);
        const double target = (1.0 + eps) * std::exp(-(1.0 + eps));
        CHECK(std::abs(mu * std::exp(-mu) - target) <= 1e-14);
    }
}

TEST_CASE("poisson sampling moments") {
    RngStream stream(2026, 1);
    CHECK(stream.poisson(0.0) == 0);

    const int draws = 1'000'000;
    double sum = 0.0, sum_sq = 0.0;
    for (int i = 0; i < draws; ++i) {
        const double x = static_cast<double>(stream.poisson(2.0));
        sum += x;
        sum_sq += x * x;
    }
    const double mean = sum / draws;
    const double var = sum_sq / draws - mean * mean;
    CHECK(std::abs(mean - 2.0) < 0.005);  // 3 sigma = 3 sqrt(2/1e6)
    CHECK(std::abs(var - 2.0) < 0.02);

    // chunked path for large rates keeps the mean
    double big = 0.0;
    for (int i = 0; i < 20000; ++i) big += static_cast<double>(stream.poisson(100.0));
    CHECK(std::abs(big / 20000 - 100.0) < 0.5);
}

TEST_CASE("geometric path lengths: support {1,2,...} and tail") {
    RngStream stream(5, 9);
    CHECK_THROWS_AS(stream.geometric_path_length(0.0), std::invalid_argument);
    CHECK_THROWS_AS(stream.geometric_path_length(1.0), std::invalid_argument);

    for (int i = 0; i < 100; ++i) CHECK(stream.geometric_path_length(1e-14) == 1);

    const int draws = 1'000'000;
    double sum = 0.0;
    for (int i = 0; i < draws; ++i) sum += static_cast<double>(stream.geometric_path_length(0.5));
    CHECK(std::abs(sum / draws - 2.0) < 0.005);

    std::uint64_t tail = 0;
    for (int i = 0; i < draws; ++i)
        if (stream.geometric_path_length(0.9) >= 11) ++tail;
    const double expect = std::pow(0.9, 10);  // P(Y >= 11) = mu^10
    CHECK(std::abs(static_cast<double>(tail) / draws - expect) < 0.002);
}

TEST_CASE("normal sampling") {
    RngStream stream(31337, 2);
    CHECK(stream.normal(3.25, 0.0) == 3.25);

    const int draws = 1'000'000;
    double sum = 0.0;
    int nonpositive = 0;
    for (int i = 0; i < draws; ++i) {
        const double x = stream.normal(0.0, 1.0);
        sum += x;
        if (x <= 0.0) ++nonpositive;
    }
    CHECK(std::abs(sum / draws) < 0.004);
    CHECK(std::abs(static_cast<double>(nonpositive) / draws - 0.5) < 0.002);

    CHECK_THROWS_AS(stream.normal(0.0, -1.0), std::invalid_argument);
}

TEST_CASE("borel pmf values and mass") {
    CHECK(borel_pmf(0.5, 1) == doctest::Approx(std::exp(-0.5)).epsilon(1e-12));
    CHECK(borel_pmf(0.5, 2) == doctest::Approx(0.5 * std::exp(-1.0)).epsilon(1e-12));
    CHECK_THROWS_AS(borel_pmf(0.5, 0), std::invalid_argument);
    CHECK_THROWS_AS(borel_pmf(1.5, 3), std::invalid_argument);

    for (double gamma : {0.3, 0.5, 0.7, 0.9}) {
        double mass = 0.0;
        for (std::uint64_t k = 1; k <= 1'000'000; ++k) mass += borel_pmf(gamma, k);
        CHECK(mass > 1.0 - 1e-6);
        CHECK(mass <= 1.0 + 1e-12);
    }

    // continuity across the log-space branch at k = 20
    for (double gamma : {0.4, 0.8}) {
        const double ratio = borel_pmf(gamma, 21) / borel_pmf(gamma, 20);
        CHECK(ratio > 0.0);
        CHECK(ratio < 1.0);  // subcritical pmf decreasing well past the mode
        const double expected =
            std::pow(21.0 / 20.0, 20.0) * (20.0 / 21.0) * gamma * std::exp(-gamma);
        CHECK(ratio == doctest::Approx(expected).epsilon(1e-9));
    }
}

TEST_CASE("uniform_below covers the range without bias artifacts") {
    RngStream stream(11, 0);
    std::array<int, 7> counts{};
    for (int i = 0; i < 70000; ++i) ++counts[stream.uniform_below(7)];
    for (int c : counts) CHECK(std::abs(c - 10000) < 500);
    CHECK_THROWS_AS(stream.uniform_below(0), std::invalid_argument);
}

TEST_CASE("model params") {
    const ModelParams p = ModelParams::supercritical(1000000, 0.1);
    CHECK(p.lambda == doctest::Approx(1000.0).epsilon(1e-12));
    const double target = 1.1 * std::exp(-1.1);
    CHECK(std::abs(p.mu * std::exp(-p.mu) - target) <= 1e-12);
    CHECK_THROWS_AS(ModelParams::supercritical(0, 0.1), std::invalid_argument);
    CHECK_THROWS_AS(ModelParams::supercritical(100, 1.5), std::invalid_argument);
    const ModelParams s = ModelParams::subcritical(1000, 0.2);
    CHECK(s.regime == Regime::subcritical);
    CHECK(std::isnan(s.mu));
}
