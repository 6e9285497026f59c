#include <doctest.h>

#include <cmath>
#include <vector>

#include "cure/errors.hpp"
#include "cure/kernel.hpp"
#include "cure/rng.hpp"
#include "oracles.hpp"

using namespace cure;

TEST_CASE("kernel closed forms") {
    KernelSpec bi{KernelFamily::biweight, 1.0};
    CHECK(kernel_eval(bi, 0.0) == 15.0 / 16.0);
    CHECK(kernel_eval(bi, 1.0) == 0.0);
    CHECK(kernel_eval(bi, -1.0) == 0.0);
    CHECK(kernel_eval(bi, 1.5) == 0.0);

    KernelSpec ep{KernelFamily::epanechnikov, 1.0};
    CHECK(ep.family == KernelFamily::epanechnikov);
    CHECK(kernel_eval(ep, 0.0) == 0.75);
    CHECK(kernel_eval(ep, 1.0) == 0.0);
}

TEST_CASE("kernel symmetry is bitwise") {
    for (auto family : {KernelFamily::biweight, KernelFamily::epanechnikov}) {
        KernelSpec spec{family, 1.0};
        RngStream rng(3, 0, StreamPurpose::covariates);
        for (int i = 0; i < 1000; ++i) {
            const double u = 2.5 * (2.0 * rng.next_uniform() - 1.0);
            CHECK(kernel_eval(spec, u) == kernel_eval(spec, -u));
        }
    }
}

TEST_CASE("kernel integrates to one (Simpson, 1e4 panels)") {
    for (auto family : {KernelFamily::biweight, KernelFamily::epanechnikov}) {
        KernelSpec spec{family, 1.0};
        CHECK(std::fabs(oracle::kernel_integral_simpson(spec) - 1.0) < 1e-10);
    }
}

TEST_CASE("kernel is nonnegative") {
    for (auto family : {KernelFamily::biweight, KernelFamily::epanechnikov}) {
        KernelSpec spec{family, 1.0};
        for (double u = -2.0; u <= 2.0; u += 0.001) CHECK(kernel_eval(spec, u) >= 0.0);
    }
}

TEST_CASE("nw_weights basics") {
    KernelSpec spec{KernelFamily::biweight, 1.0};

    SUBCASE("single point") {
        std::vector<double> xs{0.0};
        const auto w = nw_weights(0.0, xs, spec);
        REQUIRE(w.size() == 1);
        CHECK(w[0] == 1.0);
    }

    SUBCASE("symmetric pair splits evenly") {
        std::vector<double> xs{-0.3, 0.3};
        const auto w = nw_weights(0.0, xs, spec);
        CHECK(w[0] == doctest::Approx(0.5).epsilon(1e-15));
        CHECK(w[1] == doctest::Approx(0.5).epsilon(1e-15));
    }

    SUBCASE("all points outside the window") {
        std::vector<double> xs{2.0, 3.0};
        CHECK_THROWS_AS(nw_weights(0.0, xs, spec), EmptyWindow);
    }

    SUBCASE("zero weight outside support") {
        std::vector<double> xs{0.0, 0.5, 1.7};
        const auto w = nw_weights(0.0, xs, spec);
        CHECK(w[2] == 0.0);
        CHECK(w[0] > w[1]);
    }
}

TEST_CASE("nw_weights normalize and stay in [0,1] on random configurations") {
    RngStream rng(11, 0, StreamPurpose::covariates);
    for (int rep = 0; rep < 200; ++rep) {
        const std::size_t n = 1 + static_cast<std::size_t>(rng.next_uniform() * 40);
        std::vector<double> xs(n);
        for (auto& x : xs) x = 4.0 * rng.next_uniform() - 2.0;
        KernelSpec spec{rep % 2 ? KernelFamily::biweight : KernelFamily::epanechnikov,
                        0.1 + 2.0 * rng.next_uniform()};
        const double x0 = xs[static_cast<std::size_t>(rng.next_uniform() * n)];
        const auto w = nw_weights(x0, xs, spec);
        double sum = 0.0;
        for (double v : w) {
            CHECK(v >= 0.0);
            CHECK(v <= 1.0);
            sum += v;
        }
        CHECK(std::fabs(sum - 1.0) < 1e-12);
    }
}

TEST_CASE("default_bandwidth golden values") {
    // n=284, sigma=12.3, C=9/8, gamma=1/28 gives the 4.51-year bandwidth
    const double b = default_bandwidth({9.0 / 8.0, 1.0 / 28.0}, 284, 12.3);
    CHECK(std::fabs(b - 4.51) < 0.02);

    // direct formula evaluation, frozen
    const double g = default_bandwidth({0.75, 1.0 / 16.0}, 100, 1.0);
    CHECK(g == doctest::Approx(0.2866325713842095).epsilon(1e-14));

    CHECK(default_bandwidth({0.0, 1.0 / 16.0}, 100, 1.0) == 0.0);
}

TEST_CASE("default_bandwidth decreases in n for n >= 8") {
    const BandwidthRule rule{1.0, 1.0 / 16.0};
    double prev = default_bandwidth(rule, 8, 1.0);
    for (std::size_t n = 9; n <= 10000; ++n) {
        const double cur = default_bandwidth(rule, n, 1.0);
        CHECK(cur < prev);
        prev = cur;
    }
}

TEST_CASE("undersmoothing warning fires outside (0, 1/12)") {
    CHECK(!undersmoothing_warning({1.0, 1.0 / 16.0}));
    CHECK(!undersmoothing_warning({1.0, 1.0 / 28.0}));
    CHECK(undersmoothing_warning({1.0, 1.0 / 12.0}));
    CHECK(undersmoothing_warning({1.0, 0.0}));
    CHECK(undersmoothing_warning({1.0, -0.1}));
    CHECK(undersmoothing_warning({1.0, 0.2}));
}
