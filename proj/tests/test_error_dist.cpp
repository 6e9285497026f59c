#include <doctest.h>

#include <cmath>
#include <vector>

#include "cure/error_distribution.hpp"
#include "cure/errors.hpp"
#include "cure/rng.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace cure;
using fixtures::flat_sample;
using fixtures::wide_spec;
using fixtures::xyz_sample;

namespace {

FittedCureModel random_model(std::uint64_t seed, std::size_t n, double bandwidth) {
    RngStream rng(seed, 0, StreamPurpose::covariates);
    std::vector<Observation> obs(n);
    for (auto& o : obs) {
        o.x = 2.0 * rng.next_uniform() - 1.0;
        o.z = 1.0 + 2.0 * rng.next_uniform() + o.x;
        o.delta = rng.next_uniform() < 0.7 ? 1 : 0;
    }
    return FittedCureModel::fit(SurvivalSample::from_observations(std::move(obs)),
                                {KernelFamily::biweight, bandwidth});
}

} // namespace

TEST_CASE("error_cdf trivial cases") {
    auto model = FittedCureModel::fit(flat_sample({1.0, 2.0, 3.0}, {1, 1, 1}), wide_spec());
    CHECK(error_cdf(model, -1e6) == 0.0);

    // single observation: the only local fit is degenerate
    auto tiny = FittedCureModel::fit(flat_sample({1.0}, {1}), wide_spec());
    CHECK(tiny.excluded_count() == 1);
    CHECK_THROWS_AS(error_cdf(tiny, 0.0), NoValidCovariates);
}

TEST_CASE("error_cdf matches the composed oracle on a five-point fixture") {
    const std::vector<double> x{-0.4, -0.1, 0.0, 0.2, 0.5};
    const std::vector<double> z{2.0, 1.0, 3.5, 0.5, 2.5};
    const std::vector<int> d{1, 1, 1, 1, 0};
    KernelSpec spec{KernelFamily::biweight, 0.8};
    auto model = FittedCureModel::fit(xyz_sample(x, z, d), spec);
    for (double t : {-0.5, 0.0, 0.5}) {
        const double ref = oracle::error_cdf(x, z, d, spec, model.score(), t);
        CHECK(std::fabs(error_cdf(model, t) - ref) < 1e-6);
    }
}

TEST_CASE("error_cdf equals the arithmetic mean of local terms") {
    auto model = random_model(21, 40, 0.5);
    const auto& locals = model.locals();
    for (double t : {-1.0, 0.0, 1.0}) {
        double sum = 0.0;
        std::size_t used = 0;
        for (std::size_t j = 0; j < locals.size(); ++j) {
            if (!locals[j].valid()) continue;
            const double arg = t * locals[j].s + locals[j].m;
            double r = model.local_fit(j).beran_Q(arg) / locals[j].q_max;
            r = std::min(1.0, std::max(0.0, r));
            sum += r;
            ++used;
        }
        CHECK(error_cdf(model, t) == doctest::Approx(sum / used).epsilon(1e-15));
    }
}

TEST_CASE("grid evaluation") {
    auto model = random_model(22, 50, 0.5);

    SUBCASE("steps=2 gives the endpoints") {
        auto est = error_cdf_grid(model, -1.0, 1.0, 2);
        REQUIRE(est.grid.size() == 2);
        CHECK(est.grid[0] == -1.0);
        CHECK(est.grid[1] == 1.0);
        CHECK(est.values[0] == error_cdf(model, -1.0));
        CHECK(est.values[1] == error_cdf(model, 1.0));
    }

    SUBCASE("values are monotone and bounded, grid strictly increasing") {
        auto est = error_cdf_grid(model, 128);
        for (std::size_t i = 0; i < est.values.size(); ++i) {
            CHECK(est.values[i] >= 0.0);
            CHECK(est.values[i] <= 1.0 + 1e-9);
            if (i > 0) {
                CHECK(est.values[i] >= est.values[i - 1]);
                CHECK(est.grid[i] > est.grid[i - 1]);
            }
        }
        // the default grid ends where every local window is exhausted
        CHECK(est.values.back() == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(est.t_max == error_support_upper(model));
    }

    SUBCASE("grid values match pointwise recomputation") {
        auto est = error_cdf_grid(model, -2.0, 2.0, 41);
        for (std::size_t i = 0; i < est.grid.size(); ++i)
            CHECK(est.values[i] == error_cdf(model, est.grid[i]));
    }

    SUBCASE("invalid arguments") {
        CHECK_THROWS_AS(error_cdf_grid(model, 1.0, -1.0, 10), std::invalid_argument);
        CHECK_THROWS_AS(error_cdf_grid(model, -1.0, 1.0, 1), std::invalid_argument);
    }
}

TEST_CASE("location-scale invariance of the standardized estimate") {
    RngStream rng(33, 0, StreamPurpose::covariates);
    const std::size_t n = 50;
    std::vector<double> x(n), z(n);
    std::vector<int> d(n);
    for (std::size_t i = 0; i < n; ++i) {
        x[i] = 2.0 * rng.next_uniform() - 1.0;
        z[i] = 2.0 * rng.next_uniform() + 0.5 * x[i];
        d[i] = rng.next_uniform() < 0.75 ? 1 : 0;
    }
    KernelSpec spec{KernelFamily::biweight, 0.5};
    auto base = FittedCureModel::fit(xyz_sample(x, z, d), spec);

    const double a = -3.0, b = 4.0;
    std::vector<double> zt(n);
    for (std::size_t i = 0; i < n; ++i) zt[i] = a + b * z[i];
    auto trans = FittedCureModel::fit(xyz_sample(x, zt, d), spec);

    for (double t : {-1.5, -0.5, 0.0, 0.5, 1.5})
        CHECK(std::fabs(error_cdf(base, t) - error_cdf(trans, t)) < 1e-6);
}

TEST_CASE("exclusions are counted and flagged above 10%") {
    // cluster at x=1 has only censored observations -> 2 of 12 excluded
    std::vector<double> x, z;
    std::vector<int> d;
    RngStream rng(4, 0, StreamPurpose::covariates);
    for (int i = 0; i < 10; ++i) {
        x.push_back(0.0);
        z.push_back(1.0 + rng.next_uniform());
        d.push_back(1);
    }
    x.push_back(1.0);
    z.push_back(1.5);
    d.push_back(0);
    x.push_back(1.0);
    z.push_back(1.7);
    d.push_back(0);
    auto model = FittedCureModel::fit(xyz_sample(x, z, d), {KernelFamily::biweight, 0.3});
    auto est = error_cdf_grid(model, -1.0, 1.0, 8);
    CHECK(est.excluded == 2);
    CHECK(est.high_exclusion); // 2 of 12 is above 10%
}
