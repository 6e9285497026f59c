#include <doctest.h>

#include <cmath>

#include "cure/bootstrap.hpp"
#include "cure/errors.hpp"
#include "cure/kernel.hpp"
#include "cure/simulation.hpp"
#include "cure/stats.hpp"

using namespace cure;

namespace {

FittedCureModel simulated_model(std::uint64_t seed, std::size_t n) {
    SimulationConfig config;
    config.n = n;
    config.seed = seed;
    auto data = generate_dataset(config, 0);
    const double sigma = sample_sd(data.sample.x_original());
    const double bw = default_bandwidth({0.75, 1.0 / 16.0}, n, sigma);
    return FittedCureModel::fit(std::move(data.sample), {KernelFamily::biweight, bw});
}

} // namespace

TEST_CASE("bootstrap band is deterministic in (model, seed) and the worker count") {
    auto model = simulated_model(101, 60);
    BootstrapConfig config;
    config.replicates = 24;
    config.seed = 9;
    config.sampling_grid_steps = 128;
    config.band_grid = {-1.0, 0.0, 1.0};

    config.threads = 1;
    const auto a = bootstrap_F_band(model, config);
    config.threads = 2;
    const auto b = bootstrap_F_band(model, config);
    config.threads = 4;
    const auto c = bootstrap_F_band(model, config);
    CHECK(a.lower == b.lower);
    CHECK(a.upper == b.upper);
    CHECK(a.point == b.point);
    CHECK(b.lower == c.lower);
    CHECK(b.upper == c.upper);

    config.seed = 10;
    const auto d = bootstrap_F_band(model, config);
    CHECK(a.lower != d.lower); // a different seed moves the band
}

TEST_CASE("replicates=1 gives a degenerate band") {
    auto model = simulated_model(102, 60);
    BootstrapConfig config;
    config.replicates = 1;
    config.seed = 3;
    config.sampling_grid_steps = 128;
    config.band_grid = {-1.0, 0.0, 1.0};
    const auto band = bootstrap_F_band(model, config);
    CHECK(band.lower == band.upper);
}

TEST_CASE("band ordering and range invariants on a seeded fixture") {
    auto model = simulated_model(103, 80);
    BootstrapConfig config;
    config.replicates = 60;
    config.seed = 5;
    config.sampling_grid_steps = 128;
    const auto band = bootstrap_F_band(model, config);
    REQUIRE(band.grid.size() == 128);
    for (std::size_t i = 0; i < band.grid.size(); ++i) {
        CHECK(band.lower[i] >= 0.0);
        CHECK(band.upper[i] <= 1.0);
        CHECK(band.lower[i] <= band.upper[i] + 1e-9);
        CHECK(band.lower[i] <= band.point[i] + 1e-9);
        CHECK(band.point[i] <= band.upper[i] + 1e-9);
    }
}

TEST_CASE("replicate censoring fraction stays near the original sample's") {
    auto model = simulated_model(104, 100);
    const auto& d = model.sample().delta_sorted();
    double censored = 0.0;
    for (auto v : d) censored += v == 0 ? 1.0 : 0.0;
    censored /= static_cast<double>(d.size());

    BootstrapConfig config;
    config.replicates = 120;
    config.seed = 11;
    config.sampling_grid_steps = 256;
    config.band_grid = {0.0};
    const auto band = bootstrap_F_band(model, config);
    CHECK(std::fabs(band.replicate_censored_fraction - censored) < 0.05);
}

TEST_CASE("bootstrap validates its configuration") {
    auto model = simulated_model(105, 60);
    BootstrapConfig config;
    config.replicates = 0;
    CHECK_THROWS_AS(bootstrap_F_band(model, config), std::invalid_argument);
    config.replicates = 10;
    config.level = 1.5;
    CHECK_THROWS_AS(bootstrap_F_band(model, config), std::invalid_argument);
}
