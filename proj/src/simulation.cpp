#include "cure/simulation.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "cure/error_distribution.hpp"
#include "cure/errors.hpp"
#include "cure/estimators.hpp"
#include "cure/kernel.hpp"
#include "cure/parallel.hpp"
#include "cure/rng.hpp"
#include "cure/stats.hpp"

namespace cure {

namespace {
const double kPhi2 = norm_cdf(2.0); // mass of the normal below the truncation point
}

double TrueModel::location(double x) {
    return 1.0 + 2.0 * x + 1.25 * std::cos(std::numbers::pi * x * x);
}

double TrueModel::scale(double x) {
    return 1.0 + 0.5 * std::cos(std::numbers::pi * x);
}

double TrueModel::cure_probability(double x) {
    return 1.0 / (1.0 + std::exp(-(x - 1.75)));
}

double TrueModel::error_cdf(double t) {
    const double arg = error_center + error_scale * t;
    if (arg >= 2.0) return 1.0;
    return norm_cdf(arg) / kPhi2;
}

double TrueModel::error_quantile(double u) {
    if (!(u > 0.0 && u < 1.0))
        throw std::domain_error("error_quantile: u must be in (0,1)");
    return (norm_ppf(u * kPhi2) - error_center) / error_scale;
}

double TrueModel::error_upper_support() {
    return (2.0 - error_center) / error_scale;
}

GeneratedDataset generate_dataset(const SimulationConfig& config, std::uint64_t run_index) {
    const std::size_t n = config.n;
    if (n < 10) throw std::invalid_argument("simulation: n must be >= 10");

    RngStream x_rng(config.seed, run_index, StreamPurpose::covariates);
    RngStream e_rng(config.seed, run_index, StreamPurpose::errors);
    RngStream cure_rng(config.seed, run_index, StreamPurpose::cure);
    RngStream cens_rng(config.seed, run_index, StreamPurpose::censoring);

    GeneratedDataset out;
    out.cured.resize(n);
    out.y_uncured.resize(n);
    std::vector<Observation> obs(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double x = 2.0 * x_rng.next_uniform() - 1.0;
        const double eps = TrueModel::error_quantile(e_rng.next_uniform());
        const double yu = TrueModel::location(x) + TrueModel::scale(x) * eps;
        const bool cured = cure_rng.next_uniform() < TrueModel::cure_probability(x);
        const double y = cured ? std::numeric_limits<double>::infinity() : yu;

        const double u_mix = cens_rng.next_uniform();
        const double eta = cens_rng.next_normal();
        const double c = (u_mix < 0.5)
                             ? 10.0 + std::sqrt(0.5) * eta
                             : TrueModel::location(x) + 0.5 + TrueModel::scale(x) * eta;

        out.cured[i] = cured;
        out.y_uncured[i] = yu;
        obs[i] = Observation{x, std::min(y, c), y <= c ? 1 : 0};
    }
    out.sample = SurvivalSample::from_observations(std::move(obs), TiePolicy::jitter,
                                                   derive_seed(config.seed, run_index));
    return out;
}

MonteCarloReport run_monte_carlo(const SimulationConfig& config) {
    if (config.runs < 1) throw std::invalid_argument("simulation: runs must be >= 1");
    if (config.amise_steps < 2 || !(config.amise_lo < config.amise_hi))
        throw std::invalid_argument("simulation: invalid amise grid");

    const std::size_t n_eval = config.eval_points.size();
    const std::size_t n_grid = config.amise_steps;
    std::vector<double> grid(n_grid);
    const double h = (config.amise_hi - config.amise_lo) / static_cast<double>(n_grid - 1);
    for (std::size_t i = 0; i < n_grid; ++i)
        grid[i] = (i + 1 == n_grid) ? config.amise_hi
                                    : config.amise_lo + h * static_cast<double>(i);

    std::vector<double> true_eval(n_eval), true_grid(n_grid);
    for (std::size_t i = 0; i < n_eval; ++i)
        true_eval[i] = TrueModel::error_cdf(config.eval_points[i]);
    for (std::size_t i = 0; i < n_grid; ++i) true_grid[i] = TrueModel::error_cdf(grid[i]);

    // Per-run squared errors land in indexed slots; the reduction below is a
    // serial pass in run order, so results do not depend on the worker count.
    std::vector<std::vector<double>> sq_eval(config.runs), sq_grid(config.runs);
    std::vector<std::uint8_t> failed(config.runs, 0);

    parallel_for(config.runs, config.threads, [&](std::size_t run) {
        try {
            auto data = generate_dataset(config, run);
            const double sigma_x = sample_sd(data.sample.x_original());
            const BandwidthRule rule{config.c, config.gamma};
            const KernelSpec spec{KernelFamily::biweight,
                                  default_bandwidth(rule, config.n, sigma_x)};
            auto model = FittedCureModel::fit(std::move(data.sample), spec);

            auto& se = sq_eval[run];
            auto& sg = sq_grid[run];
            se.resize(n_eval);
            sg.resize(n_grid);
            for (std::size_t i = 0; i < n_eval; ++i) {
                const double d = error_cdf(model, config.eval_points[i]) - true_eval[i];
                se[i] = d * d;
            }
            for (std::size_t i = 0; i < n_grid; ++i) {
                const double d = error_cdf(model, grid[i]) - true_grid[i];
                sg[i] = d * d;
            }
        } catch (const EstimationError&) {
            failed[run] = 1;
        }
    });

    MonteCarloReport report;
    report.config = config;
    report.amse.assign(n_eval, 0.0);
    report.amise_grid_mse.assign(n_grid, 0.0);
    std::size_t used = 0;
    for (std::size_t run = 0; run < config.runs; ++run) {
        if (failed[run]) {
            ++report.failures;
            continue;
        }
        ++used;
        for (std::size_t i = 0; i < n_eval; ++i) report.amse[i] += sq_eval[run][i];
        for (std::size_t i = 0; i < n_grid; ++i)
            report.amise_grid_mse[i] += sq_grid[run][i];
    }
    if (used == 0) throw AllRunsFailed();
    report.runs_used = used;

    const double nn = static_cast<double>(config.n);
    for (auto& v : report.amse) v = nn * v / static_cast<double>(used);
    for (auto& v : report.amise_grid_mse) v /= static_cast<double>(used);
    report.amise =
        nn * trapezoid_uniform(report.amise_grid_mse, config.amise_lo, config.amise_hi);
    return report;
}

} // namespace cure
