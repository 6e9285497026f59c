#pragma once

#include <cstdint>
#include <cstddef>
#include <vector>

#include "cure/sample.hpp"

namespace cure {

//! Closed-form data-generating process used by the Monte Carlo benchmark:
//! X ~ U[-1, 1]; uncured responses m(X) + s(X) * e with e a standard normal
//! truncated above at 2 and standardized to the score-weighted constraints;
//! cure indicators Bernoulli(logistic(x - 7/4)); censoring from an equal
//! mixture of N(10, 1/2) and the model shifted up by 1/2 with untruncated
//! normal errors.
struct TrueModel {
    //! Score-weighted location of the raw truncated normal (quadrature golden).
    static constexpr double error_center = -0.054747126616265449;
    //! Score-weighted scale of the raw truncated normal (quadrature golden).
    static constexpr double error_scale = 0.94049638180096706;

    static double location(double x);
    static double scale(double x);
    static double cure_probability(double x);

    //! Distribution function of the standardized error.
    static double error_cdf(double t);
    //! Quantile function of the standardized error, u in (0, 1).
    static double error_quantile(double u);
    //! Upper support point of the standardized error.
    static double error_upper_support();
};

struct SimulationConfig {
    std::size_t n = 100;
    std::size_t runs = 1000;
    double c = 0.75;
    double gamma = 1.0 / 16.0;
    std::uint64_t seed = 0;
    std::vector<double> eval_points = {-2.0, -1.0, 0.0, 1.0, 2.0};
    double amise_lo = -2.5;
    double amise_hi = 2.0;
    std::size_t amise_steps = 91;
    int threads = 0;
};

//! A generated dataset together with the latent truth behind it.
struct GeneratedDataset {
    SurvivalSample sample;
    std::vector<std::uint8_t> cured; //!< latent cure indicators, input order
    std::vector<double> y_uncured;   //!< latent uncured responses, input order
};

//! Deterministic draw for one Monte Carlo run: streams are keyed by
//! (config.seed, run_index, purpose).
GeneratedDataset generate_dataset(const SimulationConfig& config, std::uint64_t run_index);

struct MonteCarloReport {
    SimulationConfig config;
    std::vector<double> amse;           //!< n * MSE at config.eval_points
    double amise = 0.0;                 //!< n * integrated MSE over the grid
    std::vector<double> amise_grid_mse; //!< per-grid-point MSE (not scaled by n)
    std::size_t failures = 0;           //!< runs discarded due to estimator errors
    std::size_t runs_used = 0;
};

//! Runs the Monte Carlo benchmark: per run, generate a dataset, compute the
//! rule-of-thumb bandwidth from that dataset's covariate standard deviation,
//! fit the model, and accumulate squared errors of the error-distribution
//! estimate against the true distribution. Deterministic for a fixed config
//! regardless of the worker count. Throws AllRunsFailed when no run survives.
MonteCarloReport run_monte_carlo(const SimulationConfig& config);

} // namespace cure
