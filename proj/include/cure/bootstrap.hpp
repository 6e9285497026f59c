#pragma once

#include <cstdint>
#include <cstddef>
#include <vector>

#include "cure/error_distribution.hpp"
#include "cure/estimators.hpp"

namespace cure {

struct BootstrapConfig {
    int replicates = 300;
    double level = 0.95;
    std::uint64_t seed = 0;
    //! Resolution of the error-sampling grid (inverse transform source).
    std::size_t sampling_grid_steps = 512;
    //! Grid the band is evaluated on; empty selects the model's default grid
    //! at sampling_grid_steps resolution.
    std::vector<double> band_grid;
    int threads = 0;
};

//! Pointwise percentile band for the error-distribution estimate.
struct ConfidenceBand {
    std::vector<double> grid;
    std::vector<double> lower;
    std::vector<double> point; //!< the original estimate on the grid
    std::vector<double> upper;
    std::size_t attempts_used = 0;
    std::size_t failed_attempts = 0;
    //! Mean censored fraction across replicate datasets (diagnostic).
    double replicate_censored_fraction = 0.0;
};

//! Resampling band for the error-distribution estimate.
//!
//! Per replicate: covariates are resampled with replacement; errors are
//! drawn from the fitted error-distribution grid by inverse transform and
//! then centered and scaled so their score-weighted location is 0 and scale
//! is 1; uncured responses are m(x*) + s(x*) * e*; a cure indicator drawn
//! from the local cure fraction replaces the response with +infinity;
//! censoring times are drawn from the local censoring-distribution tables;
//! the full pipeline is refitted and the estimate recorded on the grid.
//! The band takes pointwise empirical quantiles across replicates.
//!
//! Replicates whose refit fails are discarded and redrawn, up to 3x the
//! requested count in total attempts; beyond that BootstrapUnstable is
//! thrown. Identical (model, seed) produce bit-identical bands regardless
//! of the worker count.
ConfidenceBand bootstrap_F_band(const FittedCureModel& model, const BootstrapConfig& config);

} // namespace cure
