#pragma once

#include <cstddef>
#include <vector>

#include "cure/estimators.hpp"

namespace cure {

//! The averaged error-distribution estimate evaluated on a grid.
struct ErrorDistEstimate {
    std::vector<double> grid;   //!< strictly increasing t values
    std::vector<double> values; //!< F(t) estimates, nondecreasing, in [0, 1]
    double t_max = 0.0;         //!< estimated upper support point
    std::size_t excluded = 0;   //!< covariates dropped from the average
    std::size_t clamp_count = 0;  //!< local ratios clamped into [0, 1]
    bool high_exclusion = false;  //!< exclusions exceeded 10% of the sample
};

//! Pointwise estimate: the average over sample covariates of
//! Q(t * s(X_j) + m(X_j) | X_j) / (1 - pi(X_j)), each ratio clamped to
//! [0, 1]. Covariates without a valid local fit are excluded; throws
//! NoValidCovariates when every covariate is excluded.
double error_cdf(const FittedCureModel& model, double t);

//! Grid evaluation over [t_lo, t_hi] with `steps` uniform points.
ErrorDistEstimate error_cdf_grid(const FittedCureModel& model, double t_lo, double t_hi,
                                 std::size_t steps);

//! Grid evaluation over the default range [min standardized residual - 0.5,
//! max_j (tau0 - m(X_j)) / s(X_j)].
ErrorDistEstimate error_cdf_grid(const FittedCureModel& model, std::size_t steps = 512);

//! Upper end of the default grid; the practical estimate of the error
//! support's upper point.
double error_support_upper(const FittedCureModel& model);

//! Lower end of the default grid.
double default_grid_lower(const FittedCureModel& model);

} // namespace cure
