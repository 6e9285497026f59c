#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace cure {

//! Standard normal distribution function.
double norm_cdf(double x);

//! Standard normal quantile function (Wichura's AS241, double precision).
//! Requires 0 < p < 1.
double norm_ppf(double p);

//! Sample standard deviation (n-1 denominator). Requires n >= 2.
double sample_sd(std::span<const double> xs);

//! Type-7 (linear interpolation) quantile of ascending-sorted data.
double quantile_type7_sorted(std::span<const double> sorted, double p);

//! Trapezoid rule over a uniform grid [lo, hi] with values.size() points.
double trapezoid_uniform(std::span<const double> values, double lo, double hi);

} // namespace cure
