#pragma once

#include <stdexcept>
#include <string>

namespace cure {

//! Base class for all estimation-time failures.
class EstimationError : public std::runtime_error {
public:
    explicit EstimationError(const std::string& what) : std::runtime_error(what) {}
};

//! No observation carries kernel weight at the requested covariate value.
class EmptyWindow : public EstimationError {
public:
    explicit EmptyWindow(double x0)
        : EstimationError("empty kernel window at x0=" + std::to_string(x0) +
                          " (bandwidth too small or x0 outside data range)") {}
};

//! The sample contains no uncensored observation.
class NoEvents : public EstimationError {
public:
    NoEvents() : EstimationError("no uncensored observation in sample") {}
};

//! Requested quantile level exceeds the observable mass at this covariate.
class QuantileOutOfRange : public EstimationError {
public:
    QuantileOutOfRange(double q, double q_max)
        : EstimationError("quantile level " + std::to_string(q) +
                          " exceeds observable mass " + std::to_string(q_max)) {}
};

//! The local variance functional is non-positive.
class DegenerateScale : public EstimationError {
public:
    explicit DegenerateScale(double x0)
        : EstimationError("degenerate local scale at x0=" + std::to_string(x0) +
                          " (locally degenerate data or bandwidth too small)") {}
};

//! Every covariate was excluded from the error-distribution average.
class NoValidCovariates : public EstimationError {
public:
    NoValidCovariates() : EstimationError("no covariate with a valid local fit") {}
};

//! Too many bootstrap replicates failed to refit.
class BootstrapUnstable : public EstimationError {
public:
    BootstrapUnstable(int wanted, int attempts)
        : EstimationError("bootstrap unstable: " + std::to_string(wanted) +
                          " replicates not reached within " + std::to_string(attempts) +
                          " attempts") {}
};

//! Every Monte Carlo run failed.
class AllRunsFailed : public EstimationError {
public:
    AllRunsFailed() : EstimationError("all Monte Carlo runs failed") {}
};

//! Tied observed times under the strict tie policy.
class TiedResponses : public std::invalid_argument {
public:
    explicit TiedResponses(double z)
        : std::invalid_argument("tied observed times at z=" + std::to_string(z) +
                                " (strict tie policy)") {}
};

//! Malformed input data.
class ParseError : public std::invalid_argument {
public:
    ParseError(const std::string& path, std::size_t row, const std::string& detail)
        : std::invalid_argument(path + ":" + std::to_string(row) + ": " + detail) {}
};

//! Non-positive time under a log transform.
class NonPositiveTime : public std::invalid_argument {
public:
    NonPositiveTime(const std::string& path, std::size_t row)
        : std::invalid_argument(path + ":" + std::to_string(row) +
                                ": non-positive time under log transform") {}
};

} // namespace cure
