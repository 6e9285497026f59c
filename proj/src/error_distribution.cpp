#include "cure/error_distribution.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "cure/errors.hpp"

namespace cure {

namespace {

double local_term(const FittedCureModel& model, std::size_t j, double t,
                  std::size_t& clamps) {
    const auto& est = model.locals()[j];
    const double arg = t * est.s + est.m;
    const double q = model.local_fit(j).beran_Q(arg, model.convention());
    const double ratio = q / est.q_max;
    if (ratio < 0.0 || ratio > 1.0) {
        ++clamps;
        return std::clamp(ratio, 0.0, 1.0);
    }
    return ratio;
}

double average_over_locals(const FittedCureModel& model, double t, std::size_t& clamps,
                           std::size_t& excluded) {
    const auto& locals = model.locals();
    double sum = 0.0;
    std::size_t used = 0;
    excluded = 0;
    for (std::size_t j = 0; j < locals.size(); ++j) {
        if (!locals[j].valid()) {
            ++excluded;
            continue;
        }
        sum += local_term(model, j, t, clamps);
        ++used;
    }
    if (used == 0) throw NoValidCovariates();
    return sum / static_cast<double>(used);
}

} // namespace

double error_cdf(const FittedCureModel& model, double t) {
    std::size_t clamps = 0, excluded = 0;
    return average_over_locals(model, t, clamps, excluded);
}

ErrorDistEstimate error_cdf_grid(const FittedCureModel& model, double t_lo, double t_hi,
                                 std::size_t steps) {
    if (!(t_lo < t_hi)) throw std::invalid_argument("error_cdf_grid: t_lo must be < t_hi");
    if (steps < 2) throw std::invalid_argument("error_cdf_grid: steps must be >= 2");

    ErrorDistEstimate out;
    out.grid.resize(steps);
    out.values.resize(steps);
    const double h = (t_hi - t_lo) / static_cast<double>(steps - 1);
    for (std::size_t i = 0; i < steps; ++i)
        out.grid[i] = (i + 1 == steps) ? t_hi : t_lo + h * static_cast<double>(i);

    std::size_t clamps = 0, excluded = 0;
    for (std::size_t i = 0; i < steps; ++i)
        out.values[i] = average_over_locals(model, out.grid[i], clamps, excluded);
    out.clamp_count = clamps;
    out.excluded = excluded;
    out.high_exclusion =
        excluded * 10 > model.sample().size(); // more than 10% of n dropped
    out.t_max = error_support_upper(model);
    return out;
}

double error_support_upper(const FittedCureModel& model) {
    const auto& locals = model.locals();
    double hi = -std::numeric_limits<double>::infinity();
    for (const auto& est : locals)
        if (est.valid()) hi = std::max(hi, (model.tau0() - est.m) / est.s);
    if (!std::isfinite(hi)) throw NoValidCovariates();
    return hi;
}

double default_grid_lower(const FittedCureModel& model) {
    const auto& locals = model.locals();
    const auto& z = model.sample().z_original();
    double lo = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < locals.size(); ++j) {
        if (!locals[j].valid()) continue;
        lo = std::min(lo, (z[j] - locals[j].m) / locals[j].s);
    }
    if (!std::isfinite(lo)) throw NoValidCovariates();
    return lo - 0.5;
}

ErrorDistEstimate error_cdf_grid(const FittedCureModel& model, std::size_t steps) {
    return error_cdf_grid(model, default_grid_lower(model), error_support_upper(model),
                          steps);
}

} // namespace cure
