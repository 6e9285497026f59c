#pragma once

// Shared helpers for the unit suites.

#include <vector>

#include "cure/estimators.hpp"
#include "cure/kernel.hpp"
#include "cure/sample.hpp"

namespace fixtures {

//! Sample with all covariates at zero; with a wide bandwidth every
//! observation carries equal weight.
inline cure::SurvivalSample flat_sample(const std::vector<double>& z,
                                        const std::vector<int>& delta) {
    std::vector<cure::Observation> obs;
    for (std::size_t i = 0; i < z.size(); ++i)
        obs.push_back({0.0, z[i], delta[i]});
    return cure::SurvivalSample::from_observations(std::move(obs));
}

inline cure::SurvivalSample xyz_sample(const std::vector<double>& x,
                                       const std::vector<double>& z,
                                       const std::vector<int>& delta) {
    std::vector<cure::Observation> obs;
    for (std::size_t i = 0; i < z.size(); ++i)
        obs.push_back({x[i], z[i], delta[i]});
    return cure::SurvivalSample::from_observations(std::move(obs));
}

inline cure::KernelSpec wide_spec(double bandwidth = 100.0) {
    return {cure::KernelFamily::biweight, bandwidth};
}

} // namespace fixtures
