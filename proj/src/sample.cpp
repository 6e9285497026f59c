#include "cure/sample.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "cure/errors.hpp"
#include "cure/rng.hpp"

namespace cure {

namespace {

// Breaks tied z values in place. Members of a tied group keep their input
// order; jitter magnitude is capped so distinct values never cross.
void break_ties(std::vector<Observation>& obs, TiePolicy policy, std::uint64_t tie_seed) {
    const std::size_t n = obs.size();
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(),
                     [&](std::size_t a, std::size_t b) { return obs[a].z < obs[b].z; });

    double z_min = obs[idx.front()].z;
    double z_max = obs[idx.back()].z;
    double min_gap = std::numeric_limits<double>::infinity();
    bool has_tie = false;
    for (std::size_t i = 1; i < n; ++i) {
        const double gap = obs[idx[i]].z - obs[idx[i - 1]].z;
        if (gap == 0.0) {
            has_tie = true;
        } else {
            min_gap = std::min(min_gap, gap);
        }
    }
    if (!has_tie) return;
    if (policy == TiePolicy::error) {
        for (std::size_t i = 1; i < n; ++i)
            if (obs[idx[i]].z == obs[idx[i - 1]].z) throw TiedResponses(obs[idx[i]].z);
    }

    double range = z_max - z_min;
    if (range == 0.0) range = std::max(std::fabs(z_max), 1.0);
    double scale = 1e-9 * range;
    if (std::isfinite(min_gap)) scale = std::min(scale, 0.5 * min_gap);

    RngStream rng(tie_seed, 0, StreamPurpose::tie_jitter);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i + 1;
        while (j < n && obs[idx[j]].z == obs[idx[i]].z) ++j;
        if (j - i > 1) {
            std::vector<double> u(j - i);
            for (auto& v : u) v = rng.next_uniform();
            std::sort(u.begin(), u.end());
            // ascending offsets in input order keep the group stable
            for (std::size_t k = i; k < j; ++k) obs[idx[k]].z += u[k - i] * scale;
        }
        i = j;
    }
}

} // namespace

SurvivalSample SurvivalSample::from_observations(std::vector<Observation> obs,
                                                 TiePolicy policy,
                                                 std::uint64_t tie_seed) {
    if (obs.empty()) throw std::invalid_argument("sample must be nonempty");
    for (const auto& o : obs) {
        if (!std::isfinite(o.x) || !std::isfinite(o.z))
            throw std::invalid_argument("observations must have finite x and z");
        if (o.delta != 0 && o.delta != 1)
            throw std::invalid_argument("delta must be 0 or 1");
    }
    break_ties(obs, policy, tie_seed);

    const std::size_t n = obs.size();
    SurvivalSample s;
    s.sorted_index_.resize(n);
    std::iota(s.sorted_index_.begin(), s.sorted_index_.end(), 0);
    std::stable_sort(s.sorted_index_.begin(), s.sorted_index_.end(),
                     [&](std::size_t a, std::size_t b) { return obs[a].z < obs[b].z; });

    s.z_sorted_.resize(n);
    s.delta_sorted_.resize(n);
    s.x_by_z_.resize(n);
    s.x_original_.resize(n);
    s.z_original_.resize(n);
    s.delta_original_.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto& o = obs[s.sorted_index_[i]];
        s.z_sorted_[i] = o.z;
        s.delta_sorted_[i] = static_cast<std::uint8_t>(o.delta);
        s.x_by_z_[i] = o.x;
        s.x_original_[i] = obs[i].x;
        s.z_original_[i] = obs[i].z;
        s.delta_original_[i] = static_cast<std::uint8_t>(obs[i].delta);
        s.event_count_ += static_cast<std::size_t>(o.delta);
    }
    return s;
}

double estimate_tau0(const SurvivalSample& sample) {
    const auto& z = sample.z_sorted();
    const auto& d = sample.delta_sorted();
    for (std::size_t i = z.size(); i-- > 0;)
        if (d[i]) return z[i];
    throw NoEvents();
}

} // namespace cure
