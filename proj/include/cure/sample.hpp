#pragma once

#include <cstdint>
#include <cstddef>
#include <vector>

namespace cure {

//! One right-censored observation: covariate x, observed time z = min(Y, C),
//! and event indicator delta (1 = uncensored).
struct Observation {
    double x;
    double z;
    int delta;
};

enum class TiePolicy {
    jitter, //!< break tied z deterministically (default)
    error,  //!< throw TiedResponses on any tie
};

//! An ingested sample, ordered by observed time.
//!
//! The product-limit machinery requires distinct observed times. Under the
//! jitter policy, tied z values receive a deterministic, seedable jitter of
//! magnitude at most 1e-9 * range(z) (capped at half the smallest gap
//! between distinct values, so the order statistics of distinct values are
//! preserved).
class SurvivalSample {
public:
    //! Empty placeholder; real samples come from from_observations.
    SurvivalSample() = default;

    static SurvivalSample from_observations(std::vector<Observation> obs,
                                            TiePolicy policy = TiePolicy::jitter,
                                            std::uint64_t tie_seed = 0);

    std::size_t size() const { return z_sorted_.size(); }

    //! Observed times, ascending.
    const std::vector<double>& z_sorted() const { return z_sorted_; }
    //! Event indicators, ordered by z.
    const std::vector<std::uint8_t>& delta_sorted() const { return delta_sorted_; }
    //! Covariates, ordered by z.
    const std::vector<double>& x_by_z() const { return x_by_z_; }
    //! Covariates in original input order.
    const std::vector<double>& x_original() const { return x_original_; }
    //! Observed times in original input order (after tie handling).
    const std::vector<double>& z_original() const { return z_original_; }
    //! Event indicators in original input order.
    const std::vector<std::uint8_t>& delta_original() const { return delta_original_; }
    //! Permutation: sorted position -> original index.
    const std::vector<std::size_t>& sorted_index() const { return sorted_index_; }

    //! Number of uncensored observations.
    std::size_t event_count() const { return event_count_; }

private:
    std::vector<double> z_sorted_;
    std::vector<std::uint8_t> delta_sorted_;
    std::vector<double> x_by_z_;
    std::vector<double> x_original_;
    std::vector<double> z_original_;
    std::vector<std::uint8_t> delta_original_;
    std::vector<std::size_t> sorted_index_;
    std::size_t event_count_ = 0;
};

//! Largest uncensored observed time. Throws NoEvents when the sample has no
//! uncensored observation.
double estimate_tau0(const SurvivalSample& sample);

} // namespace cure
