#pragma once

#include <cstddef>
#include <memory>
#include <vector>

#include "cure/beran.hpp"
#include "cure/kernel.hpp"
#include "cure/sample.hpp"
#include "cure/score.hpp"

namespace cure {

//! Why a per-covariate local fit was excluded, if it was.
enum class LocalStatus {
    ok,
    no_uncensored_mass, //!< no positive-weight uncensored time in the window
    degenerate_scale,   //!< variance functional non-positive
};

//! Cached estimates at one sample covariate.
struct LocalEstimates {
    double pi = 1.0;     //!< cure fraction estimate
    double q_max = 0.0;  //!< observable mass = Q(tau0 | x)
    double m = 0.0;      //!< location
    double s = 0.0;      //!< scale
    LocalStatus status = LocalStatus::ok;
    bool valid() const { return status == LocalStatus::ok; }
};

//! The fitted cure model: sample, kernel, score function, tau0 and the
//! per-sample-covariate Beran tables with their location/scale estimates.
//! Immutable after fit(); all evaluation methods are const and safe to call
//! concurrently.
class FittedCureModel {
public:
    static FittedCureModel fit(SurvivalSample sample, KernelSpec spec,
                               ScoreFunction score = {},
                               Convention convention = Convention::right_continuous);

    const SurvivalSample& sample() const { return sample_; }
    const KernelSpec& kernel() const { return spec_; }
    const ScoreFunction& score() const { return score_; }
    Convention convention() const { return convention_; }

    //! Largest uncensored observed time.
    double tau0() const { return tau0_; }

    //! Cure fraction estimate 1 - Q(tau0 | x0) at an arbitrary covariate value.
    double cure_fraction(double x0) const;

    //! Conditional quantile: smallest jump point y <= tau0 with Q(y|x0) >= q.
    //! Throws QuantileOutOfRange when q exceeds Q(tau0|x0).
    double quantile(double x0, double q) const;

    //! L-functional location estimate at x0.
    double location(double x0) const;

    //! L-functional scale estimate at x0. Throws DegenerateScale when the
    //! variance functional is non-positive.
    double scale(double x0) const;

    //! Cached estimates at the sample covariates, in original input order.
    const std::vector<LocalEstimates>& locals() const { return locals_; }

    //! Cached Beran tables at the sample covariates, original input order.
    const LocalFit& local_fit(std::size_t original_index) const {
        return *local_fits_[original_index];
    }

    std::size_t excluded_count() const { return excluded_; }

private:
    FittedCureModel() = default;

    SurvivalSample sample_;
    KernelSpec spec_;
    ScoreFunction score_;
    Convention convention_ = Convention::right_continuous;
    double tau0_ = 0.0;
    std::vector<std::unique_ptr<const LocalFit>> local_fits_;
    std::vector<LocalEstimates> locals_;
    std::size_t excluded_ = 0;
};

namespace detail {

//! Exact piecewise evaluation of the L-functionals over a fitted local
//! table: m = sum over quantile steps of y * (I(p_hi) - I(p_lo)) and the
//! second moment alike, with I the closed-form antiderivative of J.
struct LocationScale {
    double m;
    double v;
};
LocationScale l_functionals(const LocalFit& fit, const ScoreFunction& score, double q_max);

//! Quantile from a fitted local table (jump representation).
double quantile_from_fit(const LocalFit& fit, double q, double q_max);

//! Q(tau0 | x) under the given convention.
double observable_mass(const LocalFit& fit, double tau0, Convention c);

} // namespace detail

} // namespace cure
