#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "cure/kernel.hpp"
#include "cure/sample.hpp"

namespace cure {

//! Evaluation convention for the product-limit estimators.
//!
//! right_continuous takes the product over observations with z <= t, so the
//! estimator includes the jump at t itself; this makes the cure fraction at
//! the largest uncensored time include its jump. left_continuous takes the
//! product over z < t and is exposed for auditing.
enum class Convention {
    right_continuous,
    left_continuous,
};

//! Per-covariate fitted tables for the kernel-localized estimators.
//!
//! Construction computes the Nadaraya-Watson weights at x0, restricts to the
//! positive-weight window, and precomputes prefix tables so that every
//! t-evaluation costs one binary search. Immutable after construction;
//! construction for distinct x0 may run fully in parallel over a shared
//! sample.
class LocalFit {
public:
    //! Throws EmptyWindow when no observation carries weight at x0.
    LocalFit(const SurvivalSample& sample, const KernelSpec& spec, double x0);

    double x0() const { return x0_; }

    //! Conditional distribution of Z given X = x0 (Stone weights).
    double subdist_M(double t) const;
    //! Conditional subdistribution of (Z, delta = 1) given X = x0.
    double subdist_M1(double t) const;
    //! Beran product-limit estimate of P(Y <= t | X = x0).
    double beran_Q(double t, Convention c = Convention::right_continuous) const;
    //! Beran estimate of P(C <= t | X = x0) (censoring indicator in the exponent).
    double beran_censor(double t, Convention c = Convention::right_continuous) const;

    //! Uncensored window times where Q jumps, ascending.
    std::span<const double> jump_times() const { return jump_t_; }
    //! Q at each jump (right-continuous values); strictly increasing.
    std::span<const double> jump_values() const { return jump_q_; }
    //! Censored window times where the censoring estimate jumps.
    std::span<const double> censor_jump_times() const { return cjump_t_; }
    //! Censoring estimate at each of its jumps.
    std::span<const double> censor_jump_values() const { return cjump_g_; }

    //! Largest observed time carrying positive weight.
    double max_window_z() const { return z_.back(); }
    std::size_t window_size() const { return z_.size(); }

private:
    double x0_;
    std::vector<double> z_;            // window times, ascending
    std::vector<std::uint8_t> event_;
    std::vector<double> m_prefix_;     // M at window times
    std::vector<double> m1_prefix_;    // M1 at window times
    std::vector<double> q_prefix_;     // Q at window times (right-continuous)
    std::vector<double> g_prefix_;     // censoring analogue
    std::vector<double> jump_t_, jump_q_;
    std::vector<double> cjump_t_, cjump_g_;

    double step_value(const std::vector<double>& prefix, double t, bool strict) const;
};

//! One-shot convenience wrappers; each builds a LocalFit at x0.
double subdist_M(const SurvivalSample& sample, const KernelSpec& spec, double t, double x0);
double subdist_M1(const SurvivalSample& sample, const KernelSpec& spec, double t, double x0);
double beran_Q(const SurvivalSample& sample, const KernelSpec& spec, double t, double x0,
               Convention c = Convention::right_continuous);
double beran_censor(const SurvivalSample& sample, const KernelSpec& spec, double t,
                    double x0, Convention c = Convention::right_continuous);

} // namespace cure
