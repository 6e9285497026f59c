#include "cure/estimators.hpp"

#include <algorithm>
#include <cmath>

#include "cure/errors.hpp"

namespace cure {

namespace detail {

double observable_mass(const LocalFit& fit, double tau0, Convention c) {
    return fit.beran_Q(tau0, c);
}

LocationScale l_functionals(const LocalFit& fit, const ScoreFunction& score, double q_max) {
    const auto jt = fit.jump_times();
    const auto jq = fit.jump_values();
    if (jt.empty() || !(q_max > 0.0)) throw DegenerateScale(fit.x0());

    double m = 0.0, m2 = 0.0;
    double i_prev = 0.0;
    for (std::size_t k = 0; k < jt.size(); ++k) {
        const double p = std::min(1.0, jq[k] / q_max);
        const double i_cur = score.integral(p);
        const double di = i_cur - i_prev;
        m += jt[k] * di;
        m2 += jt[k] * jt[k] * di;
        i_prev = i_cur;
        if (p >= 1.0) break;
    }
    return {m, m2 - m * m};
}

double quantile_from_fit(const LocalFit& fit, double q, double q_max) {
    const auto jt = fit.jump_times();
    const auto jq = fit.jump_values();
    if (jt.empty()) throw QuantileOutOfRange(q, 0.0);
    if (q < 0.0 || q > q_max) throw QuantileOutOfRange(q, q_max);
    // smallest jump with Q >= q; for q = 0 this is the first jump point
    const auto it = std::lower_bound(jq.begin(), jq.end(), q);
    if (it == jq.end()) return jt.back(); // q == q_max beyond last stored value
    return jt[static_cast<std::size_t>(it - jq.begin())];
}

} // namespace detail

FittedCureModel FittedCureModel::fit(SurvivalSample sample, KernelSpec spec,
                                     ScoreFunction score, Convention convention) {
    FittedCureModel model;
    model.tau0_ = estimate_tau0(sample);
    model.sample_ = std::move(sample);
    model.spec_ = spec;
    model.score_ = score;
    model.convention_ = convention;

    const auto& xs = model.sample_.x_original();
    const std::size_t n = xs.size();
    model.local_fits_.resize(n);
    model.locals_.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
        auto fit = std::make_unique<const LocalFit>(model.sample_, spec, xs[j]);
        auto& est = model.locals_[j];
        est.q_max = detail::observable_mass(*fit, model.tau0_, convention);
        est.pi = 1.0 - est.q_max;
        try {
            const auto ls = detail::l_functionals(*fit, score, est.q_max);
            if (fit->jump_times().size() < 2 || !(ls.v > 0.0))
                throw DegenerateScale(xs[j]);
            est.m = ls.m;
            est.s = std::sqrt(ls.v);
            est.status = LocalStatus::ok;
        } catch (const DegenerateScale&) {
            est.status = fit->jump_times().empty() ? LocalStatus::no_uncensored_mass
                                                   : LocalStatus::degenerate_scale;
            ++model.excluded_;
        }
        model.local_fits_[j] = std::move(fit);
    }
    return model;
}

double FittedCureModel::cure_fraction(double x0) const {
    LocalFit fit(sample_, spec_, x0);
    return 1.0 - detail::observable_mass(fit, tau0_, convention_);
}

double FittedCureModel::quantile(double x0, double q) const {
    LocalFit fit(sample_, spec_, x0);
    return detail::quantile_from_fit(fit, q, detail::observable_mass(fit, tau0_, convention_));
}

double FittedCureModel::location(double x0) const {
    LocalFit fit(sample_, spec_, x0);
    return detail::l_functionals(fit, score_, detail::observable_mass(fit, tau0_, convention_)).m;
}

double FittedCureModel::scale(double x0) const {
    LocalFit fit(sample_, spec_, x0);
    const auto ls =
        detail::l_functionals(fit, score_, detail::observable_mass(fit, tau0_, convention_));
    // a single jump point means a constant local quantile function, whose
    // positive "variance" is only the score function's integral deficit
    if (fit.jump_times().size() < 2 || !(ls.v > 0.0)) throw DegenerateScale(x0);
    return std::sqrt(ls.v);
}

} // namespace cure
