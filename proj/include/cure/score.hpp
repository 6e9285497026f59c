#pragma once

namespace cure {

enum class ScoreForm {
    logistic_step, //!< J(p) = logistic(p / scale) above p_lower, 0 below
    uniform,       //!< J(p) = 1 above p_lower, 0 below
};

//! Score function J weighting quantile levels in the L-functionals for
//! location and scale. Nonnegative, bounded, zero on [0, p_lower], and its
//! integral over [0, 1] is within 1e-3 of one for the defaults.
struct ScoreFunction {
    ScoreForm form = ScoreForm::logistic_step;
    double p_lower = 1e-4;
    double scale = 1e-4;
    //! Divide J by its total mass so the integral is exactly one. Off by
    //! default: the raw form already integrates to one within 1.4e-4.
    bool renormalize = false;

    //! J(p).
    double eval(double p) const;

    //! I(q) = integral of J over [0, q], in closed form.
    double integral(double q) const;

    //! I(1), the total mass.
    double total() const { return integral(1.0); }
};

} // namespace cure
