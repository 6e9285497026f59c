#include "cure/score.hpp"

#include <cmath>

namespace cure {

namespace {

double softplus(double x) {
    return std::fmax(x, 0.0) + std::log1p(std::exp(-std::fabs(x)));
}

double raw_eval(const ScoreFunction& s, double p) {
    if (p <= s.p_lower) return 0.0;
    switch (s.form) {
        case ScoreForm::logistic_step:
            return 1.0 / (1.0 + std::exp(-p / s.scale));
        case ScoreForm::uniform:
            return 1.0;
    }
    return 0.0;
}

double raw_integral(const ScoreFunction& s, double q) {
    if (q <= s.p_lower) return 0.0;
    switch (s.form) {
        case ScoreForm::logistic_step:
            return s.scale * (softplus(q / s.scale) - softplus(s.p_lower / s.scale));
        case ScoreForm::uniform:
            return q - s.p_lower;
    }
    return 0.0;
}

} // namespace

double ScoreFunction::eval(double p) const {
    const double v = raw_eval(*this, p);
    return renormalize ? v / raw_integral(*this, 1.0) : v;
}

double ScoreFunction::integral(double q) const {
    const double v = raw_integral(*this, q);
    return renormalize ? v / raw_integral(*this, 1.0) : v;
}

} // namespace cure
