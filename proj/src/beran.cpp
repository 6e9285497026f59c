#include "cure/beran.hpp"

#include <algorithm>
#include <cmath>

#include "cure/errors.hpp"

namespace cure {

namespace {
constexpr double kDenominatorFloor = 1e-300;
}

LocalFit::LocalFit(const SurvivalSample& sample, const KernelSpec& spec, double x0)
    : x0_(x0) {
    const auto& zs = sample.z_sorted();
    const auto& ds = sample.delta_sorted();
    const auto& xs = sample.x_by_z();
    const std::size_t n = zs.size();

    // Kernel pass in z order; observations with zero kernel value contribute
    // exactly 0.0 everywhere below, so dropping them leaves all results
    // bit-identical.
    std::vector<double> k(n);
    double denom = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        k[i] = kernel_eval(spec, (x0 - xs[i]) / spec.bandwidth);
        denom += k[i];
    }
    if (!(denom >= kDenominatorFloor)) throw EmptyWindow(x0);

    for (std::size_t i = 0; i < n; ++i) {
        if (k[i] > 0.0) {
            z_.push_back(zs[i]);
            event_.push_back(ds[i]);
        }
    }
    const std::size_t w = z_.size();
    std::vector<double> weight(w);
    {
        std::size_t j = 0;
        for (std::size_t i = 0; i < n; ++i)
            if (k[i] > 0.0) weight[j++] = k[i] / denom;
    }

    // Suffix weight sums; S_j >= weight_j holds exactly in floating point
    // because the sum accumulates nonnegative terms from the right.
    std::vector<double> suffix(w);
    double acc = 0.0;
    for (std::size_t j = w; j-- > 0;) {
        acc += weight[j];
        suffix[j] = acc;
    }

    m_prefix_.resize(w);
    m1_prefix_.resize(w);
    q_prefix_.resize(w);
    g_prefix_.resize(w);
    double msum = 0.0, m1sum = 0.0, qprod = 1.0, gprod = 1.0;
    for (std::size_t j = 0; j < w; ++j) {
        msum += weight[j];
        m1sum += event_[j] ? weight[j] : 0.0;
        const double factor = 1.0 - weight[j] / suffix[j];
        if (event_[j]) {
            qprod *= factor;
        } else {
            gprod *= factor;
        }
        m_prefix_[j] = msum;
        m1_prefix_[j] = m1sum;
        q_prefix_[j] = 1.0 - qprod;
        g_prefix_[j] = 1.0 - gprod;
        if (event_[j]) {
            jump_t_.push_back(z_[j]);
            jump_q_.push_back(q_prefix_[j]);
        } else {
            cjump_t_.push_back(z_[j]);
            cjump_g_.push_back(g_prefix_[j]);
        }
    }
}

double LocalFit::step_value(const std::vector<double>& prefix, double t, bool strict) const {
    // Number of window times <= t (or < t when strict).
    const auto it = strict ? std::lower_bound(z_.begin(), z_.end(), t)
                           : std::upper_bound(z_.begin(), z_.end(), t);
    const std::size_t count = static_cast<std::size_t>(it - z_.begin());
    return count == 0 ? 0.0 : prefix[count - 1];
}

double LocalFit::subdist_M(double t) const { return step_value(m_prefix_, t, false); }

double LocalFit::subdist_M1(double t) const { return step_value(m1_prefix_, t, false); }

double LocalFit::beran_Q(double t, Convention c) const {
    return step_value(q_prefix_, t, c == Convention::left_continuous);
}

double LocalFit::beran_censor(double t, Convention c) const {
    return step_value(g_prefix_, t, c == Convention::left_continuous);
}

double subdist_M(const SurvivalSample& sample, const KernelSpec& spec, double t, double x0) {
    return LocalFit(sample, spec, x0).subdist_M(t);
}

double subdist_M1(const SurvivalSample& sample, const KernelSpec& spec, double t, double x0) {
    return LocalFit(sample, spec, x0).subdist_M1(t);
}

double beran_Q(const SurvivalSample& sample, const KernelSpec& spec, double t, double x0,
               Convention c) {
    return LocalFit(sample, spec, x0).beran_Q(t, c);
}

double beran_censor(const SurvivalSample& sample, const KernelSpec& spec, double t,
                    double x0, Convention c) {
    return LocalFit(sample, spec, x0).beran_censor(t, c);
}

} // namespace cure
