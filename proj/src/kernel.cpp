#include "cure/kernel.hpp"

#include <cmath>
#include <stdexcept>

#include "cure/errors.hpp"

namespace cure {

namespace {
constexpr double kDenominatorFloor = 1e-300;
}

double kernel_eval(const KernelSpec& spec, double u) {
    const double u2 = u * u; // u*u == (-u)*(-u) exactly, so symmetry is bitwise
    if (u2 >= 1.0) return 0.0;
    switch (spec.family) {
        case KernelFamily::epanechnikov:
            return 0.75 * (1.0 - u2);
        case KernelFamily::biweight: {
            const double w = 1.0 - u2;
            return (15.0 / 16.0) * w * w;
        }
    }
    return 0.0;
}

std::vector<double> nw_weights(double x0, std::span<const double> xs,
                               const KernelSpec& spec) {
    if (!(spec.bandwidth > 0.0))
        throw std::invalid_argument("nw_weights: bandwidth must be positive");
    std::vector<double> w(xs.size());
    double denom = 0.0;
    for (std::size_t j = 0; j < xs.size(); ++j) {
        w[j] = kernel_eval(spec, (x0 - xs[j]) / spec.bandwidth);
        denom += w[j];
    }
    if (!(denom >= kDenominatorFloor)) throw EmptyWindow(x0);
    for (auto& v : w) v /= denom;
    return w;
}

double default_bandwidth(const BandwidthRule& rule, std::size_t n, double sigma_x) {
    if (n < 2) throw std::invalid_argument("default_bandwidth: n must be >= 2");
    if (!(sigma_x > 0.0))
        throw std::invalid_argument("default_bandwidth: sigma_x must be positive");
    const double nn = static_cast<double>(n);
    const double ex = 0.25 + rule.gamma;
    return rule.c * sigma_x * std::pow(nn, -ex) * std::pow(std::log(nn), ex);
}

std::optional<std::string> undersmoothing_warning(const BandwidthRule& rule) {
    if (rule.gamma > 0.0 && rule.gamma < 1.0 / 12.0) return std::nullopt;
    return "gamma=" + std::to_string(rule.gamma) +
           " lies outside (0, 1/12); the bandwidth will not undersmooth by the "
           "right amount";
}

} // namespace cure
