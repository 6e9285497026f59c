#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace oracle {

Fixture weighted_fixture(const std::vector<double>& x, const std::vector<double>& z,
                         const std::vector<int>& delta, double x0,
                         const cure::KernelSpec& spec) {
    Fixture f;
    f.z = z;
    f.delta = delta;
    f.weight.resize(x.size());
    for (std::size_t j = 0; j < x.size(); ++j)
        f.weight[j] = cure::kernel_eval(spec, (x0 - x[j]) / spec.bandwidth);
    return f;
}

double product_limit(const Fixture& f, double t, bool censor_variant,
                     bool right_continuous) {
    const std::size_t n = f.z.size();
    double prod = 1.0;
    for (std::size_t j = 0; j < n; ++j) {
        const bool in = right_continuous ? (f.z[j] <= t) : (f.z[j] < t);
        if (!in) continue;
        const int ind = censor_variant ? 1 - f.delta[j] : f.delta[j];
        if (ind == 0) continue;
        double tail = 0.0;
        for (std::size_t k = 0; k < n; ++k)
            if (f.z[k] >= f.z[j]) tail += f.weight[k];
        if (tail <= 0.0) continue; // zero-weight observation, factor is one
        prod *= 1.0 - f.weight[j] / tail;
    }
    return 1.0 - prod;
}

double subdist(const Fixture& f, double t, bool delta_weighted) {
    double total = 0.0, sum = 0.0;
    for (std::size_t j = 0; j < f.z.size(); ++j) {
        total += f.weight[j];
        if (f.z[j] > t) continue;
        if (delta_weighted && f.delta[j] == 0) continue;
        sum += f.weight[j];
    }
    return sum / total;
}

namespace {

// (time, value) pairs of the product-limit jumps, ascending in time.
std::vector<std::pair<double, double>> jump_table(const Fixture& f) {
    std::vector<std::pair<double, double>> jumps;
    for (std::size_t j = 0; j < f.z.size(); ++j)
        if (f.delta[j] == 1 && f.weight[j] > 0.0)
            jumps.emplace_back(f.z[j], product_limit(f, f.z[j]));
    std::sort(jumps.begin(), jumps.end());
    return jumps;
}

double quantile_from_table(const std::vector<std::pair<double, double>>& jumps, double q) {
    for (const auto& [t, v] : jumps)
        if (v >= q) return t;
    throw std::runtime_error("oracle quantile: no jump reaches q");
}

} // namespace

double quantile(const Fixture& f, double q) {
    return quantile_from_table(jump_table(f), q);
}

double observable_mass(const Fixture& f) {
    double tau = -std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < f.z.size(); ++j)
        if (f.delta[j] == 1 && f.weight[j] > 0.0) tau = std::max(tau, f.z[j]);
    if (!std::isfinite(tau)) return 0.0;
    return product_limit(f, tau);
}

LocationScale l_functionals_riemann(const Fixture& f, const cure::ScoreFunction& score,
                                    std::size_t points) {
    const double qmax = observable_mass(f);
    const auto jumps = jump_table(f);
    double m = 0.0, m2 = 0.0;
    for (std::size_t k = 0; k < points; ++k) {
        const double p = (static_cast<double>(k) + 0.5) / static_cast<double>(points);
        const double w = score.eval(p);
        if (w == 0.0) continue;
        const double xi = quantile_from_table(jumps, qmax * p);
        m += xi * w;
        m2 += xi * xi * w;
    }
    m /= static_cast<double>(points);
    m2 /= static_cast<double>(points);
    return {m, m2 - m * m};
}

double error_cdf(const std::vector<double>& x, const std::vector<double>& z,
                 const std::vector<int>& delta, const cure::KernelSpec& spec,
                 const cure::ScoreFunction& score, double t, std::size_t riemann_points) {
    double sum = 0.0;
    std::size_t used = 0;
    for (std::size_t j = 0; j < x.size(); ++j) {
        const auto f = weighted_fixture(x, z, delta, x[j], spec);
        const double qmax = observable_mass(f);
        if (qmax <= 0.0) continue;
        const auto ls = l_functionals_riemann(f, score, riemann_points);
        if (!(ls.v > 0.0)) continue;
        const double arg = t * std::sqrt(ls.v) + ls.m;
        const double ratio = product_limit(f, arg) / qmax;
        sum += std::clamp(ratio, 0.0, 1.0);
        ++used;
    }
    if (used == 0) throw std::runtime_error("oracle error_cdf: no valid covariate");
    return sum / static_cast<double>(used);
}

double kernel_integral_simpson(const cure::KernelSpec& spec, std::size_t panels) {
    const double h = 2.0 / static_cast<double>(panels);
    double sum = cure::kernel_eval(spec, -1.0) + cure::kernel_eval(spec, 1.0);
    for (std::size_t i = 1; i < panels; ++i) {
        const double u = -1.0 + h * static_cast<double>(i);
        sum += cure::kernel_eval(spec, u) * ((i % 2 == 1) ? 4.0 : 2.0);
    }
    return sum * h / 3.0;
}

} // namespace oracle
