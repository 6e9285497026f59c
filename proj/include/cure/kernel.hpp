#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace cure {

enum class KernelFamily {
    epanechnikov,
    biweight,
};

//! Kernel family plus bandwidth in covariate units.
//!
//! Both kernels are symmetric probability densities supported on [-1, 1].
struct KernelSpec {
    KernelFamily family = KernelFamily::biweight;
    double bandwidth = 1.0;
};

//! K(u); zero for |u| >= 1. Symmetric in u (bit-identical for equal |u|).
double kernel_eval(const KernelSpec& spec, double u);

//! Nadaraya-Watson weights W_j(x0) = K((x0-x_j)/a) / sum_k K((x0-x_k)/a).
//!
//! Weights sum to one. Throws EmptyWindow when no observation carries
//! kernel weight at x0 (including denominator underflow below 1e-300);
//! the bandwidth is never widened silently.
std::vector<double> nw_weights(double x0, std::span<const double> xs,
                               const KernelSpec& spec);

//! Rule-of-thumb undersmoothing bandwidth a_n = c * sigma_x * n^(-1/4-gamma)
//! * log(n)^(1/4+gamma).
struct BandwidthRule {
    double c = 0.75;
    double gamma = 1.0 / 16.0;
};

double default_bandwidth(const BandwidthRule& rule, std::size_t n, double sigma_x);

//! Non-empty when gamma lies outside (0, 1/12), the range for which the
//! bandwidth undersmoothes by the right amount. The formula stays computable
//! either way, so this is a warning rather than an error.
std::optional<std::string> undersmoothing_warning(const BandwidthRule& rule);

} // namespace cure
