#include "cure/bootstrap.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "cure/errors.hpp"
#include "cure/parallel.hpp"
#include "cure/rng.hpp"
#include "cure/stats.hpp"

namespace cure {

namespace {

struct Pool {
    std::vector<std::size_t> index; // original-order indices with valid local fits
    std::vector<double> x, m, s, pi;
};

Pool build_pool(const FittedCureModel& model) {
    Pool pool;
    const auto& locals = model.locals();
    const auto& xs = model.sample().x_original();
    for (std::size_t j = 0; j < locals.size(); ++j) {
        if (!locals[j].valid()) continue;
        pool.index.push_back(j);
        pool.x.push_back(xs[j]);
        pool.m.push_back(locals[j].m);
        pool.s.push_back(locals[j].s);
        pool.pi.push_back(locals[j].pi);
    }
    if (pool.index.empty()) throw NoValidCovariates();
    return pool;
}

// Center and scale the drawn errors so the score-weighted location of their
// empirical quantile function is 0 and the scale is 1 (the identifiability
// standardization). Returns false when the scale functional degenerates.
bool standardize_errors(std::vector<double>& errors, const ScoreFunction& score) {
    std::vector<double> sorted = errors;
    std::sort(sorted.begin(), sorted.end());
    const std::size_t n = sorted.size();
    const double c0 = score.total();
    double sum1 = 0.0, sum2 = 0.0;
    double i_prev = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const double i_cur =
            score.integral(static_cast<double>(k + 1) / static_cast<double>(n));
        const double di = i_cur - i_prev;
        sum1 += sorted[k] * di;
        sum2 += sorted[k] * sorted[k] * di;
        i_prev = i_cur;
    }
    const double t = sum1 / c0;
    const double v2 = sum2 - 2.0 * t * sum1 + t * t * c0;
    if (!(v2 > 0.0)) return false;
    const double v = std::sqrt(v2);
    for (auto& e : errors) e = (e - t) / v;
    return true;
}

struct AttemptResult {
    bool ok = false;
    std::vector<double> band_values;
    double censored_fraction = 0.0;
};

AttemptResult run_attempt(const FittedCureModel& model, const Pool& pool,
                          const std::vector<double>& sample_grid,
                          const std::vector<double>& sample_cdf,
                          const std::vector<double>& band_grid,
                          const BootstrapConfig& config, std::size_t attempt) {
    const std::size_t n = model.sample().size();
    AttemptResult out;

    RngStream pick_rng(config.seed, attempt, StreamPurpose::resample);
    RngStream err_rng(config.seed, attempt, StreamPurpose::errors);
    RngStream cure_rng(config.seed, attempt, StreamPurpose::cure);
    RngStream cens_rng(config.seed, attempt, StreamPurpose::censoring);

    std::vector<std::size_t> pick(n);
    for (auto& p : pick) {
        const double u = pick_rng.next_uniform();
        p = std::min(pool.index.size() - 1,
                     static_cast<std::size_t>(u * static_cast<double>(pool.index.size())));
    }

    std::vector<double> errors(n);
    for (auto& e : errors) {
        const double u = err_rng.next_uniform();
        const auto it = std::lower_bound(sample_cdf.begin(), sample_cdf.end(), u);
        e = (it == sample_cdf.end()) ? sample_grid.back()
                                     : sample_grid[static_cast<std::size_t>(
                                           it - sample_cdf.begin())];
    }
    if (!standardize_errors(errors, model.score())) return out;

    std::vector<Observation> obs(n);
    std::size_t censored = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t p = pick[i];
        const bool cured = cure_rng.next_uniform() < pool.pi[p];
        const double y = cured ? std::numeric_limits<double>::infinity()
                               : pool.m[p] + pool.s[p] * errors[i];

        // Inverse transform on the local censoring tables. The censoring
        // estimate can be deficient (its last value below one); remaining
        // mass is assigned to the largest observation carrying weight in
        // the window, completing the distribution.
        const LocalFit& lf = model.local_fit(pool.index[p]);
        const auto cg = lf.censor_jump_values();
        const auto ct = lf.censor_jump_times();
        const double u = cens_rng.next_uniform();
        double c;
        const auto it = std::lower_bound(cg.begin(), cg.end(), u);
        if (it == cg.end()) {
            c = lf.max_window_z();
        } else {
            c = ct[static_cast<std::size_t>(it - cg.begin())];
        }

        const int delta = (y <= c) ? 1 : 0;
        censored += delta == 0;
        obs[i] = Observation{pool.x[p], std::min(y, c), delta};
    }
    out.censored_fraction = static_cast<double>(censored) / static_cast<double>(n);

    try {
        auto sample = SurvivalSample::from_observations(std::move(obs), TiePolicy::jitter,
                                                        derive_seed(config.seed, attempt));
        auto refit = FittedCureModel::fit(std::move(sample), model.kernel(), model.score(),
                                          model.convention());
        out.band_values.resize(band_grid.size());
        for (std::size_t g = 0; g < band_grid.size(); ++g)
            out.band_values[g] = error_cdf(refit, band_grid[g]);
        out.ok = true;
    } catch (const EstimationError&) {
        out.ok = false;
    }
    return out;
}

} // namespace

ConfidenceBand bootstrap_F_band(const FittedCureModel& model, const BootstrapConfig& config) {
    if (config.replicates < 1)
        throw std::invalid_argument("bootstrap: replicates must be >= 1");
    if (!(config.level > 0.0 && config.level < 1.0))
        throw std::invalid_argument("bootstrap: level must be in (0, 1)");
    if (config.sampling_grid_steps < 2)
        throw std::invalid_argument("bootstrap: sampling grid needs >= 2 steps");

    const auto pool = build_pool(model);
    const auto sampling = error_cdf_grid(model, config.sampling_grid_steps);

    std::vector<double> band_grid =
        config.band_grid.empty() ? sampling.grid : config.band_grid;
    std::vector<double> point(band_grid.size());
    for (std::size_t g = 0; g < band_grid.size(); ++g)
        point[g] = error_cdf(model, band_grid[g]);

    const std::size_t wanted = static_cast<std::size_t>(config.replicates);
    const std::size_t max_attempts = 3 * wanted;
    std::vector<AttemptResult> kept;
    kept.reserve(wanted);
    std::size_t next_attempt = 0;
    std::size_t failed = 0;

    // Waves of exactly the number of missing replicates keep the collected
    // set identical to a serial scan over attempt indices.
    while (kept.size() < wanted && next_attempt < max_attempts) {
        const std::size_t need = wanted - kept.size();
        const std::size_t wave = std::min(need, max_attempts - next_attempt);
        std::vector<AttemptResult> results(wave);
        parallel_for(wave, config.threads, [&](std::size_t i) {
            results[i] = run_attempt(model, pool, sampling.grid, sampling.values,
                                     band_grid, config, next_attempt + i);
        });
        for (auto& r : results) {
            if (r.ok) {
                kept.push_back(std::move(r));
            } else {
                ++failed;
            }
        }
        next_attempt += wave;
    }
    if (kept.size() < wanted) throw BootstrapUnstable(config.replicates, (int)max_attempts);

    ConfidenceBand band;
    band.grid = band_grid;
    band.point = std::move(point);
    band.lower.resize(band_grid.size());
    band.upper.resize(band_grid.size());
    band.attempts_used = next_attempt;
    band.failed_attempts = failed;
    double cf = 0.0;
    for (const auto& r : kept) cf += r.censored_fraction;
    band.replicate_censored_fraction = cf / static_cast<double>(kept.size());

    const double alpha = 1.0 - config.level;
    std::vector<double> column(kept.size());
    for (std::size_t g = 0; g < band_grid.size(); ++g) {
        for (std::size_t r = 0; r < kept.size(); ++r)
            column[r] = kept[r].band_values[g];
        std::sort(column.begin(), column.end());
        band.lower[g] = quantile_type7_sorted(column, alpha / 2.0);
        band.upper[g] = quantile_type7_sorted(column, 1.0 - alpha / 2.0);
    }
    return band;
}

} // namespace cure
