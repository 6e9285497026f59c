#include <CLI11.hpp>

#include "cure/io.hpp"

namespace {

void add_data_options(CLI::App* app, cure::DataOptions& data) {
    app->add_option("--input", data.input, "input CSV with columns x,z,delta")
        ->required();
    app->add_flag("!--no-header", data.has_header, "input has no header row");
    app->add_flag("--log-transform", data.log_transform,
                  "apply z -> ln(z); requires positive times");
    app->add_flag("--strict-ties", data.strict_ties,
                  "error on tied observed times instead of jittering");
    app->add_option("--tie-seed", data.tie_seed, "seed for the tie-breaking jitter");
}

void add_estimator_options(CLI::App* app, cure::EstimatorOptions& est) {
    app->add_option("--kernel", est.kernel, "kernel family: biweight|epanechnikov")
        ->check(CLI::IsMember({"biweight", "epanechnikov"}));
    auto* bw = app->add_option("--bandwidth", est.bandwidth,
                               "explicit bandwidth in covariate units");
    auto* c = app->add_option("--c", est.c, "bandwidth rule constant C");
    auto* g = app->add_option("--gamma", est.gamma, "bandwidth rule exponent gamma");
    bw->excludes(c)->excludes(g);
    app->add_option("--score-threshold", est.score_threshold,
                    "score function lower threshold p_l");
    app->add_option("--score-scale", est.score_scale, "score function logistic scale");
    app->add_flag("--score-renormalize", est.score_renormalize,
                  "renormalize the score function to integrate to one");
    app->add_option("--convention", est.convention,
                    "product-limit evaluation convention: right|left")
        ->check(CLI::IsMember({"right", "left"}));
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"nonparametric location-scale mixture cure model estimation"};
    app.require_subcommand(1);

    cure::FitCommand fit;
    auto* fit_app = app.add_subcommand(
        "fit", "fit the model to a dataset and write fit.json, curves.csv, fhat.csv");
    add_data_options(fit_app, fit.data);
    add_estimator_options(fit_app, fit.estimator);
    fit_app->add_option("--grid-lo", fit.grid_lo, "error-distribution grid lower end");
    fit_app->add_option("--grid-hi", fit.grid_hi, "error-distribution grid upper end");
    fit_app->add_option("--grid-steps", fit.grid_steps, "error-distribution grid points");
    fit_app->add_option("--curve-points", fit.curve_points, "points in curves.csv");
    fit_app->add_option("--out-dir", fit.out_dir, "output directory");

    cure::SimulateCommand sim;
    auto* sim_app = app.add_subcommand(
        "simulate", "run the Monte Carlo benchmark and write table1.csv, table2.csv");
    sim_app->add_option("--n", sim.n, "sample sizes (repeatable)");
    sim_app->add_option("--runs", sim.runs, "Monte Carlo runs per configuration");
    sim_app->add_option("--c", sim.c, "bandwidth constants (paired with --gamma)");
    sim_app->add_option("--gamma", sim.gamma, "bandwidth exponents (paired with --c)");
    sim_app->add_option("--seed", sim.seed, "master seed");
    sim_app->add_option("--grid-lo", sim.grid_lo, "integrated-error grid lower end");
    sim_app->add_option("--grid-hi", sim.grid_hi, "integrated-error grid upper end");
    sim_app->add_option("--grid-steps", sim.grid_steps, "integrated-error grid points");
    sim_app->add_option("--threads", sim.threads, "worker threads (0 = hardware)");
    sim_app->add_option("--out-dir", sim.out_dir, "output directory");

    cure::BootstrapCommand boot;
    auto* boot_app = app.add_subcommand(
        "bootstrap", "pointwise confidence band for the error distribution (band.csv)");
    add_data_options(boot_app, boot.data);
    add_estimator_options(boot_app, boot.estimator);
    boot_app->add_option("--replicates", boot.replicates, "bootstrap replicates");
    boot_app->add_option("--level", boot.level, "confidence level in (0, 1)");
    boot_app->add_option("--seed", boot.seed, "bootstrap seed");
    boot_app->add_option("--grid-steps", boot.grid_steps, "band/sampling grid points");
    boot_app->add_option("--threads", boot.threads, "worker threads (0 = hardware)");
    boot_app->add_option("--out-dir", boot.out_dir, "output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (fit_app->parsed()) return cure::run_fit(fit);
    if (sim_app->parsed()) return cure::run_simulate(sim);
    if (boot_app->parsed()) return cure::run_bootstrap(boot);
    return 2;
}
