#include "cure/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <json.hpp>

#include "cure/bootstrap.hpp"
#include "cure/error_distribution.hpp"
#include "cure/errors.hpp"
#include "cure/estimators.hpp"
#include "cure/kernel.hpp"
#include "cure/simulation.hpp"
#include "cure/stats.hpp"

namespace cure {

namespace fs = std::filesystem;
using nlohmann::json;

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::uint64_t fnv1a64_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument("cannot open " + path);
    std::uint64_t h = 14695981039346656037ULL;
    char c;
    while (in.get(c)) {
        h ^= static_cast<unsigned char>(c);
        h *= 1099511628211ULL;
    }
    return h;
}

namespace {

double parse_field(const std::string& path, std::size_t row, const char* name,
                   const std::string& field) {
    double v = 0.0;
    const char* begin = field.data();
    const char* end = begin + field.size();
    auto [ptr, ec] = std::from_chars(begin, end, v);
    if (ec != std::errc{} || ptr != end)
        throw ParseError(path, row, std::string("cannot parse column '") + name +
                                        "' from \"" + field + "\"");
    if (!std::isfinite(v))
        throw ParseError(path, row, std::string("column '") + name + "' is not finite");
    return v;
}

std::vector<std::string> split_csv_line(std::string line) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::vector<std::string> fields;
    std::size_t start = 0;
    for (;;) {
        const auto pos = line.find(',', start);
        if (pos == std::string::npos) {
            fields.push_back(line.substr(start));
            break;
        }
        fields.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
    return fields;
}

} // namespace

DatasetFile load_csv(const std::string& path, const LoadOptions& options) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open " + path);

    DatasetFile data;
    data.path = path;
    std::string line;
    std::size_t row = 0;
    bool skipped_header = false;
    while (std::getline(in, line)) {
        ++row;
        if (options.has_header && !skipped_header) {
            skipped_header = true;
            continue;
        }
        if (line.empty() || line == "\r") continue;
        const auto fields = split_csv_line(line);
        if (fields.size() != 3)
            throw ParseError(path, row,
                             "expected 3 columns (x,z,delta), found " +
                                 std::to_string(fields.size()));
        Observation o;
        o.x = parse_field(path, row, "x", fields[0]);
        o.z = parse_field(path, row, "z", fields[1]);
        const double d = parse_field(path, row, "delta", fields[2]);
        if (d != 0.0 && d != 1.0)
            throw ParseError(path, row, "delta must be 0 or 1, found \"" + fields[2] + "\"");
        o.delta = static_cast<int>(d);
        if (options.log_transform_z) {
            if (!(o.z > 0.0)) throw NonPositiveTime(path, row);
            o.z = std::log(o.z);
        }
        data.rows.push_back(o);
    }
    data.checksum = fnv1a64_file(path);
    return data;
}

void save_csv(const std::string& path, std::span<const Observation> rows) {
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot open " + path + " for writing");
    out << "x,z,delta\n";
    for (const auto& o : rows)
        out << format_double(o.x) << ',' << format_double(o.z) << ',' << o.delta << '\n';
}

namespace {

std::string hex64(std::uint64_t v) {
    char buf[19];
    std::snprintf(buf, sizeof(buf), "0x%016llx", static_cast<unsigned long long>(v));
    return buf;
}

KernelFamily parse_kernel(const std::string& name) {
    if (name == "biweight") return KernelFamily::biweight;
    if (name == "epanechnikov") return KernelFamily::epanechnikov;
    throw std::invalid_argument("unknown kernel '" + name +
                                "' (expected biweight or epanechnikov)");
}

Convention parse_convention(const std::string& name) {
    if (name == "right") return Convention::right_continuous;
    if (name == "left") return Convention::left_continuous;
    throw std::invalid_argument("unknown convention '" + name + "' (expected right or left)");
}

struct LoadedInput {
    DatasetFile file;
    SurvivalSample sample;
    double sigma_x = 0.0;
    double bandwidth = 0.0;
    bool used_rule = false;
    KernelSpec spec;
    ScoreFunction score;
    Convention convention = Convention::right_continuous;
};

LoadedInput prepare_input(const DataOptions& data, const EstimatorOptions& est) {
    LoadedInput in;
    in.file = load_csv(data.input, LoadOptions{data.has_header, data.log_transform});
    if (in.file.rows.size() < 10)
        throw std::invalid_argument("fit requires at least 10 rows, found " +
                                    std::to_string(in.file.rows.size()));
    in.sample = SurvivalSample::from_observations(
        in.file.rows, data.strict_ties ? TiePolicy::error : TiePolicy::jitter,
        data.tie_seed);
    in.sigma_x = sample_sd(in.sample.x_original());
    if (est.bandwidth > 0.0) {
        in.bandwidth = est.bandwidth;
        in.used_rule = false;
    } else {
        const BandwidthRule rule{est.c, est.gamma};
        if (auto warn = undersmoothing_warning(rule)) std::cerr << "warning: " << *warn << "\n";
        in.bandwidth = default_bandwidth(rule, in.sample.size(), in.sigma_x);
        in.used_rule = true;
    }
    in.spec = KernelSpec{parse_kernel(est.kernel), in.bandwidth};
    in.score = ScoreFunction{ScoreForm::logistic_step, est.score_threshold, est.score_scale,
                             est.score_renormalize};
    in.convention = parse_convention(est.convention);
    return in;
}

json estimator_json(const EstimatorOptions& est, const LoadedInput& in) {
    return json{
        {"kernel", est.kernel},
        {"bandwidth", in.bandwidth},
        {"bandwidth_rule",
         in.used_rule ? json{{"c", est.c}, {"gamma", est.gamma}} : json(nullptr)},
        {"score",
         {{"form", "logistic_step"},
          {"p_lower", est.score_threshold},
          {"scale", est.score_scale},
          {"renormalize", est.score_renormalize}}},
        {"convention", est.convention},
    };
}

json data_json(const DataOptions& data, const DatasetFile& file) {
    return json{
        {"path", data.input},
        {"checksum_fnv1a64", hex64(file.checksum)},
        {"rows", file.rows.size()},
        {"has_header", data.has_header},
        {"log_transform", data.log_transform},
        {"ties", {{"policy", data.strict_ties ? "error" : "jitter"}, {"seed", data.tie_seed}}},
    };
}

json manifest_json(const std::string& command, json config) {
    return json{
        {"schema", 1},
        {"tool", {{"name", kToolName}, {"version", kToolVersion}}},
        {"command", command},
        {"config", std::move(config)},
    };
}

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot open " + path.string() + " for writing");
    out << text;
}

void write_json(const fs::path& path, const json& j) { write_text(path, j.dump(2) + "\n"); }

int guard(const char* command, const std::function<int()>& body) {
    try {
        return body();
    } catch (const EstimationError& e) {
        std::cerr << command << ": estimation error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << command << ": " << e.what() << "\n";
        return 2;
    }
}

} // namespace

int run_fit(const FitCommand& cmd) {
    return guard("fit", [&]() -> int {
        auto in = prepare_input(cmd.data, cmd.estimator);
        fs::create_directories(cmd.out_dir);

        auto model = FittedCureModel::fit(std::move(in.sample), in.spec, in.score,
                                          in.convention);

        const bool explicit_grid = cmd.grid_lo != 0.0 || cmd.grid_hi != 0.0;
        const auto fhat = explicit_grid
                              ? error_cdf_grid(model, cmd.grid_lo, cmd.grid_hi, cmd.grid_steps)
                              : error_cdf_grid(model, cmd.grid_steps);
        if (fhat.high_exclusion)
            std::cerr << "warning: " << fhat.excluded
                      << " covariates excluded from the error-distribution average "
                         "(more than 10% of the sample)\n";

        // fhat.csv
        {
            std::ostringstream s;
            s << "t,F_hat\n";
            for (std::size_t i = 0; i < fhat.grid.size(); ++i)
                s << format_double(fhat.grid[i]) << ',' << format_double(fhat.values[i])
                  << '\n';
            write_text(fs::path(cmd.out_dir) / "fhat.csv", s.str());
        }

        // curves.csv over an x grid spanning the data
        {
            const auto& xs = model.sample().x_original();
            const auto [lo_it, hi_it] = std::minmax_element(xs.begin(), xs.end());
            const double lo = *lo_it, hi = *hi_it;
            std::ostringstream s;
            s << "x,pi,m,s\n";
            const std::size_t pts = std::max<std::size_t>(2, cmd.curve_points);
            for (std::size_t i = 0; i < pts; ++i) {
                const double x =
                    lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(pts - 1);
                double pi = std::nan(""), m = std::nan(""), sc = std::nan("");
                try {
                    LocalFit lf(model.sample(), model.kernel(), x);
                    const double qmax = detail::observable_mass(lf, model.tau0(),
                                                                model.convention());
                    pi = 1.0 - qmax;
                    const auto ls = detail::l_functionals(lf, model.score(), qmax);
                    m = ls.m;
                    sc = ls.v > 0.0 ? std::sqrt(ls.v) : std::nan("");
                } catch (const EstimationError&) {
                    // leave nan entries for this grid point
                }
                s << format_double(x) << ',' << format_double(pi) << ','
                  << format_double(m) << ',' << format_double(sc) << '\n';
            }
            write_text(fs::path(cmd.out_dir) / "curves.csv", s.str());
        }

        json config = {
            {"data", data_json(cmd.data, in.file)},
            {"estimator", estimator_json(cmd.estimator, in)},
            {"grid",
             {{"lo", explicit_grid ? json(cmd.grid_lo) : json(nullptr)},
              {"hi", explicit_grid ? json(cmd.grid_hi) : json(nullptr)},
              {"steps", cmd.grid_steps}}},
            {"curve_points", cmd.curve_points},
        };
        json manifest = manifest_json("fit", std::move(config));

        json fitj = {
            {"schema", 1},
            {"manifest", manifest},
            {"n", model.sample().size()},
            {"events", model.sample().event_count()},
            {"tau0", model.tau0()},
            {"bandwidth", in.bandwidth},
            {"sigma_x", in.sigma_x},
            {"diagnostics",
             {{"excluded_covariates", fhat.excluded},
              {"clamped_ratios", fhat.clamp_count},
              {"high_exclusion_warning", fhat.high_exclusion},
              {"grid_lo", fhat.grid.front()},
              {"grid_hi", fhat.grid.back()}}},
        };
        write_json(fs::path(cmd.out_dir) / "fit.json", fitj);
        write_json(fs::path(cmd.out_dir) / "manifest.json", manifest);
        return 0;
    });
}

int run_simulate(const SimulateCommand& cmd) {
    return guard("simulate", [&]() -> int {
        if (cmd.n.empty() || cmd.c.empty())
            throw std::invalid_argument("simulate: need at least one n and one (c, gamma)");
        if (cmd.c.size() != cmd.gamma.size())
            throw std::invalid_argument("simulate: --c and --gamma must be given in pairs");
        fs::create_directories(cmd.out_dir);

        std::vector<MonteCarloReport> reports;
        for (const std::size_t n : cmd.n) {
            for (std::size_t k = 0; k < cmd.c.size(); ++k) {
                SimulationConfig config;
                config.n = n;
                config.runs = cmd.runs;
                config.c = cmd.c[k];
                config.gamma = cmd.gamma[k];
                config.seed = cmd.seed;
                config.amise_lo = cmd.grid_lo;
                config.amise_hi = cmd.grid_hi;
                config.amise_steps = cmd.grid_steps;
                config.threads = cmd.threads;
                if (auto warn = undersmoothing_warning(BandwidthRule{config.c, config.gamma}))
                    std::cerr << "warning: " << *warn << "\n";
                reports.push_back(run_monte_carlo(config));
            }
        }

        json config = {
            {"n", cmd.n},         {"runs", cmd.runs},
            {"c", cmd.c},         {"gamma", cmd.gamma},
            {"seed", cmd.seed},   {"amise_grid",
                                   {{"lo", cmd.grid_lo},
                                    {"hi", cmd.grid_hi},
                                    {"steps", cmd.grid_steps}}},
        };
        json manifest = manifest_json("simulate", std::move(config));

        // table1.csv: rows n x (c, gamma), columns AMSE at the eval points
        {
            std::ostringstream s;
            s << "n,c,gamma";
            for (const double t : reports.front().config.eval_points)
                s << ",t=" << format_double(t);
            s << '\n';
            for (const auto& r : reports) {
                s << r.config.n << ',' << format_double(r.config.c) << ','
                  << format_double(r.config.gamma);
                for (const double v : r.amse) s << ',' << format_double(v);
                s << '\n';
            }
            write_text(fs::path(cmd.out_dir) / "table1.csv", s.str());
        }

        // table2.csv: rows (c, gamma), one AMISE column per n
        {
            std::ostringstream s;
            s << "c,gamma";
            for (const std::size_t n : cmd.n) s << ",n=" << n;
            s << '\n';
            for (std::size_t k = 0; k < cmd.c.size(); ++k) {
                s << format_double(cmd.c[k]) << ',' << format_double(cmd.gamma[k]);
                for (std::size_t ni = 0; ni < cmd.n.size(); ++ni)
                    s << ',' << format_double(reports[ni * cmd.c.size() + k].amise);
                s << '\n';
            }
            write_text(fs::path(cmd.out_dir) / "table2.csv", s.str());
        }

        json out = {{"schema", 1}, {"manifest", manifest}, {"reports", json::array()}};
        for (const auto& r : reports) {
            json amse = json::array();
            for (std::size_t i = 0; i < r.amse.size(); ++i)
                amse.push_back({{"t", r.config.eval_points[i]}, {"value", r.amse[i]}});
            out["reports"].push_back({{"n", r.config.n},
                                      {"c", r.config.c},
                                      {"gamma", r.config.gamma},
                                      {"amse", std::move(amse)},
                                      {"amise", r.amise},
                                      {"failures", r.failures},
                                      {"runs_used", r.runs_used}});
        }
        write_json(fs::path(cmd.out_dir) / "report.json", out);
        write_json(fs::path(cmd.out_dir) / "manifest.json", manifest);
        return 0;
    });
}

int run_bootstrap(const BootstrapCommand& cmd) {
    return guard("bootstrap", [&]() -> int {
        if (!(cmd.level > 0.0 && cmd.level < 1.0))
            throw std::invalid_argument("bootstrap: --level must be in (0, 1)");
        if (cmd.replicates < 1)
            throw std::invalid_argument("bootstrap: --replicates must be >= 1");
        auto in = prepare_input(cmd.data, cmd.estimator);
        fs::create_directories(cmd.out_dir);

        auto model = FittedCureModel::fit(std::move(in.sample), in.spec, in.score,
                                          in.convention);
        BootstrapConfig config;
        config.replicates = cmd.replicates;
        config.level = cmd.level;
        config.seed = cmd.seed;
        config.sampling_grid_steps = cmd.grid_steps;
        config.threads = cmd.threads;
        const auto band = bootstrap_F_band(model, config);

        {
            std::ostringstream s;
            s << "t,lower,point,upper\n";
            for (std::size_t i = 0; i < band.grid.size(); ++i)
                s << format_double(band.grid[i]) << ',' << format_double(band.lower[i])
                  << ',' << format_double(band.point[i]) << ','
                  << format_double(band.upper[i]) << '\n';
            write_text(fs::path(cmd.out_dir) / "band.csv", s.str());
        }

        json config_json = {
            {"data", data_json(cmd.data, in.file)},
            {"estimator", estimator_json(cmd.estimator, in)},
            {"replicates", cmd.replicates},
            {"level", cmd.level},
            {"seed", cmd.seed},
            {"grid_steps", cmd.grid_steps},
        };
        json manifest = manifest_json("bootstrap", std::move(config_json));
        manifest["diagnostics"] = {
            {"attempts_used", band.attempts_used},
            {"failed_attempts", band.failed_attempts},
            {"replicate_censored_fraction", band.replicate_censored_fraction},
        };
        write_json(fs::path(cmd.out_dir) / "manifest.json", manifest);
        return 0;
    });
}

} // namespace cure
