#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "cure/sample.hpp"

namespace cure {

inline constexpr const char* kToolName = "curefit";
inline constexpr const char* kToolVersion = "0.1.0";

struct LoadOptions {
    bool has_header = true;
    bool log_transform_z = false;
};

//! Parsed dataset: rows of (x, z, delta) from a comma-separated file.
struct DatasetFile {
    std::vector<Observation> rows;
    std::string path;
    std::uint64_t checksum = 0; //!< FNV-1a 64 of the raw file bytes
};

//! Loads a CSV with columns x,z,delta. Throws ParseError with the offending
//! row and column; NonPositiveTime when log_transform_z hits z <= 0.
DatasetFile load_csv(const std::string& path, const LoadOptions& options = {});

//! Writes rows as x,z,delta with a header, 17 significant digits.
void save_csv(const std::string& path, std::span<const Observation> rows);

//! 17-significant-digit representation; round-trips through load_csv.
std::string format_double(double v);

//! FNV-1a 64-bit hash of a file's bytes.
std::uint64_t fnv1a64_file(const std::string& path);

// ---------------------------------------------------------------------------
// Command runners. Each returns a process exit status: 0 success, 2 for
// validation problems, 3 for estimation failures.
// ---------------------------------------------------------------------------

struct DataOptions {
    std::string input;
    bool has_header = true;
    bool log_transform = false;
    bool strict_ties = false;
    std::uint64_t tie_seed = 0;
};

struct EstimatorOptions {
    std::string kernel = "biweight"; // biweight | epanechnikov
    double bandwidth = 0.0;          // explicit; 0 means use the rule below
    double c = 9.0 / 8.0;
    double gamma = 1.0 / 28.0;
    double score_threshold = 1e-4;
    double score_scale = 1e-4;
    bool score_renormalize = false;
    std::string convention = "right"; // right | left
};

struct FitCommand {
    DataOptions data;
    EstimatorOptions estimator;
    double grid_lo = 0.0, grid_hi = 0.0; // both zero selects the default range
    std::size_t grid_steps = 512;
    std::size_t curve_points = 101;
    std::string out_dir = ".";
};
int run_fit(const FitCommand& cmd);

struct SimulateCommand {
    std::vector<std::size_t> n = {100};
    std::size_t runs = 1000;
    std::vector<double> c = {3.0 / 4.0};
    std::vector<double> gamma = {1.0 / 16.0};
    std::uint64_t seed = 0;
    double grid_lo = -2.5, grid_hi = 2.0;
    std::size_t grid_steps = 91;
    std::string out_dir = ".";
    int threads = 0;
};
int run_simulate(const SimulateCommand& cmd);

struct BootstrapCommand {
    DataOptions data;
    EstimatorOptions estimator;
    int replicates = 300;
    double level = 0.95;
    std::uint64_t seed = 0;
    std::size_t grid_steps = 512;
    std::string out_dir = ".";
    int threads = 0;
};
int run_bootstrap(const BootstrapCommand& cmd);

} // namespace cure
