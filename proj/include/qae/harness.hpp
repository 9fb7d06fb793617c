#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "qae/record.hpp"

namespace qae::harness {

inline constexpr const char* kCsvVersionLine = "# qae-runs v1";

/// Parameters of one run; unused fields are ignored by the chosen algorithm.
struct RunParams {
    std::string algorithm = "chebae";  // chebae | unbiased | hybrid | repair-chebae | mlae | classical
    double a = 0.5;
    double eps = 1e-3;
    double delta = 0.05;
    double beta = 0.0;
    double eta = 0.1;
    double mu = 0.05;
    std::string mode;  // tracked | destructive | ideal | polynomial; empty picks the algorithm default
    int mlae_K = 6;
    bool shift_amplitude = false;
    bool las_vegas = false;
    std::optional<double> known_kappa;
};

struct RunRow {
    std::uint64_t run_id = 0;
    RunParams params;
    double a_sim = 0.0;  // amplitude actually simulated (after an optional shift)
    std::uint64_t seed = 0;
    RunRecord record;
    double abs_err = 0.0;
    std::int64_t wall_us = 0;
};

void validate(const RunParams& p);
RunRow execute_run(const RunParams& p, std::uint64_t seed, std::uint64_t run_id);

/// Shortest decimal string that reads back to the same double.
std::string format_double(double v);
std::string csv_header();
std::string csv_row(const RunRow& r);

struct SweepConfig {
    std::string algorithm = "chebae";
    std::vector<double> a{0.5};
    std::vector<double> eps{1e-3};
    std::vector<double> delta{0.05};
    std::vector<double> beta{0.0};
    std::vector<double> eta{0.1};
    std::vector<double> mu{0.05};
    std::vector<std::string> mode{""};
    int mlae_K = 6;
    bool shift_amplitude = false;
    bool las_vegas = false;
    std::optional<double> known_kappa;
    std::int64_t runs = 10;
    std::uint64_t seed = 0;
    std::string out;
    int workers = 1;

    std::vector<RunParams> cells() const;
};

SweepConfig parse_sweep_config(const std::string& json_text);

/// QAE_WORKERS if set and positive, otherwise `fallback`.
int workers_from_env(int fallback);

/// Writes the versioned header and one row per (cell, run) in that order; rows are
/// flushed as soon as every earlier row is out. `wall_us` is the only nondeterministic field.
void run_sweep(const SweepConfig& cfg, std::ostream& out);

struct CsvRun {
    std::string algorithm;
    double eps = 0.0;
    double q_pi = 0.0;
    bool success = false;
};

std::vector<CsvRun> read_runs_csv(std::istream& in);

struct FitResult {
    std::vector<double> eps;
    std::vector<double> mean_q_pi;
    std::vector<std::int64_t> counts;
    std::vector<double> failure_rate;
    double A = 0.0, B = 0.0;
    double max_rel_AB = 0.0;
    double max_rel_AB_all = 0.0;
    double C = 0.0;
    double max_rel_C = 0.0;
    double max_rel_C_all = 0.0;
};

/// Brute-force fit of A/eps ln(B ln(1/eps)) and C/eps to per-eps mean Q_Pi, minimizing the
/// largest |model/mean - 1|.
FitResult fit_models(const std::vector<CsvRun>& runs, std::int64_t min_runs = 30);
std::string fit_to_json(const FitResult& f);

struct DumpPoint {
    double x;
    std::optional<double> value;
    double p2;
};

struct DumpRequest {
    std::string family;  // chebyshev | monomial | J | K | line | erf | hybrid
    int d = 5;
    double kappa = 0.25, eta = 0.1, k = 4.0, tau = 0.025, a_mid = 0.45, lo = 0.3, hi = 0.6;
    std::string mode = "polynomial";
    int points = 401;
};

std::vector<DumpPoint> poly_dump(const DumpRequest& req);

}  // namespace qae::harness
