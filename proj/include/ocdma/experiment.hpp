#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "ocdma/criteria.hpp"
#include "ocdma/optimize.hpp"

namespace ocdma {

enum class ExperimentKind {
    DistanceCompare,  // MD vs QD vs ED over an Eb/N0 grid at one size
    CriteriaCompare,  // capacity vs BER vs ED over an Eb/N0 grid
    BetaSweep,        // criteria across loading factors at a fixed Eb/N0
    BinaryVsReal,     // binary capacity / binary ED / real capacity at 4x5
    PsoCompare,       // CriteriaCompare run with PSO
    GaMinusPso        // per-user capacity deltas, GA minus PSO
};

enum class Algo { Ga, Pso };

const char* to_string(ExperimentKind k);
ExperimentKind experiment_kind_from_string(const std::string& s);
const char* to_string(Algo a);

struct ExperimentConfig {
    ExperimentKind kind = ExperimentKind::BetaSweep;
    std::vector<std::pair<int, int>> dims;  // (m, n); per-kind defaults if empty
    std::vector<double> ebn0_grid_db;       // default 0..12 step 1
    Algo algo = Algo::Ga;
    std::vector<std::uint64_t> seeds = {1, 2, 3};
    std::vector<Criterion> criteria;  // per-kind defaults if empty
    std::string output_path;
    int jobs = 0;  // 0 = all hardware threads
    bool full_budget = false;
    int search_mc_samples = 20000;
    int search_ber_bits = 100000;
    int eval_mc_samples = 200000;
    bool overwrite = false;

    void apply_defaults();
};

struct ExperimentRow {
    std::string experiment;
    std::string criterion;
    std::string algo;
    int m = 0;
    int n = 0;
    double ebn0_db = 0.0;
    std::uint64_t seed = 0;
    double per_user_capacity = 0.0;  // GA-minus-PSO delta for GaMinusPso
    double std_error = 0.0;
    std::string status = "ok";
};

struct ExperimentResult {
    std::vector<ExperimentRow> rows;
    std::string summary_json;  // mean/std across seeds per grid point
    int failures = 0;
};

/// Grid points run concurrently (jobs limit); every row is reproducible from its
/// seed and rows come back in grid order, not completion order.
ExperimentResult run_experiment(const ExperimentConfig& cfg);

std::string experiment_rows_to_csv(const std::vector<ExperimentRow>& rows);

/// JSON mirror of ExperimentConfig; missing fields keep their defaults.
ExperimentConfig experiment_config_from_json(const std::string& text);

}  // namespace ocdma
