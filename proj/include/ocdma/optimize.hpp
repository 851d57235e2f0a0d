#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "ocdma/criteria.hpp"
#include "ocdma/matrix.hpp"

namespace ocdma {

struct GaConfig {
    int population_size = 20;
    int elite_count = 2;
    double crossover_fraction = 0.8;
    int max_iterations = 100;
    double function_tolerance = 1e-6;
    int stall_generations = 20;
    double lower_bound = -1.0;
    double upper_bound = 1.0;
    // Real-coded mutation: every entry perturbed by N(0, sigma_t) where sigma_t
    // shrinks linearly from mutation_scale to (1 - mutation_shrink) * mutation_scale.
    double mutation_scale = 0.05;
    double mutation_shrink = 0.9;
    std::vector<SignatureMatrix> warm_start;
    Alphabet alphabet = Alphabet::Real;
    std::uint64_t seed = 0;
    // Single-population run; migration settings are carried in run metadata only.
    std::string migration_direction = "forward";
    double migration_fraction = 0.2;
};

struct PsoConfig {
    int particle_count = 20;
    int max_iterations = 100;
    double lower_bound = -1.0;
    double upper_bound = 1.0;
    double inertia = 0.729;
    double cognitive = 1.494;
    double social = 1.494;
    std::uint64_t seed = 0;
};

struct IterationStats {
    double best_cost = 0.0;
    double mean_cost = 0.0;
};

struct OptimizationTrace {
    std::vector<IterationStats> iterations;  // entry 0 is the initial population
    SignatureMatrix final_matrix;
    double final_cost = 0.0;
    std::string metadata;  // settings that were recorded but had no effect
};

using CostFunction = std::function<double(const SignatureMatrix&)>;

/// Wraps a criterion as a cost to minimize: Maximize-direction criteria are negated.
CostFunction make_cost(const CriterionSpec& spec);

OptimizationTrace run_ga(int m, int n, const CostFunction& cost, const GaConfig& cfg);
OptimizationTrace run_pso(int m, int n, const CostFunction& cost, const PsoConfig& cfg);

std::string trace_to_csv(const OptimizationTrace& trace);

struct AlgoDeltaRow {
    Criterion criterion = Criterion::Ed;
    double ebn0_db = 0.0;
    double delta_mean = 0.0;  // per-user capacity, GA minus PSO
    double delta_std = 0.0;   // across seeds
    int seeds = 0;
};

struct CompareOptions {
    GaConfig ga;
    PsoConfig pso;
    int eval_mc_samples = 200000;  // high-precision capacity re-evaluation
};

/// For each (spec, Eb/N0 grid point): optimize with GA and with PSO, re-evaluate both
/// final matrices with the capacity estimator, report the per-user delta across seeds.
std::vector<AlgoDeltaRow> compare_algorithms(int m, int n, const std::vector<CriterionSpec>& specs,
                                             const std::vector<double>& ebn0_grid_db,
                                             const std::vector<std::uint64_t>& seeds,
                                             const CompareOptions& opts = {});

}  // namespace ocdma
