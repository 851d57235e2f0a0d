#include "ocdma/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "ocdma/rng.hpp"

namespace ocdma {

namespace {

SignatureMatrix to_matrix(const std::vector<double>& genes, int m, int n, Alphabet alphabet) {
    SignatureMatrix a;
    a.m = m;
    a.n = n;
    a.alphabet = alphabet;
    a.entries = genes;
    return a;
}

// Costs for a whole population; parallel, results stored by index so the
// outcome does not depend on evaluation order. Exceptions may not unwind out
// of the parallel region, so the first one is parked and rethrown after it.
void evaluate_population(const std::vector<std::vector<double>>& pop, int m, int n,
                         Alphabet alphabet, const CostFunction& cost,
                         std::vector<double>& out) {
    out.resize(pop.size());
    const std::int64_t count = static_cast<std::int64_t>(pop.size());
    std::exception_ptr err = nullptr;
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t i = 0; i < count; ++i) {
        try {
            out[static_cast<std::size_t>(i)] =
                cost(to_matrix(pop[static_cast<std::size_t>(i)], m, n, alphabet));
        } catch (...) {
#pragma omp critical
            if (err == nullptr) err = std::current_exception();
            out[static_cast<std::size_t>(i)] = std::numeric_limits<double>::quiet_NaN();
        }
    }
    if (err != nullptr) std::rethrow_exception(err);
}

double population_mean(const std::vector<double>& costs) {
    return std::accumulate(costs.begin(), costs.end(), 0.0) / costs.size();
}

void check_bounds(const GaConfig& cfg) {
    if (cfg.population_size < 2) throw std::invalid_argument("population_size must be >= 2");
    if (cfg.elite_count < 0 || cfg.elite_count >= cfg.population_size)
        throw std::invalid_argument("elite_count must be < population_size");
    if (cfg.crossover_fraction < 0.0 || cfg.crossover_fraction > 1.0)
        throw std::invalid_argument("crossover_fraction must be in [0,1]");
    if (cfg.max_iterations < 1) throw std::invalid_argument("max_iterations must be >= 1");
    if (!(cfg.lower_bound < cfg.upper_bound))
        throw std::invalid_argument("lower_bound must be < upper_bound");
}

}  // namespace

CostFunction make_cost(const CriterionSpec& spec) {
    const double sign = direction_of(spec.kind) == Direction::Maximize ? -1.0 : 1.0;
    return [spec, sign](const SignatureMatrix& a) { return sign * evaluate(a, spec).value; };
}

OptimizationTrace run_ga(int m, int n, const CostFunction& cost, const GaConfig& cfg) {
    if (m < 1 || n < 1) throw std::invalid_argument("m and n must be >= 1");
    check_bounds(cfg);
    const int dim = m * n;
    const int pop_size = cfg.population_size;
    auto rng = make_rng(cfg.seed);
    std::uniform_real_distribution<double> uniform(cfg.lower_bound, cfg.upper_bound);
    std::uniform_int_distribution<int> coin(0, 1);
    std::uniform_int_distribution<int> pick(0, pop_size - 1);

    std::vector<std::vector<double>> pop(static_cast<std::size_t>(pop_size));
    std::size_t filled = 0;
    for (const auto& w : cfg.warm_start) {
        if (filled >= pop.size()) break;
        if (w.m != m || w.n != n) throw std::invalid_argument("warm start matrix has wrong shape");
        for (double e : w.entries) {
            if (cfg.alphabet == Alphabet::Binary && e != 1.0 && e != -1.0)
                throw std::invalid_argument("warm start entry outside {-1,+1}");
            if (e < cfg.lower_bound || e > cfg.upper_bound)
                throw std::invalid_argument("warm start entry outside the search bounds");
        }
        pop[filled++] = w.entries;
    }
    for (; filled < pop.size(); ++filled) {
        std::vector<double> genes(static_cast<std::size_t>(dim));
        if (cfg.alphabet == Alphabet::Binary)
            for (auto& g : genes) g = coin(rng) ? 1.0 : -1.0;
        else
            for (auto& g : genes) g = uniform(rng);
        pop[filled] = std::move(genes);
    }

    std::vector<double> costs;
    evaluate_population(pop, m, n, cfg.alphabet, cost, costs);

    OptimizationTrace trace;
    auto record = [&] {
        const double best = *std::min_element(costs.begin(), costs.end());
        trace.iterations.push_back({best, population_mean(costs)});
    };
    record();

    std::vector<double> best_history{trace.iterations[0].best_cost};
    std::vector<int> order(static_cast<std::size_t>(pop_size));

    for (int iter = 1; iter <= cfg.max_iterations; ++iter) {
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(),
                         [&](int a, int b) { return costs[a] < costs[b]; });

        auto tournament = [&]() -> int {
            const int a = pick(rng), b = pick(rng);
            return costs[a] <= costs[b] ? a : b;
        };

        const int children = pop_size - cfg.elite_count;
        const int crossover_children =
            static_cast<int>(std::lround(cfg.crossover_fraction * children));
        const double mutation_sigma =
            cfg.mutation_scale *
            (1.0 - cfg.mutation_shrink * static_cast<double>(iter) / cfg.max_iterations);
        std::normal_distribution<double> gauss(0.0, mutation_sigma);
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        const double flip_p = 1.0 / dim;

        std::vector<std::vector<double>> next(static_cast<std::size_t>(pop_size));
        std::vector<double> next_costs(static_cast<std::size_t>(pop_size));
        std::vector<char> known(static_cast<std::size_t>(pop_size), 0);
        for (int e = 0; e < cfg.elite_count; ++e) {
            next[e] = pop[static_cast<std::size_t>(order[e])];
            next_costs[e] = costs[static_cast<std::size_t>(order[e])];
            known[e] = 1;
        }
        int slot = cfg.elite_count;
        for (int cchild = 0; cchild < crossover_children; ++cchild, ++slot) {
            const auto& p1 = pop[static_cast<std::size_t>(tournament())];
            const auto& p2 = pop[static_cast<std::size_t>(tournament())];
            std::vector<double> child(static_cast<std::size_t>(dim));
            for (int g = 0; g < dim; ++g) child[g] = coin(rng) ? p1[g] : p2[g];
            next[static_cast<std::size_t>(slot)] = std::move(child);
        }
        for (; slot < pop_size; ++slot) {
            std::vector<double> child = pop[static_cast<std::size_t>(tournament())];
            if (cfg.alphabet == Alphabet::Binary) {
                for (int g = 0; g < dim; ++g)
                    if (unit(rng) < flip_p) child[g] = -child[g];
            } else {
                for (int g = 0; g < dim; ++g)
                    child[g] = std::clamp(child[g] + gauss(rng), cfg.lower_bound, cfg.upper_bound);
            }
            next[static_cast<std::size_t>(slot)] = std::move(child);
        }

        pop = std::move(next);
        std::vector<double> fresh;
        evaluate_population(pop, m, n, cfg.alphabet, cost, fresh);
        for (int i = 0; i < pop_size; ++i)
            costs[static_cast<std::size_t>(i)] = known[i] ? next_costs[i] : fresh[i];

        record();
        best_history.push_back(trace.iterations.back().best_cost);
        const int window = cfg.stall_generations;
        if (static_cast<int>(best_history.size()) > window) {
            const double improvement =
                best_history[best_history.size() - 1 - window] - best_history.back();
            if (improvement < cfg.function_tolerance) break;
        }
    }

    const auto best_it = std::min_element(costs.begin(), costs.end());
    trace.final_cost = *best_it;
    trace.final_matrix = to_matrix(pop[static_cast<std::size_t>(best_it - costs.begin())], m, n,
                                   cfg.alphabet);
    std::ostringstream meta;
    meta << "migration_direction=" << cfg.migration_direction
         << " migration_fraction=" << cfg.migration_fraction << " (single population, inert)";
    trace.metadata = meta.str();
    return trace;
}

OptimizationTrace run_pso(int m, int n, const CostFunction& cost, const PsoConfig& cfg) {
    if (m < 1 || n < 1) throw std::invalid_argument("m and n must be >= 1");
    if (cfg.particle_count < 1) throw std::invalid_argument("particle_count must be >= 1");
    if (cfg.max_iterations < 1) throw std::invalid_argument("max_iterations must be >= 1");
    if (!(cfg.lower_bound < cfg.upper_bound))
        throw std::invalid_argument("lower_bound must be < upper_bound");
    const int dim = m * n;
    const int count = cfg.particle_count;
    auto rng = make_rng(cfg.seed);
    std::uniform_real_distribution<double> in_bounds(cfg.lower_bound, cfg.upper_bound);
    std::uniform_real_distribution<double> vel_init(-1.0, 1.0);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    std::vector<std::vector<double>> x(static_cast<std::size_t>(count)),
        v(static_cast<std::size_t>(count));
    for (auto& p : x) {
        p.resize(static_cast<std::size_t>(dim));
        for (auto& g : p) g = in_bounds(rng);
    }
    for (auto& p : v) {
        p.resize(static_cast<std::size_t>(dim));
        for (auto& g : p) g = vel_init(rng);
    }

    std::vector<double> costs;
    evaluate_population(x, m, n, Alphabet::Real, cost, costs);
    std::vector<std::vector<double>> pbest = x;
    std::vector<double> pbest_cost = costs;
    std::size_t g0 = static_cast<std::size_t>(
        std::min_element(pbest_cost.begin(), pbest_cost.end()) - pbest_cost.begin());
    std::vector<double> gbest = pbest[g0];
    double gbest_cost = pbest_cost[g0];

    OptimizationTrace trace;
    trace.iterations.push_back({gbest_cost, population_mean(costs)});

    for (int iter = 1; iter <= cfg.max_iterations; ++iter) {
        for (int i = 0; i < count; ++i) {
            auto& xi = x[static_cast<std::size_t>(i)];
            auto& vi = v[static_cast<std::size_t>(i)];
            const auto& pi = pbest[static_cast<std::size_t>(i)];
            for (int g = 0; g < dim; ++g) {
                const double r1 = unit(rng), r2 = unit(rng);
                vi[g] = cfg.inertia * vi[g] + cfg.cognitive * r1 * (pi[g] - xi[g]) +
                        cfg.social * r2 * (gbest[g] - xi[g]);
                xi[g] = std::clamp(xi[g] + vi[g], cfg.lower_bound, cfg.upper_bound);
            }
        }
        evaluate_population(x, m, n, Alphabet::Real, cost, costs);
        for (int i = 0; i < count; ++i) {
            if (costs[static_cast<std::size_t>(i)] < pbest_cost[static_cast<std::size_t>(i)]) {
                pbest_cost[static_cast<std::size_t>(i)] = costs[static_cast<std::size_t>(i)];
                pbest[static_cast<std::size_t>(i)] = x[static_cast<std::size_t>(i)];
            }
        }
        for (int i = 0; i < count; ++i) {
            if (pbest_cost[static_cast<std::size_t>(i)] < gbest_cost) {
                gbest_cost = pbest_cost[static_cast<std::size_t>(i)];
                gbest = pbest[static_cast<std::size_t>(i)];
            }
        }
        trace.iterations.push_back({gbest_cost, population_mean(costs)});
    }

    trace.final_cost = gbest_cost;
    trace.final_matrix = to_matrix(gbest, m, n, Alphabet::Real);
    return trace;
}

std::string trace_to_csv(const OptimizationTrace& trace) {
    std::ostringstream out;
    out.precision(17);
    out << "iteration,best_cost,mean_cost\n";
    for (std::size_t i = 0; i < trace.iterations.size(); ++i)
        out << i << ',' << trace.iterations[i].best_cost << ',' << trace.iterations[i].mean_cost
            << '\n';
    return out.str();
}

std::vector<AlgoDeltaRow> compare_algorithms(int m, int n, const std::vector<CriterionSpec>& specs,
                                             const std::vector<double>& ebn0_grid_db,
                                             const std::vector<std::uint64_t>& seeds,
                                             const CompareOptions& opts) {
    if (seeds.empty()) throw std::invalid_argument("compare_algorithms needs at least one seed");
    std::vector<AlgoDeltaRow> rows;
    for (const auto& base_spec : specs) {
        for (double db : ebn0_grid_db) {
            std::vector<double> deltas;
            for (std::uint64_t seed : seeds) {
                CriterionSpec spec = base_spec;
                spec.channel = ChannelParams::from_ebn0_db(db);
                spec.seed = seed;  // common random numbers within one search
                const CostFunction cost = make_cost(spec);

                GaConfig ga = opts.ga;
                ga.seed = seed;
                PsoConfig pso = opts.pso;
                pso.seed = seed;
                const auto ga_trace = run_ga(m, n, cost, ga);
                const auto pso_trace = run_pso(m, n, cost, pso);

                CriterionSpec eval_spec;
                eval_spec.kind = Criterion::Capacity;
                eval_spec.channel = ChannelParams::from_ebn0_db(db);
                eval_spec.mc_samples = opts.eval_mc_samples;
                eval_spec.seed = seed ^ 0x5eedf00dULL;  // fresh stream for reporting
                const double c_ga = per_user_capacity(ga_trace.final_matrix, eval_spec).value;
                const double c_pso = per_user_capacity(pso_trace.final_matrix, eval_spec).value;
                deltas.push_back(c_ga - c_pso);
            }
            const double mean =
                std::accumulate(deltas.begin(), deltas.end(), 0.0) / deltas.size();
            double var = 0.0;
            for (double d : deltas) var += (d - mean) * (d - mean);
            const double sd = deltas.size() > 1 ? std::sqrt(var / (deltas.size() - 1)) : 0.0;
            rows.push_back({base_spec.kind, db, mean, sd, static_cast<int>(deltas.size())});
        }
    }
    return rows;
}

}  // namespace ocdma
