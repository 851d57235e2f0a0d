#include "ocdma/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <sstream>

#include <json.hpp>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace ocdma {

const char* to_string(ExperimentKind k) {
    switch (k) {
        case ExperimentKind::DistanceCompare: return "distance-compare";
        case ExperimentKind::CriteriaCompare: return "criteria-compare";
        case ExperimentKind::BetaSweep: return "beta-sweep";
        case ExperimentKind::BinaryVsReal: return "binary-vs-real";
        case ExperimentKind::PsoCompare: return "pso-compare";
        case ExperimentKind::GaMinusPso: return "ga-minus-pso";
    }
    return "?";
}

ExperimentKind experiment_kind_from_string(const std::string& s) {
    if (s == "distance-compare") return ExperimentKind::DistanceCompare;
    if (s == "criteria-compare") return ExperimentKind::CriteriaCompare;
    if (s == "beta-sweep") return ExperimentKind::BetaSweep;
    if (s == "binary-vs-real") return ExperimentKind::BinaryVsReal;
    if (s == "pso-compare") return ExperimentKind::PsoCompare;
    if (s == "ga-minus-pso") return ExperimentKind::GaMinusPso;
    throw std::invalid_argument("unknown experiment kind: " + s);
}

const char* to_string(Algo a) { return a == Algo::Ga ? "GA" : "PSO"; }

void ExperimentConfig::apply_defaults() {
    if (ebn0_grid_db.empty()) {
        if (kind == ExperimentKind::BetaSweep) {
            ebn0_grid_db = {8.0};
        } else {
            for (int db = 0; db <= 12; ++db) ebn0_grid_db.push_back(db);
        }
    }
    if (dims.empty()) {
        switch (kind) {
            case ExperimentKind::DistanceCompare: dims = {{3, 4}}; break;
            case ExperimentKind::CriteriaCompare: dims = {{2, 5}}; break;
            case ExperimentKind::BetaSweep: dims = {{3, 4}, {3, 5}, {2, 4}, {2, 5}}; break;
            case ExperimentKind::BinaryVsReal: dims = {{4, 5}}; break;
            case ExperimentKind::PsoCompare: dims = {{2, 5}}; break;
            case ExperimentKind::GaMinusPso: dims = {{2, 5}, {3, 4}}; break;
        }
    }
    if (criteria.empty()) {
        switch (kind) {
            case ExperimentKind::DistanceCompare:
                criteria = {Criterion::Md, Criterion::Qd, Criterion::Ed};
                break;
            case ExperimentKind::CriteriaCompare:
                criteria = {Criterion::Capacity, Criterion::Ber, Criterion::Ed};
                break;
            case ExperimentKind::BetaSweep:
                criteria = {Criterion::Capacity, Criterion::Ed, Criterion::Ber};
                break;
            case ExperimentKind::BinaryVsReal:
                criteria = {Criterion::Capacity, Criterion::Ed};
                break;
            case ExperimentKind::PsoCompare:
                criteria = {Criterion::Capacity, Criterion::Ber, Criterion::Md, Criterion::Ed};
                break;
            case ExperimentKind::GaMinusPso:
                criteria = {Criterion::Capacity, Criterion::Ber, Criterion::Md, Criterion::Ed};
                break;
        }
    }
    if (kind == ExperimentKind::PsoCompare) algo = Algo::Pso;
    if (full_budget) {
        search_mc_samples = 200000;
        search_ber_bits = 1000000;
    }
}

namespace {

struct Task {
    int m, n;
    Criterion criterion;
    double ebn0_db;
    std::uint64_t seed;
    Alphabet alphabet;
    std::string label;  // criterion column
};

std::string sanitize(std::string s) {
    for (char& c : s)
        if (c == ',' || c == '\n') c = ';';
    return s;
}

SignatureMatrix optimize_task(const Task& task, Algo algo, const ExperimentConfig& cfg) {
    CriterionSpec spec;
    spec.kind = task.criterion;
    spec.channel = ChannelParams::from_ebn0_db(task.ebn0_db);
    spec.mc_samples =
        task.criterion == Criterion::Ber ? cfg.search_ber_bits : cfg.search_mc_samples;
    spec.seed = task.seed;  // common random numbers across one search
    const CostFunction cost = make_cost(spec);
    if (algo == Algo::Pso) {
        if (task.alphabet == Alphabet::Binary)
            throw std::invalid_argument("binary matrices are optimized with the GA only");
        PsoConfig pso;
        pso.seed = task.seed;
        return run_pso(task.m, task.n, cost, pso).final_matrix;
    }
    GaConfig ga;
    ga.seed = task.seed;
    ga.alphabet = task.alphabet;
    return run_ga(task.m, task.n, cost, ga).final_matrix;
}

CriterionValue report_capacity(const SignatureMatrix& a, double ebn0_db, std::uint64_t seed,
                               int samples) {
    CriterionSpec eval;
    eval.kind = Criterion::Capacity;
    eval.channel = ChannelParams::from_ebn0_db(ebn0_db);
    eval.mc_samples = samples;
    eval.seed = seed ^ 0x5eedf00dULL;  // fresh stream, not the search stream
    return per_user_capacity(a, eval);
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& raw_cfg) {
    ExperimentConfig cfg = raw_cfg;
    cfg.apply_defaults();
    if (cfg.ebn0_grid_db.empty() || cfg.dims.empty() || cfg.seeds.empty())
        throw std::invalid_argument("experiment needs non-empty grid, dims and seeds");

    std::vector<Task> tasks;
    for (const auto& [m, n] : cfg.dims)
        for (const Criterion crit : cfg.criteria)
            for (const double db : cfg.ebn0_grid_db)
                for (const std::uint64_t seed : cfg.seeds) {
                    if (cfg.kind == ExperimentKind::BinaryVsReal) {
                        // binary run for every criterion, plus a real-valued capacity baseline
                        tasks.push_back({m, n, crit, db, seed, Alphabet::Binary,
                                         std::string(to_string(crit)) + "-binary"});
                        if (crit == Criterion::Capacity)
                            tasks.push_back({m, n, crit, db, seed, Alphabet::Real,
                                             std::string(to_string(crit)) + "-real"});
                    } else {
                        tasks.push_back({m, n, crit, db, seed, Alphabet::Real,
                                         to_string(crit)});
                    }
                }

    ExperimentResult result;
    result.rows.resize(tasks.size());

#ifdef _OPENMP
    const int threads = cfg.jobs > 0 ? cfg.jobs : omp_get_max_threads();
#else
    const int threads = 1;
    (void)threads;
#endif
    const std::int64_t count = static_cast<std::int64_t>(tasks.size());
#pragma omp parallel for schedule(dynamic) num_threads(threads)
    for (std::int64_t t = 0; t < count; ++t) {
        const Task& task = tasks[static_cast<std::size_t>(t)];
        ExperimentRow row;
        row.experiment = to_string(cfg.kind);
        row.criterion = task.label;
        row.algo = cfg.kind == ExperimentKind::GaMinusPso ? "GA-PSO" : to_string(cfg.algo);
        row.m = task.m;
        row.n = task.n;
        row.ebn0_db = task.ebn0_db;
        row.seed = task.seed;
        try {
            if (cfg.kind == ExperimentKind::GaMinusPso) {
                const SignatureMatrix ga_mat = optimize_task(task, Algo::Ga, cfg);
                const SignatureMatrix pso_mat = optimize_task(task, Algo::Pso, cfg);
                const CriterionValue ga_c =
                    report_capacity(ga_mat, task.ebn0_db, task.seed, cfg.eval_mc_samples);
                const CriterionValue pso_c =
                    report_capacity(pso_mat, task.ebn0_db, task.seed, cfg.eval_mc_samples);
                row.per_user_capacity = ga_c.value - pso_c.value;
                row.std_error = std::hypot(ga_c.std_error, pso_c.std_error);
            } else {
                const SignatureMatrix best = optimize_task(task, cfg.algo, cfg);
                const CriterionValue c =
                    report_capacity(best, task.ebn0_db, task.seed, cfg.eval_mc_samples);
                row.per_user_capacity = c.value;
                row.std_error = c.std_error;
            }
        } catch (const std::exception& e) {
            row.status = "error: " + sanitize(e.what());
            row.per_user_capacity = std::nan("");
            row.std_error = std::nan("");
        }
        result.rows[static_cast<std::size_t>(t)] = std::move(row);
    }

    for (const auto& row : result.rows)
        if (row.status != "ok") ++result.failures;

    // Aggregate across seeds per grid point.
    std::map<std::string, std::vector<double>> groups;
    std::map<std::string, ExperimentRow> group_key;
    for (const auto& row : result.rows) {
        if (row.status != "ok") continue;
        std::ostringstream key;
        key << row.criterion << '|' << row.algo << '|' << row.m << 'x' << row.n << '|'
            << row.ebn0_db;
        groups[key.str()].push_back(row.per_user_capacity);
        group_key.emplace(key.str(), row);
    }
    nlohmann::json summary = nlohmann::json::array();
    for (const auto& [key, values] : groups) {
        const auto& row = group_key.at(key);
        const double mean = std::accumulate(values.begin(), values.end(), 0.0) / values.size();
        double var = 0.0;
        for (double v : values) var += (v - mean) * (v - mean);
        const double sd = values.size() > 1 ? std::sqrt(var / (values.size() - 1)) : 0.0;
        summary.push_back({{"experiment", to_string(cfg.kind)},
                           {"criterion", row.criterion},
                           {"algo", row.algo},
                           {"m", row.m},
                           {"n", row.n},
                           {"ebn0_db", row.ebn0_db},
                           {"seeds", values.size()},
                           {"mean", mean},
                           {"std", sd}});
    }
    result.summary_json = summary.dump(2) + "\n";
    return result;
}

std::string experiment_rows_to_csv(const std::vector<ExperimentRow>& rows) {
    std::ostringstream out;
    out.precision(17);
    out << "experiment,criterion,algo,m,n,ebn0_db,seed,per_user_capacity,std_error,status\n";
    for (const auto& r : rows)
        out << r.experiment << ',' << r.criterion << ',' << r.algo << ',' << r.m << ',' << r.n
            << ',' << r.ebn0_db << ',' << r.seed << ',' << r.per_user_capacity << ','
            << r.std_error << ',' << r.status << '\n';
    return out.str();
}

ExperimentConfig experiment_config_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("malformed experiment config: ") + e.what());
    }
    ExperimentConfig cfg;
    if (j.contains("experiment")) cfg.kind = experiment_kind_from_string(j["experiment"]);
    if (j.contains("dims"))
        for (const auto& d : j["dims"])
            cfg.dims.emplace_back(d.at(0).get<int>(), d.at(1).get<int>());
    if (j.contains("ebn0_grid_db")) cfg.ebn0_grid_db = j["ebn0_grid_db"].get<std::vector<double>>();
    if (j.contains("algo")) {
        const std::string a = j["algo"];
        if (a == "ga" || a == "GA") cfg.algo = Algo::Ga;
        else if (a == "pso" || a == "PSO") cfg.algo = Algo::Pso;
        else throw std::invalid_argument("unknown algo: " + a);
    }
    if (j.contains("seeds")) cfg.seeds = j["seeds"].get<std::vector<std::uint64_t>>();
    if (j.contains("criteria")) {
        cfg.criteria.clear();
        for (const auto& c : j["criteria"]) cfg.criteria.push_back(criterion_from_string(c));
    }
    if (j.contains("output_path")) cfg.output_path = j["output_path"];
    if (j.contains("jobs")) cfg.jobs = j["jobs"];
    if (j.contains("full_budget")) cfg.full_budget = j["full_budget"];
    if (j.contains("search_mc_samples")) cfg.search_mc_samples = j["search_mc_samples"];
    if (j.contains("search_ber_bits")) cfg.search_ber_bits = j["search_ber_bits"];
    if (j.contains("eval_mc_samples")) cfg.eval_mc_samples = j["eval_mc_samples"];
    if (j.contains("overwrite")) cfg.overwrite = j["overwrite"];
    return cfg;
}

}  // namespace ocdma
