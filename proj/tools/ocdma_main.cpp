#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "ocdma/criteria.hpp"
#include "ocdma/enlarge.hpp"
#include "ocdma/experiment.hpp"
#include "ocdma/io.hpp"
#include "ocdma/matrix.hpp"
#include "ocdma/optimize.hpp"
#include "ocdma/registry.hpp"

namespace {

using namespace ocdma;

// Relative outputs land in $OCDMA_OUT_DIR when it is set.
std::string resolve_output(const std::string& path) {
    const char* base = std::getenv("OCDMA_OUT_DIR");
    if (base == nullptr || path.empty()) return path;
    std::filesystem::path p(path);
    if (p.is_absolute()) return path;
    return (std::filesystem::path(base) / p).string();
}

SignatureMatrix load_matrix_arg(const std::string& file, const std::string& id,
                                std::string* label = nullptr) {
    if (!id.empty()) {
        const MatrixRegistryEntry* entry = find_registry_entry(id);
        if (entry == nullptr) throw std::runtime_error("unknown registry id: " + id);
        if (label != nullptr) *label = id;
        return entry->matrix;
    }
    if (label != nullptr) *label = std::filesystem::path(file).stem().string();
    return load_matrix_file(file);
}

int run_optimize(int m, int n, const std::string& criterion, double ebn0, const std::string& algo,
                 std::uint64_t seed, const std::string& alphabet, int mc_samples, int population,
                 int iterations, const std::vector<std::string>& warm_files,
                 const std::string& out, const std::string& trace_path, bool overwrite) {
    CriterionSpec spec;
    spec.kind = criterion_from_string(criterion);
    spec.channel = ChannelParams::from_ebn0_db(ebn0);
    spec.mc_samples =
        mc_samples > 0 ? mc_samples : (spec.kind == Criterion::Ber ? 100000 : 20000);
    spec.seed = seed;
    const CostFunction cost = make_cost(spec);

    OptimizationTrace trace;
    if (algo == "pso") {
        if (alphabet == "binary")
            throw std::runtime_error("binary matrices are optimized with the GA only");
        PsoConfig cfg;
        cfg.seed = seed;
        if (population > 0) cfg.particle_count = population;
        if (iterations > 0) cfg.max_iterations = iterations;
        trace = run_pso(m, n, cost, cfg);
    } else {
        GaConfig cfg;
        cfg.seed = seed;
        cfg.alphabet = alphabet_from_string(alphabet);
        if (population > 0) cfg.population_size = population;
        if (iterations > 0) cfg.max_iterations = iterations;
        for (const auto& f : warm_files) cfg.warm_start.push_back(load_matrix_file(f));
        trace = run_ga(m, n, cost, cfg);
    }

    atomic_write_file(resolve_output(out), matrix_to_json(trace.final_matrix), overwrite);
    if (!trace_path.empty())
        atomic_write_file(resolve_output(trace_path), trace_to_csv(trace), overwrite);
    std::cout << "final cost " << trace.final_cost << " after "
              << trace.iterations.size() - 1 << " iterations -> " << out << "\n";
    return 0;
}

int run_evaluate(const std::string& file, const std::string& id,
                 const std::vector<std::string>& criteria, const std::vector<double>& grid,
                 int mc_samples, std::uint64_t seed, const std::string& out, bool overwrite) {
    std::string label;
    const SignatureMatrix a = load_matrix_arg(file, id, &label);
    std::vector<EvaluationRecord> records;
    for (const auto& crit_name : criteria) {
        const Criterion crit = criterion_from_string(crit_name);
        for (double db : grid) {
            CriterionSpec spec;
            spec.kind = crit;
            spec.channel = ChannelParams::from_ebn0_db(db);
            spec.mc_samples = mc_samples > 0 ? mc_samples
                                             : (crit == Criterion::Ber ? 100000 : 200000);
            spec.seed = seed;
            const CriterionValue v = evaluate(a, spec);
            long samples = 0;
            if (crit == Criterion::Capacity) samples = spec.mc_samples;
            if (crit == Criterion::Ber)
                samples = ((spec.mc_samples + a.n - 1) / a.n) * static_cast<long>(a.n);
            records.push_back({label, crit, db, v.value, v.std_error, samples, seed});
        }
    }
    const std::string csv = evaluation_records_to_csv(records);
    if (out.empty()) {
        std::cout << csv;
    } else {
        atomic_write_file(resolve_output(out), csv, overwrite);
        std::cout << records.size() << " rows -> " << out << "\n";
    }
    return 0;
}

int run_enlarge(const std::string& file, const std::string& id, int k, const std::string& out,
                bool overwrite) {
    const SignatureMatrix base = load_matrix_arg(file, id);
    const EnlargementPlan plan = enlarge(base, k);
    atomic_write_file(resolve_output(out), plan_to_json(plan), overwrite);
    std::cout << plan.enlarged.m << "x" << plan.enlarged.n << " matrix -> " << out << "\n";
    return 0;
}

int run_decode(const std::string& plan_path, const std::string& received_path,
               const std::string& out, bool overwrite) {
    const EnlargementPlan plan = load_plan_file(plan_path);
    const auto received =
        load_received_csv(received_path, static_cast<std::size_t>(plan.k()) * plan.base.m);
    std::ostringstream lines;
    for (const auto& y : received) {
        const InputVector x = tensor_decode(plan, y);
        for (std::size_t i = 0; i < x.size(); ++i) lines << (i ? " " : "") << x[i];
        lines << "\n";
    }
    if (out.empty()) {
        std::cout << lines.str();
    } else {
        atomic_write_file(resolve_output(out), lines.str(), overwrite);
        std::cout << received.size() << " blocks -> " << out << "\n";
    }
    return 0;
}

int run_experiment_cmd(const ExperimentConfig& cfg) {
    const ExperimentResult result = run_experiment(cfg);
    const std::string csv = experiment_rows_to_csv(result.rows);
    if (cfg.output_path.empty()) {
        std::cout << csv;
    } else {
        const std::string path = resolve_output(cfg.output_path);
        atomic_write_file(path, csv, cfg.overwrite);
        atomic_write_file(path + ".summary.json", result.summary_json, cfg.overwrite);
        std::cout << result.rows.size() << " rows (" << result.failures << " failed) -> " << path
                  << "\n";
    }
    if (result.failures == static_cast<int>(result.rows.size()) && !result.rows.empty())
        throw std::runtime_error("every experiment row failed");
    return 0;
}

int run_registry_list() {
    for (const auto& entry : matrix_registry()) {
        std::cout << entry.id << "  " << entry.matrix.m << "x" << entry.matrix.n << "  "
                  << to_string(entry.matrix.alphabet) << "  table " << entry.provenance.table
                  << "  " << entry.provenance.criterion << "/" << entry.provenance.optimizer
                  << "  designed at " << entry.provenance.design_ebn0_db << " dB\n";
    }
    return 0;
}

std::vector<std::pair<int, int>> parse_dims(const std::vector<std::string>& specs) {
    std::vector<std::pair<int, int>> dims;
    for (const auto& s : specs) {
        const auto x = s.find('x');
        if (x == std::string::npos) throw std::runtime_error("dims must look like 3x4: " + s);
        dims.emplace_back(std::stoi(s.substr(0, x)), std::stoi(s.substr(x + 1)));
    }
    return dims;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Sub-optimum CDMA signature matrix search, evaluation and enlargement"};
    app.require_subcommand(1);

    // optimize
    int m = 4, n = 5, population = 0, iterations = 0, mc_samples = 0, k = 2, jobs = 0;
    double ebn0 = 8.0;
    std::uint64_t seed = 1;
    std::string criterion = "ed", algo = "ga", alphabet = "real";
    std::string out, trace_path, matrix_file, registry_id, plan_path, received_path, config_path;
    std::string experiment_name = "beta-sweep";
    std::vector<std::string> criteria_names, warm_files, dim_specs;
    std::vector<double> grid;
    std::vector<std::uint64_t> seeds;
    bool overwrite = false, full_budget = false;

    auto* opt = app.add_subcommand("optimize", "search for a signature matrix");
    opt->add_option("--m", m, "signature length (chips)")->required();
    opt->add_option("--n", n, "number of users")->required();
    opt->add_option("--criterion", criterion, "capacity|ber|md|qd|ed")
        ->required()
        ->check(CLI::IsMember({"capacity", "ber", "md", "qd", "ed"}));
    opt->add_option("--ebn0", ebn0, "design Eb/N0 in dB");
    opt->add_option("--algo", algo, "ga|pso")->check(CLI::IsMember({"ga", "pso"}));
    opt->add_option("--seed", seed, "run seed");
    opt->add_option("--alphabet", alphabet, "real|binary")
        ->check(CLI::IsMember({"real", "binary"}));
    opt->add_option("--mc-samples", mc_samples, "search budget (capacity draws / BER bits)");
    opt->add_option("--population", population, "population / particle count");
    opt->add_option("--iterations", iterations, "iteration cap");
    opt->add_option("--warm-start", warm_files, "matrix JSON file(s) seeding the population");
    opt->add_option("--out", out, "output matrix JSON")->required();
    opt->add_option("--trace", trace_path, "per-iteration trace CSV");
    opt->add_flag("--overwrite", overwrite, "replace existing outputs");

    auto* eval = app.add_subcommand("evaluate", "evaluate criteria over an Eb/N0 grid");
    eval->add_option("--matrix", matrix_file, "matrix JSON file");
    eval->add_option("--id", registry_id, "built-in registry id (see registry-list)");
    eval->add_option("--criterion", criteria_names, "criteria to evaluate")
        ->required()
        ->check(CLI::IsMember({"capacity", "ber", "md", "qd", "ed"}));
    eval->add_option("--ebn0", grid, "Eb/N0 grid in dB")->required();
    eval->add_option("--mc-samples", mc_samples, "capacity draws / BER bits");
    eval->add_option("--seed", seed, "evaluation seed");
    eval->add_option("--out", out, "output CSV (stdout when omitted)");
    eval->add_flag("--overwrite", overwrite, "replace existing outputs");

    auto* enl = app.add_subcommand("enlarge", "Kronecker-enlarge a matrix by 2^j");
    enl->add_option("--matrix", matrix_file, "base matrix JSON file");
    enl->add_option("--id", registry_id, "built-in registry id");
    enl->add_option("--k", k, "enlargement factor (power of two)")->required();
    enl->add_option("--out", out, "output plan JSON")->required();
    enl->add_flag("--overwrite", overwrite, "replace existing outputs");

    auto* dec = app.add_subcommand("decode", "block-decode received vectors");
    dec->add_option("--plan", plan_path, "plan JSON written by enlarge")->required();
    dec->add_option("--received", received_path, "received-vector CSV")->required();
    dec->add_option("--out", out, "decoded bits file (stdout when omitted)");
    dec->add_flag("--overwrite", overwrite, "replace existing outputs");

    auto* exp = app.add_subcommand("experiment", "run a figure-style sweep");
    exp->add_option("--kind", experiment_name,
                    "distance-compare|criteria-compare|beta-sweep|binary-vs-real|pso-compare|ga-minus-pso");
    exp->add_option("--config", config_path, "JSON config (flags override)");
    exp->add_option("--dims", dim_specs, "sizes like 3x4 2x5");
    exp->add_option("--ebn0", grid, "Eb/N0 grid in dB");
    exp->add_option("--algo", algo, "ga|pso")->check(CLI::IsMember({"ga", "pso"}));
    exp->add_option("--seeds", seeds, "seeds (one run per seed)");
    exp->add_option("--criterion", criteria_names, "criteria subset")
        ->check(CLI::IsMember({"capacity", "ber", "md", "qd", "ed"}));
    exp->add_option("--jobs", jobs, "max concurrent grid points");
    exp->add_option("--out", out, "results CSV (stdout when omitted)");
    exp->add_flag("--full", full_budget, "full-size search budgets");
    exp->add_flag("--overwrite", overwrite, "replace existing outputs");

    app.add_subcommand("registry-list", "print the built-in appendix matrices");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (app.got_subcommand("optimize"))
            return run_optimize(m, n, criterion, ebn0, algo, seed, alphabet, mc_samples,
                                population, iterations, warm_files, out, trace_path, overwrite);
        if (app.got_subcommand("evaluate")) {
            if (matrix_file.empty() == registry_id.empty())
                throw std::runtime_error("pass exactly one of --matrix or --id");
            return run_evaluate(matrix_file, registry_id, criteria_names, grid, mc_samples, seed,
                                out, overwrite);
        }
        if (app.got_subcommand("enlarge")) {
            if (matrix_file.empty() == registry_id.empty())
                throw std::runtime_error("pass exactly one of --matrix or --id");
            return run_enlarge(matrix_file, registry_id, k, out, overwrite);
        }
        if (app.got_subcommand("decode")) return run_decode(plan_path, received_path, out, overwrite);
        if (app.got_subcommand("experiment")) {
            ExperimentConfig cfg;
            if (!config_path.empty()) {
                std::ifstream in(config_path);
                if (!in) throw std::runtime_error("cannot open config: " + config_path);
                std::ostringstream buf;
                buf << in.rdbuf();
                cfg = experiment_config_from_json(buf.str());
            }
            if (exp->count("--kind") || config_path.empty())
                cfg.kind = experiment_kind_from_string(experiment_name);
            if (!dim_specs.empty()) cfg.dims = parse_dims(dim_specs);
            if (exp->count("--ebn0")) cfg.ebn0_grid_db = grid;
            if (exp->count("--algo")) cfg.algo = algo == "pso" ? Algo::Pso : Algo::Ga;
            if (!seeds.empty()) cfg.seeds = seeds;
            if (!criteria_names.empty()) {
                cfg.criteria.clear();
                for (const auto& c : criteria_names)
                    cfg.criteria.push_back(criterion_from_string(c));
            }
            if (exp->count("--jobs")) cfg.jobs = jobs;
            if (exp->count("--out")) cfg.output_path = out;
            if (full_budget) cfg.full_budget = true;
            if (overwrite) cfg.overwrite = true;
            return run_experiment_cmd(cfg);
        }
        if (app.got_subcommand("registry-list")) return run_registry_list();
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
