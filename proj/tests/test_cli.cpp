// Drives the installed CLI binary end to end through a shell.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "ocdma/io.hpp"
#include "ocdma/matrix.hpp"
#include "ocdma/registry.hpp"

namespace fs = std::filesystem;
using namespace ocdma;

namespace {

const std::string cli = OCDMA_CLI_PATH;

int run(const std::string& args) {
    const std::string cmd = cli + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / ("ocdma_cli_test_" + std::to_string(::getpid()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

}  // namespace

TEST_CASE("optimize writes a valid matrix and trace, byte-identical across reruns") {
    TempDir tmp;
    const std::string m1 = tmp.file("m1.json"), m2 = tmp.file("m2.json");
    const std::string t1 = tmp.file("t1.csv"), t2 = tmp.file("t2.csv");
    const std::string args = "optimize --m 4 --n 5 --criterion ed --ebn0 8 --algo ga --seed 7 "
                             "--iterations 25 ";
    REQUIRE(run(args + "--out " + m1 + " --trace " + t1) == 0);
    REQUIRE(run(args + "--out " + m2 + " --trace " + t2) == 0);

    const SignatureMatrix a = load_matrix_file(m1);
    CHECK(a.m == 4);
    CHECK(a.n == 5);
    for (double e : a.entries) {
        CHECK(e >= -1.0);
        CHECK(e <= 1.0);
    }
    CHECK(slurp(m1) == slurp(m2));
    CHECK(slurp(t1) == slurp(t2));
    CHECK(slurp(t1).rfind("iteration,best_cost,mean_cost\n", 0) == 0);
}

TEST_CASE("optimize --alphabet binary yields +-1 entries only") {
    TempDir tmp;
    const std::string out = tmp.file("bin.json");
    REQUIRE(run("optimize --m 3 --n 4 --criterion md --algo ga --seed 3 --iterations 20 "
                "--alphabet binary --out " + out) == 0);
    const SignatureMatrix a = load_matrix_file(out);
    CHECK(a.alphabet == Alphabet::Binary);
    for (double e : a.entries) CHECK((e == 1.0 || e == -1.0));
}

TEST_CASE("usage errors exit 2, runtime errors exit 1") {
    TempDir tmp;
    CHECK(run("optimize --m 3") == 2);                       // missing required options
    CHECK(run("optimize --bogus 1") == 2);                   // unknown flag
    CHECK(run("nonsense") == 2);                             // unknown subcommand
    CHECK(run("optimize --m 3 --n 4 --criterion nope --out " + tmp.file("x.json")) == 2);
    CHECK(run("evaluate --id nope --criterion md --ebn0 8") == 1);  // unknown registry id
    CHECK(run("decode --plan " + tmp.file("missing.json") + " --received " +
              tmp.file("missing.csv")) == 1);
}

TEST_CASE("existing outputs are protected unless --overwrite is passed") {
    TempDir tmp;
    const std::string out = tmp.file("m.json");
    const std::string args = "optimize --m 2 --n 3 --criterion md --seed 1 --iterations 5 --out ";
    REQUIRE(run(args + out) == 0);
    CHECK(run(args + out) == 1);
    CHECK(run(args + out + " --overwrite") == 0);
}

TEST_CASE("evaluate prints deterministic-criterion rows with zero std error") {
    TempDir tmp;
    const std::string out = tmp.file("eval.csv");
    REQUIRE(run("evaluate --id tabIV.A1 --criterion md --ebn0 8 --out " + out) == 0);
    const std::string csv = slurp(out);
    CHECK(csv.rfind("matrix_id,criterion,ebn0_db,value,std_error,samples,seed\n", 0) == 0);
    CHECK(csv.find("tabIV.A1,md,8,0.37945186783042706,0,0,") != std::string::npos);
}

TEST_CASE("evaluate a matrix file over a grid emits one row per point") {
    TempDir tmp;
    const std::string mfile = tmp.file("a.json");
    {
        std::ofstream out(mfile);
        out << matrix_to_json(find_registry_entry("tabIII.A3")->matrix);
    }
    const std::string out = tmp.file("eval.csv");
    REQUIRE(run("evaluate --matrix " + mfile + " --criterion ed --criterion md "
                "--ebn0 4 --ebn0 8 --out " + out) == 0);
    const std::string csv = slurp(out);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 5);  // header + 2 criteria x 2 points
}

TEST_CASE("enlarge then decode reproduces the worked example end to end") {
    TempDir tmp;
    const std::string plan = tmp.file("plan.json");
    REQUIRE(run("enlarge --id tabIII.A4 --k 2 --out " + plan) == 0);

    const std::string received = tmp.file("y.csv");
    {
        std::ofstream out(received);
        out << "-1.4586\n-0.5227\n-0.8251\n-1.3148\n0.9584\n-0.1522\n3.7170\n2.0180\n";
    }
    const std::string bits = tmp.file("bits.txt");
    REQUIRE(run("decode --plan " + plan + " --received " + received + " --out " + bits) == 0);
    CHECK(slurp(bits) == "1 1 -1 -1 -1 -1 -1 1 1 -1\n");

    // the same file loads as a plain matrix
    const SignatureMatrix big = load_matrix_file(plan);
    CHECK(big.m == 8);
    CHECK(big.n == 10);
}

TEST_CASE("k=1 enlargement stores the base matrix unchanged") {
    TempDir tmp;
    const std::string plan = tmp.file("k1.json");
    REQUIRE(run("enlarge --id tabIII.A4 --k 1 --out " + plan) == 0);
    CHECK(load_matrix_file(plan) == find_registry_entry("tabIII.A4")->matrix);
}

TEST_CASE("decode handles comma-separated rows, one decoded block per line") {
    TempDir tmp;
    const std::string plan = tmp.file("plan.json");
    REQUIRE(run("enlarge --id tabIII.A4 --k 2 --out " + plan) == 0);
    const EnlargementPlan p = load_plan_file(plan);
    const auto points = make_constellation(p.enlarged);

    std::ostringstream rows;
    std::vector<InputVector> sent;
    for (const std::size_t idx : {std::size_t{5}, std::size_t{700}}) {
        sent.push_back(input_vector_for(idx, p.enlarged.n));
        const auto z = points.point(idx);
        for (int r = 0; r < p.enlarged.m; ++r) rows << (r ? "," : "") << z[r];
        rows << "\n";
    }
    const std::string received = tmp.file("rows.csv");
    {
        std::ofstream out(received);
        out << rows.str();
    }
    const std::string bits = tmp.file("bits.txt");
    REQUIRE(run("decode --plan " + plan + " --received " + received + " --out " + bits) == 0);
    std::ostringstream expected;
    for (const auto& x : sent) {
        for (std::size_t i = 0; i < x.size(); ++i) expected << (i ? " " : "") << x[i];
        expected << "\n";
    }
    CHECK(slurp(bits) == expected.str());
}

TEST_CASE("evaluate: capacity grows with Eb/N0 across the grid") {
    TempDir tmp;
    const std::string out = tmp.file("cap.csv");
    REQUIRE(run("evaluate --id tabIII.A5 --criterion capacity --ebn0 0 --ebn0 4 --ebn0 8 "
                "--ebn0 12 --mc-samples 20000 --seed 1 --out " + out) == 0);
    std::ifstream in(out);
    std::string line;
    std::getline(in, line);  // header
    std::vector<double> values, errors;
    while (std::getline(in, line)) {
        std::stringstream ss(line);
        std::string field;
        std::vector<std::string> fields;
        while (std::getline(ss, field, ',')) fields.push_back(field);
        REQUIRE(fields.size() == 7);
        values.push_back(std::stod(fields[3]));
        errors.push_back(std::stod(fields[4]));
    }
    REQUIRE(values.size() == 4);
    for (std::size_t i = 1; i < values.size(); ++i)
        CHECK(values[i] >= values[i - 1] - 3.0 * std::hypot(errors[i], errors[i - 1]));
}

TEST_CASE("experiment --config file mirrors the flag interface") {
    TempDir tmp;
    const std::string cfg = tmp.file("cfg.json");
    const std::string out = tmp.file("exp.csv");
    {
        std::ofstream f(cfg);
        f << R"({"experiment":"distance-compare","dims":[[2,3]],"ebn0_grid_db":[8.0],)"
          << R"("seeds":[1,2],"criteria":["md"],"eval_mc_samples":2000,)"
          << R"("output_path":")" << out << R"("})";
    }
    REQUIRE(run("experiment --config " + cfg) == 0);
    const std::string csv = slurp(out);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);  // header + 2 seeds
}

TEST_CASE("registry-list mentions every id") {
    TempDir tmp;
    const std::string listing = tmp.file("list.txt");
    REQUIRE(std::system((cli + " registry-list > " + listing).c_str()) == 0);
    const std::string text = slurp(listing);
    for (const auto& entry : matrix_registry())
        CHECK(text.find(entry.id) != std::string::npos);
}

TEST_CASE("OCDMA_OUT_DIR anchors relative outputs") {
    TempDir tmp;
    const int code = std::system(("OCDMA_OUT_DIR=" + tmp.path.string() + " " + cli +
                                  " optimize --m 2 --n 3 --criterion md --seed 1 "
                                  "--iterations 5 --out rel.json >/dev/null 2>&1")
                                     .c_str());
    REQUIRE(WEXITSTATUS(code) == 0);
    CHECK(fs::exists(tmp.path / "rel.json"));
}

TEST_CASE("experiment subcommand writes csv and summary") {
    TempDir tmp;
    const std::string out = tmp.file("exp.csv");
    REQUIRE(run("experiment --kind distance-compare --dims 3x4 --ebn0 8 --seeds 1 "
                "--criterion md --out " + out) == 0);
    const std::string csv = slurp(out);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 2);  // header + 1 row
    CHECK(fs::exists(out + ".summary.json"));
}
