#include "ocdma/io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace ocdma {

namespace fs = std::filesystem;

void atomic_write_file(const std::string& path, const std::string& content, bool overwrite) {
    const fs::path target(path);
    if (!overwrite && fs::exists(target))
        throw std::runtime_error("refusing to overwrite " + path + " (pass --overwrite)");
    if (target.has_parent_path()) fs::create_directories(target.parent_path());
    const fs::path tmp = target.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write " + tmp.string());
        out << content;
        if (!out) throw std::runtime_error("short write to " + tmp.string());
    }
    fs::rename(tmp, target);
}

std::string evaluation_records_to_csv(const std::vector<EvaluationRecord>& records) {
    std::ostringstream out;
    out.precision(17);
    out << "matrix_id,criterion,ebn0_db,value,std_error,samples,seed\n";
    for (const auto& r : records)
        out << r.matrix_id << ',' << to_string(r.criterion) << ',' << r.ebn0_db << ',' << r.value
            << ',' << r.std_error << ',' << r.samples << ',' << r.seed << '\n';
    return out.str();
}

std::string plan_to_json(const EnlargementPlan& plan) {
    nlohmann::json j;
    j["m"] = plan.enlarged.m;
    j["n"] = plan.enlarged.n;
    j["alphabet"] = to_string(plan.enlarged.alphabet);
    j["entries"] = plan.enlarged.entries;
    j["plan"]["k"] = plan.k();
    j["plan"]["generator"] = plan.generator_kind;
    j["plan"]["base"]["m"] = plan.base.m;
    j["plan"]["base"]["n"] = plan.base.n;
    j["plan"]["base"]["alphabet"] = to_string(plan.base.alphabet);
    j["plan"]["base"]["entries"] = plan.base.entries;
    return j.dump(2) + "\n";
}

EnlargementPlan plan_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("malformed plan JSON: ") + e.what());
    }
    if (!j.contains("plan"))
        throw std::invalid_argument("file has no \"plan\" object; was it written by enlarge?");
    const auto& p = j["plan"];
    SignatureMatrix base = matrix_from_json(p.at("base").dump());
    const int k = p.at("k").get<int>();
    const std::string kind = p.value("generator", "hadamard");
    if (kind != "hadamard")
        throw std::invalid_argument("unsupported generator kind in plan: " + kind);
    EnlargementPlan plan = enlarge(base, k);
    // The embedded enlarged matrix must agree with the reconstruction.
    const SignatureMatrix stored = matrix_from_json(text);
    if (!(stored == plan.enlarged))
        throw std::invalid_argument("plan file enlarged matrix does not match G (x) base");
    return plan;
}

EnlargementPlan load_plan_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open plan file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return plan_from_json(buf.str());
}

std::vector<std::vector<double>> load_received_csv(const std::string& path,
                                                   std::size_t expected_len) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open received-vector file: " + path);
    std::vector<std::vector<double>> rows;
    std::vector<double> flat;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<double> vals;
        std::stringstream ss(line);
        std::string field;
        while (std::getline(ss, field, ',')) {
            if (field.find_first_not_of(" \t\r") == std::string::npos) continue;
            vals.push_back(std::stod(field));
        }
        if (vals.empty()) continue;
        if (vals.size() == 1) {
            flat.push_back(vals[0]);  // column layout: one value per line
        } else {
            rows.push_back(std::move(vals));
        }
    }
    if (!flat.empty()) {
        if (!rows.empty())
            throw std::invalid_argument("mixed one-value and row layouts in " + path);
        if (flat.size() % expected_len != 0)
            throw std::invalid_argument("received-vector count not a multiple of k*m");
        for (std::size_t off = 0; off < flat.size(); off += expected_len)
            rows.emplace_back(flat.begin() + off, flat.begin() + off + expected_len);
    }
    for (const auto& r : rows)
        if (r.size() != expected_len)
            throw std::invalid_argument("received vector length != k*m in " + path);
    return rows;
}

}  // namespace ocdma
