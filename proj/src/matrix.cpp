#include "ocdma/matrix.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace ocdma {

const char* to_string(Alphabet a) { return a == Alphabet::Real ? "real" : "binary"; }

Alphabet alphabet_from_string(const std::string& s) {
    if (s == "real") return Alphabet::Real;
    if (s == "binary") return Alphabet::Binary;
    throw std::invalid_argument("unknown alphabet: " + s);
}

double SignatureMatrix::frobenius_sq() const {
    double s = 0.0;
    for (double e : entries) s += e * e;
    return s;
}

void SignatureMatrix::validate_shape() const {
    if (m < 1 || n < 1) throw std::invalid_argument("signature matrix needs m >= 1 and n >= 1");
    if (entries.size() != static_cast<std::size_t>(m) * n)
        throw std::invalid_argument("entries length != m*n");
    for (double e : entries)
        if (!std::isfinite(e)) throw std::invalid_argument("non-finite matrix entry");
}

void SignatureMatrix::validate() const {
    validate_shape();
    for (double e : entries) {
        if (alphabet == Alphabet::Binary) {
            if (e != 1.0 && e != -1.0)
                throw std::invalid_argument("binary matrix entry outside {-1,+1}");
        } else if (std::abs(e) > 1.0 + 1e-12) {
            throw std::invalid_argument("real matrix entry outside [-1,+1]");
        }
    }
}

SignatureMatrix SignatureMatrix::filled(int m, int n, double value, Alphabet a) {
    SignatureMatrix out;
    out.m = m;
    out.n = n;
    out.alphabet = a;
    out.entries.assign(static_cast<std::size_t>(m) * n, value);
    return out;
}

SignatureMatrix SignatureMatrix::identity(int size) {
    SignatureMatrix out = filled(size, size, 0.0);
    for (int i = 0; i < size; ++i) out.at(i, i) = 1.0;
    return out;
}

bool operator==(const SignatureMatrix& a, const SignatureMatrix& b) {
    return a.m == b.m && a.n == b.n && a.alphabet == b.alphabet && a.entries == b.entries;
}

std::string matrix_to_json(const SignatureMatrix& a) {
    nlohmann::json j;
    j["m"] = a.m;
    j["n"] = a.n;
    j["alphabet"] = to_string(a.alphabet);
    j["entries"] = a.entries;
    return j.dump(2) + "\n";
}

SignatureMatrix matrix_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("malformed matrix JSON: ") + e.what());
    }
    SignatureMatrix a;
    try {
        a.m = j.at("m").get<int>();
        a.n = j.at("n").get<int>();
        a.alphabet = alphabet_from_string(j.at("alphabet").get<std::string>());
        a.entries = j.at("entries").get<std::vector<double>>();
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("matrix JSON missing field: ") + e.what());
    }
    a.validate();
    return a;
}

SignatureMatrix load_matrix_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open matrix file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return matrix_from_json(buf.str());
}

}  // namespace ocdma
