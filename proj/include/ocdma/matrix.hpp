#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace ocdma {

enum class Alphabet { Real, Binary };

const char* to_string(Alphabet a);
Alphabet alphabet_from_string(const std::string& s);

/// m x n spreading matrix assigning each of n users an m-chip signature.
/// Overloaded when n > m (loading factor beta = n/m > 1).
struct SignatureMatrix {
    int m = 0;  // signature length (chips)
    int n = 0;  // number of users
    Alphabet alphabet = Alphabet::Real;
    std::vector<double> entries;  // row-major, size m*n

    double& at(int row, int col) { return entries[static_cast<std::size_t>(row) * n + col]; }
    double at(int row, int col) const { return entries[static_cast<std::size_t>(row) * n + col]; }

    double frobenius_sq() const;
    double loading_factor() const { return static_cast<double>(n) / m; }

    /// Dimensions and finiteness only: m,n >= 1, entries.size() == m*n. Criteria
    /// evaluate matrices as-is, including scaled ones outside the search box.
    void validate_shape() const;

    /// validate_shape() plus the alphabet range rules used for stored matrices:
    /// |e| <= 1 for Real, e in {-1,+1} for Binary.
    void validate() const;

    static SignatureMatrix filled(int m, int n, double value, Alphabet a = Alphabet::Real);
    static SignatureMatrix identity(int size);
};

bool operator==(const SignatureMatrix& a, const SignatureMatrix& b);

/// JSON schema: {"m": int, "n": int, "alphabet": "real"|"binary", "entries": [row-major]}
/// Unknown keys are ignored on load.
std::string matrix_to_json(const SignatureMatrix& a);
SignatureMatrix matrix_from_json(const std::string& text);

SignatureMatrix load_matrix_file(const std::string& path);

}  // namespace ocdma
